#include "sl2/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace sl2 {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string Report::to_json() const {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["command"] = command;
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto &[k, v] : params) p[k] = v;
    j["params"] = p;
    j["seed"] = seed;
    auto tbls = nlohmann::ordered_json::array();
    for (const ReportTable &t : tables) {
        nlohmann::ordered_json tj;
        tj["name"] = t.name;
        tj["columns"] = t.columns;
        tj["rows"] = t.rows;
        tbls.push_back(tj);
    }
    j["tables"] = tbls;
    auto crits = nlohmann::ordered_json::array();
    for (const ReportCriterion &c : criteria) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["value"] = format_double(c.value);
        cj["threshold"] = format_double(c.threshold);
        cj["pass"] = c.pass;
        crits.push_back(cj);
    }
    j["criteria"] = crits;
    j["timings"] = {{"work_units", work_units}};
    return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
    std::string out;
    out += "# command," + command + "\n";
    out += "# seed," + std::to_string(seed) + "\n";
    for (const auto &[k, v] : params) out += "# param," + k + "," + v + "\n";
    for (const ReportTable &t : tables) {
        out += "table," + t.name + "\n";
        std::string hdr;
        for (const std::string &c : t.columns) hdr += (hdr.empty() ? "" : ",") + c;
        out += hdr + "\n";
        for (const auto &row : t.rows) {
            std::string line;
            for (const std::string &c : row) line += (line.empty() ? "" : ",") + c;
            out += line + "\n";
        }
    }
    out += "criteria\nname,value,threshold,pass\n";
    for (const ReportCriterion &c : criteria)
        out += c.name + "," + format_double(c.value) + "," + format_double(c.threshold) +
               "," + (c.pass ? "1" : "0") + "\n";
    return out;
}

void Report::print_summary(std::ostream &os) const {
    os << "== " << command << " ==\n";
    for (const ReportTable &t : tables) {
        os << "[" << t.name << "]\n";
        for (size_t i = 0; i < t.columns.size(); ++i)
            os << (i ? "\t" : "") << t.columns[i];
        os << "\n";
        size_t shown = 0;
        for (const auto &row : t.rows) {
            if (shown++ >= 40) {
                os << "... (" << t.rows.size() << " rows)\n";
                break;
            }
            for (size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
            os << "\n";
        }
    }
    for (const ReportCriterion &c : criteria)
        os << (c.pass ? "PASS " : "FAIL ") << c.name << "  value=" << format_double(c.value)
           << " threshold=" << format_double(c.threshold) << "\n";
}

}  // namespace sl2
