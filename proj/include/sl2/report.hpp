#pragma once

// Structured run reports: one document per command with parameter echo,
// result tables, and pass/fail criteria.  Documents are deterministic given
// (parameters, seed): the timings block carries work counters, wall-clock
// goes to stderr only.

#include <iostream>
#include <string>
#include <vector>

namespace sl2 {

struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ReportCriterion {
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    unsigned long long seed = 0;
    std::vector<ReportTable> tables;
    std::vector<ReportCriterion> criteria;
    long long work_units = 0;

    void param(const std::string &key, const std::string &value) {
        params.push_back({key, value});
    }
    ReportCriterion &criterion(const std::string &name, double value,
                               double threshold, bool pass) {
        criteria.push_back({name, value, threshold, pass});
        return criteria.back();
    }
    bool check(const std::string &name, double value, double threshold) {
        bool ok = value <= threshold;
        criteria.push_back({name, value, threshold, ok});
        return ok;
    }
    bool all_pass() const {
        for (const auto &c : criteria)
            if (!c.pass) return false;
        return true;
    }

    std::string to_json() const;
    std::string to_csv() const;
    void print_summary(std::ostream &os) const;
};

std::string format_double(double v);

}  // namespace sl2
