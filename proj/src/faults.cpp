#include "sl2/faults.hpp"

namespace sl2::faults {

Flags &flags() {
    static Flags f;
    return f;
}

bool enable(const std::string &name) {
    if (name == "iwasawa-x-sign") { flags().iwasawa_x_sign = true; return true; }
    if (name == "omega-local-factor") { flags().omega_local_factor = true; return true; }
    if (name == "proj-canonical") { flags().proj_canonical = true; return true; }
    return false;
}

void reset() { flags() = Flags{}; }

}  // namespace sl2::faults
