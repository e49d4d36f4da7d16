#pragma once

// Fault injection switches for negative-control tests.  Each flag perturbs
// one formula; the verification suites must go red when the matching flag is
// on.  All flags default to off and are only set by the CLI/test harness.

#include <string>

namespace sl2::faults {

struct Flags {
    bool iwasawa_x_sign = false;     // flips the sign of the Iwasawa x formula
    bool omega_local_factor = false; // drops the p^{-1} in the omega local density
    bool proj_canonical = false;     // skips unit normalization of projective points
};

Flags &flags();

// returns false if the name is unknown
bool enable(const std::string &name);
void reset();

}  // namespace sl2::faults
