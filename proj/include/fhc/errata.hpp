#pragma once

#include <string>
#include <vector>

namespace fhc {

/// One computed-versus-published comparison for a closed-form claim.
struct ErrataEntry {
    std::string id;
    std::string location;      // where the claim appears
    double computed = 0;
    double printed = 0;
    bool pass = false;
    std::string evidence;
};

/// Cross-checks every published closed form against the validated
/// numerics: resolvent roots, branch expressions, eigenvalue formulas,
/// threshold constants, and the sign-function claims.
std::vector<ErrataEntry> run_errata();

}  // namespace fhc
