#pragma once

#include <stdexcept>
#include <string>

namespace fhc {

struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegenerateDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SizeGuardExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpectralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoPositiveResolventRoot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fhc
