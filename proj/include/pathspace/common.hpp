#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pathspace {

using cplx = std::complex<double>;

/// Raised on precondition violations (bad input, off-grid times,
/// mismatched fibers) and on failed internal validation.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default absolute tolerance shared by the residual checks.
inline constexpr double kDefaultTol = 1e-10;

/// Scale-relative PSD certification threshold: min eig >= -1e-8 * max(1, scale).
inline constexpr double kEigTol = 1e-8;

}  // namespace pathspace
