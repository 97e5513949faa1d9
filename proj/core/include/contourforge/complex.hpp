#pragma once

#include <cmath>
#include <complex>

namespace contourforge {

/// Numeric carrier for every complex quantity in the library.
using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline bool is_finite(double x) { return std::isfinite(x); }

inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace contourforge
