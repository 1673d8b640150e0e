#pragma once

#include <cmath>

namespace srbb {

// Gaussian transition kernel phi_t(x) = (2*pi*t)^(-d/2) exp(-|x|^2 / (2t)),
// evaluated from |x|^2.
inline double heat_kernel(int d, double t, double r_sq)
{
    return std::pow(6.283185307179586476925286766559 * t, -0.5 * d) * std::exp(-r_sq / (2.0 * t));
}

inline double log_heat_kernel(int d, double t, double r_sq)
{
    return -0.5 * d * std::log(6.283185307179586476925286766559 * t) - r_sq / (2.0 * t);
}

} // namespace srbb
