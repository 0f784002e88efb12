#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace vp {

/// Wrap x into [0, L).
inline double wrap(double x, double L) {
    double y = std::fmod(x, L);
    return y < 0.0 ? y + L : y;
}

/// Wrap x into (-L/2, L/2] (minimal image).
inline double wrap_centered(double x, double L) {
    double y = x - L * std::round(x / L);
    if (y <= -0.5 * L) y += L;
    if (y > 0.5 * L) y -= L;
    return y;
}

/// Deterministic pairwise summation. Fixed association order, independent of
/// any partitioning the caller may have used to produce the data.
double pairwise_sum(std::span<const double> a);

} // namespace vp
