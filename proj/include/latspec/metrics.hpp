#pragma once

#include <cstddef>

#include "latspec/curve.hpp"

namespace latspec {

struct DistanceReport {
    double kolmogorov = 0.0;
    double levy = 0.0;
    std::size_t grid_points = 0;
};

// Right-continuous step interpolation of a curve's CDF: the value at the
// largest grid point <= x, 0 left of the grid and 1 right of it.
double step_cdf(const SpectralCurve& curve, double x);

// max |F_a - F_b| over the grid of `a` (b is step-interpolated when grids differ).
double kolmogorov_distance(const SpectralCurve& a, const SpectralCurve& b);

// Smallest eps with F_a(x - eps) - eps <= F_b(x) <= F_a(x + eps) + eps on the
// grid of `b`, by bisection to a quarter of the finer grid spacing.
double levy_distance(const SpectralCurve& a, const SpectralCurve& b);

// Both distances; throws std::logic_error if levy > kolmogorov.
DistanceReport compare_curves(const SpectralCurve& a, const SpectralCurve& b);

} // namespace latspec
