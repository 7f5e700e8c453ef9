#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "latspec/canonical.hpp"
#include "latspec/curve.hpp"

namespace latspec {

using StieltjesFn = std::function<std::complex<double>(std::complex<double>)>;

// Right-edge mass below which cdf_curve refuses the result.
inline constexpr double kMinCapturedMass = 0.97;

// density(x) = (1/pi) Im S(x + i epsilon). Evaluation errors are rethrown as
// SolverError naming the grid point.
SpectralCurve density_curve(const StieltjesFn& stieltjes, const std::vector<double>& grid, double epsilon);

// Cumulative trapezoid integral of density_curve from the left grid edge,
// clipped to [0, 1]. Throws SolverError when the mass at the right edge is
// below kMinCapturedMass.
SpectralCurve cdf_curve(const StieltjesFn& stieltjes, const std::vector<double>& grid, double epsilon);

// Same as cdf_curve for an already evaluated density.
void integrate_density(SpectralCurve& curve);

// Uniform grid on [min b_j - w, max b_j + w], w = margin + 4 sqrt(sigma^2).
std::vector<double> auto_grid(const CanonicalProblem& problem, std::size_t points, double margin);

// Default smoothing width: twice the grid spacing.
double default_epsilon(const std::vector<double>& grid);

// Deterministic-equivalent density and CDF of the lattice model on a grid.
SpectralCurve deterministic_curve(const CanonicalProblem& problem, const std::vector<double>& grid, double epsilon);

} // namespace latspec
