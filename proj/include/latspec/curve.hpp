#pragma once

#include <string>
#include <vector>

namespace latspec {

// Distribution sampled on an ascending grid. Either series may be empty.
struct SpectralCurve {
    std::vector<double> grid;
    std::vector<double> cdf;
    std::vector<double> density;
    double epsilon = 0.0;
    std::string label;

    bool has_cdf() const noexcept { return !cdf.empty(); }
    bool has_density() const noexcept { return !density.empty(); }
};

// Uniform grid of `points` abscissae on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, std::size_t points);

// Spacing of a uniform grid (first step).
double grid_spacing(const std::vector<double>& grid);

} // namespace latspec
