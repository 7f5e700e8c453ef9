#include "latspec/curve.hpp"

#include "latspec/error.hpp"

namespace latspec {

std::vector<double> uniform_grid(double lo, double hi, std::size_t points) {
    if (points < 2) throw ConfigError("a grid needs at least two points");
    if (!(hi > lo)) throw ConfigError("grid upper bound must exceed lower bound");
    std::vector<double> grid(points);
    const double h = (hi - lo) / static_cast<double>(points - 1);
    for (std::size_t k = 0; k < points; ++k) grid[k] = lo + h * static_cast<double>(k);
    grid.back() = hi;
    return grid;
}

double grid_spacing(const std::vector<double>& grid) {
    if (grid.size() < 2) throw ConfigError("grid spacing needs at least two points");
    return grid[1] - grid[0];
}

} // namespace latspec
