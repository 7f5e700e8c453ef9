#include "latspec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "latspec/error.hpp"

namespace latspec {

namespace {

void require_cdf(const SpectralCurve& c) {
    if (!c.has_cdf() || c.cdf.size() != c.grid.size()) throw ConfigError("curve carries no CDF values");
}

std::vector<double> merged_grid(const SpectralCurve& a, const SpectralCurve& b) {
    require_cdf(a);
    require_cdf(b);
    if (a.grid.back() < b.grid.front() || b.grid.back() < a.grid.front()) {
        throw ConfigError("curves live on disjoint grid spans");
    }
    if (a.grid == b.grid) return a.grid;
    std::vector<double> out;
    out.reserve(a.grid.size() + b.grid.size());
    std::merge(a.grid.begin(), a.grid.end(), b.grid.begin(), b.grid.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

double min_spacing(const std::vector<double>& grid) {
    double h = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < grid.size(); ++k) h = std::min(h, grid[k] - grid[k - 1]);
    return h;
}

// Limit of the step interpolant from the left of x.
double step_cdf_left(const SpectralCurve& curve, double x) {
    const auto& g = curve.grid;
    if (x <= g.front()) return 0.0;
    if (x > g.back()) return 1.0;
    const auto k = std::lower_bound(g.begin(), g.end(), x) - g.begin() - 1;
    return curve.cdf[static_cast<std::size_t>(k)];
}

// Checks the Levy inequalities for all real x. F_b is constant on each
// [t_k, t_{k+1}) of the merged grid, so the extremes of F_a(x -+ eps) over an
// interval sit at its ends.
bool levy_holds(const SpectralCurve& a, const SpectralCurve& b, const std::vector<double>& grid, double eps) {
    if (step_cdf_left(a, grid.front() - eps) - eps > 0.0) return false;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double fb = step_cdf(b, grid[k]);
        const double right_end = k + 1 < grid.size() ? grid[k + 1] : grid[k];
        const double upper = k + 1 < grid.size() ? step_cdf_left(a, right_end - eps) : step_cdf(a, right_end - eps);
        if (upper - eps > fb) return false;
        if (fb > step_cdf(a, grid[k] + eps) + eps) return false;
    }
    return 1.0 <= step_cdf(a, grid.back() + eps) + eps;
}

} // namespace

double step_cdf(const SpectralCurve& curve, double x) {
    const auto& g = curve.grid;
    if (x < g.front()) return 0.0;
    if (x > g.back()) return 1.0;
    const auto k = std::upper_bound(g.begin(), g.end(), x) - g.begin() - 1;
    return curve.cdf[static_cast<std::size_t>(k)];
}

double kolmogorov_distance(const SpectralCurve& a, const SpectralCurve& b) {
    const auto grid = merged_grid(a, b);
    double d = 0.0;
    if (grid.size() == a.grid.size() && a.grid == b.grid) {
        for (std::size_t k = 0; k < grid.size(); ++k) d = std::max(d, std::abs(a.cdf[k] - b.cdf[k]));
        return d;
    }
    for (double x : grid) d = std::max(d, std::abs(step_cdf(a, x) - step_cdf(b, x)));
    return d;
}

double levy_distance(const SpectralCurve& a, const SpectralCurve& b) {
    const auto grid = merged_grid(a, b);
    if (levy_holds(a, b, grid, 0.0)) return 0.0;
    const double tol = min_spacing(grid) / 4.0;
    double lo = 0.0;
    double hi = std::min(1.0, kolmogorov_distance(a, b));
    if (!levy_holds(a, b, grid, hi)) hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (levy_holds(a, b, grid, mid) ? hi : lo) = mid;
    }
    return hi;
}

DistanceReport compare_curves(const SpectralCurve& a, const SpectralCurve& b) {
    DistanceReport r;
    r.kolmogorov = kolmogorov_distance(a, b);
    r.levy = levy_distance(a, b);
    r.grid_points = merged_grid(a, b).size();
    if (r.levy > r.kolmogorov) {
        throw std::logic_error("Levy distance " + std::to_string(r.levy) + " exceeds Kolmogorov distance " +
                               std::to_string(r.kolmogorov));
    }
    return r;
}

} // namespace latspec
