#include "latspec/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "latspec/error.hpp"

namespace latspec {

SpectralCurve density_curve(const StieltjesFn& stieltjes, const std::vector<double>& grid, double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("inversion width epsilon must be positive");
    if (!std::is_sorted(grid.begin(), grid.end())) throw ConfigError("grid must be ascending");

    SpectralCurve out;
    out.grid = grid;
    out.epsilon = epsilon;
    out.density.reserve(grid.size());
    for (double x : grid) {
        const std::complex<double> z{x, epsilon};
        std::complex<double> s;
        try {
            s = stieltjes(z);
        } catch (const SolverError&) {
            throw;
        } catch (const std::exception& e) {
            std::ostringstream os;
            os.precision(17);
            os << "Stieltjes evaluation failed at x = " << x << ": " << e.what();
            throw SolverError(os.str(), z, std::nan(""));
        }
        const double f = s.imag() / std::numbers::pi;
        if (!(f >= 0.0)) {
            std::ostringstream os;
            os.precision(17);
            os << "negative density " << f << " at x = " << x << "; Stieltjes input is not Herglotz";
            throw SolverError(os.str(), z, std::nan(""));
        }
        out.density.push_back(f);
    }
    return out;
}

void integrate_density(SpectralCurve& curve) {
    const auto& x = curve.grid;
    const auto& f = curve.density;
    curve.cdf.assign(x.size(), 0.0);
    double mass = 0.0;
    for (std::size_t k = 1; k < x.size(); ++k) {
        mass += 0.5 * (f[k] + f[k - 1]) * (x[k] - x[k - 1]);
        curve.cdf[k] = std::clamp(mass, 0.0, 1.0);
    }
    if (mass < kMinCapturedMass) {
        std::ostringstream os;
        os << "inverted distribution holds only " << mass << " of its mass on the grid; widen the grid or "
           << "reduce epsilon";
        throw SolverError(os.str(), {x.back(), curve.epsilon}, 1.0 - mass);
    }
}

SpectralCurve cdf_curve(const StieltjesFn& stieltjes, const std::vector<double>& grid, double epsilon) {
    auto curve = density_curve(stieltjes, grid, epsilon);
    integrate_density(curve);
    return curve;
}

std::vector<double> auto_grid(const CanonicalProblem& problem, std::size_t points, double margin) {
    if (points < 16) throw ConfigError("auto grid needs at least 16 points");
    if (!(margin >= 0.0)) throw ConfigError("grid margin must be nonnegative");
    const auto [lo, hi] = std::minmax_element(problem.branches.begin(), problem.branches.end(),
                                              [](const Branch& a, const Branch& b) { return a.value < b.value; });
    const double w = margin + 4.0 * std::sqrt(problem.variance_sum);
    return uniform_grid(lo->value - w, hi->value + w, points);
}

double default_epsilon(const std::vector<double>& grid) { return 2.0 * grid_spacing(grid); }

SpectralCurve deterministic_curve(const CanonicalProblem& problem, const std::vector<double>& grid, double epsilon) {
    auto curve = cdf_curve([&](std::complex<double> z) { return deterministic_stieltjes(problem, z); }, grid, epsilon);
    curve.label = "deterministic";
    return curve;
}

} // namespace latspec
