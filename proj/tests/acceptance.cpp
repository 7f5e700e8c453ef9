// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: latspec_acceptance [criterion numbers...]  (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "latspec/canonical.hpp"
#include "latspec/error.hpp"
#include "latspec/espectrum.hpp"
#include "latspec/inversion.hpp"
#include "latspec/lattice.hpp"
#include "latspec/metrics.hpp"
#include "latspec/percolation.hpp"
#include "latspec/pipeline.hpp"
#include "oracles.hpp"

using namespace latspec;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

RunConfig config_for(std::vector<std::uint64_t> dims, std::vector<double> probs) {
    RunConfig c;
    c.dims = std::move(dims);
    c.probs = std::move(probs);
    return c;
}

// 1. Scalar solver vs. matrix canonical iteration on the 25-point grid.
Outcome oracle_equivalence() {
    constexpr double kTol = 1e-8;
    double worst = 0.0;
    for (const auto& c : {config_for({4, 5}, {0.7, 0.5}), config_for({3, 3, 4}, {0.8, 0.7, 0.6})}) {
        for (const auto& line : run_oracle(c, default_oracle_points())) worst = std::max(worst, line.difference);
    }
    return {worst <= kTol, "max |scalar - matrix| = " + fmt(worst) + " (tol 1e-8, 2 specs x 25 points)"};
}

// 2. Converged oracle matrix lies in the Kronecker solution form.
Outcome solution_form() {
    constexpr double kTol = 1e-6;
    const auto spec = LatticeSpec::make({4, 5}, {0.7, 0.5});
    double worst = 0.0;
    for (const auto z : default_oracle_points()) {
        const auto r = matrix_k1_oracle(spec, z);
        worst = std::max(worst, project_solution_form(spec, r.resolvent).relative_residual);
    }
    return {worst <= kTol, "max relative projection residual = " + fmt(worst) + " (tol 1e-6, 25 points)"};
}

Outcome monte_carlo_agreement(std::vector<std::uint64_t> dims, std::vector<double> probs) {
    constexpr double kTol = 0.05;
    auto c = config_for(std::move(dims), std::move(probs));
    c.trials = 50;
    c.grid_points = 2000;
    const auto r = run_compare(c);
    std::ostringstream os;
    os << "main lobe [" << fmt(r.lobes.main_lo) << ", " << fmt(r.lobes.main_hi)
       << "] kolmogorov = " << fmt(r.lobes.main_lobe) << " (tol 0.05); minor lobes = " << fmt(r.lobes.minor_lobes)
       << "; overall kolmogorov = " << fmt(r.distances.kolmogorov) << ", levy = " << fmt(r.distances.levy)
       << ", equal-smoothing kolmogorov = " << fmt(r.smoothed_kolmogorov);
    return {r.lobes.main_lobe <= kTol, os.str()};
}

// 5. Levy distance between the normalized and scaled spectra shrinks with size.
Outcome normalized_trend() {
    constexpr double kTol = 0.05;
    double levy[2];
    std::size_t k = 0;
    for (std::uint64_t m : {10ULL, 30ULL}) {
        auto c = config_for({m, m}, {0.6, 0.6});
        c.trials = 20;
        c.normalized = true;
        levy[k++] = *run_compare(c).normalized_levy;
    }
    return {levy[0] > levy[1] && levy[1] <= kTol,
            "levy(10,10) = " + fmt(levy[0]) + " > levy(30,30) = " + fmt(levy[1]) + " (tol 0.05)"};
}

// 6. sigma^2 = 0: inversion of the exact rational transform reproduces the atomic CDF.
Outcome sigma_zero() {
    constexpr double kTol = 0.02;
    constexpr double kAtomClearance = 20.0; // in units of epsilon
    double worst_far = 0.0;
    double worst_smoothed = 0.0;
    for (const auto& spec : {LatticeSpec::make({4, 5}, {1.0, 1.0}), LatticeSpec::make({30, 50}, {1.0, 1.0})}) {
        const auto p = build_problem(spec);
        const auto grid = auto_grid(p, 2000, 0.1);
        const double eps = default_epsilon(grid);
        const auto curve = deterministic_curve(p, grid, eps);
        const auto atoms = expected_spectrum(spec);
        const double n = double(atoms.total_multiplicity());
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const double x = grid[k];
            double step = 0.0;
            double cauchy = 0.0;
            double clearance = 1e300;
            for (const auto& a : atoms.entries) {
                const double w = double(a.multiplicity) / n;
                if (x >= a.value) step += w;
                cauchy += w * (0.5 + std::atan((x - a.value) / eps) / std::numbers::pi);
                clearance = std::min(clearance, std::abs(x - a.value));
            }
            worst_smoothed = std::max(worst_smoothed, std::abs(curve.cdf[k] - cauchy));
            if (clearance >= kAtomClearance * eps) worst_far = std::max(worst_far, std::abs(curve.cdf[k] - step));
        }
    }
    return {worst_far <= kTol && worst_smoothed <= kTol,
            "sup |F - atomic| beyond 20 eps of atoms = " + fmt(worst_far) +
                ", sup |F - Cauchy-smoothed atomic| = " + fmt(worst_smoothed) + " (tol 0.02, dims (4,5) and (30,50))"};
}

// 7. D = 1 reduces to a semicircle law.
Outcome semicircle() {
    constexpr double kDensityTol = 1e-2;
    constexpr double kMonteCarloTol = 0.02;
    const auto p = build_problem(LatticeSpec::make({2000}, {0.5}));
    const double c = -1.0 / 1999.0;
    const double radius = 2.0 * std::sqrt(p.variance_sum);
    const auto bulk = uniform_grid(c - 0.8 * radius, c + 0.8 * radius, 2001);
    const auto curve = density_curve([&](std::complex<double> z) { return deterministic_stieltjes(p, z); }, bulk, 1e-9);
    double worst = 0.0;
    for (std::size_t k = 0; k < bulk.size(); ++k) {
        worst = std::max(worst, std::abs(curve.density[k] - oracle::semicircle_density(bulk[k], c, p.variance_sum)));
    }

    // Monte Carlo cross-check at M = 500.
    auto mc = config_for({500}, {0.5});
    mc.trials = 20;
    const auto r = run_compare(mc);
    const auto pm = build_problem(mc.spec());
    const double cm = -1.0 / 499.0;
    const double rm = 2.0 * std::sqrt(pm.variance_sum);
    SpectralCurve closed;
    closed.grid = r.empirical.grid;
    for (double x : closed.grid) {
        const double u = std::clamp((x - cm) / rm, -1.0, 1.0);
        closed.cdf.push_back(0.5 + (u * std::sqrt(1.0 - u * u) + std::asin(u)) / std::numbers::pi);
    }
    const double mc_det = r.distances.kolmogorov;
    const double mc_closed = kolmogorov_distance(closed, r.empirical);
    return {worst <= kDensityTol && mc_det <= kMonteCarloTol && mc_closed <= kMonteCarloTol,
            "M=2000 sup density error on middle 80% = " + fmt(worst) + " (tol 1e-2); M=500 x 20 trials kolmogorov " +
                "vs deterministic = " + fmt(mc_det) + ", vs closed-form semicircle = " + fmt(mc_closed) +
                " (tol 0.02)"};
}

// 8. Property suites.
Outcome invariants() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<std::string> failures;
    int checks = 0;
    auto expect = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok && std::find(failures.begin(), failures.end(), what) == failures.end()) failures.push_back(what);
    };

    for (int rep = 0; rep < 40; ++rep) {
        const auto spec = oracle::random_spec(rng, 3, 12, 400);
        const auto n = node_count(spec);
        for (std::uint64_t x = 1; x <= n; ++x) expect(encode_index(spec, decode_index(spec, x)) == x, "round-trip");

        const auto p = build_problem(spec);
        const auto emp = scaled_spectrum(sample(spec, trial_seed(9, std::uint64_t(rep))));
        for (int k = 0; k < 50; ++k) {
            std::complex<double> z{u(rng), u(rng)};
            if (std::abs(z.imag()) < 1e-3) z.imag(1e-3);
            expect(z.imag() * deterministic_stieltjes(p, z).imag() > 0.0, "herglotz (deterministic)");
            expect(z.imag() * empirical_stieltjes(emp, z).imag() > 0.0, "herglotz (empirical)");
        }

        const auto grid = auto_grid(p, 400, 0.1);
        const auto det = deterministic_curve(p, grid, default_epsilon(grid));
        expect(std::is_sorted(det.cdf.begin(), det.cdf.end()), "monotone deterministic CDF");
        const std::vector<EmpiricalSpectrum> one{emp};
        const auto esd = average_esd(one, grid);
        expect(std::is_sorted(esd.cdf.begin(), esd.cdf.end()), "monotone empirical CDF");
        const auto d = compare_curves(det, esd);
        expect(d.levy <= d.kolmogorov, "levy <= kolmogorov");
    }

    auto c = config_for({8, 9}, {0.6, 0.4});
    c.trials = 6;
    c.grid_points = 500;
    std::string text[3];
    const unsigned threads[3] = {1, 2, 5};
    for (int k = 0; k < 3; ++k) {
        c.threads = threads[k];
        const auto r = run_compare(c);
        std::ostringstream os;
        write_csv(os, &r.deterministic, &r.empirical);
        os << format_double(r.distances.kolmogorov) << format_double(r.distances.levy);
        text[k] = os.str();
    }
    expect(text[0] == text[1] && text[0] == text[2], "thread-count determinism");

    std::string detail = std::to_string(checks) + " checks";
    for (const auto& f : failures) detail += "; failed: " + f;
    return {failures.empty(), detail};
}

// 9. Applicability condition values against the hand formula.
Outcome condition_values() {
    constexpr double kTol = 1e-12;
    std::mt19937_64 rng(99);
    double worst = 0.0;
    bool exact_mean = true;
    for (int rep = 0; rep < 100; ++rep) {
        const auto spec = oracle::random_spec(rng, 5, 60, 1ULL << 40);
        const auto r = girko_conditions(spec);
        exact_mean = exact_mean && r.mean_row_sum == 1.0;
        long double gamma = 0.0L;
        long double var = 0.0L;
        for (std::size_t d = 0; d < spec.dims.size(); ++d) {
            const long double pd = spec.probs[d];
            gamma += pd * (long double)(spec.dims[d] - 1);
            var += pd * (1.0L - pd) * (long double)(spec.dims[d] - 1);
        }
        const double hand = double(var / (gamma * gamma));
        worst = std::max(worst, std::abs(r.variance_row_sum - hand) / std::max(hand, 1e-300));
    }
    return {exact_mean && worst <= kTol, std::string("mean_row_sum == 1 exactly: ") + (exact_mean ? "yes" : "no") +
                                             "; max relative variance_row_sum error = " + fmt(worst) +
                                             " (tol 1e-12, 100 random specs)"};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
};

} // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> all{
        {1, "oracle equivalence", oracle_equivalence},
        {2, "solution-form residual", solution_form},
        {3, "Monte Carlo agreement (30,50)", [] { return monte_carlo_agreement({30, 50}, {0.7, 0.5}); }},
        {4, "Monte Carlo agreement (10,10,20)", [] { return monte_carlo_agreement({10, 10, 20}, {0.8, 0.7, 0.6}); }},
        {5, "normalized-vs-scaled trend", normalized_trend},
        {6, "sigma^2 = 0 exactness", sigma_zero},
        {7, "D = 1 semicircle limit", semicircle},
        {8, "invariant suites", invariants},
        {9, "condition values", condition_values},
    };
    std::set<int> wanted;
    for (int k = 1; k < argc; ++k) wanted.insert(std::atoi(argv[k]));

    int failed = 0;
    for (const auto& c : all) {
        if (!wanted.empty() && !wanted.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!o.pass) ++failed;
        std::printf("criterion %d %s: %s  %s  [%.1f s]\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                    secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
