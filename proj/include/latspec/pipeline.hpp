#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "latspec/canonical.hpp"
#include "latspec/curve.hpp"
#include "latspec/espectrum.hpp"
#include "latspec/lattice.hpp"
#include "latspec/metrics.hpp"
#include "latspec/percolation.hpp"

namespace latspec {

// Experiment configuration. JSON keys are the field names.
struct RunConfig {
    std::vector<std::uint64_t> dims;
    std::vector<double> probs;
    int trials = 50;
    std::uint64_t seed = 42;
    std::size_t grid_points = 2000;
    double margin = 0.1;
    std::optional<double> epsilon; // empty: twice the grid spacing
    bool normalized = false;
    std::string output_path;
    unsigned threads = 0; // 0: hardware concurrency

    LatticeSpec spec() const;
    void validate() const;
};

// Overwrites the fields present in the JSON document. Throws ConfigError on
// unknown keys or wrong types.
void apply_json_config(RunConfig& config, const std::string& json_text);
RunConfig load_json_config_file(const std::string& path);

struct SolveResult {
    CanonicalProblem problem;
    SpectralCurve curve; // deterministic density and CDF
};

struct SimulateResult {
    SpectralCurve curve; // empirical smoothed density and CDF
    EmpiricalSpectrum pooled;
};

struct LobeDistances {
    double main_lobe = 0.0;  // Kolmogorov distance over the dominant branch's lobe
    double minor_lobes = 0.0; // over the rest of the grid
    double main_lo = 0.0;
    double main_hi = 0.0;
};

struct CompareResult {
    SpectralCurve deterministic;
    SpectralCurve empirical;
    // Against the exact averaged ESD.
    DistanceReport distances;
    LobeDistances lobes;
    // Kolmogorov distance to the empirical CDF obtained by Stieltjes inversion
    // at the same epsilon. Atoms are smoothed identically on both sides.
    double smoothed_kolmogorov = 0.0;
    // Normalized mode: mean over trials of d_L(F_{sqrt(gamma) Ahat}, F_{sqrt(gamma) W}).
    std::optional<double> normalized_levy;
};

struct OracleLine {
    std::complex<double> z;
    std::complex<double> scalar;
    std::complex<double> matrix;
    double difference;
    double form_residual;
};

// Grid shared by solve, simulate and compare: auto_grid, multiplied by
// sqrt(gamma) in normalized mode.
std::vector<double> run_grid(const RunConfig& config, const CanonicalProblem& problem);
double run_epsilon(const RunConfig& config, const std::vector<double>& grid);

// Runs fn(k) for k in [0, count) on up to `threads` worker threads.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

// Per-trial spectra of W (or sqrt(gamma) Ahat when `normalized`), in trial order.
std::vector<EmpiricalSpectrum> simulate_spectra(const RunConfig& config, bool normalized);

SolveResult run_solve(const RunConfig& config);
SimulateResult run_simulate(const RunConfig& config);
CompareResult run_compare(const RunConfig& config);
std::vector<OracleLine> run_oracle(const RunConfig& config, const std::vector<std::complex<double>>& zs);
GirkoConditionReport run_conditions(const RunConfig& config);

// Splits the grid at the density minimum between consecutive branch values and
// measures the CDF gap separately on the lobe of the most populous branch.
LobeDistances lobe_distances(const CanonicalProblem& problem, const SpectralCurve& deterministic,
                             const SpectralCurve& empirical, double value_scale = 1.0);

// The 25-point check grid x in {-1, -0.5, 0, 0.5, 1}, y in {0.05, 0.2, 0.5, 1, 2}.
std::vector<std::complex<double>> default_oracle_points();

// Parses "a+bi", "a-bi", "bi" or "a".
std::complex<double> parse_complex(const std::string& text);

// Header x,f_det,F_det,f_emp,F_emp restricted to the curves supplied.
void write_csv(std::ostream& out, const SpectralCurve* deterministic, const SpectralCurve* empirical);

// Shortest round-trip decimal form.
std::string format_double(double v);

} // namespace latspec
