#include "latspec/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <mutex>
#include <span>
#include <thread>

#include <json.hpp>

#include "latspec/error.hpp"
#include "latspec/inversion.hpp"

namespace latspec {

namespace {

using json = nlohmann::json;

template <typename T>
T json_get(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config key '") + key + "': " + e.what());
    }
}

struct TrialSpectra {
    EmpiricalSpectrum scaled;
    EmpiricalSpectrum normalized;
};

std::vector<TrialSpectra> run_trials(const RunConfig& config, bool want_scaled, bool want_normalized) {
    const auto spec = config.spec();
    const auto n = node_count(spec);
    if (n > static_cast<std::uint64_t>(kEigenSolveLimit)) {
        throw SizeLimitError("simulation needs dense eigensolves; N=" + std::to_string(n) + " exceeds " +
                             std::to_string(kEigenSolveLimit));
    }
    const double scale = config.normalized ? std::sqrt(expected_degree(spec)) : 1.0;
    std::vector<TrialSpectra> out(static_cast<std::size_t>(config.trials));
    parallel_for(out.size(), config.threads, [&](std::size_t t) {
        const auto s = sample(spec, trial_seed(config.seed, t));
        if (want_scaled) out[t].scaled = scaled_spectrum(s, scale);
        if (want_normalized) out[t].normalized = row_normalized_spectrum(s, scale);
    });
    return out;
}

SpectralCurve empirical_curve(const std::vector<EmpiricalSpectrum>& spectra, const std::vector<double>& grid,
                              double epsilon, EmpiricalSpectrum* pooled_out = nullptr) {
    auto pooled = EmpiricalSpectrum::pool(spectra);
    auto curve = smoothed_density(pooled, grid, epsilon);
    curve.cdf = average_esd(spectra, grid).cdf;
    curve.label = "empirical";
    if (pooled_out) *pooled_out = std::move(pooled);
    return curve;
}

// Deterministic curve of W scaled by `scale`: S_{cW}(z) = S_W(z / c) / c.
SpectralCurve scaled_deterministic_curve(const CanonicalProblem& problem, const std::vector<double>& grid,
                                         double epsilon, double scale) {
    auto curve = cdf_curve(
        [&](std::complex<double> z) { return deterministic_stieltjes(problem, z / scale) / scale; }, grid, epsilon);
    curve.label = "deterministic";
    return curve;
}

double kolmogorov_on(const SpectralCurve& a, const SpectralCurve& b, std::size_t from, std::size_t to) {
    double d = 0.0;
    for (std::size_t k = from; k < to; ++k) d = std::max(d, std::abs(a.cdf[k] - b.cdf[k]));
    return d;
}

} // namespace

LatticeSpec RunConfig::spec() const { return LatticeSpec::make(dims, probs); }

void RunConfig::validate() const {
    spec();
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (grid_points < 16) throw ConfigError("grid_points must be >= 16");
    if (!(margin >= 0.0)) throw ConfigError("margin must be nonnegative");
    if (epsilon && !(*epsilon > 0.0)) throw ConfigError("epsilon must be positive");
}

void apply_json_config(RunConfig& config, const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "dims") {
            config.dims = json_get<std::vector<std::uint64_t>>(j, "dims");
        } else if (key == "probs") {
            config.probs = json_get<std::vector<double>>(j, "probs");
        } else if (key == "trials") {
            config.trials = json_get<int>(j, "trials");
        } else if (key == "seed") {
            config.seed = json_get<std::uint64_t>(j, "seed");
        } else if (key == "grid_points") {
            config.grid_points = json_get<std::size_t>(j, "grid_points");
        } else if (key == "margin") {
            config.margin = json_get<double>(j, "margin");
        } else if (key == "epsilon") {
            if (value.is_null() || (value.is_string() && value.get<std::string>() == "auto")) {
                config.epsilon.reset();
            } else {
                config.epsilon = json_get<double>(j, "epsilon");
            }
        } else if (key == "normalized") {
            config.normalized = json_get<bool>(j, "normalized");
        } else if (key == "output_path") {
            config.output_path = json_get<std::string>(j, "output_path");
        } else if (key == "threads") {
            config.threads = json_get<unsigned>(j, "threads");
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

RunConfig load_json_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    RunConfig config;
    apply_json_config(config, buf.str());
    return config;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) {
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> run_grid(const RunConfig& config, const CanonicalProblem& problem) {
    auto grid = auto_grid(problem, config.grid_points, config.margin);
    if (config.normalized) {
        const double scale = std::sqrt(problem.gamma);
        for (auto& x : grid) x *= scale;
    }
    return grid;
}

double run_epsilon(const RunConfig& config, const std::vector<double>& grid) {
    return config.epsilon.value_or(default_epsilon(grid));
}

std::vector<EmpiricalSpectrum> simulate_spectra(const RunConfig& config, bool normalized) {
    auto trials = run_trials(config, !normalized, normalized);
    std::vector<EmpiricalSpectrum> out;
    out.reserve(trials.size());
    for (auto& t : trials) out.push_back(std::move(normalized ? t.normalized : t.scaled));
    return out;
}

SolveResult run_solve(const RunConfig& config) {
    config.validate();
    auto problem = build_problem(config.spec());
    const auto grid = run_grid(config, problem);
    const double eps = run_epsilon(config, grid);
    const double scale = config.normalized ? std::sqrt(problem.gamma) : 1.0;
    auto curve = scaled_deterministic_curve(problem, grid, eps, scale);
    return {std::move(problem), std::move(curve)};
}

SimulateResult run_simulate(const RunConfig& config) {
    config.validate();
    const auto problem = build_problem(config.spec());
    const auto grid = run_grid(config, problem);
    const double eps = run_epsilon(config, grid);
    const auto spectra = simulate_spectra(config, config.normalized);
    SimulateResult out;
    out.curve = empirical_curve(spectra, grid, eps, &out.pooled);
    return out;
}

CompareResult run_compare(const RunConfig& config) {
    config.validate();
    const auto problem = build_problem(config.spec());
    const auto grid = run_grid(config, problem);
    const double eps = run_epsilon(config, grid);
    const double scale = config.normalized ? std::sqrt(problem.gamma) : 1.0;

    CompareResult out;
    out.deterministic = scaled_deterministic_curve(problem, grid, eps, scale);

    auto trials = run_trials(config, true, config.normalized);
    std::vector<EmpiricalSpectrum> compared;
    compared.reserve(trials.size());
    for (auto& t : trials) compared.push_back(config.normalized ? t.normalized : t.scaled);
    out.empirical = empirical_curve(compared, grid, eps);

    if (out.deterministic.grid != out.empirical.grid || out.deterministic.epsilon != out.empirical.epsilon) {
        throw std::logic_error("compared curves must share grid and epsilon");
    }
    out.distances = compare_curves(out.deterministic, out.empirical);
    {
        // Empirical CDF recovered by the same inversion at the same epsilon.
        SpectralCurve smoothed = out.empirical;
        double mass = 0.0;
        smoothed.cdf.assign(grid.size(), 0.0);
        for (std::size_t k = 1; k < grid.size(); ++k) {
            mass += 0.5 * (smoothed.density[k] + smoothed.density[k - 1]) * (grid[k] - grid[k - 1]);
            smoothed.cdf[k] = std::clamp(mass, 0.0, 1.0);
        }
        out.smoothed_kolmogorov = kolmogorov_distance(out.deterministic, smoothed);
    }
    out.lobes = lobe_distances(problem, out.deterministic, out.empirical, scale);

    if (config.normalized) {
        // Per-trial distances on one grid spanning every eigenvalue of both families.
        double lo = grid.front();
        double hi = grid.back();
        for (const auto& t : trials) {
            lo = std::min({lo, t.scaled.eigenvalues.front(), t.normalized.eigenvalues.front()});
            hi = std::max({hi, t.scaled.eigenvalues.back(), t.normalized.eigenvalues.back()});
        }
        const auto wide = uniform_grid(lo - config.margin, hi + config.margin, config.grid_points);
        std::vector<double> per_trial(trials.size());
        parallel_for(trials.size(), config.threads, [&](std::size_t k) {
            const auto a = average_esd(std::span(&trials[k].normalized, 1), wide);
            const auto b = average_esd(std::span(&trials[k].scaled, 1), wide);
            per_trial[k] = levy_distance(a, b);
        });
        double sum = 0.0;
        for (double d : per_trial) sum += d;
        out.normalized_levy = sum / static_cast<double>(per_trial.size());
    }
    return out;
}

std::vector<OracleLine> run_oracle(const RunConfig& config, const std::vector<std::complex<double>>& zs) {
    config.validate();
    const auto spec = config.spec();
    const auto problem = build_problem(spec);
    std::vector<OracleLine> out;
    out.reserve(zs.size());
    for (const auto z : zs) {
        const auto scalar = solve_alpha(problem, z).alpha_principal;
        const auto oracle = matrix_k1_oracle(spec, z);
        out.push_back({z, scalar, oracle.stieltjes, std::abs(scalar - oracle.stieltjes), oracle.form_residual});
    }
    return out;
}

GirkoConditionReport run_conditions(const RunConfig& config) {
    config.validate();
    return girko_conditions(config.spec());
}

LobeDistances lobe_distances(const CanonicalProblem& problem, const SpectralCurve& det, const SpectralCurve& emp,
                             double value_scale) {
    if (det.grid != emp.grid || !det.has_density() || !det.has_cdf() || !emp.has_cdf()) {
        throw ConfigError("lobe split needs a deterministic density and two CDFs on one grid");
    }
    const auto& grid = det.grid;
    std::vector<Branch> sorted = problem.branches;
    std::sort(sorted.begin(), sorted.end(), [](const Branch& a, const Branch& b) { return a.value < b.value; });
    const auto dominant = std::max_element(problem.branches.begin(), problem.branches.end(),
                                           [](const Branch& a, const Branch& b) {
                                               return a.multiplicity < b.multiplicity;
                                           })->value * value_scale;

    auto grid_pos = [&](double x) {
        return static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), x) - grid.begin());
    };
    // Cut points: density minimum strictly between consecutive distinct branch values.
    std::vector<std::size_t> cuts{0};
    for (std::size_t k = 1; k < sorted.size(); ++k) {
        const auto a = grid_pos(sorted[k - 1].value * value_scale);
        const auto b = std::min(grid_pos(sorted[k].value * value_scale), grid.size());
        if (b <= a + 1) continue;
        const auto it = std::min_element(det.density.begin() + static_cast<std::ptrdiff_t>(a),
                                         det.density.begin() + static_cast<std::ptrdiff_t>(b));
        cuts.push_back(static_cast<std::size_t>(it - det.density.begin()));
    }
    cuts.push_back(grid.size());

    const auto at = grid_pos(dominant);
    std::size_t from = 0;
    std::size_t to = grid.size();
    for (std::size_t k = 1; k < cuts.size(); ++k) {
        if (at < cuts[k] || k + 1 == cuts.size()) {
            from = cuts[k - 1];
            to = cuts[k];
            break;
        }
    }
    LobeDistances out;
    out.main_lobe = kolmogorov_on(det, emp, from, to);
    out.minor_lobes = std::max(kolmogorov_on(det, emp, 0, from), kolmogorov_on(det, emp, to, grid.size()));
    out.main_lo = grid[from];
    out.main_hi = grid[to - 1];
    return out;
}

std::vector<std::complex<double>> default_oracle_points() {
    std::vector<std::complex<double>> zs;
    for (double y : {0.05, 0.2, 0.5, 1.0, 2.0}) {
        for (double x : {-1.0, -0.5, 0.0, 0.5, 1.0}) zs.emplace_back(x, y);
    }
    return zs;
}

std::complex<double> parse_complex(const std::string& text) {
    auto fail = [&] { return ConfigError("cannot parse complex number '" + text + "'"); };
    std::string s;
    for (char c : text) {
        if (c != ' ') s.push_back(c);
    }
    if (s.empty()) throw fail();
    auto parse_real = [&](std::string_view part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        if (part.front() == '+') part.remove_prefix(1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (ec != std::errc{} || ptr != part.data() + part.size()) throw fail();
        return v;
    };
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s), 0.0};
    s.pop_back();
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_real(s)};
    return {parse_real(std::string_view(s).substr(0, split)), parse_real(std::string_view(s).substr(split))};
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

void write_csv(std::ostream& out, const SpectralCurve* det, const SpectralCurve* emp) {
    const SpectralCurve* ref = det ? det : emp;
    if (!ref) throw ConfigError("nothing to write");
    if (det && emp && det->grid != emp->grid) throw ConfigError("curves written together must share a grid");
    out << "x";
    if (det) out << ",f_det,F_det";
    if (emp) out << ",f_emp,F_emp";
    out << '\n';
    for (std::size_t k = 0; k < ref->grid.size(); ++k) {
        out << format_double(ref->grid[k]);
        if (det) out << ',' << format_double(det->density[k]) << ',' << format_double(det->cdf[k]);
        if (emp) out << ',' << format_double(emp->density[k]) << ',' << format_double(emp->cdf[k]);
        out << '\n';
    }
}

} // namespace latspec
