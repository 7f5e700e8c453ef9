// Command-line front end: solve, simulate, compare, oracle, conditions, edges.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latspec/error.hpp"
#include "latspec/pipeline.hpp"

namespace {

using namespace latspec;

enum ExitCode { kOk = 0, kConfig = 1, kSize = 2, kSolver = 3, kOracle = 4 };

struct Flags {
    std::string dims;
    std::string probs;
    int trials = 0;
    std::uint64_t seed = 0;
    std::size_t grid_points = 0;
    double margin = 0.0;
    std::string epsilon;
    bool normalized = false;
    std::string output;
    std::string config;
    unsigned threads = 0;
    std::vector<std::string> z;
};

template <typename T>
std::vector<T> split_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            if constexpr (std::is_floating_point_v<T>) {
                out.push_back(std::stod(item, &used));
            } else {
                if (!item.empty() && item.front() == '-') throw std::invalid_argument("negative");
                out.push_back(static_cast<T>(std::stoull(item, &used)));
            }
            if (used != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ConfigError(std::string("cannot parse ") + what + " entry '" + item + "'");
        }
    }
    return out;
}

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--dims", f.dims, "lattice sizes, comma separated (e.g. 30,50)");
    cmd->add_option("--probs", f.probs, "per-dimension link probabilities (e.g. 0.7,0.5)");
    cmd->add_option("--trials", f.trials, "Monte Carlo trials (default 50)");
    cmd->add_option("--seed", f.seed, "base seed (default 42)");
    cmd->add_option("--grid-points", f.grid_points, "grid size (default 2000)");
    cmd->add_option("--margin", f.margin, "grid margin beyond the branch values (default 0.1)");
    cmd->add_option("--epsilon", f.epsilon, "inversion width, or 'auto' for twice the grid spacing");
    cmd->add_flag("--normalized", f.normalized, "use sqrt(gamma)-scaled row-normalized adjacency");
    cmd->add_option("--output", f.output, "output CSV path (default stdout)");
    cmd->add_option("--config", f.config, "JSON config file; flags override its values");
    cmd->add_option("--threads", f.threads, "worker threads (default: hardware concurrency)");
}

RunConfig resolve(const CLI::App* cmd, const Flags& f) {
    RunConfig c = f.config.empty() ? RunConfig{} : load_json_config_file(f.config);
    auto given = [&](const char* name) { return cmd->count(name) > 0; };
    if (given("--dims")) c.dims = split_list<std::uint64_t>(f.dims, "dims");
    if (given("--probs")) c.probs = split_list<double>(f.probs, "probs");
    if (given("--trials")) c.trials = f.trials;
    if (given("--seed")) c.seed = f.seed;
    if (given("--grid-points")) c.grid_points = f.grid_points;
    if (given("--margin")) c.margin = f.margin;
    if (given("--epsilon")) {
        if (f.epsilon == "auto") {
            c.epsilon.reset();
        } else {
            try {
                c.epsilon = std::stod(f.epsilon);
            } catch (const std::exception&) {
                throw ConfigError("cannot parse epsilon '" + f.epsilon + "'");
            }
        }
    }
    if (given("--normalized")) c.normalized = f.normalized;
    if (given("--output")) c.output_path = f.output;
    if (given("--threads")) c.threads = f.threads;
    c.validate();
    return c;
}

// CSV goes to the output file, or stdout; reports then go to stderr.
struct Sink {
    std::unique_ptr<std::ofstream> file;
    std::ostream& csv() { return file ? *file : std::cout; }
    std::ostream& report() { return file ? std::cout : std::cerr; }
};

Sink open_sink(const RunConfig& c) {
    Sink s;
    if (!c.output_path.empty() && c.output_path != "-") {
        s.file = std::make_unique<std::ofstream>(c.output_path);
        if (!*s.file) throw ConfigError("cannot open output file " + c.output_path);
    }
    return s;
}

int cmd_solve(const RunConfig& c) {
    const auto r = run_solve(c);
    auto sink = open_sink(c);
    write_csv(sink.csv(), &r.curve, nullptr);
    return kOk;
}

int cmd_simulate(const RunConfig& c) {
    const auto r = run_simulate(c);
    auto sink = open_sink(c);
    write_csv(sink.csv(), nullptr, &r.curve);
    return kOk;
}

int cmd_compare(const RunConfig& c) {
    const auto r = run_compare(c);
    auto sink = open_sink(c);
    write_csv(sink.csv(), &r.deterministic, &r.empirical);
    auto& rep = sink.report();
    rep << "kolmogorov=" << format_double(r.distances.kolmogorov) << " levy=" << format_double(r.distances.levy)
        << " main_lobe_kolmogorov=" << format_double(r.lobes.main_lobe)
        << " minor_lobe_kolmogorov=" << format_double(r.lobes.minor_lobes)
        << " smoothed_kolmogorov=" << format_double(r.smoothed_kolmogorov)
        << " grid_points=" << r.distances.grid_points << " epsilon=" << format_double(r.deterministic.epsilon);
    if (r.normalized_levy) rep << " normalized_vs_scaled_levy=" << format_double(*r.normalized_levy);
    rep << '\n';
    return kOk;
}

int cmd_oracle(const RunConfig& c, const std::vector<std::string>& z_text) {
    std::vector<std::complex<double>> zs;
    for (const auto& t : z_text) zs.push_back(parse_complex(t));
    if (zs.empty()) zs = default_oracle_points();
    constexpr double kAgreement = 1e-8;
    bool all_ok = true;
    for (const auto& line : run_oracle(c, zs)) {
        const bool ok = line.difference <= kAgreement;
        all_ok = all_ok && ok;
        std::cout << "z=" << format_double(line.z.real()) << (line.z.imag() < 0 ? "" : "+")
                  << format_double(line.z.imag()) << "i scalar=" << format_double(line.scalar.real())
                  << (line.scalar.imag() < 0 ? "" : "+") << format_double(line.scalar.imag())
                  << "i diff=" << format_double(line.difference)
                  << " form_residual=" << format_double(line.form_residual) << (ok ? " ok" : " FAIL") << '\n';
    }
    return all_ok ? kOk : kOracle;
}

int cmd_conditions(const RunConfig& c) {
    const auto r = run_conditions(c);
    std::cout << "mean_row_sum=" << format_double(r.mean_row_sum) << '\n'
              << "variance_row_sum=" << format_double(r.variance_row_sum) << '\n'
              << "max_entry_bound=" << format_double(r.max_entry_bound) << '\n'
              << "min_scaled_variance=" << format_double(r.min_scaled_variance) << '\n';
    return kOk;
}

int cmd_edges(const RunConfig& c) {
    const auto s = sample(c.spec(), c.seed);
    auto sink = open_sink(c);
    write_edge_list(s, sink.csv());
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic-equivalent spectra of percolated lattice graphs"};
    app.require_subcommand(1);
    Flags flags;

    auto* solve = app.add_subcommand("solve", "deterministic density and CDF on the auto grid");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo empirical density and CDF");
    auto* compare = app.add_subcommand("compare", "both curves on a shared grid plus distances");
    auto* oracle = app.add_subcommand("oracle", "scalar solver vs. matrix canonical iteration");
    auto* conditions = app.add_subcommand("conditions", "report the applicability condition values");
    auto* edges = app.add_subcommand("edges", "export the edge list of one sample (uses --seed)");
    for (auto* cmd : {solve, simulate, compare, oracle, conditions, edges}) add_common(cmd, flags);
    oracle->add_option("--z", flags.z, "evaluation point such as 0.2+0.7i (repeatable; default 25-point grid)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        CLI::App* cmd = app.get_subcommands().front();
        const auto config = resolve(cmd, flags);
        if (cmd == solve) return cmd_solve(config);
        if (cmd == simulate) return cmd_simulate(config);
        if (cmd == compare) return cmd_compare(config);
        if (cmd == oracle) return cmd_oracle(config, flags.z);
        if (cmd == conditions) return cmd_conditions(config);
        return cmd_edges(config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const SizeLimitError& e) {
        std::cerr << "size limit: " << e.what() << '\n';
        return kSize;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const OracleError& e) {
        std::cerr << "oracle failure: " << e.what() << '\n';
        return kOracle;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
}
