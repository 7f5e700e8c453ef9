#include "latspec/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "latspec/error.hpp"

namespace latspec {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Eigen::Index as_index(std::uint64_t x) { return static_cast<Eigen::Index>(x); }

void check_dense(const LatticeSpec& spec) {
    const auto n = node_count(spec);
    if (n > kDenseNodeLimit) {
        throw SizeLimitError("dense matrix requested for N=" + std::to_string(n) + " > " +
                             std::to_string(kDenseNodeLimit));
    }
}

} // namespace

double link_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j) {
    const auto lo = std::min(i, j);
    const auto hi = std::max(i, j);
    const std::uint64_t h = mix64(mix64(mix64(seed) ^ lo) ^ hi);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return mix64(seed ^ mix64(trial + 0x632be59bd9b4e019ULL));
}

std::vector<std::uint64_t> PercolationSample::degrees() const {
    std::vector<std::uint64_t> deg(node_count(spec), 0);
    for (const auto& e : edges) {
        ++deg[e.i - 1];
        ++deg[e.j - 1];
    }
    return deg;
}

PercolationSample sample(const LatticeSpec& spec, std::uint64_t seed) {
    PercolationSample out{spec, seed, {}};
    for_each_link(spec, [&](std::uint64_t i, std::uint64_t j, std::size_t d) {
        if (link_uniform(seed, i, j) < spec.probs[d]) out.edges.push_back({i, j});
    });
    return out;
}

Eigen::MatrixXd scaled_adjacency(const PercolationSample& s) {
    check_dense(s.spec);
    const auto n = as_index(node_count(s.spec));
    const double w = 1.0 / expected_degree(s.spec);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : s.edges) {
        m(as_index(e.i - 1), as_index(e.j - 1)) = w;
        m(as_index(e.j - 1), as_index(e.i - 1)) = w;
    }
    return m;
}

Eigen::MatrixXd row_normalized_adjacency(const PercolationSample& s) {
    check_dense(s.spec);
    const auto n = as_index(node_count(s.spec));
    const auto deg = s.degrees();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : s.edges) {
        m(as_index(e.i - 1), as_index(e.j - 1)) = 1.0 / static_cast<double>(deg[e.i - 1]);
        m(as_index(e.j - 1), as_index(e.i - 1)) = 1.0 / static_cast<double>(deg[e.j - 1]);
    }
    return m;
}

Eigen::MatrixXd symmetric_normalized_adjacency(const PercolationSample& s) {
    check_dense(s.spec);
    const auto n = as_index(node_count(s.spec));
    const auto deg = s.degrees();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : s.edges) {
        const double v = 1.0 / std::sqrt(static_cast<double>(deg[e.i - 1]) * static_cast<double>(deg[e.j - 1]));
        m(as_index(e.i - 1), as_index(e.j - 1)) = v;
        m(as_index(e.j - 1), as_index(e.i - 1)) = v;
    }
    return m;
}

Eigen::MatrixXd link_variance_profile(const LatticeSpec& spec) {
    check_dense(spec);
    const auto n = as_index(node_count(spec));
    const double gamma = expected_degree(spec);
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
    for_each_link(spec, [&](std::uint64_t i, std::uint64_t j, std::size_t d) {
        const double p = spec.probs[d];
        v(as_index(i - 1), as_index(j - 1)) = p * (1.0 - p) / (gamma * gamma);
        v(as_index(j - 1), as_index(i - 1)) = v(as_index(i - 1), as_index(j - 1));
    });
    return v;
}

GirkoConditionReport girko_conditions(const LatticeSpec& spec) {
    const double gamma = expected_degree(spec);
    const double n = static_cast<double>(node_count(spec));
    // Every node has M_d - 1 neighbours along dimension d, so all row sums coincide.
    double mean = 0.0;
    double variance = 0.0;
    double min_var = std::numeric_limits<double>::infinity();
    for (std::size_t d = 0; d < spec.dims.size(); ++d) {
        const double p = spec.probs[d];
        const double links = static_cast<double>(spec.dims[d] - 1);
        mean += links * p;
        variance += links * p * (1.0 - p);
        min_var = std::min(min_var, p * (1.0 - p));
    }
    return GirkoConditionReport{
        .mean_row_sum = mean / gamma,
        .variance_row_sum = variance / (gamma * gamma),
        .max_entry_bound = 1.0 / gamma,
        .min_scaled_variance = n * min_var / (gamma * gamma),
    };
}

void write_edge_list(const PercolationSample& s, std::ostream& out) {
    for (const auto& e : s.edges) out << e.i << ' ' << e.j << '\n';
}

} // namespace latspec
