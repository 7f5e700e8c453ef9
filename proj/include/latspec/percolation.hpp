#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "latspec/lattice.hpp"

namespace latspec {

// Retained supergraph link, 1-based with i < j.
struct Edge {
    std::uint64_t i;
    std::uint64_t j;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// One realization of the percolated lattice. Edges are sorted lexicographically.
struct PercolationSample {
    LatticeSpec spec;
    std::uint64_t seed = 0;
    std::vector<Edge> edges;

    std::vector<std::uint64_t> degrees() const;
};

struct GirkoConditionReport {
    double mean_row_sum;        // max_i sum_j |B_ij|
    double variance_row_sum;    // max_i sum_j E[H_ij^2]
    double max_entry_bound;     // sup |H_ij| <= 1/gamma
    double min_scaled_variance; // inf over link positions of N E[H_ij^2]
};

// Uniform double in [0, 1) determined only by (seed, i, j).
double link_uniform(std::uint64_t seed, std::uint64_t i, std::uint64_t j);

// Seed of Monte Carlo trial `trial` in a run seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// Keeps each link along dimension d when link_uniform(seed, i, j) < p_d, so the
// outcome does not depend on traversal order.
PercolationSample sample(const LatticeSpec& spec, std::uint64_t seed);

// W = A / gamma.
Eigen::MatrixXd scaled_adjacency(const PercolationSample& s);

// Delta^{-1} A; rows of isolated nodes are zero.
Eigen::MatrixXd row_normalized_adjacency(const PercolationSample& s);

// Delta^{-1/2} A Delta^{-1/2} with zero rows/columns at isolated nodes. Similar
// to row_normalized_adjacency on the non-isolated part.
Eigen::MatrixXd symmetric_normalized_adjacency(const PercolationSample& s);

// E[H_ij^2] = p_d (1 - p_d) / gamma^2 at links along d, zero elsewhere.
Eigen::MatrixXd link_variance_profile(const LatticeSpec& spec);

GirkoConditionReport girko_conditions(const LatticeSpec& spec);

// One "i j" line per edge, 1-based, i < j, lexicographic.
void write_edge_list(const PercolationSample& s, std::ostream& out);

} // namespace latspec
