#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace latspec {

// Largest N for which adjacency-type matrices are materialized densely.
inline constexpr std::uint64_t kDenseNodeLimit = 10000;

// Parameters of the percolation model: lattice sizes M_d and per-dimension
// link probabilities p_d. Construct through make() to get validation.
struct LatticeSpec {
    std::vector<std::uint64_t> dims;
    std::vector<double> probs;

    // Throws ConfigError unless D >= 1, every M_d >= 2, every p_d in (0, 1],
    // the lengths agree and N = prod M_d fits in 64 bits.
    static LatticeSpec make(std::vector<std::uint64_t> dims, std::vector<double> probs);

    void validate() const;
    std::size_t dimension() const noexcept { return dims.size(); }
};

// Digits beta(x, 1..D) of a node in the mixed-radix system with radices M_d.
// The first dimension is the least significant digit.
struct MixedRadixIndex {
    std::vector<std::uint64_t> digits;

    friend bool operator==(const MixedRadixIndex&, const MixedRadixIndex&) = default;
};

struct SpectrumEntry {
    double value;
    std::uint64_t multiplicity;
};

// Eigenvalues of E[W] with multiplicities, ascending by value, duplicates merged.
struct ExpectedSpectrum {
    std::vector<SpectrumEntry> entries;

    std::uint64_t total_multiplicity() const noexcept;
};

// One eigen-branch of E[W] indexed by j in {0,1}^D. Bit d of `index` holds j_d;
// j_d = 0 selects the all-ones eigenvector of K_{M_d}, j_d = 1 its complement.
struct Branch {
    std::uint64_t index;
    double value;
    std::uint64_t multiplicity;
};

std::uint64_t node_count(const LatticeSpec& spec);

// Public node numbering is 1-based: x = 1 + sum_d beta(x,d) prod_{j<d} M_j.
MixedRadixIndex decode_index(const LatticeSpec& spec, std::uint64_t x);
std::uint64_t encode_index(const LatticeSpec& spec, const MixedRadixIndex& index);

bool are_adjacent(const LatticeSpec& spec, std::uint64_t i, std::uint64_t j);

// Dimension along which nodes i and j (1-based) differ, or -1 when they are
// not linked in the supergraph.
int link_dimension(const LatticeSpec& spec, std::uint64_t i, std::uint64_t j);

// Visits every supergraph link once as (i, j, d) with 1-based i < j, in
// lexicographic order of (i, j). d is the 0-based lattice dimension.
void for_each_link(const LatticeSpec& spec,
                   const std::function<void(std::uint64_t, std::uint64_t, std::size_t)>& visit);

std::uint64_t link_count(const LatticeSpec& spec);

// Dense 0/1 adjacency of the supergraph. Throws SizeLimitError above kDenseNodeLimit.
Eigen::MatrixXd lattice_adjacency(const LatticeSpec& spec);

// B = E[W] = (1/gamma) sum_d p_d (Kronecker term d), dense.
Eigen::MatrixXd expected_scaled_adjacency(const LatticeSpec& spec);

// gamma = sum_d p_d (M_d - 1).
double expected_degree(const LatticeSpec& spec);

// All 2^D branches of E[W], unmerged, ordered by index.
std::vector<Branch> expected_branches(const LatticeSpec& spec);

ExpectedSpectrum expected_spectrum(const LatticeSpec& spec);

} // namespace latspec
