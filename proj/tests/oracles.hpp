#pragma once

// Reference constructions used only by the tests. They follow the textbook
// definitions directly and share no code paths with the library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "latspec/lattice.hpp"

namespace latspec::oracle {

inline Eigen::MatrixXd complete_graph(Eigen::Index m) {
    return Eigen::MatrixXd::Ones(m, m) - Eigen::MatrixXd::Identity(m, m);
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// kron_{d} X_{dj} with the first lattice dimension as the fastest-varying
// (least significant) index, matching the mixed-radix node numbering.
inline Eigen::MatrixXd kronecker_term(const LatticeSpec& spec, std::size_t term) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Ones(1, 1);
    for (std::size_t d = spec.dims.size(); d-- > 0;) {
        const auto m = static_cast<Eigen::Index>(spec.dims[d]);
        out = kron(out, d == term ? complete_graph(m) : Eigen::MatrixXd::Identity(m, m));
    }
    return out;
}

inline Eigen::MatrixXd kronecker_adjacency(const LatticeSpec& spec) {
    Eigen::MatrixXd out = kronecker_term(spec, 0);
    for (std::size_t d = 1; d < spec.dims.size(); ++d) out += kronecker_term(spec, d);
    return out;
}

inline Eigen::MatrixXd kronecker_expected(const LatticeSpec& spec) {
    double gamma = 0.0;
    for (std::size_t d = 0; d < spec.dims.size(); ++d) gamma += spec.probs[d] * double(spec.dims[d] - 1);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(1, 1);
    for (std::size_t d = 0; d < spec.dims.size(); ++d) {
        Eigen::MatrixXd t = spec.probs[d] / gamma * kronecker_term(spec, d);
        out = d == 0 ? t : Eigen::MatrixXd(out + t);
    }
    return out;
}

// Basis matrix kron_d Y_{d i_d}, Y_{d0} = K_{M_d}, Y_{d1} = I.
inline Eigen::MatrixXd solution_basis(const LatticeSpec& spec, std::size_t bits) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Ones(1, 1);
    for (std::size_t d = spec.dims.size(); d-- > 0;) {
        const auto m = static_cast<Eigen::Index>(spec.dims[d]);
        out = kron(out, ((bits >> d) & 1U) ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(m, m)) : complete_graph(m));
    }
    return out;
}

// Mixed-radix digits by counting up from the first node.
inline std::vector<std::vector<std::uint64_t>> enumerate_digits(const LatticeSpec& spec) {
    std::uint64_t n = 1;
    for (auto m : spec.dims) n *= m;
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> cur(spec.dims.size(), 0);
    for (std::uint64_t x = 0; x < n; ++x) {
        out.push_back(cur);
        for (std::size_t d = 0; d < cur.size(); ++d) {
            if (++cur[d] < spec.dims[d]) break;
            cur[d] = 0;
        }
    }
    return out;
}

// Root of s2 a^2 + (z - c) a + 1 = 0 with Im a of the same sign as Im z: the
// Stieltjes transform of the semicircle law of variance s2 centred at c.
inline std::complex<double> semicircle_stieltjes(std::complex<double> z, double c, double s2) {
    const std::complex<double> b = z - c;
    const std::complex<double> disc = std::sqrt(b * b - 4.0 * s2);
    const std::complex<double> r1 = (-b + disc) / (2.0 * s2);
    const std::complex<double> r2 = (-b - disc) / (2.0 * s2);
    return (r1.imag() * z.imag() > 0.0) ? r1 : r2;
}

inline double semicircle_density(double x, double c, double s2) {
    const double r2 = 4.0 * s2 - (x - c) * (x - c);
    return r2 > 0.0 ? std::sqrt(r2) / (2.0 * std::numbers::pi * s2) : 0.0;
}

// Random valid spec with D <= max_dim, sizes in [2, max_size], N <= max_nodes.
inline LatticeSpec random_spec(std::mt19937_64& rng, std::size_t max_dim, std::uint64_t max_size,
                               std::uint64_t max_nodes) {
    std::uniform_int_distribution<std::size_t> dim_dist(1, max_dim);
    std::uniform_int_distribution<std::uint64_t> size_dist(2, max_size);
    std::uniform_real_distribution<double> prob_dist(0.05, 1.0);
    for (;;) {
        LatticeSpec s;
        const auto d = dim_dist(rng);
        std::uint64_t n = 1;
        for (std::size_t k = 0; k < d; ++k) {
            s.dims.push_back(size_dist(rng));
            s.probs.push_back(prob_dist(rng));
            n *= s.dims.back();
        }
        if (n <= max_nodes) return s;
    }
}

} // namespace latspec::oracle
