#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "latspec/lattice.hpp"

namespace latspec {

using cdouble = std::complex<double>;

// Scalars of the deterministic-equivalent system for one lattice model.
struct CanonicalProblem {
    LatticeSpec spec;
    double gamma = 0.0;
    // sigma^2 = (1/gamma^2) sum_d p_d (1 - p_d) (M_d - 1), the variance row sum.
    double variance_sum = 0.0;
    // All 2^D branches (b_j, m_j), indexed by j, never merged.
    std::vector<Branch> branches;
    std::uint64_t node_count = 0;
};

struct CanonicalSolution {
    cdouble z;
    cdouble alpha_principal; // alpha_{1...1}(z)
    double residual = 0.0;   // |alpha - G(alpha)| at exit
    int iterations = 0;
};

// Coefficients of C(z) in the basis kron_d Y_{d i_d} (Y_{d0} = K_{M_d}, Y_{d1} = I).
// Bit d of the vector position is i_d.
struct AlphaVector {
    std::vector<cdouble> coefficients;

    cdouble principal() const { return coefficients.back(); }
};

struct SolverOptions {
    double tolerance = 1e-12; // on |alpha - G(alpha)|, relative to max(1, |alpha|)
    int max_iterations = 100000;
    // Starting point; must satisfy Im z * Im alpha0 > 0. Defaults to i sign(Im z).
    std::optional<cdouble> initial;
};

CanonicalProblem build_problem(const LatticeSpec& spec);

// Right-hand side of the self-consistency equation
//   G(alpha) = (1/N) sum_j m_j / (b_j - z - sigma^2 alpha).
cdouble canonical_map(const CanonicalProblem& problem, cdouble z, cdouble alpha);

// Unique root of alpha = G(alpha) with Im z * Im alpha > 0.
//
// Newton steps on alpha - G(alpha), accepted while they stay admissible and
// reduce the residual, with plain steps alpha <- G(alpha) as the fallback. Close
// to the real axis the root is tracked by continuation in Im z from a height
// where plain steps contract. `max_iterations` bounds the total over all
// stages. Throws ConfigError for real z and SolverError on reaching the cap.
CanonicalSolution solve_alpha(const CanonicalProblem& problem, cdouble z, const SolverOptions& options = {});

// Solves the 2^D linear system sum_i alpha_i prod_d lambda_{d i_d}(j_d) = RHS_j,
// RHS_j = 1 / (b_j - z - sigma^2 alpha_{1...1}). The system matrix is a
// Kronecker product of 2x2 blocks [[M_d - 1, 1], [-1, 1]] (rows j_d, columns i_d),
// inverted factor by factor.
AlphaVector recover_all_alphas(const CanonicalProblem& problem, const CanonicalSolution& solution);

// S_{F_N}(z) = alpha_{1...1}(z).
cdouble deterministic_stieltjes(const CanonicalProblem& problem, cdouble z);

struct SolutionFormFit {
    AlphaVector alphas;       // least-squares coefficients in the Kronecker basis
    double relative_residual; // ||C - fit||_F / ||C||_F
};

// Projects an N x N matrix onto span{kron_d Y_{d i_d}}.
SolutionFormFit project_solution_form(const LatticeSpec& spec, const Eigen::MatrixXcd& c);

struct K1OracleResult {
    cdouble stieltjes;
    Eigen::MatrixXcd resolvent; // converged C(z)
    double form_residual = 0.0;
    int iterations = 0;
};

inline constexpr std::uint64_t kOracleNodeLimit = 600;

// Iterates the full matrix canonical system
//   C <- (B - zI - diag_k(sum_s C_ss E[H_ks^2]))^{-1}
// from C = i sign(Im z) I until successive trace averages differ by < tol.
// The variance profile is taken entrywise from the percolation model, not
// from the scalar sigma^2. Throws OracleError on non-convergence or when the
// converged C leaves the Kronecker solution form by more than 10 tol.
K1OracleResult matrix_k1_oracle(const LatticeSpec& spec, cdouble z, double tol = 1e-13,
                                int max_iterations = 200000);

} // namespace latspec
