#include "latspec/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "latspec/error.hpp"
#include "latspec/percolation.hpp"

namespace latspec {

namespace {

constexpr int kMaxBacktracks = 20;
// Ratio between successive heights Im z in the continuation.
constexpr double kContinuationFactor = 0.5;

std::string format_z(cdouble z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

bool in_class_l(cdouble z, cdouble alpha) { return z.imag() * alpha.imag() > 0.0; }

// d/d alpha of canonical_map.
cdouble canonical_map_derivative(const CanonicalProblem& p, cdouble z, cdouble alpha) {
    const double s2 = p.variance_sum;
    cdouble sum = 0.0;
    for (const auto& br : p.branches) {
        const cdouble d = br.value - z - s2 * alpha;
        sum += static_cast<double>(br.multiplicity) / (d * d);
    }
    return s2 * sum / static_cast<double>(p.node_count);
}

void require_off_axis(cdouble z) {
    if (z.imag() == 0.0) throw ConfigError("z = " + format_z(z) + " lies on the real axis");
}

} // namespace

CanonicalProblem build_problem(const LatticeSpec& spec) {
    CanonicalProblem p;
    p.spec = spec;
    p.gamma = expected_degree(spec);
    double var = 0.0;
    for (std::size_t d = 0; d < spec.dims.size(); ++d) {
        const double pd = spec.probs[d];
        var += pd * (1.0 - pd) * static_cast<double>(spec.dims[d] - 1);
    }
    p.variance_sum = var / (p.gamma * p.gamma);
    p.branches = expected_branches(spec);
    p.node_count = node_count(spec);
    return p;
}

cdouble canonical_map(const CanonicalProblem& p, cdouble z, cdouble alpha) {
    const cdouble shift = z + p.variance_sum * alpha;
    cdouble sum = 0.0;
    for (const auto& br : p.branches) sum += static_cast<double>(br.multiplicity) / (br.value - shift);
    return sum / static_cast<double>(p.node_count);
}

namespace {

struct Iterate {
    cdouble alpha;
    double residual = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Newton steps on alpha - G(alpha) while they stay admissible and reduce the
// residual, plain steps alpha <- G(alpha) otherwise.
Iterate iterate_from(const CanonicalProblem& p, cdouble z, cdouble alpha, double tolerance, int budget) {
    auto g_of = [&](cdouble a) { return canonical_map(p, z, a); };
    auto done = [&](cdouble a, double r) { return r <= tolerance * std::max(1.0, std::abs(a)); };
    cdouble g = g_of(alpha);
    double res = std::abs(g - alpha);
    for (int iter = 0; iter < budget; ++iter) {
        if (done(alpha, res)) return {alpha, res, iter, true};
        const cdouble slope = 1.0 - canonical_map_derivative(p, z, alpha);
        bool accepted = false;
        if (slope != 0.0) {
            const cdouble step = -(alpha - g) / slope;
            double t = 1.0;
            for (int k = 0; k < kMaxBacktracks; ++k, t *= 0.5) {
                const cdouble cand = alpha + t * step;
                if (!in_class_l(z, cand)) continue;
                const cdouble gc = g_of(cand);
                const double rc = std::abs(gc - cand);
                if (rc < res) {
                    alpha = cand;
                    g = gc;
                    res = rc;
                    accepted = true;
                    break;
                }
            }
        }
        if (accepted) continue;
        // G maps the admissible half-plane into itself, so the plain step is always taken.
        alpha = g;
        g = g_of(alpha);
        res = std::abs(g - alpha);
    }
    return {alpha, res, budget, done(alpha, res)};
}

} // namespace

CanonicalSolution solve_alpha(const CanonicalProblem& p, cdouble z, const SolverOptions& opt) {
    require_off_axis(z);
    const double side = z.imag() > 0.0 ? 1.0 : -1.0;
    const cdouble start = opt.initial.value_or(cdouble{0.0, side});
    if (!in_class_l(z, start)) {
        throw ConfigError("initial point " + format_z(start) + " is outside the admissible half-plane");
    }

    if (p.variance_sum == 0.0) {
        // G does not depend on alpha; one evaluation is the fixed point.
        const cdouble a = canonical_map(p, z, start);
        return {z, a, std::abs(a - canonical_map(p, z, a)), 1};
    }

    auto fail = [&](const Iterate& r) {
        return SolverError("canonical solver did not converge at z = " + format_z(z) + " (residual " +
                               std::to_string(r.residual) + ")",
                           z, r.residual);
    };

    // |G'| <= sigma^2 / (Im z)^2, so plain steps contract at this height.
    const double height = std::abs(z.imag());
    const double safe_height = std::max(1.0, 2.0 * std::sqrt(p.variance_sum));
    int budget = opt.max_iterations;

    if (opt.initial || height >= safe_height) {
        const auto r = iterate_from(p, z, start, opt.tolerance, budget);
        if (r.converged) return {z, r.alpha, r.residual, r.iterations};
        if (height >= safe_height) throw fail(r);
        budget -= r.iterations;
    }

    // Continuation in Im z from the safe height down to the target, warm-starting each stage.
    cdouble alpha{0.0, side};
    int used = opt.max_iterations - budget;
    for (double h = safe_height;; h = std::max(height, h * kContinuationFactor)) {
        const cdouble zk{z.real(), side * h};
        const auto r = iterate_from(p, zk, alpha, opt.tolerance, budget);
        used += r.iterations;
        budget -= r.iterations;
        if (!r.converged) throw fail(r);
        alpha = r.alpha;
        if (h == height) return {z, alpha, r.residual, used};
    }
}

AlphaVector recover_all_alphas(const CanonicalProblem& p, const CanonicalSolution& sol) {
    const auto dim = p.spec.dims.size();
    const std::size_t count = std::size_t{1} << dim;
    if (p.branches.size() != count) throw ConfigError("problem branches do not match the lattice dimension");

    std::vector<cdouble> x(count);
    const cdouble shift = sol.z + p.variance_sum * sol.alpha_principal;
    for (const auto& br : p.branches) x[br.index] = 1.0 / (br.value - shift);

    for (std::size_t d = 0; d < dim; ++d) {
        const double m = static_cast<double>(p.spec.dims[d]);
        // det [[m - 1, 1], [-1, 1]] = m
        const double det = (m - 1.0) * 1.0 - 1.0 * (-1.0);
        if (det == 0.0) {
            throw ConfigError("coefficient system is singular along dimension " + std::to_string(d + 1));
        }
        const std::size_t bit = std::size_t{1} << d;
        for (std::size_t k = 0; k < count; ++k) {
            if (k & bit) continue;
            const cdouble r0 = x[k];
            const cdouble r1 = x[k | bit];
            x[k] = (r0 - r1) / det;
            x[k | bit] = (r0 + (m - 1.0) * r1) / det;
        }
    }
    return AlphaVector{std::move(x)};
}

cdouble deterministic_stieltjes(const CanonicalProblem& p, cdouble z) {
    return solve_alpha(p, z).alpha_principal;
}

SolutionFormFit project_solution_form(const LatticeSpec& spec, const Eigen::MatrixXcd& c) {
    const auto n = node_count(spec);
    if (static_cast<std::uint64_t>(c.rows()) != n || c.cols() != c.rows()) {
        throw ConfigError("matrix size does not match the lattice");
    }
    const auto dim = spec.dims.size();
    const std::size_t count = std::size_t{1} << dim;

    // The basis matrices have disjoint 0/1 supports covering every entry: entry
    // (x, y) belongs to the class with i_d = [beta_d(x) == beta_d(y)]. The
    // least-squares coefficient of each class is its mean.
    std::vector<std::vector<std::uint64_t>> digits(n);
    for (std::uint64_t x = 0; x < n; ++x) digits[x] = decode_index(spec, x + 1).digits;
    auto class_of = [&](std::uint64_t x, std::uint64_t y) {
        std::size_t k = 0;
        for (std::size_t d = 0; d < dim; ++d) {
            if (digits[x][d] == digits[y][d]) k |= std::size_t{1} << d;
        }
        return k;
    };

    std::vector<cdouble> sum(count, 0.0);
    std::vector<double> size(count, 0.0);
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = 0; y < n; ++y) {
            const auto k = class_of(x, y);
            sum[k] += c(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
            size[k] += 1.0;
        }
    }
    SolutionFormFit fit;
    fit.alphas.coefficients.resize(count);
    for (std::size_t k = 0; k < count; ++k) fit.alphas.coefficients[k] = sum[k] / size[k];

    double err = 0.0;
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = 0; y < n; ++y) {
            err += std::norm(c(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) -
                             fit.alphas.coefficients[class_of(x, y)]);
        }
    }
    const double total = c.squaredNorm();
    fit.relative_residual = total > 0.0 ? std::sqrt(err / total) : 0.0;
    return fit;
}

K1OracleResult matrix_k1_oracle(const LatticeSpec& spec, cdouble z, double tol, int max_iterations) {
    require_off_axis(z);
    const auto n64 = node_count(spec);
    if (n64 > kOracleNodeLimit) {
        throw SizeLimitError("matrix oracle limited to N <= " + std::to_string(kOracleNodeLimit) + ", got " +
                             std::to_string(n64));
    }
    const auto n = static_cast<Eigen::Index>(n64);
    const Eigen::MatrixXcd b = expected_scaled_adjacency(spec).cast<cdouble>();
    const Eigen::MatrixXd variance = link_variance_profile(spec);
    const double side = z.imag() > 0.0 ? 1.0 : -1.0;

    Eigen::MatrixXcd c = cdouble{0.0, side} * Eigen::MatrixXcd::Identity(n, n);
    cdouble trace_avg = c.trace() / static_cast<double>(n);

    for (int iter = 1; iter <= max_iterations; ++iter) {
        const Eigen::VectorXcd diag = c.diagonal();
        const Eigen::VectorXcd shift = variance.cast<cdouble>() * diag;
        Eigen::MatrixXcd m = b;
        for (Eigen::Index k = 0; k < n; ++k) m(k, k) -= z + shift(k);
        c = m.partialPivLu().inverse();

        const cdouble next = c.trace() / static_cast<double>(n);
        const double step = std::abs(next - trace_avg);
        trace_avg = next;
        if (!std::isfinite(step)) throw OracleError("matrix oracle diverged at z = " + format_z(z));
        if (step < tol) {
            auto fit = project_solution_form(spec, c);
            const double allowed = std::max(10.0 * tol, 1e-12);
            if (fit.relative_residual > allowed) {
                throw OracleError("converged resolvent leaves the Kronecker solution form (residual " +
                                  std::to_string(fit.relative_residual) + ") at z = " + format_z(z));
            }
            return {trace_avg, std::move(c), fit.relative_residual, iter};
        }
    }
    throw OracleError("matrix oracle did not converge at z = " + format_z(z));
}

} // namespace latspec
