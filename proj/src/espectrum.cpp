#include "latspec/espectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "latspec/error.hpp"

namespace latspec {

namespace {

constexpr double kSymmetryTolerance = 1e-12;

bool is_symmetric(const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance) return false;
        }
    }
    return true;
}

// Recognizes Delta^{-1} A for a symmetric 0/1 pattern A: every nonzero row holds
// equal entries 1/deg_i and the sparsity pattern is symmetric. Returns the
// similar matrix Delta^{-1/2} A Delta^{-1/2}, or an empty matrix.
Eigen::MatrixXd symmetrize_row_normalized(const Eigen::MatrixXd& m) {
    const Eigen::Index n = m.rows();
    std::vector<double> deg(static_cast<std::size_t>(n), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        double value = 0.0;
        Eigen::Index count = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double v = m(i, j);
            if (v == 0.0) continue;
            if ((m(j, i) == 0.0) || v < 0.0) return {};
            if (count > 0 && std::abs(v - value) > kSymmetryTolerance) return {};
            value = v;
            ++count;
        }
        if (count > 0 && std::abs(value * static_cast<double>(count) - 1.0) > 1e-9) return {};
        deg[static_cast<std::size_t>(i)] = static_cast<double>(count);
    }
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (m(i, j) != 0.0) {
                s(i, j) = 1.0 / std::sqrt(deg[static_cast<std::size_t>(i)] * deg[static_cast<std::size_t>(j)]);
            }
        }
    }
    return s;
}

std::vector<double> solve_symmetric(const Eigen::MatrixXd& m) {
    if (m.rows() > kEigenSolveLimit) {
        throw SizeLimitError("dense eigensolve requested for N=" + std::to_string(m.rows()) + " > " +
                             std::to_string(kEigenSolveLimit));
    }
    if (m.rows() == 0) return {};
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

void scale_in_place(std::vector<double>& values, double scale) {
    if (scale == 1.0) return;
    for (auto& v : values) v *= scale;
    std::sort(values.begin(), values.end());
}

} // namespace

EmpiricalSpectrum EmpiricalSpectrum::pool(std::span<const EmpiricalSpectrum> spectra) {
    EmpiricalSpectrum out;
    out.source_count = 0;
    for (const auto& s : spectra) {
        out.eigenvalues.insert(out.eigenvalues.end(), s.eigenvalues.begin(), s.eigenvalues.end());
        out.source_count += s.source_count;
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

std::vector<double> eigenvalues(const Eigen::MatrixXd& matrix) {
    if (matrix.rows() != matrix.cols()) throw ConfigError("eigenvalues of a non-square matrix");
    if (is_symmetric(matrix)) return solve_symmetric(matrix);
    auto similar = symmetrize_row_normalized(matrix);
    if (similar.size() == 0) {
        throw ConfigError("matrix is neither symmetric nor a row-normalized symmetric adjacency");
    }
    return solve_symmetric(similar);
}

EmpiricalSpectrum scaled_spectrum(const PercolationSample& s, double scale) {
    EmpiricalSpectrum out{solve_symmetric(scaled_adjacency(s)), 1};
    scale_in_place(out.eigenvalues, scale);
    return out;
}

EmpiricalSpectrum row_normalized_spectrum(const PercolationSample& s, double scale) {
    EmpiricalSpectrum out{solve_symmetric(symmetric_normalized_adjacency(s)), 1};
    scale_in_place(out.eigenvalues, scale);
    return out;
}

double esd_cdf(const EmpiricalSpectrum& spectrum, double x) {
    if (spectrum.eigenvalues.empty()) throw ConfigError("empirical CDF of an empty spectrum");
    const auto& ev = spectrum.eigenvalues;
    const auto count = std::upper_bound(ev.begin(), ev.end(), x) - ev.begin();
    return static_cast<double>(count) / static_cast<double>(ev.size());
}

SpectralCurve average_esd(std::span<const EmpiricalSpectrum> spectra, const std::vector<double>& grid) {
    if (spectra.empty()) throw ConfigError("average of zero spectra");
    const auto size = spectra.front().eigenvalues.size();
    for (const auto& s : spectra) {
        if (s.eigenvalues.size() != size) throw ConfigError("spectra of different sizes cannot be averaged");
    }
    if (!std::is_sorted(grid.begin(), grid.end())) throw ConfigError("grid must be ascending");
    // The mean of equal-size ESDs is the ESD of the pooled eigenvalues.
    const auto pooled = EmpiricalSpectrum::pool(spectra);
    SpectralCurve out;
    out.grid = grid;
    out.cdf.reserve(grid.size());
    for (double x : grid) out.cdf.push_back(esd_cdf(pooled, x));
    out.label = "empirical";
    return out;
}

std::complex<double> empirical_stieltjes(const EmpiricalSpectrum& spectrum, std::complex<double> z) {
    if (z.imag() == 0.0) throw ConfigError("Stieltjes transform is undefined on the real axis");
    if (spectrum.eigenvalues.empty()) throw ConfigError("Stieltjes transform of an empty spectrum");
    std::complex<double> sum = 0.0;
    for (double lambda : spectrum.eigenvalues) sum += 1.0 / (lambda - z);
    return sum / static_cast<double>(spectrum.eigenvalues.size());
}

SpectralCurve smoothed_density(const EmpiricalSpectrum& spectrum, const std::vector<double>& grid,
                               double epsilon) {
    if (!(epsilon > 0.0)) throw ConfigError("smoothing width must be positive");
    SpectralCurve out;
    out.grid = grid;
    out.epsilon = epsilon;
    out.density.reserve(grid.size());
    for (double x : grid) {
        out.density.push_back(empirical_stieltjes(spectrum, {x, epsilon}).imag() / std::numbers::pi);
    }
    out.label = "empirical";
    return out;
}

} // namespace latspec
