#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "latspec/curve.hpp"
#include "latspec/percolation.hpp"

namespace latspec {

// Largest matrix accepted by the dense eigensolver.
inline constexpr Eigen::Index kEigenSolveLimit = 4000;

struct EmpiricalSpectrum {
    std::vector<double> eigenvalues; // ascending
    std::size_t source_count = 1;

    // Concatenates and re-sorts; source_count adds up.
    static EmpiricalSpectrum pool(std::span<const EmpiricalSpectrum> spectra);
};

// Ascending eigenvalues of a symmetric matrix (tolerance 1e-12), or of a
// row-normalized 0/1 adjacency Delta^{-1} A, which is reduced to the similar
// symmetric Delta^{-1/2} A Delta^{-1/2}. Anything else is rejected.
std::vector<double> eigenvalues(const Eigen::MatrixXd& matrix);

// Spectrum of A / gamma, optionally multiplied by `scale`.
EmpiricalSpectrum scaled_spectrum(const PercolationSample& s, double scale = 1.0);

// Spectrum of Delta^{-1} A (isolated nodes give 0), optionally multiplied by `scale`.
EmpiricalSpectrum row_normalized_spectrum(const PercolationSample& s, double scale = 1.0);

// Fraction of eigenvalues <= x.
double esd_cdf(const EmpiricalSpectrum& spectrum, double x);

// Pointwise mean of esd_cdf over spectra of equal size on an ascending grid.
SpectralCurve average_esd(std::span<const EmpiricalSpectrum> spectra, const std::vector<double>& grid);

// (1/count) sum_i 1/(lambda_i - z); rejects real z.
std::complex<double> empirical_stieltjes(const EmpiricalSpectrum& spectrum, std::complex<double> z);

// (1/pi) Im S(x + i epsilon) on the grid.
SpectralCurve smoothed_density(const EmpiricalSpectrum& spectrum, const std::vector<double>& grid,
                               double epsilon);

} // namespace latspec
