#pragma once

// Uniform periodic grid on [0, 2 pi M) with its DFT wavenumbers, plus the
// spectral derivative and rectangle-rule quadrature built on it.

#include <Eigen/Dense>

namespace socbloch {

struct Grid {
    int M = 0;  ///< number of 2 pi cells; the domain holds 2M lattice wells
    int N = 0;  ///< number of points, a power of two
    double L = 0;
    double dx = 0;
    Eigen::ArrayXd x;  ///< x_i = i L / N
    Eigen::ArrayXd k;  ///< DFT ordering: 0, 1/M, ..., -1/M
};

/// Throws InvalidGrid unless M >= 1, N is a power of two >= 64 and N/M >= 16.
Grid make_grid(int M, int N);

/// Unnormalised forward DFT, c_m = sum_i f_i exp(-2 pi i i m / N).
Eigen::ArrayXcd forward(const Eigen::ArrayXcd& f);

/// Inverse of `forward` (carries the 1/N).
Eigen::ArrayXcd inverse(const Eigen::ArrayXcd& c);

/// d/dx, exact for trigonometric polynomials below Nyquist. The Nyquist mode
/// is dropped.
Eigen::ArrayXcd differentiate(const Grid& grid, const Eigen::ArrayXcd& f);

/// d^2/dx^2 (keeps the Nyquist mode, whose second-derivative factor is real).
Eigen::ArrayXcd differentiate2(const Grid& grid, const Eigen::ArrayXcd& f);

/// Rectangle rule over the full period.
double integrate(const Grid& grid, const Eigen::ArrayXd& f);

/// V0 sin^2 x sampled on the grid.
Eigen::ArrayXd lattice_potential(const Grid& grid, double V0);

}  // namespace socbloch
