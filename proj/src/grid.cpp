#include "socbloch/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <numbers>
#include <string>

#include "socbloch/errors.hpp"

namespace socbloch {

namespace {

// One plan cache per thread; Eigen::FFT is not safe to share.
Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine;
    return engine;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid make_grid(int M, int N) {
    if (M < 1) throw Error(ErrorKind::InvalidGrid, "M must be >= 1, got " + std::to_string(M));
    if (N < 64 || !is_power_of_two(N)) {
        throw Error(ErrorKind::InvalidGrid, "N must be a power of two >= 64, got " + std::to_string(N));
    }
    if (N / M < 16 || N % M != 0) {
        throw Error(ErrorKind::InvalidGrid, "need at least 16 points per 2pi cell (N/M >= 16)");
    }
    Grid g;
    g.M = M;
    g.N = N;
    g.L = 2 * std::numbers::pi * M;
    g.dx = g.L / N;
    g.x.resize(N);
    g.k.resize(N);
    for (int i = 0; i < N; ++i) {
        g.x(i) = g.L * i / N;
        const int m = i <= N / 2 ? i : i - N;
        g.k(i) = static_cast<double>(m) / M;
    }
    return g;
}

Eigen::ArrayXcd forward(const Eigen::ArrayXcd& f) {
    Eigen::VectorXcd in = f.matrix();
    Eigen::VectorXcd out;
    fft_engine().fwd(out, in);
    return out.array();
}

Eigen::ArrayXcd inverse(const Eigen::ArrayXcd& c) {
    Eigen::VectorXcd in = c.matrix();
    Eigen::VectorXcd out;
    fft_engine().inv(out, in);
    return out.array();
}

Eigen::ArrayXcd differentiate(const Grid& grid, const Eigen::ArrayXcd& f) {
    Eigen::ArrayXcd c = forward(f);
    const std::complex<double> I(0, 1);
    c *= I * grid.k;
    c(grid.N / 2) = 0;
    return inverse(c);
}

Eigen::ArrayXcd differentiate2(const Grid& grid, const Eigen::ArrayXcd& f) {
    Eigen::ArrayXcd c = forward(f);
    c *= -grid.k.square();
    return inverse(c);
}

double integrate(const Grid& grid, const Eigen::ArrayXd& f) { return f.sum() * grid.dx; }

Eigen::ArrayXd lattice_potential(const Grid& grid, double V0) { return V0 * grid.x.sin().square(); }

}  // namespace socbloch
