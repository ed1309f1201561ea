#pragma once

// The k = -1 Bloch solution family psi_j = a_j cos x + i b_j sin x and its
// observables: densities, per-well populations, superfluid currents and
// velocities, the space-time dependent Floquet state, and the spin reduced
// density matrix.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>

#include "socbloch/errors.hpp"
#include "socbloch/model.hpp"

namespace socbloch {

template <typename Real = double>
struct BlochCoefficientsT {
    std::array<Real, 2> a{};  ///< cos x amplitudes, >= 0
    std::array<Real, 2> b{};  ///< sin x amplitudes, >= 0
    Real mu = 0;
};

using BlochCoefficients = BlochCoefficientsT<double>;

namespace detail {

inline constexpr double sign_j(int j) { return j == 0 ? -1.0 : 1.0; }  // (-1)^j, j = 1, 2

/// N_j - V0/(2(g+g12)) may dip below zero by rounding when V0 sits on Vc;
/// the boundary band is absorbed here, anything further out is an error.
template <typename Real>
Real clamp_radicand(Real value, Real band, const char* what) {
    if (value >= 0) return value;
    if (value >= -band) return Real(0);
    std::ostringstream os;
    os << what << " radicand " << static_cast<double>(value) << " < 0";
    throw Error(ErrorKind::ConditionViolated, os.str());
}

template <typename Real>
Real populations_band(const PhysicalParamsT<Real>& p) {
    return Real(1e-12) * p.Nt;
}

/// Radicand slack corresponding to V0 sitting within kBoundaryRelTol of Vc.
template <typename Real>
Real depth_band(const PhysicalParamsT<Real>& p) {
    using std::abs;
    const Real s = abs(p.g + p.g12);
    if (s == 0) return populations_band(p);
    const Real vc = critical_depth(p).value;
    return Real(kBoundaryRelTol) * vc / (Real(2) * s) + populations_band(p);
}

}  // namespace detail

/// Per-well average populations (N1, N2). N1 + N2 == Nt.
template <typename Real>
std::array<Real, 2> well_populations(const PhysicalParamsT<Real>& p) {
    const Real X = imbalance_term(p);
    std::array<Real, 2> n{p.Nt / 2 + X, p.Nt / 2 - X};
    for (int j = 0; j < 2; ++j) {
        if (n[j] < -detail::populations_band(p)) {
            std::ostringstream os;
            os << "N" << j + 1 << " = " << static_cast<double>(n[j]) << " < 0 (gamma above gamma_max)";
            throw Error(ErrorKind::UnphysicalPopulation, os.str());
        }
        if (n[j] < 0) n[j] = 0;
    }
    return n;
}

/// Positive-root coefficients. Throws ConditionViolated outside V0 <= Vc or
/// gamma <= gamma_max. `mu_override` replaces the chemical potential (used to
/// probe the residual with a deliberately wrong mu).
template <typename Real>
BlochCoefficientsT<Real> coefficients(const PhysicalParamsT<Real>& p,
                                      std::optional<Real> mu_override = std::nullopt) {
    using std::sqrt;
    check_params(p);
    const Real X = imbalance_term(p);
    if (Real(2) * std::abs(X) > p.Nt + detail::populations_band(p)) {
        std::ostringstream os;
        os << "population condition: gamma = " << static_cast<double>(p.gamma)
           << " exceeds gamma_max = " << static_cast<double>(gamma_max(p));
        throw Error(ErrorKind::ConditionViolated, os.str());
    }
    const auto vc = critical_depth(p);
    if (p.V0 > vc.value * (Real(1) + Real(kBoundaryRelTol))) {
        std::ostringstream os;
        os.precision(10);
        os << "lattice_depth condition: V0 = " << static_cast<double>(p.V0)
           << " exceeds Vc = " << static_cast<double>(vc.value);
        throw Error(ErrorKind::ConditionViolated, os.str());
    }
    const Real half_depth = depth_term(p) / Real(2);
    const Real band = detail::depth_band(p);
    BlochCoefficientsT<Real> c;
    for (int j = 0; j < 2; ++j) {
        const Real base = p.Nt / 2 - Real(detail::sign_j(j)) * X;
        c.a[j] = sqrt(detail::clamp_radicand(base + half_depth, band, "a_j^2"));
        c.b[j] = sqrt(detail::clamp_radicand(base - half_depth, band, "b_j^2"));
    }
    c.mu = mu_override ? *mu_override : chemical_potential(p);
    return c;
}

template <typename Real>
std::array<std::complex<Real>, 2> psi_exact(const BlochCoefficientsT<Real>& c, Real x) {
    using std::cos;
    using std::sin;
    const Real cx = cos(x), sx = sin(x);
    return {std::complex<Real>(c.a[0] * cx, c.b[0] * sx), std::complex<Real>(c.a[1] * cx, c.b[1] * sx)};
}

enum class FlowSign { Plus = 1, Minus = -1 };

/// R_j^2(x) from the closed form in terms of the physical parameters.
template <typename Real>
std::array<Real, 2> density_profile(const PhysicalParamsT<Real>& p, Real x) {
    using std::cos;
    const Real X = imbalance_term(p);
    const Real modulation = depth_term(p) * cos(Real(2) * x);
    std::array<Real, 2> r;
    for (int j = 0; j < 2; ++j) {
        r[j] = Real(0.5) * (p.Nt + modulation - Real(detail::sign_j(j)) * Real(2) * X);
    }
    return r;
}

/// J_{j,+-} for one component (j = 0 or 1). Throws ConditionViolated when
/// N_j^2 - V0^2/(4(g+g12)^2) is negative or N_j < |V0/(2(g+g12))|.
template <typename Real>
Real superfluid_current_component(const PhysicalParamsT<Real>& p, int j, FlowSign sign) {
    using std::abs;
    using std::sqrt;
    const Real X = imbalance_term(p);
    const Real half_depth = abs(depth_term(p)) / Real(2);
    const Real band = abs(p.g + p.g12) == 0 ? detail::populations_band(p) : detail::depth_band(p);
    const Real n = p.Nt / 2 - Real(detail::sign_j(j)) * X;
    // n^2 - d^2 = (n - d)(n + d), written so the vanishing factor is explicit
    const Real lo = detail::clamp_radicand(n - half_depth, band, "J_j");
    return Real(static_cast<int>(sign)) * sqrt(lo * (n + half_depth));
}

/// Constant superfluid densities (J_1, J_2) for the chosen flow direction.
template <typename Real>
std::array<Real, 2> superfluid_current(const PhysicalParamsT<Real>& p, FlowSign sign) {
    return {superfluid_current_component(p, 0, sign), superfluid_current_component(p, 1, sign)};
}

/// Densities below this fraction of Nt make the velocity divergent.
inline constexpr double kDivergenceRelEps = 1e-9;

template <typename Real>
std::array<Real, 2> superfluid_velocity(const PhysicalParamsT<Real>& p, Real x, FlowSign sign) {
    const auto J = superfluid_current(p, sign);
    const auto R2 = density_profile(p, x);
    std::array<Real, 2> v;
    for (int j = 0; j < 2; ++j) {
        if (R2[j] < Real(kDivergenceRelEps) * p.Nt) {
            std::ostringstream os;
            os << "density of component " << j + 1 << " vanishes at x = " << static_cast<double>(x);
            throw Error(ErrorKind::DivergentVelocity, os.str());
        }
        v[j] = J[j] / R2[j];
    }
    return v;
}

/// Drive phase theta(t) = (2 xi/omega) sin^2(omega t / 2).
template <typename Real>
Real drive_phase(const PhysicalParamsT<Real>& p, Real t) {
    using std::sin;
    const Real s = sin(p.omega * t / Real(2));
    return Real(2) * p.xi / p.omega * s * s;
}

/// Lab-frame state psi_j(x) exp(-i mu t) exp(-i theta(t) x).
template <typename Real>
std::array<std::complex<Real>, 2> spatiotemporal_state(const PhysicalParamsT<Real>& p,
                                                        const BlochCoefficientsT<Real>& c, Real x, Real t) {
    const auto psi = psi_exact(c, x);
    const std::complex<Real> phase = std::polar(Real(1), -(c.mu * t + drive_phase(p, t) * x));
    return {psi[0] * phase, psi[1] * phase};
}

template <typename Real = double>
struct SpinEntanglementT {
    Eigen::Matrix<Real, 2, 2> rho;
    Eigen::Matrix<Real, 2, 1> eigenvalues;  ///< ascending
    Real entropy;                           ///< von Neumann entropy in bits
};

using SpinEntanglement = SpinEntanglementT<double>;

/// Spin reduced density matrix from per-well inner products of the two
/// motional profiles, and its von Neumann entropy.
template <typename Real>
SpinEntanglementT<Real> spin_entanglement_from(const BlochCoefficientsT<Real>& c) {
    using std::log2;
    const Real n1 = (c.a[0] * c.a[0] + c.b[0] * c.b[0]) / 2;
    const Real n2 = (c.a[1] * c.a[1] + c.b[1] * c.b[1]) / 2;
    const Real overlap = (c.a[0] * c.a[1] + c.b[0] * c.b[1]) / 2;
    SpinEntanglementT<Real> out;
    out.rho << n1, overlap, overlap, n2;
    out.rho /= (n1 + n2);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Real, 2, 2>> es(out.rho, Eigen::EigenvaluesOnly);
    out.eigenvalues = es.eigenvalues();
    out.entropy = 0;
    for (int i = 0; i < 2; ++i) {
        const Real lambda = out.eigenvalues(i);
        if (lambda > 0) out.entropy -= lambda * log2(lambda);
    }
    if (out.entropy < 0) out.entropy = 0;
    return out;
}

template <typename Real>
SpinEntanglementT<Real> spin_entanglement(const PhysicalParamsT<Real>& p) {
    return spin_entanglement_from(coefficients(p));
}

/// Tabulated exact state on a set of sample points.
struct StateProfile {
    Eigen::ArrayXd x;
    Eigen::ArrayXd potential;
    std::array<Eigen::ArrayXcd, 2> values;
    std::array<Eigen::ArrayXd, 2> density;
    std::array<Eigen::ArrayXd, 2> phase;  ///< unwrapped, phase(x_0) == 0
};

/// Removes 2 pi jumps between neighbouring samples and anchors the first sample at 0.
Eigen::ArrayXd unwrap_phase(const Eigen::ArrayXcd& values);

StateProfile make_profile(const Eigen::ArrayXd& x, const PhysicalParams& p, const BlochCoefficients& c);

}  // namespace socbloch
