#pragma once

// Physical constants of the driven spin-orbit coupled condensate and the
// closed-form quantities derived from them (chemical potential, drive ratio,
// recombined SOC strengths, critical lattice depth).
//
// Everything here is a pure function of a parameter value. The templates are
// instantiated with `double` by the rest of the library; tests also use
// `long double` to cross-check round-off.

#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "socbloch/errors.hpp"

namespace socbloch {

/// Dimensionless system constants. Energies in recoil units, lengths in 1/k.
template <typename Real = double>
struct PhysicalParamsT {
    Real gamma = 0;  ///< SOC strength
    Real Gamma = 0;  ///< Rabi coupling
    Real g = 0;      ///< intra-species interaction
    Real g12 = 0;    ///< inter-species interaction
    Real V0 = 0;     ///< lattice depth, V(x) = V0 sin^2 x
    Real Nt = 1;     ///< average total atoms per well
    Real omega = 1;  ///< drive frequency
    Real xi = 0;     ///< drive strength (tilt amplitude)
};

using PhysicalParams = PhysicalParamsT<double>;

/// Relative width of the V0 = Vc boundary. Depths within this band of Vc are
/// treated as lying exactly on it (the published boundary values are rounded).
inline constexpr double kBoundaryRelTol = 1e-6;

/// Relative tolerance on the drive condition xi/omega = sqrt(Gamma^2 + gamma^2).
inline constexpr double kDriveRatioRelTol = 1e-12;

/// Below this drive frequency the high-frequency averaging is flagged.
inline constexpr double kOmegaMinWarning = 10.0;

/// Throws InvalidParams / SingularCoupling if `p` violates the parameter invariants.
template <typename Real>
void check_params(const PhysicalParamsT<Real>& p) {
    auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidParams, msg); };
    for (Real v : {p.gamma, p.Gamma, p.g, p.g12, p.V0, p.Nt, p.omega, p.xi}) {
        if (!std::isfinite(static_cast<double>(v))) fail("parameters must be finite");
    }
    if (p.V0 < 0) fail("lattice depth V0 must be >= 0");
    if (p.Nt <= 0) fail("Nt must be > 0");
    if (p.omega <= 0) fail("omega must be > 0");
    if (p.gamma < 0) fail("gamma must be >= 0");
    if (p.Gamma < 0) fail("Gamma must be >= 0");
    if (p.g < 0) fail("g must be >= 0");
    if (p.gamma != 0 && p.g == p.g12) {
        throw Error(ErrorKind::SingularCoupling, "g == g12 with nonzero gamma");
    }
}

template <typename Real>
Real required_drive_ratio(const PhysicalParamsT<Real>& p) {
    using std::sqrt;
    return sqrt(p.Gamma * p.Gamma + p.gamma * p.gamma);
}

template <typename Real>
Real chemical_potential(const PhysicalParamsT<Real>& p) {
    const Real s2 = p.Gamma * p.Gamma + p.gamma * p.gamma;
    return Real(0.5) * (Real(1) + p.Nt * (p.g + p.g12) + p.V0 + Real(1.5) * s2);
}

/// gamma * sqrt(Gamma^2 + gamma^2) / (g - g12), i.e. (N1 - N2) / 2.
/// Exactly zero when gamma == 0, whatever g and g12 are.
template <typename Real>
Real imbalance_term(const PhysicalParamsT<Real>& p) {
    if (p.gamma == 0) return Real(0);
    if (p.g == p.g12) throw Error(ErrorKind::SingularCoupling, "g == g12 with nonzero gamma");
    return p.gamma * required_drive_ratio(p) / (p.g - p.g12);
}

/// V0 / (g + g12), i.e. a_j^2 - b_j^2. Zero when V0 == 0.
template <typename Real>
Real depth_term(const PhysicalParamsT<Real>& p) {
    if (p.V0 == 0) return Real(0);
    if (p.g + p.g12 == 0) throw Error(ErrorKind::SingularCoupling, "g + g12 == 0 with nonzero V0");
    return p.V0 / (p.g + p.g12);
}

/// Smallest gamma >= 0 with gamma * sqrt(Gamma^2 + gamma^2) == target (target >= 0).
template <typename Real>
Real gamma_for_soc_product(Real Gamma, Real target) {
    using std::sqrt;
    if (target <= 0) return Real(0);
    const Real G2 = Gamma * Gamma;
    // gamma^2 = (-G2 + sqrt(G2^2 + 4 target^2)) / 2, written without cancellation
    const Real g2 = Real(2) * target * target / (G2 + sqrt(G2 * G2 + Real(4) * target * target));
    return sqrt(g2);
}

/// Largest gamma keeping both per-well populations nonnegative.
template <typename Real>
Real gamma_max(const PhysicalParamsT<Real>& p) {
    using std::abs;
    if (p.g == p.g12) return Real(0);
    return gamma_for_soc_product(p.Gamma, p.Nt * abs(p.g - p.g12) / Real(2));
}

template <typename Real>
struct CriticalDepthT {
    Real value;            ///< Vc = min(V1c, V2c)
    std::array<Real, 2> branches;  ///< (V1c, V2c)
    int branch;            ///< 1 or 2, the component that sets Vc
};

using CriticalDepth = CriticalDepthT<double>;

template <typename Real>
CriticalDepthT<Real> critical_depth(const PhysicalParamsT<Real>& p) {
    using std::abs;
    const Real X = imbalance_term(p);
    const Real slack = Real(1e-12) * p.Nt;
    if (Real(2) * abs(X) > p.Nt + slack) {
        std::ostringstream os;
        os << "2*gamma*sqrt(Gamma^2+gamma^2)/|g-g12| = " << static_cast<double>(2 * abs(X))
           << " exceeds Nt = " << static_cast<double>(p.Nt);
        throw Error(ErrorKind::UnphysicalPopulation, os.str());
    }
    const Real scale = abs(p.g + p.g12);
    // V_jc = |g+g12| [Nt - (-1)^j 2X]
    const std::array<Real, 2> v{scale * (p.Nt + Real(2) * X), scale * (p.Nt - Real(2) * X)};
    const int branch = v[1] <= v[0] ? 2 : 1;
    return {v[branch - 1], v, branch};
}

template <typename Real>
struct EffectiveCouplingsT {
    std::array<Real, 2> gamma_eff;  ///< (-1)^j gamma + xi/omega
    std::array<Real, 2> mu_eff;     ///< mu - (-1)^j gamma xi/omega - 3 xi^2/(4 omega^2)
};

using EffectiveCouplings = EffectiveCouplingsT<double>;

template <typename Real>
EffectiveCouplingsT<Real> effective_soc_and_mu(const PhysicalParamsT<Real>& p, Real mu) {
    const Real r = p.xi / p.omega;
    const Real shift = Real(3) * r * r / Real(4);
    EffectiveCouplingsT<Real> out;
    for (int j = 0; j < 2; ++j) {
        const Real sign = j == 0 ? Real(-1) : Real(1);  // (-1)^j for j = 1, 2
        out.gamma_eff[j] = sign * p.gamma + r;
        out.mu_eff[j] = mu - sign * p.gamma * r - shift;
    }
    return out;
}

struct ConditionResult {
    std::string name;
    bool passed = true;
    bool warning_only = false;
    double value = 0;      ///< measured quantity
    double threshold = 0;  ///< bound it is compared against
    double margin = 0;     ///< signed distance to the bound, positive when satisfied
    std::string detail;
};

struct ConditionsReport {
    std::vector<ConditionResult> conditions;

    /// True when every hard condition passes (warnings do not count).
    bool ok() const {
        for (const auto& c : conditions) {
            if (!c.passed && !c.warning_only) return false;
        }
        return true;
    }
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (const auto& c : conditions) {
            if (!c.passed && c.warning_only) out.push_back(c.name + ": " + c.detail);
        }
        return out;
    }
    const ConditionResult* find(const std::string& name) const {
        for (const auto& c : conditions) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
};

/// Checks every existence condition of the exact Bloch solution. Never throws
/// for parameter values that pass check_params; failures are listed instead.
template <typename Real>
ConditionsReport validate_exact_regime(const PhysicalParamsT<Real>& p) {
    using std::abs;
    ConditionsReport report;

    {
        const double ratio = static_cast<double>(required_drive_ratio(p));
        const double actual = static_cast<double>(p.xi / p.omega);
        const double tol = kDriveRatioRelTol * ratio;
        const double diff = abs(actual - ratio);
        ConditionResult c{"drive_ratio", diff <= tol, false, actual, ratio, tol - diff, ""};
        if (!c.passed) {
            std::ostringstream os;
            os.precision(17);
            os << "xi/omega = " << actual << " but sqrt(Gamma^2+gamma^2) = " << ratio;
            c.detail = os.str();
        }
        report.conditions.push_back(c);
    }

    bool populations_ok = true;
    {
        ConditionResult c{"population", true, false, static_cast<double>(p.gamma), 0, 0, ""};
        if (p.gamma != 0 && p.g == p.g12) {
            c.passed = false;
            c.threshold = 0;
            c.margin = -static_cast<double>(p.gamma);
            c.detail = "g == g12 with nonzero gamma (singular coupling)";
        } else {
            const double gmax = static_cast<double>(gamma_max(p));
            const double X = static_cast<double>(imbalance_term(p));
            c.threshold = gmax;
            c.margin = static_cast<double>(p.Nt) - 2 * abs(X);
            c.passed = c.margin >= -1e-12 * static_cast<double>(p.Nt);
            if (!c.passed) {
                std::ostringstream os;
                os << "gamma = " << static_cast<double>(p.gamma) << " exceeds gamma_max = " << gmax;
                c.detail = os.str();
            }
        }
        populations_ok = c.passed;
        report.conditions.push_back(c);
    }

    {
        ConditionResult c{"lattice_depth", false, false, static_cast<double>(p.V0), 0, 0, ""};
        if (populations_ok) {
            const double vc = static_cast<double>(critical_depth(p).value);
            c.threshold = vc;
            c.margin = vc - static_cast<double>(p.V0);
            c.passed = c.margin >= -kBoundaryRelTol * vc;
            if (!c.passed) {
                std::ostringstream os;
                os.precision(10);
                os << "V0 = " << static_cast<double>(p.V0) << " exceeds Vc = " << vc;
                c.detail = os.str();
            }
        } else {
            c.detail = "Vc undefined: populations are unphysical";
        }
        report.conditions.push_back(c);
    }

    {
        const double w = static_cast<double>(p.omega);
        ConditionResult c{"high_frequency", w >= kOmegaMinWarning, true, w, kOmegaMinWarning,
                          w - kOmegaMinWarning, ""};
        if (!c.passed) c.detail = "omega below the high-frequency threshold; averaging may be poor";
        report.conditions.push_back(c);
    }
    return report;
}

/// Aggregate of every derived quantity, for reporting.
struct DerivedConditions {
    double mu = 0;
    double drive_ratio = 0;
    EffectiveCouplings effective;
    bool has_critical_depth = false;
    CriticalDepth critical{};
    double gamma_max = 0;
    ConditionsReport report;
};

inline DerivedConditions derive_conditions(const PhysicalParams& p) {
    DerivedConditions d;
    d.mu = chemical_potential(p);
    d.drive_ratio = required_drive_ratio(p);
    d.effective = effective_soc_and_mu(p, d.mu);
    d.gamma_max = gamma_max(p);
    d.report = validate_exact_regime(p);
    if (const auto* pop = d.report.find("population"); pop && pop->passed) {
        d.critical = critical_depth(p);
        d.has_critical_depth = true;
    }
    return d;
}

/// Sets xi so that the drive condition holds for the current omega.
template <typename Real>
PhysicalParamsT<Real> with_matched_drive(PhysicalParamsT<Real> p) {
    p.xi = p.omega * required_drive_ratio(p);
    return p;
}

}  // namespace socbloch
