#pragma once

// Quantitative checks of the exact states and of the evolver: residual of
// the time-independent equations, fidelity to the predicted state, spectral
// currents, density zeros, the high-frequency deviation sweep, and the
// seeded generator of valid parameter sets used by the validation suite.

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "socbloch/evolver.hpp"
#include "socbloch/exact.hpp"
#include "socbloch/grid.hpp"
#include "socbloch/model.hpp"

namespace socbloch {

struct ResidualReport {
    std::array<double, 2> l2_residual{};   ///< sqrt(integral |r_j|^2 dx)
    std::array<double, 2> max_residual{};
    std::array<double, 2> mu_eff{};

    double max_norm() const { return std::max(max_residual[0], max_residual[1]); }
};

/// r_j = -psi_j''/2 + i gamma_j psi_j' + Gamma psi_{3-j} + V psi_j
///       + (g|psi_j|^2 + g12|psi_{3-j}|^2) psi_j - mu_j psi_j,
/// with gamma_j and mu_j built from the actual xi/omega in `p`.
ResidualReport residual_eq4(const SpinorField& state, const PhysicalParams& p, double mu);

/// Same, with mu from the chemical-potential formula.
ResidualReport residual_eq4(const SpinorField& state, const PhysicalParams& p);

struct Fidelity {
    double dev_density = 0;           ///< max_j max_x ||Phi_j|^2 - R_j^2| / Nt
    double dev_state = 0;             ///< relative L2 distance to psi_j e^{-i mu t}
    double dev_state_phase_free = 0;  ///< same, minimised over one global phase
};

Fidelity fidelity_to_exact(const SpinorField& field, double t, const PhysicalParams& p, const BlochCoefficients& c);

/// j_j(x) = Im(conj(Phi_j) dPhi_j/dx), spectral derivative.
std::array<Eigen::ArrayXd, 2> numeric_current(const SpinorField& field);

struct DensityZero {
    int component = 0;  ///< 1 or 2
    double x = 0;
};

/// Zeros of the closed-form densities on [0, 2 pi cells). At the boundary
/// |V0 - V_jc| <= 1e-6 V_jc the limiting component vanishes at its density
/// minima; beyond it every component with V0 > V_jc has two zeros per well.
std::vector<DensityZero> density_zero_scan(const PhysicalParams& p, int cells = 2);

struct RwaSweepRow {
    double omega = 0;
    double xi = 0;
    double epsilon_state = 0;
    double epsilon_density = 0;
};

struct RwaSweepOptions {
    double T = 10;
    int M = 2;
    int N = 256;
    std::optional<double> dt;  ///< defaults per DrivenGauge rules
    bool parallel = true;
};

/// For each omega: xi = omega sqrt(Gamma^2 + gamma^2), DrivenGauge evolution
/// from psi_exact, epsilon = max over stroboscopic samples of the deviation
/// from psi_j e^{-i mu t}. Rows keep the input order.
std::vector<RwaSweepRow> rwa_deviation_sweep(const PhysicalParams& p, std::span<const double> omegas,
                                             const RwaSweepOptions& opts = {});

/// Max over stroboscopic times of the relative L2 distance between a
/// DrivenGauge run and an Rwa run started from the same `initial` field, with
/// the same step. Independent of whether `initial` is stationary.
double driven_vs_rwa_deviation(const SpinorField& initial, const PhysicalParams& p, double T);

/// Draws a parameter set inside the exact-solution regime: Gamma in [0,2],
/// g in [0.1,1], g12 in [0,1] with |g - g12| >= 0.05, Nt in [1,10],
/// gamma in [0, 0.9] gamma_max, V0 in [0, 0.95] Vc; xi matched to `omega`.
PhysicalParams random_valid_params(std::mt19937_64& rng, double omega = 50);

}  // namespace socbloch
