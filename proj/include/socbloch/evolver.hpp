#pragma once

// Strang split-step Fourier evolution of the two-component GPE.
//
// Two right-hand sides are supported. Rwa integrates the time-averaged
// equation, whose linear part is time independent. DrivenGauge integrates the
// driven equation written in the frame Psi_j = Phi_j exp(-i theta(t) x),
// theta(t) = (2 xi/omega) sin^2(omega t/2): the frame change removes the tilt
// xi x sin(omega t) exactly and leaves a periodic momentum shift, so the
// periodic domain stays valid. See docs/gauge_frame.md.
//
// Per wavenumber k the linear operator is the Hermitian 2x2 matrix
//   [ k^2/2 - gamma_1 k + s_1      Gamma                  ]
//   [ Gamma                        k^2/2 - gamma_2 k + s_2 ]
// which is exponentiated in closed form through its Pauli decomposition.

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

#include "socbloch/exact.hpp"
#include "socbloch/grid.hpp"
#include "socbloch/model.hpp"

namespace socbloch {

using Components = std::array<Eigen::ArrayXcd, 2>;

struct SpinorField {
    Grid grid;
    Components comp;
};

/// Samples psi_exact on the grid.
SpinorField exact_field(const Grid& grid, const BlochCoefficients& c);

enum class EvolveMode { Rwa, DrivenGauge };

const char* to_string(EvolveMode mode) noexcept;

struct EvolveSettings {
    EvolveMode mode = EvolveMode::Rwa;
    double dt = 1e-3;
    double T = 10;
    int sample_stride = 100;    ///< steps between recorded samples
    bool stroboscopic = true;   ///< DrivenGauge only: sample at multiples of 2 pi/omega
    bool keep_fields = false;   ///< store the field at every sample
};

/// Default dt: 1e-3 in Rwa mode, min(1e-3, (2 pi/omega)/64) when driven.
EvolveSettings default_settings(EvolveMode mode, const PhysicalParams& p, double T);

/// Coefficients of the momentum-space 2x2 generator for one step.
struct LinearCoefficients {
    std::array<double, 2> gamma_eff{};  ///< multiplies -k on the diagonal
    std::array<double, 2> shift{};      ///< constant diagonal term s_j
    double rabi = 0;
};

/// gamma_j = (-1)^j gamma + xi/omega, s_j = (-1)^j gamma xi/omega + 3 xi^2/(4 omega^2).
LinearCoefficients rwa_linear_coefficients(const PhysicalParams& p);

/// gamma_j = (-1)^j gamma + theta(t), s_j = theta^2/2 + (-1)^j gamma theta.
LinearCoefficients driven_linear_coefficients(const PhysicalParams& p, double t);

/// Multiplies the spectra by exp(-i H_k tau) for every wavenumber.
void apply_linear(const Grid& grid, Components& spectrum, const LinearCoefficients& lc, double tau);

/// exp(-i H tau) in position space: forward transform, apply_linear, inverse.
void step_linear_half(SpinorField& field, const LinearCoefficients& lc, double tau);

/// Multiplies component j by exp(-i tau [V + g|Phi_j|^2 + g12|Phi_{3-j}|^2]).
void step_nonlinear(SpinorField& field, const PhysicalParams& p, const Eigen::ArrayXd& potential, double tau);

/// One Strang step: half linear, full nonlinear, half linear.
void strang_step(SpinorField& field, const PhysicalParams& p, const Eigen::ArrayXd& potential,
                 const LinearCoefficients& lc, double dt);

/// (1/(2 M pi)) integral of |Phi_j|^2, i.e. the per-well population of each component.
std::array<double, 2> populations(const SpinorField& field);

/// Conserved energy of the time-averaged equation, per unit well length.
double rwa_energy(const SpinorField& field, const PhysicalParams& p);

struct ExactReference {
    PhysicalParams params;
    BlochCoefficients coeffs;
};

struct SampleDiagnostics {
    double norm_total = 0;
    double N1 = 0;
    double N2 = 0;
    double imbalance = 0;
    std::optional<double> energy;  ///< Rwa mode only
    std::optional<double> dev_density;
    std::optional<double> dev_state;
    std::optional<double> dev_state_phase_free;
};

struct Trajectory {
    EvolveMode mode = EvolveMode::Rwa;
    double dt = 0;   ///< step actually used (adjusted to land on T or on drive periods)
    long steps = 0;
    std::vector<double> times;
    std::vector<SampleDiagnostics> samples;
    std::vector<SpinorField> fields;  ///< filled when keep_fields is set
};

/// Runs the split-step integrator. Throws InvalidSettings for inconsistent
/// settings, InvalidGrid when the field does not match its grid, and
/// NumericalBlowup when the norm grows by more than 10% between samples.
Trajectory evolve(const SpinorField& initial, const PhysicalParams& p, const EvolveSettings& s,
                  const ExactReference* reference = nullptr);

}  // namespace socbloch
