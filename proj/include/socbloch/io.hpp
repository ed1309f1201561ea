#pragma once

// CSV serialisation of profiles, trajectories and diagnostic tables. Floats
// are written in shortest round-trip form so output is byte-reproducible.

#include <Eigen/Dense>

#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "socbloch/diagnostics.hpp"
#include "socbloch/evolver.hpp"
#include "socbloch/exact.hpp"

namespace socbloch {

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Writes one CSV line; empty optionals become empty cells.
void write_csv_row(std::ostream& os, std::initializer_list<std::optional<double>> cells);
void write_csv_header(std::ostream& os, std::initializer_list<const char*> names);

/// Columns: x, V, R1sq, R2sq, theta1, theta2, re_psi1, im_psi1, re_psi2, im_psi2.
void write_profile_csv(std::ostream& os, const StateProfile& profile);

/// Tabulates an arbitrary field in the profile layout (densities are |Phi_j|^2).
StateProfile profile_of_field(const SpinorField& field, double V0);

/// Reads the complex columns of a profile CSV back into a field on `grid`.
/// Throws Config if the header or row count does not match.
SpinorField read_profile_csv(std::istream& is, const Grid& grid);

/// Columns: t, norm_total, N1, N2, imbalance, energy, dev_density, dev_state,
/// dev_state_phase_free.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Columns: component, l2_residual, max_residual.
void write_residual_csv(std::ostream& os, const ResidualReport& rep);

/// Columns: omega, xi, epsilon_state, epsilon_density.
void write_rwa_sweep_csv(std::ostream& os, const std::vector<RwaSweepRow>& rows);

}  // namespace socbloch
