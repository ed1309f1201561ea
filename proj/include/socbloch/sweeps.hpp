#pragma once

// Closed-form parameter sweeps over the SOC strength: existence boundary
// Vc(gamma), population imbalance, and superfluid currents.

#include <optional>
#include <span>
#include <vector>

#include "socbloch/model.hpp"

namespace socbloch {

/// `count` evenly spaced values from start to stop inclusive (count >= 2).
std::vector<double> linspace(double start, double stop, int count);

struct RegionRow {
    double Gamma = 0;
    double gamma = 0;
    std::optional<double> Vc;  ///< empty when gamma > gamma_max
    int branch = 0;
};

std::vector<RegionRow> sweep_region(const PhysicalParams& base, std::span<const double> gammas,
                                    std::span<const double> Gammas);

struct ImbalanceRow {
    double gamma = 0;
    std::optional<double> N1, N2, imbalance;
};

std::vector<ImbalanceRow> sweep_imbalance(const PhysicalParams& base, std::span<const double> gammas);

struct CurrentRow {
    double gamma = 0;
    std::optional<double> J1p, J2p, J1m, J2m;  ///< empty where that component's radicand is negative
};

std::vector<CurrentRow> sweep_current(const PhysicalParams& base, std::span<const double> gammas);

/// gamma at which one component empties completely, |N1 - N2| = Nt.
double gamma_full_transfer(const PhysicalParams& p);

struct VanishingCurrent {
    int component = 0;  ///< the component whose population decreases with gamma
    double gamma = 0;
};

/// gamma at which the depleting component's current J_j reaches zero, i.e.
/// N_j = V0/(2|g+g12|). Empty when g == g12.
std::optional<VanishingCurrent> gamma_current_vanishing(const PhysicalParams& p);

}  // namespace socbloch
