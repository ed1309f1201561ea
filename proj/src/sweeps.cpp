#include "socbloch/sweeps.hpp"

#include <cmath>

#include "socbloch/errors.hpp"
#include "socbloch/exact.hpp"

namespace socbloch {

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 2) throw Error(ErrorKind::Config, "sweep count must be >= 2");
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = start + (stop - start) * i / (count - 1);
    v.back() = stop;
    return v;
}

std::vector<RegionRow> sweep_region(const PhysicalParams& base, std::span<const double> gammas,
                                    std::span<const double> Gammas) {
    std::vector<RegionRow> rows;
    rows.reserve(gammas.size() * Gammas.size());
    for (double G : Gammas) {
        for (double gam : gammas) {
            PhysicalParams p = base;
            p.Gamma = G;
            p.gamma = gam;
            RegionRow row{G, gam, std::nullopt, 0};
            try {
                const auto vc = critical_depth(p);
                row.Vc = vc.value;
                row.branch = vc.branch;
            } catch (const Error&) {
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::vector<ImbalanceRow> sweep_imbalance(const PhysicalParams& base, std::span<const double> gammas) {
    std::vector<ImbalanceRow> rows;
    rows.reserve(gammas.size());
    for (double gam : gammas) {
        PhysicalParams p = base;
        p.gamma = gam;
        ImbalanceRow row{gam, {}, {}, {}};
        try {
            const auto n = well_populations(p);
            row.N1 = n[0];
            row.N2 = n[1];
            row.imbalance = n[0] - n[1];
        } catch (const Error&) {
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<CurrentRow> sweep_current(const PhysicalParams& base, std::span<const double> gammas) {
    std::vector<CurrentRow> rows;
    rows.reserve(gammas.size());
    for (double gam : gammas) {
        PhysicalParams p = base;
        p.gamma = gam;
        CurrentRow row{gam, {}, {}, {}, {}};
        try {
            well_populations(p);
            std::optional<double>* plus[2] = {&row.J1p, &row.J2p};
            std::optional<double>* minus[2] = {&row.J1m, &row.J2m};
            for (int j = 0; j < 2; ++j) {
                try {
                    *plus[j] = superfluid_current_component(p, j, FlowSign::Plus);
                    *minus[j] = superfluid_current_component(p, j, FlowSign::Minus);
                } catch (const Error&) {
                }
            }
        } catch (const Error&) {
        }
        rows.push_back(row);
    }
    return rows;
}

double gamma_full_transfer(const PhysicalParams& p) { return gamma_max(p); }

std::optional<VanishingCurrent> gamma_current_vanishing(const PhysicalParams& p) {
    if (p.g == p.g12) return std::nullopt;
    const int component = p.g > p.g12 ? 2 : 1;
    const double half_depth = std::abs(depth_term(p)) / 2;
    // depleting component: N_j = Nt/2 - gamma sqrt(Gamma^2+gamma^2)/|g-g12|
    const double target = (p.Nt / 2 - half_depth) * std::abs(p.g - p.g12);
    if (target < 0) return std::nullopt;
    return VanishingCurrent{component, gamma_for_soc_product(p.Gamma, target)};
}

}  // namespace socbloch
