#include "socbloch/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>

namespace socbloch {

ResidualReport residual_eq4(const SpinorField& state, const PhysicalParams& p, double mu) {
    const Grid& grid = state.grid;
    const auto eff = effective_soc_and_mu(p, mu);
    const Eigen::ArrayXd V = lattice_potential(grid, p.V0);
    const std::complex<double> I(0, 1);
    ResidualReport rep;
    rep.mu_eff = eff.mu_eff;
    for (int j = 0; j < 2; ++j) {
        const Eigen::ArrayXcd& psi = state.comp[j];
        const Eigen::ArrayXcd& other = state.comp[1 - j];
        const Eigen::ArrayXcd d1 = differentiate(grid, psi);
        const Eigen::ArrayXcd d2 = differentiate2(grid, psi);
        const Eigen::ArrayXd U = V + p.g * psi.abs2() + p.g12 * other.abs2() - eff.mu_eff[j];
        const Eigen::ArrayXcd r = -0.5 * d2 + (I * eff.gamma_eff[j]) * d1 + p.Gamma * other + U * psi;
        rep.l2_residual[j] = std::sqrt(integrate(grid, r.abs2()));
        rep.max_residual[j] = r.abs().maxCoeff();
    }
    return rep;
}

ResidualReport residual_eq4(const SpinorField& state, const PhysicalParams& p) {
    return residual_eq4(state, p, chemical_potential(p));
}

Fidelity fidelity_to_exact(const SpinorField& field, double t, const PhysicalParams& p, const BlochCoefficients& c) {
    const Grid& grid = field.grid;
    const std::complex<double> rephase = std::polar(1.0, c.mu * t);
    Fidelity f;
    double diff2 = 0, ref2 = 0, field2 = 0;
    std::complex<double> overlap = 0;
    for (int i = 0; i < grid.N; ++i) {
        const auto psi = psi_exact(c, grid.x(i));
        const auto r2 = density_profile(p, grid.x(i));
        for (int j = 0; j < 2; ++j) {
            const std::complex<double> phi = field.comp[j](i);
            f.dev_density = std::max(f.dev_density, std::abs(std::norm(phi) - r2[j]));
            diff2 += std::norm(phi * rephase - psi[j]);
            ref2 += std::norm(psi[j]);
            field2 += std::norm(phi);
            overlap += std::conj(psi[j]) * phi;
        }
    }
    f.dev_density /= p.Nt;
    // dx cancels in every ratio below
    f.dev_state = ref2 > 0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2);
    const double free2 = std::max(0.0, field2 + ref2 - 2 * std::abs(overlap));
    f.dev_state_phase_free = ref2 > 0 ? std::sqrt(free2 / ref2) : std::sqrt(free2);
    return f;
}

std::array<Eigen::ArrayXd, 2> numeric_current(const SpinorField& field) {
    std::array<Eigen::ArrayXd, 2> out;
    for (int j = 0; j < 2; ++j) {
        const Eigen::ArrayXcd d = differentiate(field.grid, field.comp[j]);
        out[j] = (field.comp[j].conjugate() * d).imag();
    }
    return out;
}

std::vector<DensityZero> density_zero_scan(const PhysicalParams& p, int cells) {
    std::vector<DensityZero> zeros;
    if (p.V0 == 0) return zeros;
    const double X = imbalance_term(p);
    const double D = depth_term(p);
    const double scale = std::abs(p.g + p.g12);
    const double pi = std::numbers::pi;
    const int wells = 2 * cells;
    for (int j = 0; j < 2; ++j) {
        const double S = p.Nt - (j == 0 ? -1.0 : 1.0) * 2 * X;  // 2 N_j
        const double vjc = scale * S;
        // R^2 = (S + D cos 2x)/2; its minima sit where D cos 2x = -|D|
        const double x_min = D > 0 ? pi / 2 : 0.0;
        if (std::abs(p.V0 - vjc) <= kBoundaryRelTol * std::abs(vjc)) {
            for (int n = 0; n < wells; ++n) zeros.push_back({j + 1, x_min + n * pi});
        } else if (p.V0 > vjc) {
            const double half = 0.5 * std::acos(std::clamp(-S / D, -1.0, 1.0));
            for (int n = 0; n < wells; ++n) {
                for (double x : {n * pi + half, n * pi + pi - half}) {
                    zeros.push_back({j + 1, x});
                }
            }
        }
    }
    std::sort(zeros.begin(), zeros.end(), [](const DensityZero& a, const DensityZero& b) {
        return a.component != b.component ? a.component < b.component : a.x < b.x;
    });
    return zeros;
}

std::vector<RwaSweepRow> rwa_deviation_sweep(const PhysicalParams& p, std::span<const double> omegas,
                                             const RwaSweepOptions& opts) {
    const Grid grid = make_grid(opts.M, opts.N);
    auto run_one = [&](double omega) {
        PhysicalParams q = p;
        q.omega = omega;
        q = with_matched_drive(q);
        const auto c = coefficients(q);
        EvolveSettings s = default_settings(EvolveMode::DrivenGauge, q, opts.T);
        if (opts.dt) s.dt = *opts.dt;
        s.stroboscopic = true;
        s.sample_stride = 1;  // rounds up to one sample per drive period
        const ExactReference ref{q, c};
        const Trajectory traj = evolve(exact_field(grid, c), q, s, &ref);
        RwaSweepRow row{omega, q.xi, 0, 0};
        for (const auto& d : traj.samples) {
            row.epsilon_state = std::max(row.epsilon_state, d.dev_state.value_or(0));
            row.epsilon_density = std::max(row.epsilon_density, d.dev_density.value_or(0));
        }
        return row;
    };

    std::vector<RwaSweepRow> rows;
    rows.reserve(omegas.size());
    if (opts.parallel) {
        std::vector<std::future<RwaSweepRow>> jobs;
        for (double w : omegas) jobs.push_back(std::async(std::launch::async, run_one, w));
        for (auto& j : jobs) rows.push_back(j.get());
    } else {
        for (double w : omegas) rows.push_back(run_one(w));
    }
    return rows;
}

double driven_vs_rwa_deviation(const SpinorField& initial, const PhysicalParams& p, double T) {
    EvolveSettings sd = default_settings(EvolveMode::DrivenGauge, p, T);
    sd.stroboscopic = true;
    sd.sample_stride = 1;
    sd.keep_fields = true;
    const Trajectory driven = evolve(initial, p, sd);
    const long spp = std::lround(2 * std::numbers::pi / p.omega / driven.dt);

    EvolveSettings sr;
    sr.mode = EvolveMode::Rwa;
    sr.dt = driven.dt;
    sr.T = driven.dt * static_cast<double>(driven.steps);
    sr.sample_stride = static_cast<int>(std::max<long>(1, spp));
    sr.keep_fields = true;
    const Trajectory avg = evolve(initial, p, sr);

    double worst = 0;
    const std::size_t n = std::min(driven.fields.size(), avg.fields.size());
    for (std::size_t s = 0; s < n; ++s) {
        double diff2 = 0, ref2 = 0;
        for (int j = 0; j < 2; ++j) {
            diff2 += (driven.fields[s].comp[j] - avg.fields[s].comp[j]).abs2().sum();
            ref2 += avg.fields[s].comp[j].abs2().sum();
        }
        worst = std::max(worst, ref2 > 0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2));
    }
    return worst;
}

PhysicalParams random_valid_params(std::mt19937_64& rng, double omega) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * u01(rng); };
    PhysicalParams p;
    p.Gamma = uniform(0, 2);
    p.g = uniform(0.1, 1);
    do {
        p.g12 = uniform(0, 1);
    } while (std::abs(p.g - p.g12) < 0.05);
    p.Nt = uniform(1, 10);
    p.gamma = uniform(0, 0.9) * gamma_max(p);
    p.V0 = uniform(0, 0.95) * critical_depth(p).value;
    p.omega = omega;
    return with_matched_drive(p);
}

}  // namespace socbloch
