#include "socbloch/evolver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "socbloch/diagnostics.hpp"
#include "socbloch/errors.hpp"

namespace socbloch {

namespace {

constexpr double kBlowupGrowth = 1.10;

void check_field(const SpinorField& f) {
    for (const auto& c : f.comp) {
        if (c.size() != f.grid.N) throw Error(ErrorKind::InvalidGrid, "field size does not match its grid");
    }
}

double total_norm(const SpinorField& f) {
    const auto n = populations(f);
    return n[0] + n[1];
}

}  // namespace

const char* to_string(EvolveMode mode) noexcept {
    return mode == EvolveMode::Rwa ? "rwa" : "driven";
}

SpinorField exact_field(const Grid& grid, const BlochCoefficients& c) {
    SpinorField f{grid, {Eigen::ArrayXcd(grid.N), Eigen::ArrayXcd(grid.N)}};
    for (int i = 0; i < grid.N; ++i) {
        const auto psi = psi_exact(c, grid.x(i));
        f.comp[0](i) = psi[0];
        f.comp[1](i) = psi[1];
    }
    return f;
}

EvolveSettings default_settings(EvolveMode mode, const PhysicalParams& p, double T) {
    EvolveSettings s;
    s.mode = mode;
    s.T = T;
    s.dt = 1e-3;
    if (mode == EvolveMode::DrivenGauge) {
        const double period = 2 * std::numbers::pi / p.omega;
        s.dt = std::min(1e-3, period / 64);
    }
    return s;
}

LinearCoefficients rwa_linear_coefficients(const PhysicalParams& p) {
    const double r = p.xi / p.omega;
    LinearCoefficients lc;
    for (int j = 0; j < 2; ++j) {
        const double sign = j == 0 ? -1.0 : 1.0;
        lc.gamma_eff[j] = sign * p.gamma + r;
        lc.shift[j] = sign * p.gamma * r + 0.75 * r * r;
    }
    lc.rabi = p.Gamma;
    return lc;
}

LinearCoefficients driven_linear_coefficients(const PhysicalParams& p, double t) {
    const double theta = drive_phase(p, t);
    LinearCoefficients lc;
    for (int j = 0; j < 2; ++j) {
        const double sign = j == 0 ? -1.0 : 1.0;
        lc.gamma_eff[j] = sign * p.gamma + theta;
        lc.shift[j] = 0.5 * theta * theta + sign * p.gamma * theta;
    }
    lc.rabi = p.Gamma;
    return lc;
}

void apply_linear(const Grid& grid, Components& spectrum, const LinearCoefficients& lc, double tau) {
    using cd = std::complex<double>;
    const double G = lc.rabi;
    for (int m = 0; m < grid.N; ++m) {
        const double k = grid.k(m);
        const double h1 = 0.5 * k * k - lc.gamma_eff[0] * k + lc.shift[0];
        const double h2 = 0.5 * k * k - lc.gamma_eff[1] * k + lc.shift[1];
        // H = d0 I + dz sigma_z + G sigma_x
        const double d0 = 0.5 * (h1 + h2);
        const double dz = 0.5 * (h1 - h2);
        const double dn = std::hypot(dz, G);
        const double c = std::cos(dn * tau);
        // sin(|d| tau)/|d|, with its tau limit at |d| = 0
        const double sdn = dn > 0 ? std::sin(dn * tau) / dn : tau;
        const cd phase = std::polar(1.0, -d0 * tau);
        const cd u11 = phase * cd(c, -sdn * dz);
        const cd u22 = phase * cd(c, sdn * dz);
        const cd u12 = phase * cd(0, -sdn * G);
        const cd p1 = spectrum[0](m);
        const cd p2 = spectrum[1](m);
        spectrum[0](m) = u11 * p1 + u12 * p2;
        spectrum[1](m) = u12 * p1 + u22 * p2;
    }
}

void step_linear_half(SpinorField& field, const LinearCoefficients& lc, double tau) {
    Components hat{forward(field.comp[0]), forward(field.comp[1])};
    apply_linear(field.grid, hat, lc, tau);
    field.comp[0] = inverse(hat[0]);
    field.comp[1] = inverse(hat[1]);
}

void step_nonlinear(SpinorField& field, const PhysicalParams& p, const Eigen::ArrayXd& potential, double tau) {
    const Eigen::ArrayXd n1 = field.comp[0].abs2();
    const Eigen::ArrayXd n2 = field.comp[1].abs2();
    const Eigen::ArrayXd w1 = -tau * (potential + p.g * n1 + p.g12 * n2);
    const Eigen::ArrayXd w2 = -tau * (potential + p.g * n2 + p.g12 * n1);
    for (Eigen::Index i = 0; i < w1.size(); ++i) {
        field.comp[0](i) *= std::polar(1.0, w1(i));
        field.comp[1](i) *= std::polar(1.0, w2(i));
    }
}

void strang_step(SpinorField& field, const PhysicalParams& p, const Eigen::ArrayXd& potential,
                 const LinearCoefficients& lc, double dt) {
    step_linear_half(field, lc, 0.5 * dt);
    step_nonlinear(field, p, potential, dt);
    step_linear_half(field, lc, 0.5 * dt);
}

std::array<double, 2> populations(const SpinorField& field) {
    const double cell = 2 * std::numbers::pi * field.grid.M;
    return {integrate(field.grid, field.comp[0].abs2()) / cell, integrate(field.grid, field.comp[1].abs2()) / cell};
}

double rwa_energy(const SpinorField& field, const PhysicalParams& p) {
    const Grid& grid = field.grid;
    const LinearCoefficients lc = rwa_linear_coefficients(p);
    const double invN = 1.0 / grid.N;
    const Eigen::ArrayXcd c1 = forward(field.comp[0]) * invN;
    const Eigen::ArrayXcd c2 = forward(field.comp[1]) * invN;

    // Quadratic part in Fourier space: sum_k c_k^dagger H_k c_k
    double linear = 0;
    for (int m = 0; m < grid.N; ++m) {
        const double k = grid.k(m);
        linear += (0.5 * k * k - lc.gamma_eff[0] * k + lc.shift[0]) * std::norm(c1(m));
        linear += (0.5 * k * k - lc.gamma_eff[1] * k + lc.shift[1]) * std::norm(c2(m));
        linear += 2 * lc.rabi * std::real(std::conj(c1(m)) * c2(m));
    }

    const Eigen::ArrayXd V = lattice_potential(grid, p.V0);
    const Eigen::ArrayXd n1 = field.comp[0].abs2();
    const Eigen::ArrayXd n2 = field.comp[1].abs2();
    const Eigen::ArrayXd local = V * (n1 + n2) + 0.5 * p.g * (n1.square() + n2.square()) + p.g12 * n1 * n2;
    return linear + integrate(grid, local) / grid.L;
}

Trajectory evolve(const SpinorField& initial, const PhysicalParams& p, const EvolveSettings& s,
                  const ExactReference* reference) {
    check_params(p);
    check_field(initial);
    if (!(s.dt > 0) || !std::isfinite(s.dt)) throw Error(ErrorKind::InvalidSettings, "dt must be > 0");
    if (!(s.T > 0) || !std::isfinite(s.T)) throw Error(ErrorKind::InvalidSettings, "T must be > 0");
    if (s.sample_stride < 1) throw Error(ErrorKind::InvalidSettings, "sample_stride must be >= 1");

    const bool driven = s.mode == EvolveMode::DrivenGauge;
    const double period = 2 * std::numbers::pi / p.omega;
    if (driven && s.dt > period / 32) {
        std::ostringstream os;
        os << "dt = " << s.dt << " does not resolve the drive; need dt <= (2pi/omega)/32 = " << period / 32;
        throw Error(ErrorKind::InvalidSettings, os.str());
    }

    Trajectory traj;
    traj.mode = s.mode;
    long stride = s.sample_stride;
    if (driven && s.stroboscopic) {
        const long per_period = static_cast<long>(std::ceil(period / s.dt - 1e-9));
        const long periods = static_cast<long>(std::floor(s.T / period + 1e-9));
        if (periods < 1) throw Error(ErrorKind::InvalidSettings, "T shorter than one drive period");
        traj.dt = period / per_period;
        traj.steps = periods * per_period;
        const long k = std::max<long>(1, std::lround(static_cast<double>(s.sample_stride) / per_period));
        stride = k * per_period;
    } else {
        traj.steps = std::max<long>(1, static_cast<long>(std::ceil(s.T / s.dt - 1e-9)));
        traj.dt = s.T / traj.steps;
    }
    const double dt = traj.dt;

    SpinorField field = initial;
    const Eigen::ArrayXd V = lattice_potential(field.grid, p.V0);
    const LinearCoefficients rwa = rwa_linear_coefficients(p);

    double last_norm = total_norm(field);
    auto record = [&](long step) {
        const double t = step * dt;
        const auto n = populations(field);
        SampleDiagnostics d;
        d.N1 = n[0];
        d.N2 = n[1];
        d.norm_total = n[0] + n[1];
        d.imbalance = n[0] - n[1];
        if (!std::isfinite(d.norm_total) || d.norm_total > kBlowupGrowth * last_norm) {
            std::ostringstream os;
            os << "norm grew from " << last_norm << " to " << d.norm_total << " by t = " << t;
            throw Error(ErrorKind::NumericalBlowup, os.str());
        }
        last_norm = d.norm_total;
        if (!driven) d.energy = rwa_energy(field, p);
        if (reference) {
            const auto fid = fidelity_to_exact(field, t, reference->params, reference->coeffs);
            d.dev_density = fid.dev_density;
            d.dev_state = fid.dev_state;
            d.dev_state_phase_free = fid.dev_state_phase_free;
        }
        traj.times.push_back(t);
        traj.samples.push_back(d);
        if (s.keep_fields) traj.fields.push_back(field);
    };

    record(0);
    for (long step = 1; step <= traj.steps; ++step) {
        const double t_mid = (step - 0.5) * dt;
        strang_step(field, p, V, driven ? driven_linear_coefficients(p, t_mid) : rwa, dt);
        if (step % stride == 0 || step == traj.steps) record(step);
    }
    return traj;
}

}  // namespace socbloch
