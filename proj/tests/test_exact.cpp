#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "socbloch/diagnostics.hpp"
#include "socbloch/exact.hpp"

using namespace socbloch;
using doctest::Approx;
constexpr double pi = std::numbers::pi;

TEST_CASE("coefficients at the reference set") {
    const auto p = oracle::fig2a();
    const auto c = coefficients(p);
    CHECK(c.a[0] == Approx(oracle::a1).epsilon(1e-14));
    CHECK(c.b[0] == Approx(oracle::b1).epsilon(1e-14));
    CHECK(c.a[1] == Approx(oracle::a2).epsilon(1e-14));
    CHECK(c.b[1] == Approx(oracle::b2).epsilon(1e-14));
    CHECK(c.mu == Approx(oracle::mu).epsilon(1e-15));

    const auto psi = psi_exact(c, pi / 4);
    CHECK(psi[0].real() == Approx(oracle::psi1_re_pi4).epsilon(1e-14));
    CHECK(psi[0].imag() == Approx(oracle::psi1_im_pi4).epsilon(1e-14));
}

TEST_CASE("coefficient identities over random valid sets") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 300; ++i) {
        const auto p = random_valid_params(rng);
        const auto c = coefficients(p);
        const auto n = well_populations(p);
        const double D = depth_term(p);
        for (int j = 0; j < 2; ++j) {
            CHECK(c.a[j] * c.a[j] + c.b[j] * c.b[j] == Approx(2 * n[j]).epsilon(1e-12));
            CHECK(std::abs(c.a[j] * c.a[j] - c.b[j] * c.b[j] - D) < 1e-12 * p.Nt);
        }
        CHECK(n[0] + n[1] == Approx(p.Nt).epsilon(1e-14));
        // closed-form density against |psi|^2
        for (double x : {0.0, 0.3, 1.1, pi / 2, 2.9}) {
            const auto psi = psi_exact(c, x);
            const auto r = density_profile(p, x);
            CHECK(std::abs(std::norm(psi[0]) - r[0]) < 1e-12 * p.Nt);
            CHECK(std::abs(std::norm(psi[1]) - r[1]) < 1e-12 * p.Nt);
        }
    }
}

TEST_CASE("densities, populations and currents") {
    const auto p = oracle::fig2a();
    const auto r0 = density_profile(p, 0.0);
    CHECK(r0[0] == Approx(oracle::R1sq_0).epsilon(1e-14));
    CHECK(r0[1] == Approx(oracle::R2sq_0).epsilon(1e-14));
    // peaks at the wells, minima on the barriers
    const auto rb = density_profile(p, pi / 2);
    const auto c = coefficients(p);
    CHECK(rb[0] == Approx(c.b[0] * c.b[0]).epsilon(1e-14));
    CHECK(rb[1] == Approx(c.b[1] * c.b[1]).epsilon(1e-14));

    const auto n = well_populations(p);
    CHECK(n[0] == Approx(oracle::N1).epsilon(1e-14));
    CHECK(n[1] == Approx(oracle::N2).epsilon(1e-14));
    CHECK(n[0] - n[1] == Approx(oracle::imbalance).epsilon(1e-13));

    const auto J = superfluid_current(p, FlowSign::Plus);
    CHECK(J[0] == Approx(oracle::J1).epsilon(1e-14));
    CHECK(J[1] == Approx(oracle::J2).epsilon(1e-14));
    CHECK(J[0] == Approx(c.a[0] * c.b[0]).epsilon(1e-14));
    CHECK(J[1] == Approx(c.a[1] * c.b[1]).epsilon(1e-14));
    const auto Jm = superfluid_current(p, FlowSign::Minus);
    CHECK(Jm[0] == -J[0]);
    CHECK(Jm[1] == -J[1]);

    const auto v = superfluid_velocity(p, 0.0, FlowSign::Plus);
    CHECK(v[0] == Approx(oracle::v1_0).epsilon(1e-14));

    SUBCASE("uncoupled, flat lattice: J = Nt/2") {
        auto q = p;
        q.gamma = 0;
        q.V0 = 0;
        q = with_matched_drive(q);
        const auto Jq = superfluid_current(q, FlowSign::Plus);
        CHECK(Jq[0] == Approx(2.5).epsilon(1e-15));
        CHECK(Jq[1] == Approx(2.5).epsilon(1e-15));
    }
}

TEST_CASE("boundary depth") {
    const auto p = oracle::fig2b();
    const auto c = coefficients(p);
    CHECK(c.b[1] == 0.0);
    CHECK(superfluid_current(p, FlowSign::Plus)[1] == 0.0);
    const auto r = density_profile(p, pi / 2);
    CHECK(std::abs(r[1]) < 1e-5);
    try {
        superfluid_velocity(p, pi / 2, FlowSign::Plus);
        FAIL("expected DivergentVelocity");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivergentVelocity);
    }
    CHECK_NOTHROW(superfluid_velocity(p, 0.0, FlowSign::Plus));

    auto q = p;
    q.V0 = 5;
    try {
        coefficients(q);
        FAIL("expected ConditionViolated");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ConditionViolated);
    }
}

TEST_CASE("populations beyond gamma_max") {
    auto p = oracle::fig2a();
    p.gamma = 1.2;
    p = with_matched_drive(p);
    try {
        well_populations(p);
        FAIL("expected UnphysicalPopulation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnphysicalPopulation);
    }
}

TEST_CASE("current vanishing point") {
    auto p = oracle::fig2a();
    p.gamma = 0.86314347;
    p = with_matched_drive(p);
    // J2 = sqrt((N2 - d)(N2 + d)); the first factor carries the zero
    const double X = imbalance_term(p);
    const double lo = p.Nt / 2 - X - depth_term(p) / 2;
    CHECK(std::abs(lo) < 1e-7);
    CHECK(std::abs(superfluid_current(p, FlowSign::Plus)[1]) < 1e-3);
}

TEST_CASE("drive phase and space-time state") {
    const auto p = oracle::fig2a();
    const auto c = coefficients(p);
    const double T = 2 * pi / p.omega;
    CHECK(std::abs(drive_phase(p, T)) < 1e-14);
    CHECK(drive_phase(p, T / 2) == Approx(2 * p.xi / p.omega).epsilon(1e-14));
    // time average of theta is xi/omega
    double avg = 0;
    const int n = 4096;
    for (int i = 0; i < n; ++i) avg += drive_phase(p, (i + 0.5) * T / n);
    CHECK(avg / n == Approx(p.xi / p.omega).epsilon(1e-12));

    for (double t : {0.0, 0.37, 3 * T}) {
        const auto s = spatiotemporal_state(p, c, 0.8, t);
        const auto psi = psi_exact(c, 0.8);
        CHECK(std::abs(s[0]) == Approx(std::abs(psi[0])).epsilon(1e-14));
        CHECK(std::abs(s[1]) == Approx(std::abs(psi[1])).epsilon(1e-14));
    }
    const auto s = spatiotemporal_state(p, c, 0.8, 3 * T);
    const auto psi = psi_exact(c, 0.8);
    CHECK(std::abs(s[0] - psi[0] * std::polar(1.0, -c.mu * 3 * T)) < 1e-12);
}

namespace {

// Schmidt decomposition of the spin x space state over one well, sampled
// on a fine grid: the squared singular values are the spin-rho eigenvalues.
Eigen::Vector2d schmidt_spectrum(const BlochCoefficients& c) {
    const int n = 512;
    Eigen::MatrixXcd A(2, n);
    for (int i = 0; i < n; ++i) {
        const auto psi = psi_exact(c, -pi / 2 + pi * i / n);
        A(0, i) = psi[0];
        A(1, i) = psi[1];
    }
    A /= std::sqrt(A.squaredNorm());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    Eigen::Vector2d s = svd.singularValues().array().square();
    return {s(1), s(0)};
}

}  // namespace

TEST_CASE("spin entanglement") {
    const auto p = oracle::fig2a();
    const auto e = spin_entanglement(p);
    CHECK(e.entropy == Approx(oracle::entropy_bits).epsilon(1e-12));
    CHECK(e.eigenvalues(0) == Approx(oracle::lambda_min).epsilon(1e-11));
    CHECK(e.rho.trace() == Approx(1.0).epsilon(1e-15));
    CHECK(e.rho(0, 0) == Approx(oracle::N1 / 5).epsilon(1e-14));

    const auto s = schmidt_spectrum(coefficients(p));
    CHECK(s(0) == Approx(e.eigenvalues(0)).epsilon(1e-10));
    CHECK(s(1) == Approx(e.eigenvalues(1)).epsilon(1e-12));

    SUBCASE("relabeling the components leaves the entropy unchanged") {
        auto c = coefficients(p);
        std::swap(c.a[0], c.a[1]);
        std::swap(c.b[0], c.b[1]);
        CHECK(spin_entanglement_from(c).entropy == Approx(e.entropy).epsilon(1e-14));
    }
    SUBCASE("gamma = 0 is separable") {
        std::mt19937_64 rng(3);
        for (int i = 0; i < 100; ++i) {
            auto q = random_valid_params(rng);
            q.gamma = 0;
            q = with_matched_drive(q);
            CHECK(spin_entanglement(q).entropy < 1e-12);
        }
    }
    SUBCASE("gamma > 0 with a lattice is entangled") {
        std::mt19937_64 rng(5);
        for (int i = 0; i < 100; ++i) {
            auto q = random_valid_params(rng);
            if (q.gamma < 1e-3 || q.V0 < 1e-3) continue;
            CHECK(spin_entanglement(q).entropy > 0);
        }
    }
    SUBCASE("flat lattice is separable for any gamma") {
        auto q = p;
        q.V0 = 0;
        CHECK(spin_entanglement(q).entropy < 1e-12);
    }
}

TEST_CASE("phase unwrapping") {
    const auto p = oracle::fig2a();
    const auto c = coefficients(p);
    Eigen::ArrayXd x = Eigen::ArrayXd::LinSpaced(400, 0, 4 * pi - 4 * pi / 400);
    const auto prof = make_profile(x, p, c);
    CHECK(prof.phase[0](0) == 0.0);
    // a cos x + i b sin x winds once per 2 pi
    const double last = prof.phase[0](x.size() - 1);
    CHECK(last == Approx(4 * pi - 4 * pi / 400).epsilon(1e-2));
    for (Eigen::Index i = 1; i < x.size(); ++i) {
        CHECK(std::abs(prof.phase[0](i) - prof.phase[0](i - 1)) < pi);
    }
    CHECK(prof.potential(x.size() / 8) == Approx(std::pow(std::sin(x(x.size() / 8)), 2)).epsilon(1e-14));
}
