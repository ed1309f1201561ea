#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "socbloch/diagnostics.hpp"
#include "socbloch/model.hpp"

using namespace socbloch;
using doctest::Approx;

TEST_CASE("drive ratio and chemical potential at the reference set") {
    const auto p = oracle::fig2a();
    CHECK(required_drive_ratio(p) == Approx(oracle::ratio).epsilon(1e-15));
    CHECK(chemical_potential(p) == Approx(oracle::mu).epsilon(1e-15));
    CHECK(p.xi == Approx(50 * oracle::ratio).epsilon(1e-15));

    PhysicalParams q;
    q.Nt = 10;
    q.g = 0.6;
    q.g12 = 0.4;
    q.Gamma = 0.1;
    q = with_matched_drive(q);
    CHECK(chemical_potential(q) == Approx(5.5075).epsilon(1e-15));
}

TEST_CASE("effective couplings") {
    const auto p = oracle::fig2a();
    const auto e = effective_soc_and_mu(p, chemical_potential(p));
    CHECK(e.gamma_eff[0] == Approx(oracle::gamma_eff1).epsilon(1e-14));
    CHECK(e.gamma_eff[1] == Approx(oracle::gamma_eff2).epsilon(1e-14));
    CHECK(e.mu_eff[0] == Approx(oracle::mu_eff1).epsilon(1e-14));
    CHECK(e.mu_eff[1] == Approx(oracle::mu_eff2).epsilon(1e-14));
    // the drive condition makes the effective determinant vanish
    CHECK(std::abs(e.gamma_eff[0] * e.gamma_eff[1] - p.Gamma * p.Gamma) < 1e-15);
}

TEST_CASE("critical depth") {
    const auto p = oracle::fig2a();
    const auto vc = critical_depth(p);
    CHECK(vc.value == Approx(oracle::V2c).epsilon(1e-14));
    CHECK(vc.branch == 2);
    CHECK(vc.branches[0] == Approx(oracle::V1c).epsilon(1e-14));
    CHECK(vc.branches[1] == Approx(oracle::V2c).epsilon(1e-14));
    CHECK(std::abs(vc.value - 3.62053) < 1e-5);

    SUBCASE("gamma = 0 gives (g+g12) Nt") {
        PhysicalParams q;
        q.Nt = 10;
        q.g = 0.6;
        q.g12 = 0.4;
        q.Gamma = 0.1;
        CHECK(critical_depth(q).value == 10.0);
        q.Nt = 8;
        q.g = 0.4;
        q.g12 = 0.6;
        CHECK(critical_depth(q).value == 8.0);
    }
    SUBCASE("g < g12 selects the first branch") {
        PhysicalParams q;
        q.Nt = 8;
        q.g = 0.4;
        q.g12 = 0.6;
        q.Gamma = 0.1;
        q.gamma = 0.3;
        const auto c = critical_depth(q);
        CHECK(c.branch == 1);
        CHECK(c.value == Approx(oracle::fig1b_V1c).epsilon(1e-14));
    }
}

TEST_CASE("gamma_max solves the full-transfer equation") {
    auto p = oracle::fig2a();
    const double gm = gamma_max(p);
    CHECK(gm == Approx(oracle::gamma_max).epsilon(1e-15));
    CHECK(std::abs(gm - 0.99750313) < 1e-7);
    p.gamma = gm;
    CHECK(2 * imbalance_term(p) == Approx(p.Nt).epsilon(1e-14));

    // bisection on the monotone imbalance as an independent check
    double lo = 0, hi = 2;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        p.gamma = mid;
        (2 * imbalance_term(p) < p.Nt ? lo : hi) = mid;
    }
    CHECK(lo == Approx(gm).epsilon(1e-14));

    SUBCASE("mirrored interactions give the same gamma with opposite sign") {
        auto q = oracle::fig2a();
        std::swap(q.g, q.g12);
        CHECK(gamma_max(q) == Approx(gm).epsilon(1e-15));
        q.gamma = gm;
        CHECK(2 * imbalance_term(q) == Approx(-q.Nt).epsilon(1e-14));
    }
}

TEST_CASE("stable gamma solver in extreme regimes") {
    // Gamma large, target small: naive quadratic formula cancels catastrophically
    const double g = gamma_for_soc_product(1e4, 1e-6);
    CHECK(g * g * (1e8 + g * g) == Approx(1e-12).epsilon(1e-12));
    CHECK(gamma_for_soc_product(0.0, 4.0) == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("parameter checks") {
    auto p = oracle::fig2a();
    auto bad = p;
    bad.V0 = -1;
    CHECK_THROWS_AS(check_params(bad), Error);
    bad = p;
    bad.Nt = 0;
    CHECK_THROWS_AS(check_params(bad), Error);
    bad = p;
    bad.g12 = bad.g;
    try {
        check_params(bad);
        FAIL("expected SingularCoupling");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SingularCoupling);
    }
    // g == g12 is fine when gamma == 0
    bad.gamma = 0;
    CHECK_NOTHROW(check_params(bad));
    CHECK(imbalance_term(bad) == 0.0);
}

TEST_CASE("regime validation") {
    auto p = oracle::fig2a();
    CHECK(validate_exact_regime(p).ok());

    SUBCASE("lattice depth above Vc") {
        p.V0 = 5;
        const auto r = validate_exact_regime(p);
        CHECK_FALSE(r.ok());
        CHECK_FALSE(r.find("lattice_depth")->passed);
    }
    SUBCASE("published boundary depth is accepted") {
        p.V0 = 3.62053;
        CHECK(validate_exact_regime(p).ok());
    }
    SUBCASE("drive mismatch") {
        p.xi *= 1.001;
        const auto r = validate_exact_regime(p);
        CHECK_FALSE(r.find("drive_ratio")->passed);
    }
    SUBCASE("gamma above gamma_max") {
        p.gamma = 1.1;
        const auto r = validate_exact_regime(p);
        CHECK_FALSE(r.find("population")->passed);
        CHECK_FALSE(r.find("lattice_depth")->passed);
    }
    SUBCASE("low frequency is a warning only") {
        p.omega = 5;
        p = with_matched_drive(p);
        const auto r = validate_exact_regime(p);
        CHECK(r.ok());
        CHECK(r.warnings().size() == 1);
    }
    SUBCASE("undriven, uncoupled limit") {
        p.gamma = 0;
        p.Gamma = 0;
        p = with_matched_drive(p);
        CHECK(p.xi == 0.0);
        CHECK(validate_exact_regime(p).ok());
    }
}

TEST_CASE("population identities over random valid sets") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const auto p = random_valid_params(rng);
        REQUIRE(validate_exact_regime(p).ok());
        const double X = imbalance_term(p);
        const auto vc = critical_depth(p);
        CHECK(vc.value <= vc.branches[0] + 1e-12);
        CHECK(vc.value <= vc.branches[1] + 1e-12);
        CHECK(std::abs(X) <= p.Nt / 2);
        // gamma^2 (Gamma^2 + gamma^2) = ((g - g12) X)^2
        const double lhs = p.gamma * p.gamma * (p.Gamma * p.Gamma + p.gamma * p.gamma);
        CHECK(lhs == Approx(std::pow((p.g - p.g12) * X, 2)).epsilon(1e-12));
    }
}

TEST_CASE("long double instantiation agrees") {
    socbloch::PhysicalParamsT<long double> p;
    p.gamma = 0.3L;
    p.Gamma = 0.1L;
    p.g = 0.6L;
    p.g12 = 0.2L;
    p.V0 = 1;
    p.Nt = 5;
    p.omega = 50;
    p = with_matched_drive(p);
    CHECK(static_cast<double>(critical_depth(p).value) == Approx(oracle::V2c).epsilon(1e-15));
    CHECK(static_cast<double>(gamma_max(p)) == Approx(oracle::gamma_max).epsilon(1e-15));
}
