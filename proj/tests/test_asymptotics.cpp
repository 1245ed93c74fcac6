#include "doctest.h"

#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "irf/asymptotics.hpp"
#include "irf/errors.hpp"
#include "irf/special_functions.hpp"

using namespace irf;

TEST_SUITE("asymptotics") {

TEST_CASE("H profile values and tails") {
    CHECK(H_profile(0.0, 1.0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
    CHECK(std::abs(H_profile(-8.0, 1.0) - 8.0) < 1e-6);
    CHECK(std::abs(H_profile(8.0, 1.0)) < 1e-6);
    // H(chi) - H(-chi) = -chi
    for (double chi : {0.3, 1.1, 2.5}) CHECK(H_profile(chi, 1.3) - H_profile(-chi, 1.3) == doctest::Approx(-chi));
    CHECK_THROWS_AS(H_profile(0.0, 0.0), InvalidParameter);
}

TEST_CASE("H solves the heat equation") {
    for (double chi : {-2.0, -0.5, 0.0, 0.7, 2.0})
        for (double tau : {0.5, 1.0, 2.0}) CHECK(heat_residual(chi, tau) < 1e-5);
}

TEST_CASE("regime limits") {
    RegimeSpec r;
    r.chi = 0.4;
    r.tau = 1.0;
    CHECK(std::get<double>(limit_profile(r)) == doctest::Approx(H_profile(0.4, 1.0)));
    r.regime = Regime::II;
    r.l = 1e4;
    // large l recovers regime I
    CHECK(std::abs(std::get<double>(limit_profile(r)) - H_profile(0.4, 1.0)) < 1e-3);
    r.regime = Regime::III;
    r.chi = 0.0;
    CHECK(std::get<double>(limit_profile(r)) == doctest::Approx(std::pow(1.0 / kPi, 0.25)));
    r.regime = Regime::IV;
    r.lambda_bar = 2.0;
    const auto g = std::get<GammaLimit>(limit_profile(r));
    CHECK(g.a == 2.0);
    CHECK(g.b == doctest::Approx(1.0 / std::sqrt(kPi)));
    r.regime = Regime::II;
    r.l = -1.0;
    CHECK_THROWS_AS(limit_profile(r), InvalidParameter);
    CHECK(parse_regime("IV") == Regime::IV);
    CHECK_THROWS_AS(parse_regime("V"), InvalidParameter);
}

TEST_CASE("Gamma law: moments and CDF against quadrature of the scale density") {
    const double a = 1.7, b = 0.6;
    auto density = [&](double y) {
        return std::pow(y, a - 1.0) * std::exp(-y / b) / (std::tgamma(a) * std::pow(b, a));
    };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    for (int m = 0; m <= 3; ++m) {
        const double num = GK::integrate([&](double y) { return std::pow(y, m) * density(y); }, 0.0,
                                         std::numeric_limits<double>::infinity(), 15, 1e-12);
        CHECK(gamma_moment(a, b, m) == doctest::Approx(num).epsilon(1e-8));
    }
    const GammaLimit g{a, b, 0.5};
    for (double z : {0.2, 0.8, 1.5}) {
        const double ymax = (z + 0.25) * (z + 0.25) - 0.0625;
        const double num = GK::integrate(density, 0.0, ymax, 15, 1e-12);
        CHECK(g.cdf(z) == doctest::Approx(num).epsilon(1e-8));
        CHECK(g.height(ymax) == doctest::Approx(z));
    }
    CHECK(g.cdf(-1.0) == 0.0);
}

TEST_CASE("regime IV moment ratios at L = 1e4") {
    const auto r1 = regime_moment_check(1, 1e4, 1.0, 1.0);
    const auto r2 = regime_moment_check(2, 1e4, 1.0, 1.0);
    CHECK(r1.passed);
    CHECK(r2.passed);
    // frozen from the exact integrals
    CHECK(r1.lhs.real() == doctest::Approx(0.999993749941405).epsilon(1e-9));
    CHECK(r2.lhs.real() == doctest::Approx(1.0052039432580904).epsilon(1e-9));
}

TEST_CASE("hydrodynamic limit at L = 400") {
    for (double chi : {-1.0, 0.0, 1.0}) {
        const auto r = hydrodynamic_check(chi, 1.0, 400.0);
        CHECK(r.passed);
    }
    CHECK(hydrodynamic_check(0.0, 1.0, 400.0).parameters["E_h"].get<double>() ==
          doctest::Approx(11.28202816495847).epsilon(1e-10));
}

TEST_CASE("KS check is soft and deterministic") {
    const auto a = regime_iv_ks_check(400.0, 1.0, 1.0, 0.0, 40, 5);
    const auto b = regime_iv_ks_check(400.0, 1.0, 1.0, 0.0, 40, 5, 2);
    CHECK_FALSE(is_gating(a));
    CHECK(a.residual == b.residual);
    CHECK(a.residual >= 0.0);
    CHECK(a.residual <= 1.0);
}

TEST_CASE("profile table") {
    const auto rows = hydrodynamic_table(100.0, 1.0, {-1.0, 0.0, 1.0}, 200, 1);
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) {
        CHECK(std::abs(r.exact - r.profile) < 0.02 * std::max(r.profile, 0.1));
        CHECK(std::abs(r.empirical - r.exact) < 4.0 * r.stderr_ + 1e-12);
    }
}

TEST_CASE("suite runs without the KS check") {
    AsymptoticsOptions o;
    o.run_ks = false;
    const auto rs = run_asymptotics_suite(o);
    CHECK(rs.size() == 7);
    for (const auto& r : rs) {
        CAPTURE(r.name);
        CHECK(r.passed);
    }
}

}
