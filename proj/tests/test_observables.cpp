#include "doctest.h"

#include <cmath>
#include <vector>

#include "irf/errors.hpp"
#include "irf/model_params.hpp"
#include "irf/observables.hpp"
#include "irf/rng.hpp"

using namespace irf;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// E s_x(t) for the usual SSEP solves the discrete heat equation
// d/dt m_x = m_{x+1} + m_{x-1} - 2 m_x with m_x(0) = |x|; RK4 on a wide window.
std::vector<double> heat_mean(double t, long half, double dt = 1e-3) {
    const std::size_t n = static_cast<std::size_t>(2 * half + 1);
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = std::abs(static_cast<double>(i) - half);
    auto rhs = [&](const std::vector<double>& u) {
        std::vector<double> d(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) d[i] = u[i + 1] + u[i - 1] - 2.0 * u[i];
        return d;
    };
    const int steps = static_cast<int>(std::lround(t / dt));
    for (int s = 0; s < steps; ++s) {
        auto k1 = rhs(m);
        std::vector<double> u(n);
        for (std::size_t i = 0; i < n; ++i) u[i] = m[i] + 0.5 * dt * k1[i];
        auto k2 = rhs(u);
        for (std::size_t i = 0; i < n; ++i) u[i] = m[i] + 0.5 * dt * k2[i];
        auto k3 = rhs(u);
        for (std::size_t i = 0; i < n; ++i) u[i] = m[i] + dt * k3[i];
        auto k4 = rhs(u);
        for (std::size_t i = 0; i < n; ++i)
            m[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return m;
}

}  // namespace

TEST_SUITE("observables") {

TEST_CASE("O through lambda and through the six vertex parameters agree") {
    const IrfParams P = make_preset("dyn6v-positive");
    for (int N = 1; N <= 4; ++N)
        for (int x = 1; x <= 4; ++x)
            for (int h = 0; h <= N; ++h) {
                CHECK(rel(obs_O(h, x, N, P), obs_O_six_vertex(h, x, N, P)) < 1e-10);
                for (int k = 0; k < 3; ++k)
                    CHECK(rel(obs_linear(h, k, x, N, P), obs_linear_factored(h, k, x, N, P)) < 1e-10);
            }
}

TEST_CASE("dyn6v: integral, enumeration and six vertex moments agree") {
    const IrfParams P = make_preset("dyn6v-positive");
    const ObservableSpec spec{{3, 2}, 4, 0.0};
    const cplx ex = exact_E(ObsSetup::irf(P), spec).value;
    const cplx en = enum_E(ObsSetup::irf(P), spec);
    CHECK(rel(ex, en) < 1e-10);
    CHECK(rel(six_vertex_moment_enum(P, spec), en) < 1e-10);
    CHECK(rel(six_vertex_moment_integral(P, spec).value, en) < 1e-10);
    // frozen value (enumeration)
    CHECK(std::abs(en - 0.32193069346386444) < 1e-12);
    CHECK(std::abs(enum_E(ObsSetup::irf(P), {{3, 3, 1}, 5, 0.0}) - (-0.080137496031818772)) < 1e-12);
}

TEST_CASE("dyn6v: all-equal x moment factorizes") {
    const IrfParams P = make_preset("dyn6v-positive");
    for (int n = 1; n <= 3; ++n) {
        const ObservableSpec spec{std::vector<int>(static_cast<std::size_t>(n), 3), 4, 0.0};
        CHECK(rel(factorized_moment_enum(P, 3, 4, n), six_vertex_moment_enum(P, spec)) < 1e-10);
    }
}

TEST_CASE("the integral does not depend on lambda0") {
    const IrfParams P = make_preset("dyn6v-positive");
    const ObservableSpec spec{{4, 2}, 3, 0.0};
    const cplx a = exact_E(ObsSetup::irf(P), spec).value;
    const cplx b = exact_E(ObsSetup::irf(P.with_lambda0({0.1, -0.7})), spec).value;
    CHECK(std::abs(a - b) < 1e-12);
    const auto rep = lambda_independence_report(ObsSetup::irf(P), spec,
                                                {P.lambda0(), {0.2, 0.4}, {0.0, -5.0}}, 0, 0);
    CHECK(rep.passed);
}

TEST_CASE("rational: integral equals enumeration") {
    const IrfParams R = make_preset("rational-positive");
    for (const ObservableSpec& spec : {ObservableSpec{{3}, 3, 0.0}, ObservableSpec{{4, 2}, 4, 0.0},
                                       ObservableSpec{{1}, 1, 0.0}}) {
        CAPTURE(spec.xs.size());
        CHECK(rel(exact_E(ObsSetup::rational(R), spec).value, enum_E(ObsSetup::rational(R), spec)) <
              1e-9);
    }
    CHECK(std::abs(enum_E(ObsSetup::rational(R), {{3}, 3, 0.0}) - (-1.4477161516616928)) < 1e-12);
}

TEST_CASE("usual SSEP first moment against the heat equation") {
    for (double t : {0.5, 2.0, 6.0}) {
        const auto m = heat_mean(t, 150);
        for (long x : {0L, 1L, 3L}) {
            CAPTURE(t);
            CAPTURE(x);
            const double eh = 0.5 * (m[static_cast<std::size_t>(150 + x)] - static_cast<double>(x));
            // E[k - h] at n = 1 is -E h, for any lambda_bar
            CHECK(std::abs(-exact_E(ObsSetup::ssep(2.0), {{static_cast<int>(x)}, 0, t}).value - eh) <
                  1e-8);
        }
    }
    CHECK(std::abs(exact_E(ObsSetup::ssep(2.0), {{0}, 0, 2.0}).value - (-0.7715055214528439)) < 1e-10);
}

TEST_CASE("n = 1 residue sums agree with quadrature") {
    const auto a = exact_E(ObsSetup::asep(0.5, 1.0), {{1}, 0, 1.0});
    REQUIRE(a.residue.has_value());
    CHECK(std::abs(*a.residue - a.value) < 1e-8);
    const auto s = exact_E(ObsSetup::ssep(1.0), {{2}, 0, 3.0});
    REQUIRE(s.residue.has_value());
    CHECK(std::abs(*s.residue - s.value) < 1e-8);
    CHECK(std::abs(a.value - (-0.10848958325322761)) < 1e-10);
}

TEST_CASE("Monte Carlo agrees with the exact values") {
    struct Case {
        ObsSetup setup;
        ObservableSpec spec;
    };
    const IrfParams P = make_preset("dyn6v-positive");
    const IrfParams R = make_preset("rational-positive");
    for (const Case& c : {Case{ObsSetup::irf(P), {{3}, 3, 0.0}},
                          Case{ObsSetup::rational(R), {{3, 2}, 3, 0.0}},
                          Case{ObsSetup::asep(0.5, 1.0), {{1}, 0, 1.0}},
                          Case{ObsSetup::asep(0.5, 3.0), {{1, 0}, 0, 1.0}},
                          Case{ObsSetup::ssep(2.0), {{1, 0}, 0, 1.0}},
                          Case{ObsSetup::ssep(0.7), {{0, 0}, 0, 3.0}}}) {
        CAPTURE(obs_model_name(c.setup.model));
        const cplx ex = exact_E(c.setup, c.spec).value;
        const McEstimate mc = mc_E(c.setup, c.spec, 20000, 3);
        CHECK(std::abs(mc.mean - ex) < 4.0 * mc.stderr_);
    }
}

TEST_CASE("Monte Carlo is independent of the thread count") {
    const IrfParams P = make_preset("dyn6v-positive");
    const auto a = mc_E(ObsSetup::irf(P), {{3, 2}, 4, 0.0}, 5000, 1, 1);
    const auto b = mc_E(ObsSetup::irf(P), {{3, 2}, 4, 0.0}, 5000, 1, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
}

TEST_CASE("dynamic SSEP moments of O from usual-SSEP factorial moments") {
    const double lb = 1.5, t = 1.5;
    const long x = 1;
    // factorial moments E[prod_{k<m} (h - k)] from the exact integrals
    std::vector<double> fm;
    for (int m = 1; m <= 2; ++m) {
        const double v = exact_E(ObsSetup::ssep(lb), {std::vector<int>(static_cast<std::size_t>(m), 1), 0, t})
                             .value.real();
        fm.push_back(m % 2 ? -v : v);
    }
    const auto EO = ssep_O_moments(fm, x, lb);
    // direct Monte Carlo of O and O^2 on the dynamic process
    const int M = 40000;
    double s1 = 0.0, s2 = 0.0, q1 = 0.0, q2 = 0.0;
    for (int i = 0; i < M; ++i) {
        const auto st = simulate_exclusion(ExclusionState::step(ExclusionKind::ssep(lb)), t,
                                           counter_hash(99, static_cast<std::uint64_t>(i)));
        const double O = obs_O_ssep(st.at(x), x, lb);
        s1 += O;
        q1 += O * O;
        s2 += O * O;
        q2 += O * O * O * O;
    }
    const double m1 = s1 / M, m2 = s2 / M;
    const double e1 = std::sqrt((q1 / M - m1 * m1) / M), e2 = std::sqrt((q2 / M - m2 * m2) / M);
    CHECK(std::abs(m1 - EO[0]) < 4.0 * e1);
    CHECK(std::abs(m2 - EO[1]) < 4.0 * e2);
}

TEST_CASE("height from O inverts O(h) = h (h + x + lambda_bar)") {
    for (double lb : {0.5, 2.0, 7.0})
        for (long x : {-3L, 0L, 4L})
            for (int h = 0; h < 6; ++h) {
                const double O = h * (h + static_cast<double>(x) + lb);
                if (h + x + lb <= 0) continue;
                CHECK(ssep_height_from_O(O, x, lb) == doctest::Approx(h).epsilon(1e-12));
                // the variant with lambda_bar multiplying O is not an inverse
                const double c = 0.5 * (static_cast<double>(x) + lb);
                const double printed = std::sqrt(lb * O + c * c) - c;
                if (h > 0 && lb != 1.0) CHECK(std::abs(printed - h) > 1e-3);
            }
}

TEST_CASE("parameter validation") {
    const IrfParams P = make_preset("dyn6v-positive");
    CHECK_THROWS_AS(exact_E(ObsSetup::irf(P), {{2, 3}, 2, 0.0}), InvalidParameter);
    CHECK_THROWS_AS(exact_E(ObsSetup::irf(P), {{}, 2, 0.0}), InvalidParameter);
    CHECK_THROWS_AS(exact_E(ObsSetup::ssep(1.0), {{1}, 0, -1.0}), InvalidParameter);
    CHECK_THROWS_AS(exact_E(ObsSetup::ssep(1.0), {{1, 1, 1}, 0, 5.0}), InvalidParameter);
    CHECK_THROWS_AS(exact_E(ObsSetup::rational(P), {{2}, 2, 0.0}), InvalidParameter);
    CHECK_THROWS_AS(enum_E(ObsSetup::ssep(1.0), {{1}, 0, 1.0}), InvalidParameter);
    CHECK_THROWS_AS(parse_obs_model("tasep"), InvalidParameter);
    CHECK(parse_obs_model("irf") == ObsModel::Irf);
    CHECK(std::string(obs_model_name(parse_obs_model("dyn6v"))) == "dyn6v");
}

TEST_CASE("observable records") {
    const auto j = observable_record(ObsSetup::ssep(2.0), {{1, 0}, 0, 1.0}, "mc", {0.5, 0.0}, 0.01);
    CHECK(j["model"] == "ssep");
    CHECK(j["spec"]["t"] == 1.0);
    CHECK(j["value"][0] == 0.5);
    CHECK(j["stderr"] == 0.01);
    CHECK_FALSE(j.contains("runtime_ms"));
}

}
