#include "doctest.h"

#include "irf/errors.hpp"
#include "irf/plaquette_weights.hpp"
#include "irf/rng.hpp"

using namespace irf;

namespace {

cplx crand(CounterRng& g, double re, double im) {
    return {g.uniform(-re, re), g.uniform(-im, im)};
}

WeightContext random_ctx(CounterRng& g, const FunctionMode& mode) {
    return {crand(g, 0.5, 0.3), crand(g, 0.5, 0.3), crand(g, 0.5, 0.3),
            cplx{1.0 + g.uniform(-0.4, 0.4), g.uniform(-0.1, 0.1)}, crand(g, 0.1, 0.05), mode};
}

constexpr PlaquetteKind kA = PlaquetteKind::A, kB = PlaquetteKind::B, kC = PlaquetteKind::C,
                        kD = PlaquetteKind::D;

}  // namespace

TEST_SUITE("plaquette_weights") {

TEST_CASE("stochastic weights add up to one (trigonometric, rational)") {
    CounterRng g(5, 1);
    for (const auto& mode : {FunctionMode::trigonometric(), FunctionMode::rational()})
        for (int i = 0; i < 200; ++i) {
            const auto ctx = random_ctx(g, mode);
            for (int k = 1; k <= 3; ++k)
                CHECK(std::abs(weight(kA, k, ctx, true) + weight(kC, k, ctx, true) - 1.0) < 1e-10);
            for (int k = 0; k <= 3; ++k)
                CHECK(std::abs(weight(kB, k, ctx, true) + weight(kD, k, ctx, true) - 1.0) < 1e-10);
            CHECK(std::abs(weight(kA, 0, ctx, true) - 1.0) < 1e-10);
        }
}

TEST_CASE("elliptic stochastic weights do not add up to one") {
    CounterRng g(5, 2);
    const auto ctx = random_ctx(g, FunctionMode::elliptic({0.1, 1.1}));
    CHECK(std::abs(weight(kA, 1, ctx, true) + weight(kC, 1, ctx, true) - 1.0) > 1e-6);
}

TEST_CASE("alternative sign form agrees by oddness") {
    CounterRng g(6, 1);
    for (int i = 0; i < 100; ++i) {
        const auto ctx = random_ctx(g, FunctionMode::trigonometric());
        for (int k = 1; k <= 3; ++k)
            for (auto kind : {kA, kB, kC, kD})
                CHECK(std::abs(weight_stochastic_alt(kind, k, ctx) - weight(kind, k, ctx, true)) <
                      1e-10 * std::max(1.0, std::abs(weight(kind, k, ctx, true))));
    }
}

TEST_CASE("hat ratio turns plain weights into stochastic ones") {
    CounterRng g(7, 1);
    for (int i = 0; i < 100; ++i) {
        const auto ctx = random_ctx(g, FunctionMode::trigonometric());
        for (int k = 1; k <= 3; ++k)
            for (auto kind : {kA, kB, kC, kD}) {
                const cplx st = weight(kind, k, ctx, true);
                const cplx h =
                    hat_ratio(kind, k, ctx.lambda, ctx.Lambda, ctx.eta, ctx.mode) *
                    weight(kind, k, ctx, false);
                CHECK(std::abs(st - h) < 1e-12 * std::max(1.0, std::abs(st)));
            }
    }
}

TEST_CASE("lambda -> -i infinity gives the higher spin six vertex weights") {
    CounterRng g(8, 1);
    for (int i = 0; i < 20; ++i) {
        auto ctx = random_ctx(g, FunctionMode::trigonometric());
        ctx.lambda = {0.0, -5.0};
        const cplx q = std::exp(-4.0 * kPi * kI * ctx.eta);
        const cplx qh = std::exp(-2.0 * kPi * kI * ctx.eta);
        const cplx s = std::exp(2.0 * kPi * kI * ctx.eta * ctx.Lambda);
        const cplx xi = std::exp(2.0 * kPi * kI * ctx.z);
        const cplx u = std::exp(2.0 * kPi * kI * (ctx.eta - ctx.w));
        for (int k = 1; k <= 3; ++k) {
            struct P {
                PlaquetteKind kind;
                int j1, i2, j2;
            };
            for (const P& p : {P{kA, 0, k, 0}, P{kB, 1, k + 1, 0}, P{kC, 0, k - 1, 1},
                               P{kD, 1, k, 1}}) {
                CAPTURE(kind_name(p.kind));
                CAPTURE(k);
                const cplx lhs = weight(p.kind, k, ctx, false);
                const cplx rhs = hs6v_limit_factor(p.kind, k, qh, s) *
                                 hs6v_weight(Hs6vTable::Plain, k, p.j1, p.i2, p.j2, q, s, xi, u);
                CHECK(std::abs(lhs - rhs) < 1e-6 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
}

TEST_CASE("stochastic higher spin weights add up to one") {
    const cplx q = 0.4, s = -0.3, xi = 1.2, u = 0.9;
    for (int k = 0; k <= 4; ++k) {
        const cplx r0 = hs6v_weight(Hs6vTable::Stochastic, k, 0, k, 0, q, s, xi, u) +
                        (k > 0 ? hs6v_weight(Hs6vTable::Stochastic, k, 0, k - 1, 1, q, s, xi, u)
                               : cplx{0.0});
        const cplx r1 = hs6v_weight(Hs6vTable::Stochastic, k, 1, k + 1, 0, q, s, xi, u) +
                        hs6v_weight(Hs6vTable::Stochastic, k, 1, k, 1, q, s, xi, u);
        CHECK(std::abs(r1 - 1.0) < 1e-14);
        if (k > 0) CHECK(std::abs(r0 - 1.0) < 1e-14);
    }
    CHECK_THROWS_AS(hs6v_weight(Hs6vTable::Plain, 1, 1, 1, 0, q, s, xi, u), InvalidParameter);
}

TEST_CASE("spin one half tables: rows sum to one") {
    const cplx q = 0.5, xi = 1.0, u = 3.0;
    for (cplx lambda : {cplx{0.5, 0.0}, cplx{0.31, 0.2}, cplx{0.0, -5.0}}) {
        CHECK(std::abs(dyn6v_weight(SpinHalf::Vertical, lambda, q, xi, u) +
                       dyn6v_weight(SpinHalf::RightTurn, lambda, q, xi, u) - 1.0) < 1e-12);
        CHECK(std::abs(dyn6v_weight(SpinHalf::UpTurn, lambda, q, xi, u) +
                       dyn6v_weight(SpinHalf::Horizontal, lambda, q, xi, u) - 1.0) < 1e-12);
    }
    for (double lambda : {-100.0, -7.5, 3.0}) {
        CHECK(rational_weight(SpinHalf::Vertical, lambda, 1.2, 0.1) +
                  rational_weight(SpinHalf::RightTurn, lambda, 1.2, 0.1) ==
              doctest::Approx(1.0).epsilon(1e-14));
        CHECK(rational_weight(SpinHalf::UpTurn, lambda, 1.2, 0.1) +
                  rational_weight(SpinHalf::Horizontal, lambda, 1.2, 0.1) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(rational_weight(SpinHalf::UpTurn, 0.0, 1.0, 0.0), SingularError);
}

TEST_CASE("spin one half symbols") {
    CHECK(spin_half_of(kA, 0) == SpinHalf::Empty);
    CHECK(spin_half_of(kB, 0) == SpinHalf::UpTurn);
    CHECK(spin_half_of(kC, 1) == SpinHalf::RightTurn);
    CHECK(spin_half_of(kD, 1) == SpinHalf::Cross);
    CHECK_THROWS_AS(spin_half_of(kB, 1), InvalidParameter);
}

TEST_CASE("general weights match the spin one half table at Lambda = 1") {
    // eta with q = 1/2, z and w purely imaginary so that xi u is real
    const cplx eta = kI * std::log(0.5) / (4.0 * kPi);
    const cplx z{0.0, 0.003}, w{0.0, 0.08};
    const cplx q = std::exp(-4.0 * kPi * kI * eta);
    const cplx xi = std::exp(2.0 * kPi * kI * z), u = std::exp(2.0 * kPi * kI * (eta - w));
    for (cplx lambda : {cplx{0.5, 0.0}, cplx{0.31, 0.2}}) {
        const WeightContext ctx{lambda, w, z, 1.0, eta, FunctionMode::trigonometric()};
        for (auto [kind, k] : {std::pair{kA, 1}, std::pair{kB, 0}, std::pair{kC, 1},
                               std::pair{kD, 0}}) {
            CAPTURE(kind_name(kind));
            CHECK(std::abs(weight(kind, k, ctx, true) -
                           dyn6v_weight(spin_half_of(kind, k), lambda, q, xi, u)) < 1e-10);
        }
    }
}

TEST_CASE("invalid occupations and singular denominators") {
    const WeightContext ctx{0.3, 0.1, 0.2, 1.0, 0.05, FunctionMode::trigonometric()};
    CHECK_THROWS_AS(weight(kC, 0, ctx, true), InvalidParameter);
    CHECK_THROWS_AS(weight(kA, -1, ctx, false), InvalidParameter);
    const WeightContext zero{0.0, 0.1, 0.2, 1.0, 0.05, FunctionMode::trigonometric()};
    CHECK_THROWS_AS(weight(kA, 1, zero, false), SingularError);
}

}
