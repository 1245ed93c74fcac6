#include "doctest.h"

#include <cmath>

#include "irf/errors.hpp"
#include "irf/rng.hpp"
#include "irf/special_functions.hpp"

using namespace irf;

namespace {

// Jacobi triple product for theta_1 in the normalization of theta():
// 2 p^{1/8} sin(pi z) prod (1 - p^n)(1 - p^n e^{2 pi i z})(1 - p^n e^{-2 pi i z}), p = e^{2 pi i tau}
cplx theta_product(cplx z, cplx tau) {
    const cplx p = std::exp(2.0 * kPi * kI * tau);
    const cplx e = std::exp(2.0 * kPi * kI * z);
    cplx prod = 2.0 * std::exp(kPi * kI * tau / 4.0) * std::sin(kPi * z);
    cplx pn = p;
    for (int n = 1; n < 200; ++n, pn *= p) prod *= (1.0 - pn) * (1.0 - pn * e) * (1.0 - pn / e);
    return prod;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_SUITE("special_functions") {

TEST_CASE("theta agrees with the triple product up to the sign convention") {
    const cplx tau{0.1, 1.1};
    const cplx z{0.23, 0.17};
    const cplx a = theta(z, tau);
    const cplx b = theta_product(z, tau);
    // same function up to a constant factor of modulus one
    const cplx c = a / b;
    CHECK(std::abs(std::abs(c) - 1.0) < 1e-12);
    const cplx z2{-0.31, 0.4};
    CHECK(rel(theta(z2, tau), c * theta_product(z2, tau)) < 1e-12);
}

TEST_CASE("theta periodicity") {
    const cplx tau{0.1, 1.1};
    CounterRng g(1, 2);
    for (int i = 0; i < 100; ++i) {
        const cplx z = g.uniform() + g.uniform() * tau;
        const cplx t = theta(z, tau);
        CHECK(rel(theta(z + 1.0, tau), -t) < 1e-10);
        CHECK(rel(theta(-z, tau), -t) < 1e-10);
        CHECK(rel(theta(z + tau, tau), -std::exp(-kI * kPi * (tau + 2.0 * z)) * t) < 1e-10);
    }
}

TEST_CASE("theta derivative at zero matches a difference quotient") {
    const cplx tau{0.0, 0.8};
    const double h = 1e-5;
    const cplx fd = (theta(h, tau) - theta(-h, tau)) / (2.0 * h);
    CHECK(rel(theta_prime0(tau), fd) < 1e-8);
}

TEST_CASE("f and f'(0) per mode") {
    const cplx z{0.3, -0.2};
    CHECK(rel(f_eval(FunctionMode::trigonometric(), z), std::sin(kPi * z)) < 1e-15);
    CHECK(f_eval(FunctionMode::rational(), z) == z);
    CHECK(std::abs(f_prime0(FunctionMode::trigonometric()) - kPi) < 1e-15);
    CHECK(std::abs(f_prime0(FunctionMode::rational()) - 1.0) < 1e-15);
    CHECK_THROWS_AS(FunctionMode::elliptic({0.2, -0.1}), InvalidParameter);
}

TEST_CASE("q-Pochhammer recurrence and rising factorial") {
    const cplx x{0.3, 0.2}, q{0.6, -0.1};
    for (int n = 0; n < 12; ++n) {
        const cplx lhs = q_pochhammer(x, q, n + 1);
        const cplx rhs = q_pochhammer(x, q, n) * (1.0 - std::pow(q, n) * x);
        CHECK(std::abs(lhs - rhs) < 1e-15 * std::max(1.0, std::abs(lhs)) * 8);
    }
    CHECK(q_pochhammer(x, q, 0) == cplx{1.0});
    CHECK(std::abs(rising_factorial(1.0, 5) - 120.0) < 1e-12);
    CHECK(std::abs(rising_factorial(0.5, 3) - 0.5 * 1.5 * 2.5) < 1e-15);
}

TEST_CASE("erfc") {
    CHECK(std::abs(erfc_real(0.0) - 1.0) < 1e-15);
    CHECK(std::abs(erfc_real(1.0) - 0.157299207050285130658779) < 1e-15);
}

TEST_CASE("trapezoid on circles reproduces residue sums") {
    // 1 / ((z - a)(z - b)) with both poles inside: residues cancel
    const cplx a{0.1, 0.05}, b{-0.2, 0.1};
    auto g = [&](std::span<const cplx> v) { return 1.0 / ((v[0] - a) * (v[0] - b)); };
    CHECK(std::abs(contour_integral(g, {{0.0, 1.0}}).value) < 1e-10);
    // only a inside
    auto r = contour_integral(g, {{a, 0.1}});
    CHECK(std::abs(r.value - 1.0 / (a - b)) < 1e-10);
    // inner variable inside the outer circle: the v1 integral gives v2^2, then 1/v2
    auto g2 = [&](std::span<const cplx> v) {
        return v[0] * v[0] / (v[0] - v[1]) / (v[1] * v[1] * v[1]);
    };
    auto r2 = contour_integral(g2, {{0.0, 1.0}, {0.0, 0.5}});
    CHECK(std::abs(r2.value - 1.0) < 1e-10);
}

}
