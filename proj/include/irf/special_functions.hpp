#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace irf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

struct FunctionMode {
    enum class Kind { Elliptic, Trigonometric, Rational };
    Kind kind = Kind::Trigonometric;
    cplx tau{0.0, 1.0};  // used only when kind == Elliptic

    static FunctionMode trigonometric() { return {Kind::Trigonometric, {0.0, 1.0}}; }
    static FunctionMode rational() { return {Kind::Rational, {0.0, 1.0}}; }
    static FunctionMode elliptic(cplx tau);

    void validate() const;
};

const char* mode_name(FunctionMode::Kind k);

// -sum_j exp(pi i (j+1/2)^2 tau + 2 pi i (j+1/2)(z+1/2)), tail below tol.
cplx theta(cplx z, cplx tau, double tol = 1e-17);
// d/dz theta(z, tau) at z = 0, from the differentiated series.
cplx theta_prime0(cplx tau, double tol = 1e-17);

cplx f_eval(const FunctionMode& mode, cplx z);
cplx f_prime0(const FunctionMode& mode);

// (x;q)_n = (1-x)(1-qx)...(1-q^{n-1}x)
cplx q_pochhammer(cplx x, cplx q, int n);
// (a)_n = a(a+1)...(a+n-1)
cplx rising_factorial(cplx a, int n);

// Complementary error function (libm erfc).
double erfc_real(double x);

struct Circle {
    cplx center;
    double radius = 1.0;
};

struct QuadratureOptions {
    std::size_t initial_nodes = 16;
    std::size_t max_nodes = std::size_t{1} << 14;  // per variable
    std::size_t max_points = std::size_t{1} << 27;  // whole tensor grid
    double tol = 1e-10;                            // absolute
    int threads = 1;
};

struct QuadratureResult {
    cplx value;
    cplx previous;
    std::size_t nodes = 0;  // per variable at acceptance
};

using Integrand = std::function<cplx(std::span<const cplx>)>;
// Given the node coordinates of each circle, returns an evaluator over node
// indices. Lets callers precompute per-node and per-pair tables.
using TabulatedEvaluator = std::function<cplx(std::span<const std::size_t>)>;
using IntegrandFactory =
    std::function<TabulatedEvaluator(const std::vector<std::vector<cplx>>& nodes)>;

// Iterated trapezoidal rule on positively oriented circles, including the
// 1/(2 pi i) per variable, doubling the node count until two successive
// estimates differ by less than opts.tol.
QuadratureResult contour_integral(const Integrand& integrand, const std::vector<Circle>& circles,
                                  const QuadratureOptions& opts = {});
QuadratureResult contour_integral(const IntegrandFactory& factory,
                                  const std::vector<Circle>& circles,
                                  const QuadratureOptions& opts = {});

// Fixed-node evaluation (no doubling).
cplx trapezoid_fixed(const IntegrandFactory& factory, const std::vector<Circle>& circles,
                     std::size_t nodes, int threads = 1);

}  // namespace irf
