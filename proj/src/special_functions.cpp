#include "irf/special_functions.hpp"

#include <cmath>
#include <string>

#include "irf/errors.hpp"
#include "irf/parallel.hpp"

namespace irf {

FunctionMode FunctionMode::elliptic(cplx tau) {
    FunctionMode m{Kind::Elliptic, tau};
    m.validate();
    return m;
}

void FunctionMode::validate() const {
    if (kind == Kind::Elliptic && !(tau.imag() > 0.0))
        throw InvalidParameter("elliptic mode requires Im(tau) > 0");
}

const char* mode_name(FunctionMode::Kind k) {
    switch (k) {
        case FunctionMode::Kind::Elliptic: return "elliptic";
        case FunctionMode::Kind::Trigonometric: return "trigonometric";
        case FunctionMode::Kind::Rational: return "rational";
    }
    return "?";
}

namespace {

// Sums c(m) * exp(pi i m^2 tau + 2 pi i m (z + 1/2)) over m in Z + 1/2 until the
// geometric bound on both tails drops below tol.
template <class Coef>
cplx theta_series(cplx z, cplx tau, double tol, Coef coef) {
    if (!(tau.imag() > 0.0)) throw InvalidParameter("theta: Im(tau) must be positive");
    if (!(tol > 0.0)) throw InvalidParameter("theta: tol must be positive");
    const double T = tau.imag();
    const double y = z.imag();
    const cplx w = z + 0.5;
    auto term = [&](double m) {
        return coef(m) * std::exp(kI * kPi * (m * m * tau + 2.0 * m * w));
    };
    auto bound = [&](double m, double sign) {
        // |term(sign*m)| and the ratio of consecutive magnitudes beyond it
        const double mag = std::exp(-kPi * T * m * m - 2.0 * kPi * sign * m * y);
        const double ratio = std::exp(-kPi * T * (2.0 * m + 1.0) - 2.0 * kPi * sign * y);
        return std::pair{mag, ratio};
    };
    cplx sum = 0.0;
    const double vertex = std::abs(y) / T;
    for (int k = 0; k < 100000; ++k) {
        const double m = k + 0.5;
        sum += term(m) + term(-m);
        if (m < vertex) continue;
        const double mnext = m + 1.0;
        auto [a, ra] = bound(mnext, 1.0);
        auto [b, rb] = bound(mnext, -1.0);
        const double scale = std::abs(coef(mnext)) + 1.0;
        if (ra < 1.0 && rb < 1.0 && scale * (a / (1.0 - ra) + b / (1.0 - rb)) < tol) return -sum;
    }
    throw ConvergenceError("theta series did not reach the requested tail bound", sum, sum);
}

}  // namespace

cplx theta(cplx z, cplx tau, double tol) {
    return theta_series(z, tau, tol, [](double) { return cplx{1.0}; });
}

cplx theta_prime0(cplx tau, double tol) {
    return theta_series(cplx{0.0}, tau, tol, [](double m) { return 2.0 * kPi * kI * m; });
}

cplx f_eval(const FunctionMode& mode, cplx z) {
    switch (mode.kind) {
        case FunctionMode::Kind::Elliptic: return theta(z, mode.tau);
        case FunctionMode::Kind::Trigonometric: return std::sin(kPi * z);
        case FunctionMode::Kind::Rational: return z;
    }
    return z;
}

cplx f_prime0(const FunctionMode& mode) {
    switch (mode.kind) {
        case FunctionMode::Kind::Elliptic: return theta_prime0(mode.tau);
        case FunctionMode::Kind::Trigonometric: return kPi;
        case FunctionMode::Kind::Rational: return 1.0;
    }
    return 1.0;
}

cplx q_pochhammer(cplx x, cplx q, int n) {
    cplx r = 1.0;
    cplx qk = 1.0;
    for (int k = 0; k < n; ++k) {
        r *= 1.0 - qk * x;
        qk *= q;
    }
    return r;
}

cplx rising_factorial(cplx a, int n) {
    cplx r = 1.0;
    for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
    return r;
}

double erfc_real(double x) { return std::erfc(x); }

namespace {

std::vector<std::vector<cplx>> circle_nodes(const std::vector<Circle>& circles, std::size_t n,
                                            std::vector<std::vector<cplx>>& weights) {
    std::vector<std::vector<cplx>> nodes(circles.size());
    weights.assign(circles.size(), {});
    for (std::size_t a = 0; a < circles.size(); ++a) {
        nodes[a].resize(n);
        weights[a].resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const cplx e = std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n));
            nodes[a][k] = circles[a].center + circles[a].radius * e;
            // dv / (2 pi i) with dv = i r e^{i theta} (2 pi / n)
            weights[a][k] = circles[a].radius * e / static_cast<double>(n);
        }
    }
    return nodes;
}

}  // namespace

cplx trapezoid_fixed(const IntegrandFactory& factory, const std::vector<Circle>& circles,
                     std::size_t nodes, int threads) {
    for (const auto& c : circles)
        if (!(c.radius > 0.0)) throw InvalidParameter("contour radius must be positive");
    const std::size_t m = circles.size();
    if (m == 0) return factory({})(std::span<const std::size_t>{});
    std::vector<std::vector<cplx>> weights;
    auto pts = circle_nodes(circles, nodes, weights);
    auto eval = factory(pts);
    std::size_t total = 1;
    for (std::size_t a = 0; a < m; ++a) total *= nodes;
    auto partial = map_chunks<cplx>(total, threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<std::size_t> idx(m);
        cplx acc = 0.0;
        for (std::size_t flat = lo; flat < hi; ++flat) {
            std::size_t r = flat;
            cplx w = 1.0;
            for (std::size_t a = m; a-- > 0;) {
                idx[a] = r % nodes;
                r /= nodes;
                w *= weights[a][idx[a]];
            }
            acc += w * eval(idx);
        }
        return acc;
    });
    return pairwise_sum(partial);
}

QuadratureResult contour_integral(const IntegrandFactory& factory,
                                  const std::vector<Circle>& circles,
                                  const QuadratureOptions& opts) {
    if (opts.initial_nodes < 16) throw InvalidParameter("quadrature needs at least 16 nodes");
    const std::size_t m = circles.size();
    auto grid_size = [&](std::size_t n) {
        double t = 1.0;
        for (std::size_t a = 0; a < m; ++a) t *= static_cast<double>(n);
        return t;
    };
    std::size_t n = opts.initial_nodes;
    cplx prev = trapezoid_fixed(factory, circles, n, opts.threads);
    if (m == 0) return {prev, prev, 0};
    while (true) {
        const std::size_t next = 2 * n;
        if (next > opts.max_nodes || grid_size(next) > static_cast<double>(opts.max_points))
            throw ConvergenceError("contour integral did not converge within node cap (" +
                                       std::to_string(n) + " nodes per variable)",
                                   prev, prev);
        cplx cur = trapezoid_fixed(factory, circles, next, opts.threads);
        if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag()))
            throw ConvergenceError("contour integral produced a non-finite value", prev, cur);
        if (std::abs(cur - prev) < opts.tol) return {cur, prev, next};
        prev = cur;
        n = next;
    }
}

QuadratureResult contour_integral(const Integrand& integrand, const std::vector<Circle>& circles,
                                  const QuadratureOptions& opts) {
    IntegrandFactory factory = [&integrand](const std::vector<std::vector<cplx>>& nodes) {
        return TabulatedEvaluator([&integrand, &nodes](std::span<const std::size_t> idx) {
            std::vector<cplx> v(idx.size());
            for (std::size_t a = 0; a < idx.size(); ++a) v[a] = nodes[a][idx[a]];
            return integrand(v);
        });
    };
    return contour_integral(factory, circles, opts);
}

}  // namespace irf
