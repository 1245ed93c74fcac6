#include "irf/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "irf/errors.hpp"
#include "irf/parallel.hpp"
#include "irf/rng.hpp"

namespace irf {

const char* obs_model_name(ObsModel m) {
    switch (m) {
        case ObsModel::Irf: return "dyn6v";
        case ObsModel::Asep: return "asep";
        case ObsModel::Rational: return "rational";
        case ObsModel::Ssep: return "ssep";
    }
    return "?";
}

ObsModel parse_obs_model(const std::string& s) {
    if (s == "irf" || s == "dyn6v") return ObsModel::Irf;
    if (s == "asep") return ObsModel::Asep;
    if (s == "rational") return ObsModel::Rational;
    if (s == "ssep") return ObsModel::Ssep;
    throw InvalidParameter("unknown model '" + s + "' (irf, dyn6v, asep, rational, ssep)");
}

namespace {

bool discrete(ObsModel m) { return m == ObsModel::Irf || m == ObsModel::Rational; }

}  // namespace

void ObservableSpec::validate(ObsModel m) const {
    if (xs.empty()) throw InvalidParameter("observable spec needs n >= 1");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] > xs[i - 1]) throw InvalidParameter("xs must be nonincreasing");
    if (discrete(m)) {
        if (N < 1) throw InvalidParameter("N must be >= 1");
        if (xs.back() < 1) throw InvalidParameter("xs must be >= 1 for the quadrant models");
    } else if (!(t >= 0.0)) {
        throw InvalidParameter("t must be >= 0");
    }
}

void ObsSetup::validate() const {
    switch (model) {
        case ObsModel::Irf:
            if (params.mode().kind != FunctionMode::Kind::Trigonometric)
                throw InvalidParameter("IRF observables need the trigonometric mode");
            break;
        case ObsModel::Rational:
            if (params.mode().kind != FunctionMode::Kind::Rational)
                throw InvalidParameter("rational observables need the rational mode");
            if (std::abs(params.eta() - 0.5) > 1e-12)
                throw InvalidParameter("rational observables need 2 eta = 1");
            for (std::size_t j = 1; j < params.num_columns(); ++j)
                if (std::abs(params.Lambda(j) - 1.0) > 1e-12)
                    throw InvalidParameter("rational observables need Lambda_j = 1");
            break;
        case ObsModel::Asep:
            if (exclusion.type != ExclusionKind::Type::DynamicAsep)
                throw InvalidParameter("ASEP setup carries a non-ASEP kind");
            validate_exclusion(exclusion);
            if (std::abs(exclusion.q - 1.0) < 1e-9) throw InvalidParameter("ASEP needs q != 1");
            if (exclusion.alpha == 0.0) throw InvalidParameter("ASEP observables need alpha != 0");
            break;
        case ObsModel::Ssep:
            if (exclusion.type != ExclusionKind::Type::DynamicSsep)
                throw InvalidParameter("SSEP setup carries a non-SSEP kind");
            validate_exclusion(exclusion);
            break;
    }
}

namespace {

cplx e2pi(cplx z) { return std::exp(2.0 * kPi * kI * z); }

cplx qpar(const IrfParams& p) { return std::exp(-4.0 * kPi * kI * p.eta()); }

cplx Lambda_x(const IrfParams& p, int x) {
    return p.Lambda_sum(1, static_cast<std::size_t>(x));
}

// q^a for complex a with q = e^{-4 pi i eta}
cplx qpow(const IrfParams& p, cplx a) { return std::exp(-4.0 * kPi * kI * p.eta() * a); }

}  // namespace

cplx obs_O(int h, int x, int N, const IrfParams& params) {
    const cplx eta = params.eta();
    return e2pi(params.lambda0() - 2.0 * eta * static_cast<double>(h)) +
           std::exp(4.0 * kPi * kI * eta * (static_cast<double>(h - N) + Lambda_x(params, x)));
}

cplx obs_O_six_vertex(int h, int x, int N, const IrfParams& params) {
    const SixVertexParams sv = to_six_vertex(params);
    cplx s2 = 1.0;
    for (int j = 1; j < x; ++j) s2 *= sv.s[static_cast<std::size_t>(j)] * sv.s[static_cast<std::size_t>(j)];
    return -std::pow(sv.q, h) / sv.alpha + s2 * std::pow(sv.q, N - h);
}

cplx obs_linear(int h, int k, int x, int N, const IrfParams& params) {
    const cplx q = qpar(params);
    const cplx e = e2pi(params.lambda0());
    return qpow(params, static_cast<double>(N) - Lambda_x(params, x)) + e * std::pow(q, 2 * k) -
           std::pow(q, k) * obs_O(h, x, N, params);
}

cplx obs_linear_factored(int h, int k, int x, int N, const IrfParams& params) {
    const cplx lx = Lambda_x(params, x);
    const cplx inv_alpha = -e2pi(params.lambda0());  // alpha^{-1}
    return qpow(params, static_cast<double>(N) - lx) * (1.0 - qpow(params, k - h)) *
           (1.0 + inv_alpha * qpow(params, static_cast<double>(k + h - N) + lx));
}

cplx obs_O_rational(int h, int x, int N, cplx lambda) {
    const double hd = h;
    return hd * (hd - lambda - static_cast<double>(N) + static_cast<double>(x) - 1.0);
}

cplx obs_O_asep(long s, long x, double q, double alpha) {
    return -std::pow(q, 0.5 * static_cast<double>(s - x)) / alpha +
           std::pow(q, 0.5 * static_cast<double>(-s - x));
}

double obs_O_ssep(long s, long x, double lambda_bar) {
    const double h = 0.5 * static_cast<double>(s - x);
    return h * (h + static_cast<double>(x) + lambda_bar);
}

cplx observable_product(const ObsSetup& setup, const ObservableSpec& spec,
                        std::span<const long> values) {
    if (values.size() != spec.n()) throw InvalidParameter("observable_product: value count");
    cplx prod = 1.0;
    for (std::size_t i = 0; i < spec.n(); ++i) {
        const int k = static_cast<int>(i);
        const double kd = k;
        const int x = spec.xs[i];
        const long v = values[i];
        switch (setup.model) {
            case ObsModel::Irf:
                prod *= obs_linear(static_cast<int>(v), k, x, spec.N, setup.params);
                break;
            case ObsModel::Rational: {
                const cplx lam = setup.params.lambda0();
                prod *= kd * kd - kd * (lam + static_cast<double>(spec.N - x + 1)) -
                        obs_O_rational(static_cast<int>(v), x, spec.N, lam);
                break;
            }
            case ObsModel::Asep: {
                const double q = setup.exclusion.q;
                const double a = setup.exclusion.alpha;
                prod *= std::pow(q, -x) - std::pow(q, 2 * k) / a -
                        std::pow(q, k) * obs_O_asep(v, x, q, a);
                break;
            }
            case ObsModel::Ssep: {
                const double lb = setup.exclusion.lambda_bar;
                prod *= kd * kd + kd * (lb + x) - obs_O_ssep(v, x, lb);
                break;
            }
        }
    }
    return prod;
}

cplx observable_normalization(const ObsSetup& setup, std::size_t n) {
    const int m = static_cast<int>(n);
    switch (setup.model) {
        case ObsModel::Irf:
            return q_pochhammer(e2pi(setup.params.lambda0()), qpar(setup.params), m);
        case ObsModel::Rational: return rising_factorial(-setup.params.lambda0(), m);
        case ObsModel::Asep:
            return q_pochhammer(-1.0 / setup.exclusion.alpha, setup.exclusion.q, m);
        case ObsModel::Ssep: return rising_factorial(setup.exclusion.lambda_bar, m);
    }
    return 1.0;
}

namespace {

cplx normalized(const ObsSetup& setup, std::size_t n, cplx raw) {
    const cplx norm = observable_normalization(setup, n);
    if (std::abs(norm) < 1e-300) throw SingularError("observable normalization vanishes");
    return raw / norm;
}

// ---- contours ----

// Equal circle around a cluster of poles that keeps `forbidden` outside and,
// when pair_bound > 0, has radius below it.
Circle cluster_circle(const std::vector<cplx>& cluster, const std::vector<cplx>& forbidden,
                      double pair_bound, const char* what) {
    cplx c = 0.0;
    for (cplx p : cluster) c += p;
    c /= static_cast<double>(cluster.size());
    double spread = 0.0;
    for (cplx p : cluster) spread = std::max(spread, std::abs(p - c));
    double rmax = pair_bound > 0.0 ? pair_bound : spread + 1.0;
    for (cplx f : forbidden) rmax = std::min(rmax, std::abs(f - c));
    if (!(rmax > spread * 1.05 + 1e-9))
        throw InvalidParameter(fmt::format(
            "{}: no equal circle separates the cluster (spread {:.3g}) from the other "
            "singularities (distance {:.3g})",
            what, spread, rmax));
    return {c, spread + 0.5 * (rmax - spread)};
}

std::string describe(const std::vector<Circle>& cs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        if (i) os << "; ";
        os << fmt::format("|v-({:.6g}{:+.6g}i)|={:.6g}", cs[i].center.real(), cs[i].center.imag(),
                          cs[i].radius);
    }
    return os.str();
}

// log of the one-variable factor of variable i at v; the pair factor.
using LogSingle = std::function<cplx(std::size_t i, cplx v)>;
using Pair = std::function<cplx(cplx vi, cplx vj)>;

IntegrandFactory product_factory(LogSingle single, Pair pair) {
    return [single = std::move(single), pair = std::move(pair)](
               const std::vector<std::vector<cplx>>& nodes) -> TabulatedEvaluator {
        const std::size_t n = nodes.size();
        auto s = std::make_shared<std::vector<std::vector<cplx>>>(n);
        for (std::size_t i = 0; i < n; ++i)
            for (cplx v : nodes[i]) (*s)[i].push_back(std::exp(single(i, v)));
        // pair tables for i < j, row-major in (node_i, node_j)
        auto pt = std::make_shared<std::vector<std::vector<cplx>>>();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                std::vector<cplx> tab;
                tab.reserve(nodes[i].size() * nodes[j].size());
                for (cplx a : nodes[i])
                    for (cplx b : nodes[j]) tab.push_back(pair(a, b));
                pt->push_back(std::move(tab));
            }
        std::vector<std::size_t> sizes;
        for (const auto& v : nodes) sizes.push_back(v.size());
        return [s, pt, sizes, n](std::span<const std::size_t> idx) {
            cplx r = 1.0;
            for (std::size_t i = 0; i < n; ++i) r *= (*s)[i][idx[i]];
            std::size_t p = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    r *= (*pt)[p++][idx[i] * sizes[j] + idx[j]];
            return r;
        };
    };
}

QuadratureResult integrate(const IntegrandFactory& fac, const std::vector<Circle>& circles,
                           double scale, const ExactOptions& opts, std::size_t max_nodes) {
    QuadratureOptions q;
    q.tol = opts.tol * std::max(1.0, scale);
    q.threads = opts.threads;
    q.max_nodes = max_nodes;
    return contour_integral(fac, circles, q);
}

// ---- power series helpers for essential-singularity residues ----

using Series = std::vector<cplx>;

Series series_mul(const Series& a, const Series& b) {
    const std::size_t M = a.size();
    Series c(M, 0.0);
    for (std::size_t i = 0; i < M; ++i) {
        if (a[i] == 0.0) continue;
        for (std::size_t j = 0; i + j < M; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

Series series_exp(const Series& a) {
    const std::size_t M = a.size();
    Series g(M, 0.0);
    g[0] = std::exp(a[0]);
    for (std::size_t m = 1; m < M; ++m) {
        cplx acc = 0.0;
        for (std::size_t k = 1; k <= m; ++k) acc += static_cast<double>(k) * a[k] * g[m - k];
        g[m] = acc / static_cast<double>(m);
    }
    return g;
}

// (1 + b eps)^p, integer p
Series series_binomial(cplx b, int p, std::size_t M) {
    Series c(M, 0.0);
    c[0] = 1.0;
    for (std::size_t m = 1; m < M; ++m)
        c[m] = c[m - 1] * b * (static_cast<double>(p) - static_cast<double>(m) + 1.0) /
               static_cast<double>(m);
    return c;
}

struct SeriesResidue {
    cplx value;
    double abs_sum = 0.0;
    double last = 0.0;
};

// Residue at 0 of eps^x phi(eps) exp(C / eps).
SeriesResidue essential_residue(const Series& phi, int x, double C) {
    SeriesResidue r;
    const long start = std::max<long>(0, -static_cast<long>(x) - 1);
    for (long m = start; m < static_cast<long>(phi.size()); ++m) {
        const long p = x + m + 1;
        double mag;
        if (C == 0.0) {
            if (p != 0) break;
            mag = 1.0;
        } else {
            mag = std::exp(static_cast<double>(p) * std::log(std::abs(C)) - std::lgamma(p + 1.0));
        }
        const double sign = (C < 0.0 && p % 2 != 0) ? -1.0 : 1.0;
        const cplx term = phi[static_cast<std::size_t>(m)] * (sign * mag);
        r.value += term;
        r.abs_sum += std::abs(term);
        if (m + 1 == static_cast<long>(phi.size())) r.last = std::abs(term);
    }
    return r;
}

constexpr double kResidueMaxT = 60.0;

std::size_t series_length(double t, int x) {
    return std::min<std::size_t>(4000, 80 + static_cast<std::size_t>(8.0 * t) +
                                           2 * static_cast<std::size_t>(std::abs(x)));
}

// Residue sum accepted when cancellation leaves enough digits.
std::optional<cplx> accept(const SeriesResidue& r, double tol, std::string& note) {
    const double noise = 1e-15 * r.abs_sum;
    if (!std::isfinite(r.abs_sum) || !std::isfinite(std::abs(r.value)) ||
        noise > 0.1 * tol * std::max(1.0, std::abs(r.value)) ||
        r.last > 1e-3 * tol * std::max(1.0, std::abs(r.value))) {
        note = fmt::format("residue sum ill-conditioned (sum of |terms| {:.3g}); quadrature only",
                           r.abs_sum);
        return std::nullopt;
    }
    return r.value;
}

// ---- models ----

ExactValue exact_irf(const ObsSetup& setup, const ObservableSpec& spec, const ExactOptions& opts) {
    const IrfParams& P = setup.params;
    const bool rational = setup.model == ObsModel::Rational;
    const std::size_t n = spec.n();
    const int N = spec.N;
    const cplx eta = P.eta();
    if (static_cast<std::size_t>(N) > P.rows().size())
        throw InvalidParameter("observables: N exceeds the row parameters");
    if (static_cast<std::size_t>(spec.xs.front()) > P.num_columns())
        throw InvalidParameter("observables: x exceeds the columns");

    std::vector<cplx> ws, forbidden;
    for (int k = 1; k <= N; ++k) ws.push_back(P.w(static_cast<std::size_t>(k)));
    for (int j = 1; j < spec.xs.front(); ++j) {
        const cplx q = P.q(static_cast<std::size_t>(j));
        forbidden.push_back(q);
        if (!rational) {
            forbidden.push_back(q + 1.0);
            forbidden.push_back(q - 1.0);
        }
    }
    if (!rational)
        for (cplx w : ws) {
            forbidden.push_back(w + 1.0);
            forbidden.push_back(w - 1.0);
        }
    const double pair_bound = n > 1 ? std::abs(eta) : 0.0;
    const Circle circle = cluster_circle(ws, forbidden, pair_bound, "observable contour");
    const std::vector<Circle> circles(n, circle);

    auto log_single = [&P, &spec, ws, eta](std::size_t i, cplx v) {
        cplx r = 0.0;
        for (int j = 1; j < spec.xs[i]; ++j)
            r += std::log(P.f(v - P.p(static_cast<std::size_t>(j))) /
                          P.f(v - P.q(static_cast<std::size_t>(j))));
        for (cplx w : ws) r += std::log(P.f(v - w - 2.0 * eta) / P.f(v - w));
        return r;
    };
    auto pair = [&P, eta](cplx a, cplx b) { return P.f(a - b) / P.f(a - b + 2.0 * eta); };
    const auto quad = integrate(product_factory(log_single, pair), circles, 1.0, opts, 1u << 12);

    cplx pre = 1.0;
    if (!rational) {
        cplx lsum = 0.0;
        for (int x : spec.xs) lsum += Lambda_x(P, x);
        const double nd = static_cast<double>(n);
        pre = std::exp(-2.0 * kPi * kI * eta * (nd * (nd - 1.0) / 2.0 + nd * N - lsum)) *
              std::pow(2.0 * kPi * kI, static_cast<double>(n));
    }
    ExactValue ev;
    ev.value = pre * quad.value;
    ev.nodes = quad.nodes;
    ev.contour = describe(circles);

    if (n == 1) {
        bool distinct = true;
        for (std::size_t a = 0; a < ws.size(); ++a)
            for (std::size_t b = a + 1; b < ws.size(); ++b)
                if (std::abs(ws[a] - ws[b]) < 1e-8) distinct = false;
        if (!distinct) {
            ev.note = "coinciding w_k; residue sum skipped";
        } else {
            cplx sum = 0.0;
            double abs_sum = 0.0;
            for (std::size_t a = 0; a < ws.size(); ++a) {
                const cplx w = ws[a];
                cplx r = P.f(-2.0 * eta) / f_prime0(P.mode());
                for (int j = 1; j < spec.xs[0]; ++j)
                    r *= P.f(w - P.p(static_cast<std::size_t>(j))) /
                         P.f(w - P.q(static_cast<std::size_t>(j)));
                for (std::size_t b = 0; b < ws.size(); ++b)
                    if (b != a) r *= P.f(w - ws[b] - 2.0 * eta) / P.f(w - ws[b]);
                sum += r;
                abs_sum += std::abs(r);
            }
            SeriesResidue sr;
            sr.value = rational ? sum : pre * sum;
            sr.abs_sum = rational ? abs_sum : std::abs(pre) * abs_sum;
            ev.residue = accept(sr, opts.residue_tol, ev.note);
        }
    }
    return ev;
}

ExactValue exact_asep(const ObsSetup& setup, const ObservableSpec& spec, const ExactOptions& opts) {
    const double q = setup.exclusion.q;
    const double t = spec.t;
    const std::size_t n = spec.n();
    const double bound = std::abs(1.0 - q) / (1.0 + q);
    const std::vector<Circle> circles(n, Circle{1.0, 0.75 * bound});
    auto log_single = [&spec, q, t](std::size_t i, cplx y) {
        return static_cast<double>(spec.xs[i]) * std::log((1.0 - y) / (1.0 - q * y)) +
               t * (1.0 - q) * (1.0 / (1.0 - y) - 1.0 / (1.0 - q * y)) - std::log(y);
    };
    auto pair = [q](cplx a, cplx b) { return (a - b) / (a - q * b); };
    const auto quad = integrate(product_factory(log_single, pair), circles, 1.0, opts, 1u << 13);
    ExactValue ev;
    const double nd = static_cast<double>(n);
    ev.value = std::pow(q, nd * (nd - 1.0) / 2.0) * quad.value;
    ev.nodes = quad.nodes;
    ev.contour = describe(circles);
    if (n == 1 && t * std::abs(1.0 - q) > kResidueMaxT) {
        ev.note = "residue series skipped at large t; quadrature only";
    } else if (n == 1) {
        // y = 1 - eps: phi = (1-q)^{-x} (1 + b eps)^{-x} exp(-t / (1 + b eps)) / (1 - eps)
        const int x = spec.xs[0];
        const double b = q / (1.0 - q);
        const std::size_t M = series_length(t * std::abs(1.0 - q), x);
        Series expo(M, 0.0);
        cplx pw = 1.0;
        for (std::size_t m = 0; m < M; ++m, pw *= -b) expo[m] = -t * pw;
        Series geo(M, 1.0);
        Series phi = series_mul(series_mul(series_binomial(b, -x, M), series_exp(expo)), geo);
        for (auto& c : phi) c *= std::pow(1.0 - q, -x);
        auto r = essential_residue(phi, x, t * (1.0 - q));
        r.value = -r.value;
        ev.residue = accept(r, opts.residue_tol, ev.note);
    }
    return ev;
}

double ssep_small_t() { return 2.0; }

// Circle |v / (v - 1)| = rho, right point rho / (1 + rho).
Circle mobius_circle(double t, double rho_min) {
    const double rho = std::max(rho_min, 1.0 - 1.0 / std::sqrt(std::max(t, 1.0)));
    const double a = rho / (1.0 + rho);
    const double R = rho / (1.0 - rho * rho);
    return {a - R, R};
}

ExactValue exact_ssep(const ObservableSpec& spec, const ExactOptions& opts) {
    const double t = spec.t;
    const std::size_t n = spec.n();
    auto lg = [t](int x, cplx v) {
        return static_cast<double>(x) * std::log(v / (v - 1.0)) + t / (v * (v - 1.0));
    };
    auto log_single = [&spec, lg](std::size_t i, cplx v) { return lg(spec.xs[i], v); };
    auto pair = [](cplx a, cplx b) { return (a - b) / (a - b + 1.0); };
    const double scale = std::pow(std::max(1.0, t), 0.5 * static_cast<double>(n));
    ExactValue ev;
    std::vector<Circle> circles;
    if (n == 1) {
        circles = {mobius_circle(t, 0.35)};
    } else if (t <= ssep_small_t()) {
        circles.assign(n, Circle{0.0, 0.45});
    } else if (n == 2) {
        const Circle g = mobius_circle(t, 0.35);
        circles = {Circle{g.center - 4.0, g.radius + 4.0}, g};
    } else {
        throw InvalidParameter(fmt::format(
            "SSEP exact average: n = {} is supported for t <= {} only", n, ssep_small_t()));
    }
    const std::size_t max_nodes = n == 1 ? (1u << 16) : (1u << 13);
    const auto quad = integrate(product_factory(log_single, pair), circles, scale, opts, max_nodes);
    ev.value = quad.value;
    ev.nodes = quad.nodes;
    ev.contour = describe(circles);
    if (n == 2 && t > ssep_small_t()) {
        // residue at v_1 = v_2 - 1 picked up while enlarging the v_1 contour
        const int x1 = spec.xs[0];
        const int x2 = spec.xs[1];
        auto fac = [lg, x1, x2](const std::vector<std::vector<cplx>>& nodes) -> TabulatedEvaluator {
            auto vals = std::make_shared<std::vector<cplx>>();
            for (cplx v : nodes[0]) vals->push_back(std::exp(lg(x1, v - 1.0) + lg(x2, v)));
            return [vals](std::span<const std::size_t> idx) { return (*vals)[idx[0]]; };
        };
        const auto corr = integrate(fac, {circles[1]}, scale, opts, 1u << 16);
        ev.value += corr.value;
        ev.contour += " + residue string on the second circle";
    }
    if (n == 1 && t > kResidueMaxT) {
        ev.note = "residue series skipped at large t; quadrature only";
    } else if (n == 1) {
        // residue at 0 of v^x phi(v) exp(-t / v), phi = (-1)^x (1 - v)^{-x} exp(-t / (1 - v))
        const int x = spec.xs[0];
        const std::size_t M = series_length(t, x);
        Series expo(M, cplx{-t});
        Series phi = series_mul(series_binomial(-1.0, -x, M), series_exp(expo));
        if (x % 2 != 0)
            for (auto& c : phi) c = -c;
        ev.residue = accept(essential_residue(phi, x, -t), opts.residue_tol, ev.note);
    }
    return ev;
}

}  // namespace

ExactValue exact_E(const ObsSetup& setup, const ObservableSpec& spec, const ExactOptions& opts) {
    setup.validate();
    spec.validate(setup.model);
    ExactValue ev;
    switch (setup.model) {
        case ObsModel::Irf:
        case ObsModel::Rational: ev = exact_irf(setup, spec, opts); break;
        case ObsModel::Asep: ev = exact_asep(setup, spec, opts); break;
        case ObsModel::Ssep: ev = exact_ssep(spec, opts); break;
    }
    if (ev.residue) {
        const double d = std::abs(*ev.residue - ev.value) / std::max(1.0, std::abs(ev.value));
        if (d > opts.residue_tol)
            throw Error(fmt::format("{} exact average: residue sum and quadrature differ by {:.3g}",
                                    obs_model_name(setup.model), d));
    }
    return ev;
}

namespace {

std::map<std::vector<int>, cplx> quadrant_law(const IrfParams& P, int N, int X, bool six_vertex) {
    if (X == 0) return {{std::vector<int>{}, cplx{1.0}}};
    return (six_vertex ? enumerate_six_vertex(P, N, X) : enumerate_distribution(P, N, X)).occupations;
}

int height_of(const std::vector<int>& occ, int x, int N) {
    int h = N;
    for (int j = 1; j < x; ++j) h -= occ[static_cast<std::size_t>(j) - 1];
    return h;
}

}  // namespace

cplx enum_E(const ObsSetup& setup, const ObservableSpec& spec) {
    setup.validate();
    spec.validate(setup.model);
    if (!discrete(setup.model))
        throw InvalidParameter("enumeration is available for the quadrant models only");
    const auto law = quadrant_law(setup.params, spec.N, spec.xs.front() - 1, false);
    std::vector<cplx> terms;
    std::vector<long> hs(spec.n());
    for (const auto& [occ, pr] : law) {
        for (std::size_t i = 0; i < spec.n(); ++i) hs[i] = height_of(occ, spec.xs[i], spec.N);
        terms.push_back(pr * observable_product(setup, spec, hs));
    }
    return normalized(setup, spec.n(), pairwise_sum(terms));
}

cplx six_vertex_moment_enum(const IrfParams& params, const ObservableSpec& spec) {
    spec.validate(ObsModel::Irf);
    const auto law = quadrant_law(params, spec.N, spec.xs.front() - 1, true);
    const cplx q = qpar(params);
    std::vector<cplx> terms;
    for (const auto& [occ, pr] : law) {
        cplx v = pr;
        for (std::size_t i = 0; i < spec.n(); ++i)
            v *= std::pow(q, height_of(occ, spec.xs[i], spec.N)) - std::pow(q, static_cast<int>(i));
        terms.push_back(v);
    }
    return pairwise_sum(terms);
}

ExactValue six_vertex_moment_integral(const IrfParams& params, const ObservableSpec& spec,
                                      const ExactOptions& opts) {
    spec.validate(ObsModel::Irf);
    const SixVertexParams sv = to_six_vertex(params);
    const std::size_t n = spec.n();
    const cplx q = sv.q;
    std::vector<cplx> poles;
    for (int k = 0; k < spec.N; ++k) poles.push_back(1.0 / sv.u.at(static_cast<std::size_t>(k)));
    std::vector<cplx> forbidden{0.0};
    for (int j = 1; j < spec.xs.front(); ++j)
        forbidden.push_back(sv.xi[static_cast<std::size_t>(j)] * sv.s[static_cast<std::size_t>(j)]);
    cplx c = std::accumulate(poles.begin(), poles.end(), cplx{0.0}) / static_cast<double>(poles.size());
    const double pair_bound = n > 1 ? std::abs(c * (1.0 - q)) / (1.0 + std::abs(q)) : 0.0;
    const std::vector<Circle> circles(n, cluster_circle(poles, forbidden, pair_bound, "six vertex contour"));
    auto log_single = [&](std::size_t i, cplx y) {
        cplx r = -std::log(y);
        for (int j = 1; j < spec.xs[i]; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            r += std::log((sv.xi[jj] - sv.s[jj] * y) / (sv.xi[jj] - y / sv.s[jj]));
        }
        for (int k = 0; k < spec.N; ++k) {
            const cplx u = sv.u[static_cast<std::size_t>(k)];
            r += std::log((1.0 - q * u * y) / (1.0 - u * y));
        }
        return r;
    };
    auto pair = [q](cplx a, cplx b) { return (a - b) / (a - q * b); };
    const auto quad = integrate(product_factory(log_single, pair), circles, 1.0, opts, 1u << 12);
    ExactValue ev;
    const double nd = static_cast<double>(n);
    ev.value = std::pow(q, nd * (nd - 1.0) / 2.0) * quad.value;
    ev.nodes = quad.nodes;
    ev.contour = describe(circles);
    return ev;
}

cplx factorized_moment_enum(const IrfParams& params, int x, int N, int n) {
    if (n < 1 || x < 1 || N < 1) throw InvalidParameter("factorized moment: n, x, N >= 1");
    const auto law = quadrant_law(params, N, x - 1, false);
    const cplx q = qpar(params);
    const cplx lx = Lambda_x(params, x);
    const cplx e = e2pi(params.lambda0());  // -1/alpha
    std::vector<cplx> terms;
    for (const auto& [occ, pr] : law) {
        const int h = height_of(occ, x, N);
        terms.push_back(pr * q_pochhammer(qpow(params, -h), q, n) *
                        q_pochhammer(e * qpow(params, static_cast<double>(h - N) + lx), q, n));
    }
    return qpow(params, static_cast<double>(n) * (static_cast<double>(N) - lx)) *
           pairwise_sum(terms) / q_pochhammer(e, q, n);
}

namespace {

struct Moments {
    double count = 0.0;
    cplx mean;
    double m2 = 0.0;  // sum of |v - mean|^2
};

Moments merge(const Moments& a, const Moments& b) {
    if (a.count == 0.0) return b;
    if (b.count == 0.0) return a;
    Moments r;
    r.count = a.count + b.count;
    const cplx d = b.mean - a.mean;
    r.mean = a.mean + d * (b.count / r.count);
    r.m2 = a.m2 + b.m2 + std::norm(d) * a.count * b.count / r.count;
    return r;
}

Moments merge_pairwise(const std::vector<Moments>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return merge(merge_pairwise(v, lo, mid), merge_pairwise(v, mid, hi));
}

}  // namespace

McEstimate mc_E(const ObsSetup& setup, const ObservableSpec& spec, std::size_t samples,
                std::uint64_t seed, int threads) {
    setup.validate();
    spec.validate(setup.model);
    if (samples < 2) throw InvalidParameter("Monte Carlo needs at least 2 samples");
    const std::size_t n = spec.n();
    auto one = [&](std::size_t i) -> cplx {
        const std::uint64_t s = counter_hash(seed, i);
        std::vector<long> vals(n);
        if (discrete(setup.model)) {
            const QuadrantState st = sample_irf(setup.params, spec.xs.front() - 1, spec.N, s);
            for (std::size_t k = 0; k < n; ++k) vals[k] = height(st, spec.xs[k], spec.N);
        } else {
            const ExclusionState st =
                simulate_exclusion(ExclusionState::step(setup.exclusion), spec.t, s);
            for (std::size_t k = 0; k < n; ++k) vals[k] = st.at(spec.xs[k]);
        }
        return observable_product(setup, spec, vals);
    };
    const auto chunks = map_chunks<Moments>(
        samples, threads,
        [&](std::size_t lo, std::size_t hi) {
            Moments m;
            for (std::size_t i = lo; i < hi; ++i) {
                const cplx v = one(i);
                m.count += 1.0;
                const cplx d = v - m.mean;
                m.mean += d / m.count;
                m.m2 += std::real(std::conj(d) * (v - m.mean));
            }
            return m;
        },
        1024);
    const Moments tot = merge_pairwise(chunks, 0, chunks.size());
    const cplx norm = observable_normalization(setup, n);
    McEstimate r;
    r.samples = samples;
    r.mean = tot.mean / norm;
    r.stderr_ = std::sqrt(tot.m2 / (tot.count - 1.0) / tot.count) / std::abs(norm);
    return r;
}

CheckReport lambda_independence_report(const ObsSetup& setup, const ObservableSpec& spec,
                                       const std::vector<cplx>& lambdas, std::size_t samples,
                                       std::uint64_t seed, double tol, int threads) {
    if (lambdas.size() < 2) throw InvalidParameter("lambda independence needs >= 2 values");
    nlohmann::json params{{"model", obs_model_name(setup.model)}, {"xs", spec.xs}};
    if (discrete(setup.model))
        params["N"] = spec.N;
    else
        params["t"] = spec.t;
    nlohmann::json lj = nlohmann::json::array();
    for (cplx l : lambdas) lj.push_back({l.real(), l.imag()});
    params["lambdas"] = lj;

    std::vector<cplx> vals;
    std::vector<double> errs;
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        ObsSetup s = setup;
        switch (setup.model) {
            case ObsModel::Irf:
            case ObsModel::Rational: s.params = setup.params.with_lambda0(lambdas[i]); break;
            case ObsModel::Ssep: s.exclusion.lambda_bar = lambdas[i].real(); break;
            case ObsModel::Asep: s.exclusion.alpha = lambdas[i].real(); break;
        }
        if (discrete(setup.model)) {
            vals.push_back(enum_E(s, spec));
            errs.push_back(0.0);
        } else {
            const auto mc = mc_E(s, spec, samples, counter_hash(seed, 0x1a3bdaULL, i), threads);
            vals.push_back(mc.mean);
            errs.push_back(mc.stderr_);
        }
    }
    const bool mc = !discrete(setup.model);
    params["method"] = mc ? "mc" : "enum";
    double worst = -1.0;
    std::size_t ia = 0, ib = 1;
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b) {
            const double scale = mc ? std::hypot(errs[a], errs[b])
                                    : std::max(1.0, std::abs(vals[b]));
            const double d = std::abs(vals[a] - vals[b]) / scale;
            if (d > worst) {
                worst = d;
                ia = a;
                ib = b;
            }
        }
    const double scale = mc ? std::hypot(errs[ia], errs[ib]) : std::max(1.0, std::abs(vals[ib]));
    if (mc) params["stderr"] = {errs[ia], errs[ib]};
    return make_report("lambda_independence." + std::string(obs_model_name(setup.model)), params,
                       vals[ia], vals[ib], mc ? 4.0 : tol, std::nullopt, scale);
}

double ssep_height_from_O(double O, long x, double lambda_bar) {
    const double c = 0.5 * (static_cast<double>(x) + lambda_bar);
    return std::sqrt(O + c * c) - c;
}

std::vector<double> ssep_O_moments(const std::vector<double>& factorial_moments, long x,
                                   double lambda_bar) {
    std::vector<double> out;
    std::vector<double> EO{1.0};  // E[O^0]
    std::vector<double> poly{1.0};  // prod_{k<m} (O - c_k), ascending coefficients
    for (std::size_t m = 1; m <= factorial_moments.size(); ++m) {
        const double k = static_cast<double>(m - 1);
        const double ck = k * (lambda_bar + static_cast<double>(x)) + k * k;
        std::vector<double> next(poly.size() + 1, 0.0);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j + 1] += poly[j];
            next[j] -= ck * poly[j];
        }
        poly = next;
        double v = rising_factorial(lambda_bar, static_cast<int>(m)).real() * factorial_moments[m - 1];
        for (std::size_t j = 0; j < m; ++j) v -= poly[j] * EO[j];
        EO.push_back(v);
        out.push_back(v);
    }
    return out;
}

nlohmann::json observable_record(const ObsSetup& setup, const ObservableSpec& spec,
                                 const std::string& method, cplx value,
                                 std::optional<double> stderr_) {
    nlohmann::json sj{{"xs", spec.xs}};
    if (discrete(setup.model))
        sj["N"] = spec.N;
    else
        sj["t"] = spec.t;
    nlohmann::json j{{"model", obs_model_name(setup.model)},
                     {"spec", sj},
                     {"method", method},
                     {"value", {value.real(), value.imag()}}};
    if (stderr_) j["stderr"] = *stderr_;
    return j;
}

}  // namespace irf
