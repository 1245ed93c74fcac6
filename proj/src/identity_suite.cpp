#include "irf/identity_suite.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <memory>
#include <cmath>
#include <functional>
#include <numeric>

#include "irf/errors.hpp"
#include "irf/operator_oracle.hpp"
#include "irf/plaquette_weights.hpp"
#include "irf/rng.hpp"
#include "irf/symmetric_functions.hpp"

namespace irf {

using nlohmann::json;

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }
cplx jc(const json& j) {
    if (j.is_number()) return j.get<double>();
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}
json cvec(const std::vector<cplx>& v) {
    json a = json::array();
    for (cplx z : v) a.push_back(cj(z));
    return a;
}
double dbl(std::size_t x) { return static_cast<double>(x); }

cplx guarded(cplx num, cplx den, const char* what) {
    if (std::abs(den) < 1e-13 * std::max(1.0, std::abs(num)))
        throw SingularError(std::string("pole collision in ") + what);
    return num / den;
}

// Groups a truncated series by the largest part of kappa.
struct ShellSum {
    std::map<int, cplx> shells;
    int terms = 0;

    void add(const Signature& kappa, cplx v) {
        if (v == 0.0) return;
        shells[kappa.largest()] += v;
        ++terms;
    }
    cplx total() const {
        std::vector<cplx> v;
        for (const auto& [k, s] : shells) v.push_back(s);
        cplx t = 0.0;
        for (cplx s : v) t += s;
        return t;
    }
    // Geometric extrapolation from the last two shells below the cap.
    TruncationInfo info(int cap, double scale, double tol) const {
        TruncationInfo t;
        t.cap = cap;
        t.terms = terms;
        auto it = shells.find(cap);
        auto jt = shells.find(cap - 1);
        const double last = it == shells.end() ? 0.0 : std::abs(it->second);
        const double prev = jt == shells.end() ? 0.0 : std::abs(jt->second);
        if (last == 0.0) {
            t.tail_estimate = 0.0;
            t.note = "last shell empty";
            return t;
        }
        const double r = prev > 0.0 ? last / prev : 1.0;
        if (r >= 1.0) {
            if (last > tol * scale)
                throw ConvergenceError("truncated series is not decaying at cap " +
                                           std::to_string(cap),
                                       0.0, last);
            t.tail_estimate = last * cap / scale;
            t.note = "non-geometric tail; bounded by cap * last shell";
            return t;
        }
        t.tail_estimate = last * r / (1.0 - r) / scale;
        t.note = "geometric ratio " + std::to_string(r);
        return t;
    }
};

void need_cols(const IrfParams& params, int cap, int extra, const char* who) {
    if (params.num_columns() < static_cast<std::size_t>(cap + extra))
        throw InvalidParameter(std::string(who) + ": cap " + std::to_string(cap) + " needs " +
                               std::to_string(cap + extra) + " columns");
}

json sig_json(const Signature& s) { return s.parts(); }

// Tabulated integrand  prod_{i<j} f(u_i-u_j)/f(u_i-u_j-2eta) * prod_i g_i(u_i)
// optionally multiplied by a symmetrized sum of B_mu type.
struct KernelSpec {
    std::vector<std::function<cplx(cplx)>> single;  // one per variable
    // B_mu(lambda; u) data: h[a](u) for position a; empty when not used.
    std::vector<std::function<cplx(cplx)>> bpos;
    cplx bpre = 1.0;
    cplx eta;
    FunctionMode mode;
};

IntegrandFactory make_factory(const KernelSpec& spec) {
    return [spec](const std::vector<std::vector<cplx>>& nodes) -> TabulatedEvaluator {
        const std::size_t M = nodes.size();
        const cplx two_eta = 2.0 * spec.eta;
        auto f = [&](cplx x) { return f_eval(spec.mode, x); };
        auto single = std::make_shared<std::vector<std::vector<cplx>>>(M);
        for (std::size_t i = 0; i < M; ++i)
            for (cplx u : nodes[i]) (*single)[i].push_back(spec.single[i](u));
        // cross[i][j][a*n + b] for i != j
        const std::size_t n = M ? nodes[0].size() : 0;
        auto cross = std::make_shared<std::vector<std::vector<cplx>>>(M * M);
        auto bcross = std::make_shared<std::vector<std::vector<cplx>>>(M * M);
        const bool withB = !spec.bpos.empty();
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = 0; j < M; ++j) {
                if (i == j) continue;
                auto& t = (*cross)[i * M + j];
                auto& tb = (*bcross)[i * M + j];
                t.resize(n * n);
                if (withB) tb.resize(n * n);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b) {
                        const cplx d = nodes[i][a] - nodes[j][b];
                        const cplx den = f(d - two_eta);
                        if (std::abs(den) < 1e-6)
                            throw SingularError(
                                "contour nodes come within a 2 eta shift of each other");
                        t[a * n + b] = f(d) / den;
                        if (withB) tb[a * n + b] = f(d - two_eta) / f(d);
                    }
            }
        auto btab = std::make_shared<std::vector<std::vector<std::vector<cplx>>>>();
        if (withB) {
            btab->resize(M, std::vector<std::vector<cplx>>(M));
            for (std::size_t a = 0; a < M; ++a)
                for (std::size_t i = 0; i < M; ++i)
                    for (cplx u : nodes[i]) (*btab)[a][i].push_back(spec.bpos[a](u));
        }
        const cplx bpre = spec.bpre;
        return [=](std::span<const std::size_t> idx) -> cplx {
            cplx t = 1.0;
            for (std::size_t i = 0; i < M; ++i) {
                t *= (*single)[i][idx[i]];
                for (std::size_t j = i + 1; j < M; ++j) t *= (*cross)[i * M + j][idx[i] * n + idx[j]];
            }
            if (!withB) return t;
            std::array<std::size_t, 9> perm{};
            for (std::size_t a = 0; a < M; ++a) perm[a] = a;
            cplx s = 0.0;
            do {
                cplx v = 1.0;
                for (std::size_t a = 0; a < M; ++a) {
                    const std::size_t ia = perm[a];
                    v *= (*btab)[a][ia][idx[ia]];
                    for (std::size_t b = a + 1; b < M; ++b) {
                        const std::size_t ib = perm[b];
                        v *= (*bcross)[ia * M + ib][idx[ia] * n + idx[ib]];
                    }
                }
                s += v;
            } while (std::next_permutation(perm.begin(), perm.begin() + M));
            return t * bpre * s;
        };
    };
}

ContourFamily contours_for(const IrfParams& params, int M) {
    AdmissibilityOptions opts;
    opts.gap = std::max(0.02, std::abs(2.0 * params.eta()));
    auto res = check_admissible(params, M, 0, opts);
    if (auto* d = std::get_if<AdmissibilityDiagnostic>(&res))
        throw InvalidParameter("no admissible contours for M=" + std::to_string(M) + ": " +
                               d->message);
    return std::get<ContourFamily>(res);
}

json circles_json(const ContourFamily& fam) {
    json a = json::array();
    for (const auto& c : fam.gammas) a.push_back({{"center", cj(c.center)}, {"radius", c.radius}});
    return a;
}

// psi_{nu_i}(u) f(lambda - u + p_{nu_i} + 2eta + 4eta(N-1-i) - 2eta Lambda_{[0,nu_i)}), i 0-based
std::function<cplx(cplx)> psi_kernel(const IrfParams& params, const PQGrid& grid, int part,
                                     std::size_t i, std::size_t N, cplx lambda) {
    const cplx eta = params.eta();
    const cplx shift = grid.p[part] + 2.0 * eta + 4.0 * eta * dbl(N - 1 - i) -
                       2.0 * eta * params.Lambda_sum(0, part);
    const FunctionMode mode = params.mode();
    return [=](cplx u) { return psi(part, u, grid, mode) * f_eval(mode, lambda - u + shift); };
}

}  // namespace

std::string CheckReport::status() const {
    if (!passed) return "failed";
    return warning ? "passed-with-warning" : "passed";
}

CheckReport make_report(std::string name, json parameters, cplx lhs, cplx rhs, double tolerance,
                        std::optional<TruncationInfo> trunc, std::optional<double> scale) {
    CheckReport r;
    r.name = std::move(name);
    r.parameters = std::move(parameters);
    r.lhs = lhs;
    r.rhs = rhs;
    const double s = scale ? *scale : std::max(1.0, std::abs(rhs));
    r.residual = std::abs(lhs - rhs) / s;
    if (!std::isfinite(r.residual)) r.residual = std::numeric_limits<double>::infinity();
    r.tolerance = tolerance;
    r.passed = r.residual <= tolerance;
    r.truncation = std::move(trunc);
    r.warning = r.passed && r.truncation && r.truncation->tail_estimate > tolerance / 10.0;
    return r;
}

json to_json(const CheckReport& r) {
    json j{{"name", r.name},         {"parameters", r.parameters}, {"lhs", cj(r.lhs)},
           {"rhs", cj(r.rhs)},       {"residual", r.residual},     {"tolerance", r.tolerance},
           {"passed", r.passed},     {"status", r.status()}};
    if (r.truncation)
        j["truncation_info"] = {{"cap", r.truncation->cap},
                                {"terms", r.truncation->terms},
                                {"tail_estimate", r.truncation->tail_estimate},
                                {"note", r.truncation->note}};
    return j;
}

CheckReport report_from_json(const json& j) {
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    r.parameters = j.at("parameters");
    r.lhs = jc(j.at("lhs"));
    r.rhs = jc(j.at("rhs"));
    r.residual = j.at("residual").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    r.passed = j.at("passed").get<bool>();
    r.warning = j.value("status", "") == "passed-with-warning";
    if (j.contains("truncation_info")) {
        const auto& t = j["truncation_info"];
        r.truncation = TruncationInfo{t.at("cap").get<int>(), t.at("terms").get<int>(),
                                      t.at("tail_estimate").get<double>(),
                                      t.value("note", std::string{})};
    }
    return r;
}

std::vector<cplx> symmetrization_terms(const std::vector<cplx>& vs, cplx beta,
                                       const FunctionMode& mode) {
    const std::size_t m = vs.size();
    auto f = [&](cplx x) { return f_eval(mode, x); };
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<cplx> out;
    do {
        cplx t = 1.0;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const cplx d = vs[perm[i]] - vs[perm[j]];
                t *= guarded(f(d - beta), f(d), "symmetrization lemma");
            }
        for (std::size_t k = 1; k <= m; ++k) {
            const cplx v = vs[perm[k - 1]];
            t *= guarded(f(v + (double(m) - 2.0 * double(k) + 1.0) * beta), f(v),
                         "symmetrization lemma");
        }
        out.push_back(t);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

CheckReport check_symmetrization_lemma(int m, const std::vector<cplx>& vs, cplx beta,
                                       const FunctionMode& mode, double tol) {
    if (m < 1 || m > 7) throw InvalidParameter("symmetrization lemma: need 1 <= m <= 7");
    if (vs.size() != static_cast<std::size_t>(m))
        throw InvalidParameter("symmetrization lemma: need m variables");
    const auto terms = symmetrization_terms(vs, beta, mode);
    cplx lhs = 0.0;
    for (cplx t : terms) lhs += t;
    cplx rhs = 1.0;
    const cplx fb = f_eval(mode, beta);
    for (int k = 1; k <= m; ++k) rhs *= guarded(f_eval(mode, double(k) * beta), fb, "f(beta)");
    json p{{"m", m}, {"vs", cvec(vs)}, {"beta", cj(beta)}, {"mode", mode_name(mode.kind)}};
    return make_report("symmetrization_lemma.m" + std::to_string(m) + "." + mode_name(mode.kind),
                       p, lhs, rhs, tol);
}

CheckReport check_skew_cauchy(const Signature& mu, const Signature& nu,
                              const std::vector<cplx>& us, const std::vector<cplx>& vs,
                              const IrfParams& params, int cap, double tol) {
    const std::size_t k = us.size(), l = vs.size();
    if (k == 0 || l == 0) throw InvalidParameter("skew_cauchy: need at least one u and one v");
    if (mu.length() != nu.length() + k)
        throw InvalidParameter("skew_cauchy: length(mu) must equal length(nu) + #u");
    need_cols(params, cap, 3, "skew_cauchy");
    const cplx eta = params.eta();
    const cplx lambda = params.lambda0();
    auto f = [&](cplx x) { return params.f(x); };

    // left side: sum over kappa of D_{kappa/mu}(lambda; v) B_{kappa/nu}(lambda + 2 eta l; u)
    const auto Bs = skew_B_lattice_all(nu, lambda + 2.0 * eta * dbl(l), us, params, false, cap);
    ShellSum lhs;
    for (const auto& [kappa, b] : Bs) {
        bool dominates = true;
        for (std::size_t i = 0; i < kappa.length(); ++i) dominates &= kappa[i] >= mu[i];
        if (!dominates || b == 0.0) continue;
        lhs.add(kappa, skew_D_oracle(kappa, mu, lambda, vs, params) * b);
    }

    cplx pre = 1.0;
    for (cplx u : us)
        for (cplx v : vs) pre *= guarded(f(v - u - 2.0 * eta), f(v - u), "skew_cauchy prefactor");
    cplx rsum = 0.0;
    const int hi = std::max(mu.largest(), nu.largest());
    for (const Signature& rho : signatures_of_length(nu.length(), 0, hi)) {
        const cplx d = skew_D_oracle(nu, rho, lambda + 2.0 * eta * dbl(k), vs, params);
        if (d == 0.0) continue;
        rsum += skew_B_oracle(mu, rho, lambda, us, params) * d;
    }
    const cplx rhs = pre * rsum;
    const double scale = std::max(1.0, std::abs(rhs));
    json p{{"mu", sig_json(mu)}, {"nu", sig_json(nu)}, {"us", cvec(us)}, {"vs", cvec(vs)},
           {"lambda", cj(lambda)}, {"cap", cap}};
    const std::string name = (k == 1 && l == 1) ? "skew_cauchy" : "skew_cauchy.general";
    return make_report(name + ".mu" + mu.str() + ".nu" + nu.str(), p, lhs.total(), rhs, tol,
                       lhs.info(cap, scale, tol));
}

CheckReport check_pieri(PieriVariant variant, const PieriInputs& in, const IrfParams& params,
                        double tol) {
    const cplx eta = params.eta();
    const cplx lambda = params.lambda0();
    auto f = [&](cplx x) { return params.f(x); };
    const int cap = in.cap;
    need_cols(params, cap, 3, "pieri");
    json p{{"us", cvec(in.us)}, {"vs", cvec(in.vs)}, {"lambda", cj(lambda)}, {"cap", cap}};
    ShellSum lhs;
    cplx rhs = 1.0;
    std::string name;

    switch (variant) {
    case PieriVariant::Pieri2: {
        if (in.us.size() != 1) throw InvalidParameter("pieri2: exactly one u");
        const Signature& nu = in.sig;
        const std::size_t l = in.vs.size();
        const cplx u = in.us[0];
        const auto Bs =
            skew_B_lattice_all(nu, lambda + 2.0 * eta * dbl(l), in.us, params, false, cap);
        for (const auto& [kappa, b] : Bs)
            if (b != 0.0) lhs.add(kappa, D_nu(kappa, lambda, in.vs, params) * b);
        const double N = dbl(nu.length());
        const cplx z0 = params.z(0), L0 = params.Lambda(0);
        rhs = -guarded(f(-lambda + z0 - u + (L0 - 1.0 - 2.0 * N) * eta),
                       f(z0 - u + (L0 + 1.0) * eta), "pieri2") *
              guarded(f(2.0 * eta), f(lambda), "pieri2");
        for (cplx v : in.vs) rhs *= guarded(f(v - u - 2.0 * eta), f(v - u), "pieri2");
        rhs *= D_nu(nu, lambda + 2.0 * eta, in.vs, params);
        p["nu"] = sig_json(nu);
        name = "pieri.pieri2.nu" + nu.str();
        break;
    }
    case PieriVariant::Pieri: {
        if (in.vs.size() != 1) throw InvalidParameter("pieri: exactly one v");
        const Signature& mu = in.sig;
        if (in.us.size() != mu.length()) throw InvalidParameter("pieri: one u per part of mu");
        const int M = static_cast<int>(mu.length());
        const cplx v = in.vs[0];
        const auto Bs = skew_B_lattice_all(Signature{}, lambda + 2.0 * eta, in.us, params, false,
                                           cap);
        for (const auto& [kappa, b] : Bs) {
            bool dominates = true;
            for (std::size_t i = 0; i < kappa.length(); ++i) dominates &= kappa[i] >= mu[i];
            if (!dominates || b == 0.0) continue;
            const cplx dn = normalize(FunctionFamily::D, skew_D_oracle(kappa, mu, lambda, in.vs, params),
                                      lambda, 1, params);
            lhs.add(kappa, dn * normalize(FunctionFamily::B, b, lambda + 2.0 * eta, M, params));
        }
        for (cplx u : in.us) rhs *= guarded(f(v - u - 2.0 * eta), f(v - u), "pieri");
        rhs *= normalize(FunctionFamily::B, B_mu(mu, lambda, in.us, params), lambda, M, params);
        p["mu"] = sig_json(mu);
        name = "pieri.pieri.mu" + mu.str();
        break;
    }
    case PieriVariant::Cauchy: {
        const std::size_t k = in.us.size(), l = in.vs.size();
        if (k == 0) throw InvalidParameter("cauchy: need at least one u");
        const auto Bs = skew_B_lattice_all(Signature{}, lambda + 2.0 * eta * dbl(l), in.us,
                                           params, false, cap);
        for (const auto& [kappa, b] : Bs) {
            if (b == 0.0) continue;
            const cplx dn = normalize(FunctionFamily::D, D_nu(kappa, lambda, in.vs, params),
                                      lambda, static_cast<int>(l), params);
            lhs.add(kappa, dn * normalize(FunctionFamily::B, b, lambda + 2.0 * eta * dbl(l),
                                          static_cast<int>(k), params));
        }
        const cplx z0 = params.z(0), L0 = params.Lambda(0);
        for (cplx u : in.us) {
            rhs *= f(2.0 * eta) *
                   guarded(f(lambda - z0 + u + eta * (-L0 + 2.0 * dbl(k) - 1.0)),
                           f(z0 - u + eta * (L0 + 1.0)), "cauchy");
            for (cplx v : in.vs) rhs *= guarded(f(v - u - 2.0 * eta), f(v - u), "cauchy");
        }
        name = "pieri.cauchy.k" + std::to_string(k) + ".l" + std::to_string(l);
        break;
    }
    }
    const double scale = std::max(1.0, std::abs(rhs));
    return make_report(name, p, lhs.total(), rhs, tol, lhs.info(cap, scale, tol));
}

CheckReport check_cauchy_rho(const std::vector<cplx>& us, const IrfParams& params, int cap,
                             double tol) {
    if (params.mode().kind != FunctionMode::Kind::Trigonometric)
        throw InvalidParameter("cauchy_rho: trigonometric mode only");
    if (us.empty()) throw InvalidParameter("cauchy_rho: need at least one u");
    need_cols(params, cap, 1, "cauchy_rho");
    const cplx eta = params.eta();
    const cplx lambda = params.lambda0();
    auto f = [&](cplx x) { return params.f(x); };
    const int N = static_cast<int>(us.size());
    const auto Bs = skew_B_lattice_all(Signature{}, lambda, us, params, false, cap);
    ShellSum lhs;
    for (const auto& [kappa, b] : Bs) {
        if (b == 0.0 || kappa.smallest() < 1) continue;
        lhs.add(kappa, D_rho(kappa, lambda, params) * normalize(FunctionFamily::B, b, lambda, N, params));
    }
    cplx rhs = std::pow(-f(2.0 * eta), N);
    for (cplx u : us) rhs *= guarded(f(u - params.p(0)), f(u - params.q(0)), "cauchy_rho");
    json p{{"us", cvec(us)}, {"lambda", cj(lambda)}, {"cap", cap}};
    const double scale = std::max(1.0, std::abs(rhs));
    std::string name = "cauchy_rho.N" + std::to_string(N);
    if (N >= 2 && us[0] == us[1]) name += ".degenerate";
    return make_report(name, p, lhs.total(), rhs, tol, lhs.info(cap, scale, tol));
}

CheckReport check_orthogonality(const Signature& mu, const Signature& nu, const IrfParams& params,
                                double tol) {
    const std::size_t M = mu.length();
    if (nu.length() != M) throw InvalidParameter("orthogonality: mu and nu need equal length");
    if (M == 0 || M > 3) throw InvalidParameter("orthogonality: 1 <= M <= 3");
    const cplx eta = params.eta();
    const cplx lambda = params.lambda0();
    const PQGrid grid = pq_grid(params);
    const auto fam = contours_for(params, static_cast<int>(M));
    if (auto msg = audit_contours(params, fam); !msg.empty()) throw InvalidParameter(msg);

    KernelSpec spec;
    spec.eta = eta;
    spec.mode = params.mode();
    for (std::size_t i = 0; i < M; ++i)
        spec.single.push_back(psi_kernel(params, grid, nu[i], i, M, lambda));
    auto f = [&](cplx x) { return params.f(x); };
    spec.bpre = (M % 2 ? -1.0 : 1.0) * std::pow(f(2.0 * eta), static_cast<int>(M));
    for (std::size_t i = 0; i < M; ++i) spec.bpre /= f(lambda + 2.0 * eta * dbl(i));
    for (int x = 0; x <= mu.largest(); ++x)
        for (int j = 1; j <= mu.multiplicity(x); ++j) spec.bpre *= f(2.0 * eta) / f(2.0 * eta * double(j));
    for (std::size_t a = 0; a < M; ++a) {
        const int m = mu[a];
        const cplx shift = -grid.q[m] + 2.0 * eta + 4.0 * eta * dbl(M - 1 - a) -
                           2.0 * eta * params.Lambda_sum(0, m);
        const FunctionMode mode = params.mode();
        spec.bpos.push_back(
            [=](cplx u) { return phi(m, u, grid, mode) * f_eval(mode, lambda + u + shift); });
    }
    const cplx cm = c_mu(mu, lambda, params);
    QuadratureOptions opts;
    opts.tol = 1e-2 * tol * std::abs(cm);
    opts.max_points = std::size_t{1} << 24;
    const auto q = contour_integral(make_factory(spec), fam.gammas, opts);
    const cplx rhs = mu == nu ? cm : cplx{0.0};
    json p{{"mu", sig_json(mu)}, {"nu", sig_json(nu)}, {"lambda", cj(lambda)},
           {"contours", circles_json(fam)}, {"nodes", q.nodes}, {"c_mu", cj(cm)}};
    TruncationInfo ti;
    ti.cap = static_cast<int>(q.nodes);
    ti.terms = static_cast<int>(q.nodes);
    ti.tail_estimate = std::abs(q.value - q.previous) / std::abs(cm);
    ti.note = "quadrature nodes per variable";
    return make_report("orthogonality.mu" + mu.str() + ".nu" + nu.str(), p, q.value, rhs, tol, ti,
                       std::abs(cm));
}

namespace {

CheckReport d_integral_impl(const Signature& nu, const std::vector<cplx>* vs,
                            const IrfParams& params, double tol) {
    const std::size_t N = nu.length();
    if (N == 0 || N > 3) throw InvalidParameter("D integral: 1 <= length(nu) <= 3");
    const cplx eta = params.eta();
    const cplx lambda = params.lambda0();
    const PQGrid grid = pq_grid(params);
    const auto fam = contours_for(params, static_cast<int>(N));
    const FunctionMode mode = params.mode();
    auto f = [&](cplx x) { return params.f(x); };
    const cplx p0 = params.p(0), q0 = params.q(0);
    const std::size_t n = vs ? vs->size() : 0;
    if (vs) {
        const Circle& g1 = fam.gammas.front();
        for (cplx v : *vs)
            if (std::abs(v - g1.center) <= g1.radius + 1e-3)
                throw InvalidParameter("D integral: v must lie outside the outer contour");
    }

    KernelSpec spec;
    spec.eta = eta;
    spec.mode = mode;
    for (std::size_t i = 0; i < N; ++i) {
        auto base = psi_kernel(params, grid, nu[i], i, N, lambda);
        if (vs) {
            const std::vector<cplx> vv = *vs;
            const cplx sh = -q0 + 2.0 * eta * (dbl(N) - dbl(n));
            spec.single.push_back([=](cplx u) {
                cplx t = base(u) * f_eval(mode, lambda + u + sh) / f_eval(mode, u - q0);
                for (cplx v : vv) t *= f_eval(mode, u - v + 2.0 * eta) / f_eval(mode, u - v);
                return t;
            });
        } else {
            spec.single.push_back(
                [=](cplx u) { return base(u) * f_eval(mode, u - p0) / f_eval(mode, u - q0); });
        }
    }
    cplx pre = (N % 2 ? -1.0 : 1.0) * std::pow(f(2.0 * eta), static_cast<int>(N)) /
               c_mu(nu, lambda, params);
    for (int i = -static_cast<int>(n); i < static_cast<int>(N); ++i)
        pre = guarded(pre, f(lambda + 2.0 * eta * double(i)), "D integral prefactor");
    const cplx ref = vs ? D_nu(nu, lambda - 2.0 * eta * dbl(n), *vs, params)
                        : D_rho(nu, lambda, params);
    QuadratureOptions opts;
    opts.tol = 1e-2 * tol * std::max(1.0, std::abs(ref)) / std::max(1e-300, std::abs(pre));
    opts.max_points = std::size_t{1} << 24;
    const auto q = contour_integral(make_factory(spec), fam.gammas, opts);
    json p{{"nu", sig_json(nu)}, {"lambda", cj(lambda)}, {"contours", circles_json(fam)},
           {"nodes", q.nodes}};
    if (vs) p["vs"] = cvec(*vs);
    TruncationInfo ti;
    ti.cap = ti.terms = static_cast<int>(q.nodes);
    ti.tail_estimate = std::abs(pre * (q.value - q.previous)) / std::max(1.0, std::abs(ref));
    ti.note = "quadrature nodes per variable";
    const std::string name = vs ? "D_integral.nu" + nu.str() + ".n" + std::to_string(n)
                                : "D_rho_integral.nu" + nu.str();
    return make_report(name, p, pre * q.value, ref, tol, ti);
}

}  // namespace

CheckReport check_D_integral(const Signature& nu, const std::vector<cplx>& vs,
                             const IrfParams& params, double tol) {
    if (vs.empty()) throw InvalidParameter("D integral: need at least one v");
    return d_integral_impl(nu, &vs, params, tol);
}

CheckReport check_D_rho_integral(const Signature& nu, const IrfParams& params, double tol) {
    if (params.mode().kind != FunctionMode::Kind::Trigonometric)
        throw InvalidParameter("D rho integral: trigonometric mode only");
    return d_integral_impl(nu, nullptr, params, tol);
}

CheckReport check_nested_sum_lemma(const std::vector<int>& Ts,
                                   const std::vector<std::vector<double>>& Y, double tol) {
    const std::size_t n = Ts.size();
    if (n == 0 || n > 5) throw InvalidParameter("nested sum: 1 <= n <= 5");
    if (Y.size() != n) throw InvalidParameter("nested sum: one Y row per index");
    for (std::size_t j = 0; j < n; ++j) {
        if (Ts[j] < 1 || Ts[j] > 8) throw InvalidParameter("nested sum: 1 <= T_j <= 8");
        if (j > 0 && Ts[j] < Ts[j - 1])
            throw InvalidParameter("nested sum: T must be nondecreasing");
        if (Y[j].size() < static_cast<std::size_t>(Ts[j]) + 1)
            throw InvalidParameter("nested sum: Y row too short");
    }
    double lhs = 0.0;
    std::vector<int> t(n, 1);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
            double prod = 1.0;
            for (std::size_t a = 0; a < n; ++a) {
                int inv = 0;
                for (std::size_t b = 0; b < a; ++b) inv += t[b] > t[a];
                prod *= Y[a][t[a] + inv];
            }
            lhs += prod;
            return;
        }
        for (int v = 1; v <= Ts[i]; ++v) {
            bool used = false;
            for (std::size_t b = 0; b < i; ++b) used |= t[b] == v;
            if (used) continue;
            t[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
    double rhs = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (int i = static_cast<int>(j) + 1; i <= Ts[j]; ++i) s += Y[j][i];
        rhs *= s;
    }
    json p{{"T", Ts}, {"Y", Y}};
    std::string name = "nested_sum.T";
    for (int x : Ts) name += "_" + std::to_string(x);
    return make_report(name, p, lhs, rhs, tol);
}

namespace {

cplx crand(CounterRng& g, double re, double im) {
    const double a = g.uniform(-re, re);
    const double b = g.uniform(-im, im);
    return {a, b};
}

FunctionMode default_elliptic() { return FunctionMode::elliptic({0.1, 1.1}); }

// Random parameter pack for oracle comparisons.
IrfParams random_params(CounterRng& g, const FunctionMode& mode, std::size_t ncols) {
    const cplx eta{g.uniform(0.08, 0.16), g.uniform(0.02, 0.07)};
    std::vector<Column> cols;
    for (std::size_t j = 0; j < ncols; ++j)
        cols.push_back({crand(g, 0.25, 0.25), cplx{1.0 + g.uniform(-0.3, 0.3), g.uniform(-0.1, 0.1)}});
    const cplx lam{g.uniform(0.2, 0.5), g.uniform(0.1, 0.3)};
    return IrfParams(mode, eta, lam, cols, {});
}

template <class Fn>
CheckReport worst_over_draws(const std::string& name, json params, int draws, std::uint64_t seed,
                             double tol, Fn&& one) {
    double worst = -1.0;
    cplx wl = 0.0, wr = 0.0;
    json worst_case;
    int skipped = 0;
    for (int d = 0; d < draws; ++d) {
        CounterRng g(seed, static_cast<std::uint64_t>(d));
        try {
            auto [l, r, scale, info] = one(g);
            const double res = std::abs(l - r) / scale;
            if (std::isnan(res) || res > worst) {
                worst = std::isnan(res) ? std::numeric_limits<double>::infinity() : res;
                wl = l;
                wr = r;
                worst_case = info;
                worst_case["draw"] = d;
            }
        } catch (const SingularError&) {
            ++skipped;
        }
    }
    params["draws"] = draws;
    params["seed"] = seed;
    params["skipped_singular"] = skipped;
    params["worst_case"] = worst_case;
    CheckReport r = make_report(name, params, wl, wr, tol);
    r.residual = std::max(worst, 0.0);
    r.passed = r.residual <= tol && skipped * 10 < draws;
    return r;
}

struct Draw {
    cplx lhs, rhs;
    double scale;
    json info;
};

}  // namespace

CheckReport check_stochasticity(const FunctionMode& mode, int draws, std::uint64_t seed,
                                double tol) {
    return worst_over_draws(
        std::string("stochasticity.") + mode_name(mode.kind), {{"mode", mode_name(mode.kind)}},
        draws, seed, tol, [&](CounterRng& g) {
            WeightContext ctx{crand(g, 0.5, 0.3), crand(g, 0.5, 0.3), crand(g, 0.5, 0.3),
                              cplx{g.uniform(0.5, 3.0), g.uniform(-0.2, 0.2)},
                              cplx{g.uniform(0.02, 0.15), g.uniform(-0.05, 0.05)}, mode};
            const int k = static_cast<int>(g.uniform() * 5.0);
            const cplx A = weight(PlaquetteKind::A, k, ctx, true);
            const cplx C = k > 0 ? weight(PlaquetteKind::C, k, ctx, true) : cplx{0.0};
            const cplx B = weight(PlaquetteKind::B, k, ctx, true);
            const cplx D = weight(PlaquetteKind::D, k, ctx, true);
            const double sac = std::max({1.0, std::abs(A), std::abs(C)});
            const double sbd = std::max({1.0, std::abs(B), std::abs(D)});
            // report whichever pair is worse
            const double r1 = std::abs(A + C - 1.0) / sac, r2 = std::abs(B + D - 1.0) / sbd;
            json info{{"k", k}, {"lambda", cj(ctx.lambda)}, {"eta", cj(ctx.eta)}};
            if (r1 >= r2) return Draw{A + C, 1.0, sac, info};
            return Draw{B + D, 1.0, sbd, info};
        });
}

CheckReport check_sine_identity(int draws, std::uint64_t seed, double tol) {
    const FunctionMode mode = FunctionMode::trigonometric();
    return worst_over_draws("sine_identity", json::object(), draws, seed, tol, [&](CounterRng& g) {
        const cplx A = crand(g, 1.0, 0.5), B = crand(g, 1.0, 0.5), C = crand(g, 1.0, 0.5),
                   w = crand(g, 1.0, 0.5);
        auto f = [&](cplx x) { return f_eval(mode, x); };
        const cplx l = f(B - C) * f(w - A);
        const cplx r1 = f(A - C) * f(w - B), r2 = f(A - B) * f(w - C);
        const double scale = std::max({1.0, std::abs(r1), std::abs(r2)});
        return Draw{l, r1 - r2, scale, json{{"A", cj(A)}, {"B", cj(B)}, {"C", cj(C)}, {"w", cj(w)}}};
    });
}

namespace {

Signature random_signature(CounterRng& g, std::size_t len, int lo, int hi) {
    std::vector<int> parts(len);
    for (auto& x : parts) x = lo + static_cast<int>(g.uniform() * (hi - lo + 1));
    std::sort(parts.rbegin(), parts.rend());
    return Signature(parts);
}

FunctionMode mode_for_draw(int d) {
    return d % 2 ? default_elliptic() : FunctionMode::trigonometric();
}

}  // namespace

CheckReport check_oracle_B(int draws, std::uint64_t seed, double tol) {
    int d = 0;
    return worst_over_draws("oracle.B_mu", {{"modes", "trigonometric,elliptic"}}, draws, seed, tol,
                            [&](CounterRng& g) {
                                const IrfParams P = random_params(g, mode_for_draw(d++), 9);
                                const std::size_t len = 1 + static_cast<std::size_t>(g.uniform() * 3);
                                const Signature mu = random_signature(g, len, 0, 4);
                                std::vector<cplx> us(len);
                                for (auto& u : us) u = crand(g, 0.4, 0.3);
                                const cplx lhs = B_mu(mu, P.lambda0(), us, P);
                                const cplx rhs = skew_B_oracle(mu, Signature{}, P.lambda0(), us, P);
                                return Draw{lhs, rhs, std::max(1e-300, std::abs(rhs)),
                                            json{{"mu", sig_json(mu)}, {"us", cvec(us)}}};
                            });
}

CheckReport check_oracle_D(int draws, std::uint64_t seed, double tol) {
    int d = 0;
    return worst_over_draws("oracle.D_nu", {{"modes", "trigonometric,elliptic"}}, draws, seed, tol,
                            [&](CounterRng& g) {
                                const IrfParams P = random_params(g, mode_for_draw(d++), 9);
                                const std::size_t len = 1 + static_cast<std::size_t>(g.uniform() * 3);
                                const Signature nu = random_signature(g, len, 0, 4);
                                const std::size_t n = 1 + static_cast<std::size_t>(g.uniform() * 3);
                                std::vector<cplx> vs(n);
                                for (auto& v : vs) v = crand(g, 0.4, 0.3);
                                const Signature zero(std::vector<int>(len, 0));
                                const cplx lhs = D_nu(nu, P.lambda0(), vs, P);
                                const cplx rhs = skew_D_oracle(nu, zero, P.lambda0(), vs, P);
                                const double s = std::max({1e-300, std::abs(rhs), std::abs(lhs)});
                                return Draw{lhs, rhs, s,
                                            json{{"nu", sig_json(nu)}, {"vs", cvec(vs)}}};
                            });
}

CheckReport check_c_lemma(int draws, std::uint64_t seed, double tol) {
    int d = 0;
    return worst_over_draws(
        "oracle.c_matrix_element", {{"modes", "trigonometric,elliptic"}}, draws, seed, tol,
        [&](CounterRng& g) {
            const IrfParams P = random_params(g, mode_for_draw(d++), 6);
            const int p = 1 + static_cast<int>(g.uniform() * 3);
            const std::size_t m = 1 + static_cast<std::size_t>(g.uniform() * 3);
            std::vector<int> ks(m, 0);
            for (int r = 0; r < p; ++r) ks[static_cast<std::size_t>(g.uniform() * dbl(m))]++;
            std::vector<cplx> ws(static_cast<std::size_t>(p));
            for (auto& w : ws) w = crand(g, 0.4, 0.3);
            const cplx lhs = c_symmetrization(ws, ks, P.lambda0(), P);
            const cplx rhs = c_matrix_element(ws, ks, P.lambda0(), P);
            return Draw{lhs, rhs, std::max(1e-300, std::abs(rhs)),
                        json{{"ks", ks}, {"ws", cvec(ws)}}};
        });
}

CheckReport check_stochastic_B(int draws, std::uint64_t seed, double tol) {
    return worst_over_draws(
        "stochastic_B.lattice_vs_formula", {{"mode", "trigonometric"}}, draws, seed, tol,
        [&](CounterRng& g) {
            const IrfParams P = random_params(g, FunctionMode::trigonometric(), 8);
            const std::size_t len = static_cast<std::size_t>(g.uniform() * 3);
            const Signature nu = random_signature(g, len, 1, 3);
            const std::size_t k = 1 + static_cast<std::size_t>(g.uniform() * 3);
            std::vector<cplx> us(k);
            for (auto& u : us) u = crand(g, 0.4, 0.3);
            const auto all = skew_B_lattice_all(nu, P.lambda0(), us, P, true, 4);
            std::vector<std::pair<Signature, cplx>> nz;
            for (const auto& kv : all)
                if (kv.second != 0.0) nz.push_back(kv);
            if (nz.empty()) throw SingularError("no reachable signature");
            const auto& [kappa, lhs] = nz[static_cast<std::size_t>(g.uniform() * dbl(nz.size()))];
            const cplx rhs = B_stoch_formula(kappa, nu, P.lambda0(), us, P);
            return Draw{lhs, rhs, std::max(1e-300, std::abs(rhs)),
                        json{{"kappa", sig_json(kappa)}, {"nu", sig_json(nu)}, {"us", cvec(us)}}};
        });
}

CheckReport check_sum_to_one(const Signature& nu, const std::vector<cplx>& us,
                             const IrfParams& params, double tol) {
    if (params.mode().kind != FunctionMode::Kind::Trigonometric)
        throw InvalidParameter("sum_to_one: trigonometric mode only");
    const int first = std::max(nu.largest(), 1) + 3;
    const int last_cap = static_cast<int>(params.num_columns()) - 1;
    if (first > last_cap) throw InvalidParameter("sum_to_one: too few columns");
    ShellSum s;
    TruncationInfo info;
    int cap = first;
    for (;; cap = std::min(last_cap, cap + 4)) {
        s = ShellSum{};
        for (const auto& [kappa, v] :
             skew_B_lattice_all(nu, params.lambda0(), us, params, true, cap))
            s.add(kappa, v);
        info = s.info(cap, 1.0, tol);
        if (info.tail_estimate < tol / 10.0 || cap == last_cap) break;
    }
    json p{{"nu", sig_json(nu)}, {"us", cvec(us)}, {"lambda", cj(params.lambda0())}};
    return make_report("sum_to_one.nu" + nu.str() + ".k" + std::to_string(us.size()), p, s.total(),
                       1.0, tol, info);
}

std::vector<std::string> suite_names() {
    return {"identities", "orthogonality", "oracle", "stochastic", "weights", "all"};
}

namespace {

double tol_or(const SuiteOptions& o, double d) { return o.tolerance ? *o.tolerance : d; }

template <class Fn>
void attempt(std::vector<CheckReport>& out, const std::string& name, Fn&& fn) {
    try {
        out.push_back(fn());
    } catch (const Error& e) {
        CheckReport r;
        r.name = name;
        r.parameters = {{"error", e.what()}};
        r.residual = std::numeric_limits<double>::infinity();
        r.passed = false;
        out.push_back(r);
    }
}

std::vector<cplx> near_p(const IrfParams& P, std::size_t n) {
    const auto& rows = P.rows();
    if (rows.size() >= n) return {rows.begin(), rows.begin() + static_cast<long>(n)};
    std::vector<cplx> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(P.p(0) + 0.003 * std::polar(1.0, 1.0 + dbl(i)));
    return out;
}

// v's placed around the q-cluster of the first columns.
std::vector<cplx> near_q(const IrfParams& P, std::size_t n) {
    cplx c = 0.0;
    const std::size_t m = std::min<std::size_t>(P.num_columns(), 8);
    for (std::size_t j = 0; j < m; ++j) c += P.q(j);
    c /= dbl(m);
    std::vector<cplx> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(c + 0.004 * std::polar(1.0, 0.7 + 2.1 * dbl(i)));
    return out;
}

int max_admissible_M(const IrfParams& P) {
    AdmissibilityOptions opts;
    opts.gap = std::max(0.02, std::abs(2.0 * P.eta()));
    int M = 0;
    for (int m = 1; m <= 3; ++m)
        if (std::holds_alternative<ContourFamily>(check_admissible(P, m, 0, opts))) M = m;
    return M;
}

void orthogonality_block(std::vector<CheckReport>& out, const IrfParams& P, const SuiteOptions& o) {
    const double tol = tol_or(o, kQuadratureTol);
    const int Mmax = max_admissible_M(P);
    const std::vector<std::pair<Signature, Signature>> cases = {
        {{1}, {1}},       {{2}, {1}},       {{0}, {0}},          {{2, 1}, {2, 1}},
        {{1, 1}, {2, 1}}, {{2, 0}, {2, 0}}, {{2, 1, 0}, {2, 1, 0}}, {{1, 1, 0}, {2, 1, 0}}};
    for (const auto& [mu, nu] : cases) {
        if (static_cast<int>(mu.length()) > Mmax) continue;
        attempt(out, "orthogonality.mu" + mu.str() + ".nu" + nu.str(),
                [&] { return check_orthogonality(mu, nu, P, tol); });
    }
    const bool trig = P.mode().kind == FunctionMode::Kind::Trigonometric;
    const std::vector<Signature> dsigs = {{1}, {2}, {0}, {1, 1}, {2, 1}, {2, 0}};
    for (const Signature& nu : dsigs) {
        if (static_cast<int>(nu.length()) > Mmax) continue;
        const auto fam = contours_for(P, static_cast<int>(nu.length()));
        const Circle g1 = fam.gammas.front();
        for (std::size_t n : {std::size_t{1}, std::size_t{2}}) {
            std::vector<cplx> vs;
            for (std::size_t i = 0; i < n; ++i)
                vs.push_back(g1.center + (g1.radius + 0.1) * std::polar(1.0, 2.0 + dbl(i)));
            attempt(out, "D_integral.nu" + nu.str() + ".n" + std::to_string(n),
                    [&] { return check_D_integral(nu, vs, P, tol); });
        }
        if (trig)
            attempt(out, "D_rho_integral.nu" + nu.str(),
                    [&] { return check_D_rho_integral(nu, P, tol); });
    }
    CheckReport adm = make_report("admissibility.max_M", {{"max_M", Mmax}}, double(Mmax),
                                  double(Mmax), 0.0);
    adm.passed = Mmax >= 1;
    out.push_back(adm);
}

void identities_block(std::vector<CheckReport>& out, const IrfParams& P, const SuiteOptions& o) {
    const double tol = tol_or(o, kSeriesTol);
    const auto us = near_p(P, 3);
    const auto vs = near_q(P, 3);
    const int cap = std::min<int>(12, static_cast<int>(P.num_columns()) - 3);
    const std::vector<std::pair<Signature, Signature>> sc = {
        {{0}, {}}, {{1}, {}}, {{2, 1}, {1}}, {{1, 0}, {0}}};
    for (const auto& [mu, nu] : sc)
        attempt(out, "skew_cauchy.mu" + mu.str() + ".nu" + nu.str(),
                [&] { return check_skew_cauchy(mu, nu, {us[0]}, {vs[0]}, P, cap, tol); });
    attempt(out, "skew_cauchy.general.mu[1,0].nu[]", [&] {
        return check_skew_cauchy({1, 0}, {}, {us[0], us[1]}, {vs[0], vs[1]}, P, cap, tol);
    });
    attempt(out, "pieri.pieri2.nu[]", [&] {
        return check_pieri(PieriVariant::Pieri2, {{}, {us[0]}, {vs[0], vs[1]}, cap}, P, tol);
    });
    attempt(out, "pieri.pieri2.nu[1]", [&] {
        return check_pieri(PieriVariant::Pieri2, {{1}, {us[0]}, {vs[0]}, cap}, P, tol);
    });
    attempt(out, "pieri.pieri.mu[1]", [&] {
        return check_pieri(PieriVariant::Pieri, {{1}, {us[0]}, {vs[0]}, cap}, P, tol);
    });
    attempt(out, "pieri.pieri.mu[2,0]", [&] {
        return check_pieri(PieriVariant::Pieri, {{2, 0}, {us[0], us[1]}, {vs[0]}, cap}, P, tol);
    });
    attempt(out, "pieri.cauchy.k1.l1", [&] {
        return check_pieri(PieriVariant::Cauchy, {{}, {us[0]}, {vs[0]}, cap}, P, tol);
    });
    attempt(out, "pieri.cauchy.k2.l2", [&] {
        return check_pieri(PieriVariant::Cauchy, {{}, {us[0], us[1]}, {vs[0], vs[1]}, cap}, P, tol);
    });
    if (P.mode().kind == FunctionMode::Kind::Trigonometric) {
        attempt(out, "cauchy_rho.N1", [&] { return check_cauchy_rho({us[0]}, P, cap, tol); });
        attempt(out, "cauchy_rho.N2", [&] { return check_cauchy_rho({us[0], us[1]}, P, cap, tol); });
        attempt(out, "cauchy_rho.N2.degenerate",
                [&] { return check_cauchy_rho({us[0], us[0]}, P, cap, tol); });
    }
    // closed-form checks
    const double ctol = tol_or(o, kClosedFormTol);
    for (int m = 1; m <= 6; ++m) {
        CounterRng g(o.seed, 100 + static_cast<std::uint64_t>(m));
        std::vector<cplx> v(static_cast<std::size_t>(m));
        for (auto& x : v) x = crand(g, 0.5, 0.3);
        const cplx beta = crand(g, 0.3, 0.2);
        for (const FunctionMode& mode : {FunctionMode::trigonometric(), default_elliptic()})
            attempt(out, "symmetrization_lemma.m" + std::to_string(m),
                    [&] { return check_symmetrization_lemma(m, v, beta, mode, ctol); });
    }
    const std::vector<std::vector<int>> Tcases = {{4}, {2, 3, 5}, {1, 1}, {4, 4, 4}, {1, 2, 3, 4, 5}};
    for (std::size_t c = 0; c < Tcases.size(); ++c) {
        CounterRng g(o.seed, 200 + c);
        std::vector<std::vector<double>> Y;
        for (int T : Tcases[c]) {
            std::vector<double> row(static_cast<std::size_t>(T) + 1, 0.0);
            for (std::size_t i = 1; i < row.size(); ++i) row[i] = g.uniform(-1.0, 1.0);
            Y.push_back(row);
        }
        attempt(out, "nested_sum", [&] { return check_nested_sum_lemma(Tcases[c], Y, o.tolerance ? *o.tolerance : 1e-12); });
    }
}

void stochastic_block(std::vector<CheckReport>& out, const IrfParams& P, const SuiteOptions& o) {
    attempt(out, "stochastic_B.lattice_vs_formula",
            [&] { return check_stochastic_B(50, o.seed, tol_or(o, 1e-8)); });
    if (P.mode().kind != FunctionMode::Kind::Trigonometric) return;
    const auto us = near_p(P, 2);
    const double tol = tol_or(o, 1e-6);
    attempt(out, "sum_to_one.nu[].k1", [&] { return check_sum_to_one({}, {us[0]}, P, tol); });
    attempt(out, "sum_to_one.nu[].k2", [&] { return check_sum_to_one({}, us, P, tol); });
    attempt(out, "sum_to_one.nu[1].k1", [&] { return check_sum_to_one({1}, {us[0]}, P, tol); });
    attempt(out, "sum_to_one.nu[2,1].k2", [&] { return check_sum_to_one({2, 1}, us, P, tol); });
}

void weights_block(std::vector<CheckReport>& out, const SuiteOptions& o) {
    const double tol = tol_or(o, kClosedFormTol);
    for (const FunctionMode& m :
         {FunctionMode::trigonometric(), FunctionMode::rational(), default_elliptic()})
        out.push_back(check_stochasticity(m, 1000, o.seed, tol));
    out.push_back(check_sine_identity(1000, o.seed, tol));
}

void oracle_block(std::vector<CheckReport>& out, const SuiteOptions& o) {
    const double tol = tol_or(o, 1e-8);
    attempt(out, "oracle.B_mu", [&] { return check_oracle_B(50, o.seed, tol); });
    attempt(out, "oracle.D_nu", [&] { return check_oracle_D(50, o.seed, tol); });
    attempt(out, "oracle.c_matrix_element", [&] { return check_c_lemma(50, o.seed, tol); });
}

}  // namespace

std::vector<CheckReport> run_suite(const std::string& suite, const IrfParams& params,
                                   const SuiteOptions& opts) {
    std::vector<CheckReport> out;
    const bool all = suite == "all";
    if (all || suite == "identities") {
        identities_block(out, params, opts);
        orthogonality_block(out, params, opts);
    }
    if (suite == "orthogonality") orthogonality_block(out, params, opts);
    if (all || suite == "oracle") oracle_block(out, opts);
    if (all || suite == "stochastic") stochastic_block(out, params, opts);
    if (all || suite == "weights") weights_block(out, opts);
    if (out.empty() && !all)
        throw InvalidParameter("unknown suite '" + suite + "'");
    std::stable_sort(out.begin(), out.end(),
                     [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
    return out;
}

}  // namespace irf
