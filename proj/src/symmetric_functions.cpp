#include "irf/symmetric_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "irf/errors.hpp"
#include "irf/operator_oracle.hpp"
#include "irf/plaquette_weights.hpp"

namespace irf {

namespace {

cplx checked_div(cplx num, cplx den, const char* what) {
    if (std::abs(den) < 1e-13 * std::max(1.0, std::abs(num)))
        throw SingularError(std::string("pole hit in ") + what);
    return num / den;
}

void need_grid(const PQGrid& g, std::size_t k, const char* who) {
    if (k >= g.p.size())
        throw InvalidParameter(std::string(who) + ": grid has only " +
                               std::to_string(g.p.size()) + " columns");
}

double dbl(std::size_t x) { return static_cast<double>(x); }

}  // namespace

cplx phi(int k, cplx u, const PQGrid& grid, const FunctionMode& mode) {
    need_grid(grid, static_cast<std::size_t>(k), "phi");
    cplx r = checked_div(1.0, f_eval(mode, u - grid.q[k]), "phi");
    for (int i = 0; i < k; ++i)
        r *= checked_div(f_eval(mode, u - grid.p[i]), f_eval(mode, u - grid.q[i]), "phi");
    return r;
}

cplx psi(int l, cplx v, const PQGrid& grid, const FunctionMode& mode) {
    need_grid(grid, static_cast<std::size_t>(l), "psi");
    cplx r = checked_div(1.0, f_eval(mode, v - grid.p[l]), "psi");
    for (int j = 0; j < l; ++j)
        r *= checked_div(f_eval(mode, v - grid.q[j]), f_eval(mode, v - grid.p[j]), "psi");
    return r;
}

cplx B_mu(const Signature& mu, cplx lambda, const std::vector<cplx>& us,
          const IrfParams& params) {
    const std::size_t M = mu.length();
    if (us.size() != M) throw InvalidParameter("B_mu: need one variable per part");
    if (M > 9) throw InvalidParameter("B_mu: at most 9 variables");
    if (M == 0) return 1.0;
    const cplx eta = params.eta();
    auto f = [&](cplx x) { return params.f(x); };
    const PQGrid grid = pq_grid(params);

    cplx pre = (M % 2 ? -1.0 : 1.0) * std::pow(f(2.0 * eta), static_cast<int>(M));
    for (std::size_t i = 0; i < M; ++i) pre = checked_div(pre, f(lambda + 2.0 * eta * dbl(i)), "B_mu");
    for (int x = 0; x <= mu.largest(); ++x)
        for (int j = 1; j <= mu.multiplicity(x); ++j) pre *= f(2.0 * eta) / f(2.0 * eta * double(j));

    std::vector<std::size_t> perm(M);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0.0;
    do {
        cplx t = 1.0;
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = i + 1; j < M; ++j) {
                const cplx d = us[perm[i]] - us[perm[j]];
                t *= checked_div(f(d - 2.0 * eta), f(d), "B_mu cross term");
            }
        for (std::size_t i = 0; i < M; ++i) {
            const int m = mu[i];
            const cplx u = us[perm[i]];
            t *= phi(m, u, grid, params.mode()) *
                 f(lambda + u - grid.q[m] + 2.0 * eta + 4.0 * eta * dbl(M - 1 - i) -
                   2.0 * eta * params.Lambda_sum(0, m));
        }
        total += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return pre * total;
}

cplx D_nu(const Signature& nu, cplx lambda, const std::vector<cplx>& vs,
          const IrfParams& params) {
    const std::size_t N = nu.length();
    const std::size_t n = vs.size();
    const int n0 = nu.multiplicity(0);
    const std::size_t K = N - static_cast<std::size_t>(n0);
    if (K > n) return 0.0;
    if (K > 6) throw InvalidParameter("D_nu: at most 6 nonzero parts");
    const cplx eta = params.eta();
    auto f = [&](cplx x) { return params.f(x); };
    const PQGrid grid = pq_grid(params);
    const cplx lt = lambda + 2.0 * eta * dbl(n);
    const cplx L0 = params.Lambda(0);

    cplx pre = std::pow(f(2.0 * eta), static_cast<int>(K));
    for (std::size_t i = 0; i < n; ++i) pre = checked_div(pre, f(lambda + 2.0 * eta * dbl(i)), "D_nu");
    for (std::size_t i = N; i < n + n0; ++i)
        pre *= checked_div(f(lambda + 2.0 * eta * (dbl(i) - L0)),
                           f(lambda + 2.0 * eta * (dbl(i) + n0 - L0)), "D_nu");
    for (int i = 1; i <= nu.largest(); ++i) {
        const int ni = nu.multiplicity(i);
        const int nlt = nu.count_below(i);
        for (int j = 0; j < ni; ++j) {
            const cplx den =
                f(lt + 2.0 * eta * (2.0 * nlt + ni + j - params.Lambda_sum(0, i + 1))) *
                f(lt + 2.0 * eta * (2.0 * nlt + 1 + j - params.Lambda_sum(0, i)));
            pre *= checked_div(f(2.0 * eta * (params.Lambda(i) - double(j))), den, "D_nu");
        }
    }

    // subsets I of size K (lexicographic via a selection mask)
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + K, true);
    cplx total = 0.0;
    do {
        std::vector<std::size_t> I, Ic;
        for (std::size_t j = 0; j < n; ++j) (mask[j] ? I : Ic).push_back(j);
        cplx t = 1.0;
        for (std::size_t i : I)
            t *= checked_div(f(lambda + vs[i] - grid.q[0] + 2.0 * eta * dbl(N)),
                             f(vs[i] - grid.q[0]), "D_nu");
        for (std::size_t j : Ic)
            t *= checked_div(f(vs[j] - grid.p[0] - 2.0 * eta * double(n0)), f(vs[j] - grid.p[0]),
                             "D_nu");
        for (std::size_t i : I)
            for (std::size_t j : Ic)
                t *= checked_div(f(vs[j] - vs[i] - 2.0 * eta), f(vs[j] - vs[i]), "D_nu");
        cplx s = 0.0;
        std::vector<std::size_t> perm = I;
        do {
            cplx tt = 1.0;
            for (std::size_t a = 0; a < K; ++a)
                for (std::size_t b = a + 1; b < K; ++b) {
                    const cplx d = vs[perm[a]] - vs[perm[b]];
                    tt *= checked_div(f(d + 2.0 * eta), f(d), "D_nu cross term");
                }
            for (std::size_t a = 0; a < K; ++a) {
                const int m = nu[a];
                const cplx v = vs[perm[a]];
                tt *= psi(m, v, grid, params.mode()) *
                      f(lt - v + grid.p[m] + 2.0 * eta + 4.0 * eta * dbl(N - 1 - a) -
                        2.0 * eta * params.Lambda_sum(0, m));
            }
            s += tt;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total += t * s;
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return pre * total;
}

cplx normalize(FunctionFamily, cplx value, cplx lambda, int count, const IrfParams& params) {
    for (int i = 0; i < count; ++i) value *= params.f(lambda + 2.0 * params.eta() * double(i));
    return value;
}

cplx c_mu(const Signature& mu, cplx lambda, const IrfParams& params) {
    if (params.mode().kind == FunctionMode::Kind::Rational)
        throw InvalidParameter("c_mu: trigonometric or elliptic mode only");
    const std::size_t M = mu.length();
    const cplx eta = params.eta();
    auto f = [&](cplx x) { return params.f(x); };
    cplx r = std::pow(f(2.0 * eta) / f_prime0(params.mode()), static_cast<int>(M));
    for (std::size_t i = 0; i < M; ++i) r = checked_div(r, f(lambda + 2.0 * eta * dbl(i)), "c_mu");
    for (int i = 0; i <= mu.largest(); ++i) {
        const int mi = mu.multiplicity(i);
        const int mlt = mu.count_below(i);
        for (int j = 0; j < mi; ++j) {
            r *= f(lambda + 2.0 * eta * (2.0 * mlt + mi + j - params.Lambda_sum(0, i + 1))) *
                 f(lambda + 2.0 * eta * (2.0 * mlt + 1 + j - params.Lambda_sum(0, i)));
            r = checked_div(r, f(2.0 * eta * (params.Lambda(i) - double(j))), "c_mu");
        }
    }
    return r;
}

cplx D_rho(const Signature& nu, cplx lambda, const IrfParams& params) {
    if (params.mode().kind != FunctionMode::Kind::Trigonometric)
        throw InvalidParameter("D_rho: trigonometric mode only");
    if (nu.empty()) return 1.0;
    if (nu.smallest() < 1) return 0.0;
    const std::size_t N = nu.length();
    const cplx eta = params.eta();
    auto f = [&](cplx x) { return params.f(x); };
    cplx r = (N % 2 ? -1.0 : 1.0) * std::pow(f(2.0 * eta) / kPi, static_cast<int>(N));
    r = checked_div(r, c_mu(nu, lambda, params), "D_rho");
    for (std::size_t i = 0; i < N; ++i)
        r *= checked_div(f(lambda - 2.0 * eta * params.Lambda(0) + 2.0 * eta * dbl(i + 1)),
                         f(lambda + 2.0 * eta * dbl(i)), "D_rho");
    return r;
}

cplx row_weight(const std::vector<int>& out_occ, const std::vector<int>& in_occ, cplx lambda,
                cplx w, const IrfParams& params, std::size_t start, bool stochastic) {
    const cplx eta = params.eta();
    int s = 1;
    cplx lm = lambda;
    cplx total = 1.0;
    for (std::size_t i = start; i < in_occ.size(); ++i) {
        const int k = in_occ[i];
        const int o = out_occ[i];
        const int d = o - k;
        PlaquetteKind kind;
        if (s == 1) {
            if (d == 1) {
                kind = PlaquetteKind::B;
                s = 0;
            } else if (d == 0) {
                kind = PlaquetteKind::D;
            } else {
                return 0.0;
            }
        } else {
            if (d == 0) {
                kind = PlaquetteKind::A;
            } else if (d == -1) {
                kind = PlaquetteKind::C;
                s = 1;
            } else {
                return 0.0;
            }
        }
        WeightContext ctx{lm, w, params.z(i), params.Lambda(i), eta, params.mode()};
        total *= weight(kind, k, ctx, stochastic);
        lm -= 2.0 * eta * (params.Lambda(i) - 2.0 * o);
    }
    return s == 0 ? total : cplx{0.0};
}

std::map<Signature, cplx> skew_B_lattice_all(const Signature& nu, cplx lambda,
                                             const std::vector<cplx>& ws, const IrfParams& params,
                                             bool stochastic, int max_part) {
    const std::size_t ncols = static_cast<std::size_t>(max_part) + 1;
    if (params.num_columns() < ncols)
        throw InvalidParameter("skew_B_lattice: needs " + std::to_string(ncols) + " columns");
    const std::size_t start = stochastic ? 1 : 0;
    if (stochastic && !nu.empty() && nu.smallest() < 1)
        throw InvalidParameter("skew_B_lattice: stochastic mode needs parts >= 1");
    const cplx eta = params.eta();
    const cplx shift = stochastic ? -2.0 * eta * params.Lambda(0) : cplx{0.0};

    std::map<Signature, cplx> cur{{nu, 1.0}};
    for (std::size_t j = ws.size(); j-- > 0;) {
        std::map<Signature, cplx> next;
        const cplx lam_row = lambda + 2.0 * eta * dbl(j) + shift;
        for (const auto& [sig, val] : cur) {
            const auto in_occ = sig.occupation(ncols);
            for (const Signature& k2 : interlacing_from(sig, static_cast<int>(start), max_part)) {
                const cplx wv =
                    row_weight(k2.occupation(ncols), in_occ, lam_row, ws[j], params, start, stochastic);
                if (wv != 0.0) next[k2] += val * wv;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

cplx skew_B_lattice(const Signature& kappa, const Signature& nu, cplx lambda,
                    const std::vector<cplx>& ws, const IrfParams& params, bool stochastic) {
    if (kappa.length() != nu.length() + ws.size())
        throw InvalidParameter("skew_B_lattice: length(kappa) must equal length(nu) + #variables");
    if (kappa.empty()) return 1.0;
    const auto all = skew_B_lattice_all(nu, lambda, ws, params, stochastic,
                                        std::max(kappa.largest(), std::max(nu.largest(), 1)));
    auto it = all.find(kappa);
    return it == all.end() ? cplx{0.0} : it->second;
}

cplx B_stoch_formula(const Signature& kappa, const Signature& nu, cplx lambda,
                     const std::vector<cplx>& us, const IrfParams& params) {
    const std::size_t k = us.size();
    const cplx eta = params.eta();
    auto f = [&](cplx x) { return params.f(x); };
    const cplx p0 = params.p(0), q0 = params.q(0);
    cplx r = (k % 2 ? -1.0 : 1.0) / std::pow(f(2.0 * eta), static_cast<int>(k));
    for (cplx u : us) r *= checked_div(f(u - q0), f(u - p0), "B_stoch_formula");
    const cplx dn = D_rho(nu, lambda + 2.0 * eta * dbl(k), params);
    r *= checked_div(D_rho(kappa, lambda, params), dn, "B_stoch_formula");
    const cplx b = skew_B_oracle(kappa, nu, lambda, us, params);
    return r * normalize(FunctionFamily::B, b, lambda, static_cast<int>(k), params);
}


cplx c_symmetrization(const std::vector<cplx>& ws, const std::vector<int>& ks, cplx lambda,
                      const IrfParams& params) {
    const std::size_t m = ks.size();
    const std::size_t p = ws.size();
    if (std::accumulate(ks.begin(), ks.end(), 0) != static_cast<int>(p)) return 0.0;
    if (p > 9) throw InvalidParameter("c_symmetrization: at most 9 variables");
    const cplx eta = params.eta();
    auto f = [&](cplx x) { return params.f(x); };
    const PQGrid grid = pq_grid(params);
    const cplx lh = lambda - 2.0 * eta * dbl(p);

    cplx pre = 1.0;
    for (std::size_t i = 0; i < p; ++i)
        pre *= f(lambda - 2.0 * eta * params.Lambda_sum(1, m + 1) + 2.0 * eta * dbl(i));
    int klt = 0;
    for (std::size_t i = 1; i <= m; ++i) {
        const int ki = ks[i - 1];
        for (int j = 0; j < ki; ++j) {
            const cplx den =
                f(lh + 2.0 * eta * (2.0 * klt + ki + j - params.Lambda_sum(1, i + 1))) *
                f(lh + 2.0 * eta * (2.0 * klt + 1 + j - params.Lambda_sum(1, i)));
            pre *= checked_div(f(2.0 * eta * (params.Lambda(i) - double(j))), den,
                               "c_symmetrization");
        }
        klt += ki;
    }
    // kappa = 1^{k_1} 2^{k_2} ... in decreasing order
    std::vector<int> kappa;
    for (std::size_t i = m; i >= 1; --i)
        for (int r = 0; r < ks[i - 1]; ++r) kappa.push_back(static_cast<int>(i));
    auto phit = [&](int k, cplx w) {
        cplx r = checked_div(1.0, f(w - grid.q[k]), "c_symmetrization");
        for (std::size_t j = k + 1; j <= m; ++j)
            r *= checked_div(f(w - grid.p[j]), f(w - grid.q[j]), "c_symmetrization");
        return r;
    };
    std::vector<std::size_t> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    cplx total = 0.0;
    do {
        cplx t = 1.0;
        for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = i + 1; j < p; ++j) {
                const cplx d = ws[perm[i]] - ws[perm[j]];
                t *= checked_div(f(d + 2.0 * eta), f(d), "c_symmetrization cross term");
            }
        for (std::size_t i = 0; i < p; ++i) {
            const int k = kappa[i];
            const cplx w = ws[perm[i]];
            t *= phit(k, w) * f(lh - w + grid.p[k] + 2.0 * eta + 4.0 * eta * dbl(p - 1 - i) -
                                2.0 * eta * params.Lambda_sum(1, k));
        }
        total += t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return (p % 2 ? -1.0 : 1.0) * pre * total;
}

}  // namespace irf
