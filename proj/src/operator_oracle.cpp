#include "irf/operator_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "irf/errors.hpp"

namespace irf {

FinitaryVector FinitaryVector::basis(const std::vector<int>& occ, std::size_t first_column,
                                     int cap) {
    FinitaryVector v;
    v.first_column = first_column;
    v.ncols = occ.size();
    v.cap = cap;
    v.terms[occ] = 1.0;
    return v;
}

FinitaryVector FinitaryVector::of(const Signature& sig, std::size_t ncols, int cap) {
    return basis(sig.occupation(ncols), 0, cap);
}

cplx FinitaryVector::coefficient(const std::vector<int>& occ) const {
    auto it = terms.find(occ);
    return it == terms.end() ? cplx{0.0} : it->second;
}

cplx FinitaryVector::coefficient(const Signature& sig) const {
    if (first_column != 0) throw InvalidParameter("coefficient by signature needs column 0 start");
    if (sig.largest() >= static_cast<int>(ncols)) return 0.0;
    return coefficient(sig.occupation(ncols));
}

FinitaryVector apply_operator(PlaquetteKind op, cplx lambda, cplx w, const FinitaryVector& v,
                              const IrfParams& params) {
    if (v.first_column + v.ncols > params.num_columns())
        throw InvalidParameter("apply_operator: vector spans columns beyond the parameters");
    // horizontal arrow entering from the left / leaving on the right
    const int s_in = (op == PlaquetteKind::B || op == PlaquetteKind::D) ? 1 : 0;
    const int s_out = (op == PlaquetteKind::C || op == PlaquetteKind::D) ? 1 : 0;
    const cplx eta = params.eta();

    FinitaryVector out;
    out.first_column = v.first_column;
    out.ncols = v.ncols;
    out.cap = v.cap;

    std::vector<int> next(v.ncols);
    for (const auto& [occ, c0] : v.terms) {
        std::function<void(std::size_t, int, cplx, cplx)> rec = [&](std::size_t i, int s, cplx lm,
                                                                     cplx acc) {
            if (i == v.ncols) {
                if (s == s_out) out.terms[next] += acc;
                return;
            }
            const std::size_t col = v.first_column + i;
            const int k = occ[i];
            WeightContext ctx{lm, w, params.z(col), params.Lambda(col), eta, params.mode()};
            auto step = [&](PlaquetteKind kind, int ns, int nk) {
                if (nk < 0) return;
                if (nk > v.cap)
                    throw CapExceeded("occupation cap " + std::to_string(v.cap) +
                                      " exceeded at column " + std::to_string(col));
                const cplx cf = weight(kind, k, ctx, false);
                if (cf == 0.0) return;
                next[i] = nk;
                rec(i + 1, ns, lm - 2.0 * eta * (params.Lambda(col) - 2.0 * nk), acc * cf);
            };
            if (s == 0) {
                step(PlaquetteKind::A, 0, k);
                step(PlaquetteKind::C, 1, k - 1);
            } else {
                step(PlaquetteKind::B, 0, k + 1);
                step(PlaquetteKind::D, 1, k);
            }
        };
        rec(0, s_in, lambda, c0);
    }
    double mx = 0.0;
    for (const auto& [k, c] : out.terms) mx = std::max(mx, std::abs(c));
    std::erase_if(out.terms, [&](const auto& kv) { return std::abs(kv.second) < 1e-15 * mx; });
    return out;
}

namespace {

void require_columns(const IrfParams& params, std::size_t n, const char* who) {
    if (params.num_columns() < n)
        throw InvalidParameter(std::string(who) + ": needs " + std::to_string(n) +
                               " columns, parameters have " +
                               std::to_string(params.num_columns()));
}

bool same(cplx a, cplx b) {
    return std::abs(a - b) <= 1e-10 * std::max({1.0, std::abs(a), std::abs(b)});
}

cplx B_at_depth(const Signature& nu, const Signature& mu, cplx lambda,
                const std::vector<cplx>& ws, const IrfParams& params, std::size_t ncols) {
    FinitaryVector v = FinitaryVector::of(mu, ncols);
    const cplx eta = params.eta();
    for (std::size_t j = ws.size(); j-- > 0;) {
        v = apply_operator(PlaquetteKind::B, lambda + 2.0 * eta * static_cast<double>(j), ws[j], v,
                           params);
    }
    return v.coefficient(nu);
}

FinitaryVector dbar(cplx lambda, cplx w, const FinitaryVector& v, const IrfParams& params) {
    FinitaryVector out = apply_operator(PlaquetteKind::D, lambda, w, v, params);
    if (v.terms.empty()) return out;
    const auto& occ = v.terms.begin()->first;
    const int ell = std::accumulate(occ.begin(), occ.end(), 0);
    const cplx eta = params.eta();
    cplx norm = 1.0;
    for (std::size_t i = 0; i < v.ncols; ++i) {
        const cplx x = params.z(i) - w;
        norm *= params.f(x + (params.Lambda(i) + 1.0) * eta) /
                params.f(x + (1.0 - params.Lambda(i)) * eta);
    }
    const cplx den = params.f(lambda - 2.0 * eta * (params.Lambda_sum(0, v.ncols) - 2.0 * ell));
    if (std::abs(den) < 1e-13) throw SingularError("d normalization: vanishing f(lambda - ...)");
    norm /= den;
    for (auto& [k, c] : out.terms) c *= norm;
    return out;
}

cplx D_at_depth(const Signature& nu, const Signature& mu, cplx lambda,
                const std::vector<cplx>& ws, const IrfParams& params, std::size_t ncols) {
    FinitaryVector v = FinitaryVector::of(nu, ncols);
    const cplx eta = params.eta();
    for (std::size_t j = ws.size(); j-- > 0;)
        v = dbar(lambda + 2.0 * eta * static_cast<double>(j), ws[j], v, params);
    return v.coefficient(mu);
}

}  // namespace

cplx skew_B_oracle(const Signature& nu, const Signature& mu, cplx lambda,
                   const std::vector<cplx>& ws, const IrfParams& params) {
    if (nu.length() != mu.length() + ws.size())
        throw InvalidParameter("skew_B_oracle: length(nu) must equal length(mu) + #variables");
    if (nu.size() < mu.size()) return 0.0;
    const std::size_t N = static_cast<std::size_t>(std::max(nu.largest(), mu.largest())) + 1;
    require_columns(params, N + 1, "skew_B_oracle");
    const cplx a = B_at_depth(nu, mu, lambda, ws, params, N);
    const cplx b = B_at_depth(nu, mu, lambda, ws, params, N + 1);
    if (!same(a, b))
        throw StabilizationError("skew_B_oracle: value depends on the number of columns");
    return a;
}

cplx skew_D_oracle(const Signature& nu, const Signature& mu, cplx lambda,
                   const std::vector<cplx>& ws, const IrfParams& params) {
    if (nu.length() != mu.length())
        throw InvalidParameter("skew_D_oracle: length(nu) must equal length(mu)");
    const std::size_t m = static_cast<std::size_t>(std::max(nu.largest(), mu.largest())) + 1;
    require_columns(params, m + 2, "skew_D_oracle");
    const cplx a = D_at_depth(nu, mu, lambda, ws, params, m);
    const cplx b = D_at_depth(nu, mu, lambda, ws, params, m + 2);
    if (!same(a, b))
        throw StabilizationError("skew_D_oracle: no stabilization between depths " +
                                 std::to_string(m) + " and " + std::to_string(m + 2));
    return a;
}

cplx c_matrix_element(const std::vector<cplx>& ws, const std::vector<int>& ks, cplx lambda,
                      const IrfParams& params) {
    const int total = std::accumulate(ks.begin(), ks.end(), 0);
    if (total != static_cast<int>(ws.size())) return 0.0;
    require_columns(params, ks.size() + 1, "c_matrix_element");
    FinitaryVector v = FinitaryVector::basis(ks, 1, std::max(8, total));
    const cplx eta = params.eta();
    for (std::size_t j = ws.size(); j-- > 0;)
        v = apply_operator(PlaquetteKind::C, lambda - 2.0 * eta * static_cast<double>(j), ws[j], v,
                           params);
    return v.coefficient(std::vector<int>(ks.size(), 0));
}

}  // namespace irf
