#include "irf/plaquette_weights.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "irf/errors.hpp"

namespace irf {

const char* kind_name(PlaquetteKind k) {
    switch (k) {
        case PlaquetteKind::A: return "a";
        case PlaquetteKind::B: return "b";
        case PlaquetteKind::C: return "c";
        case PlaquetteKind::D: return "d";
    }
    return "?";
}

const char* spin_half_name(SpinHalf s) {
    switch (s) {
        case SpinHalf::Empty: return "empty";
        case SpinHalf::Vertical: return "vertical";
        case SpinHalf::UpTurn: return "up-turn";
        case SpinHalf::RightTurn: return "right-turn";
        case SpinHalf::Horizontal: return "horizontal";
        case SpinHalf::Cross: return "cross";
    }
    return "?";
}

SpinHalf spin_half_of(PlaquetteKind kind, int k) {
    switch (kind) {
        case PlaquetteKind::A:
            if (k == 0) return SpinHalf::Empty;
            if (k == 1) return SpinHalf::Vertical;
            break;
        case PlaquetteKind::B:
            if (k == 0) return SpinHalf::UpTurn;
            break;
        case PlaquetteKind::C:
            if (k == 1) return SpinHalf::RightTurn;
            break;
        case PlaquetteKind::D:
            if (k == 0) return SpinHalf::Horizontal;
            if (k == 1) return SpinHalf::Cross;
            break;
    }
    throw InvalidParameter(std::string("no spin-1/2 plaquette for ") + kind_name(kind) +
                           " with k=" + std::to_string(k));
}

namespace {

// num/den with the singular-denominator guard
cplx ratio(cplx num, cplx den, const char* factor) {
    if (std::abs(den) < 1e-13 * std::max(1.0, std::abs(num)))
        throw SingularError(std::string("vanishing denominator in ") + factor);
    return num / den;
}

void check_k(PlaquetteKind kind, int k) {
    if (k < 0) throw InvalidParameter("weight: occupation must be nonnegative");
    if (kind == PlaquetteKind::C && k < 1)
        throw InvalidParameter("weight: kind c needs k >= 1");
}

}  // namespace

cplx weight(PlaquetteKind kind, int k, const WeightContext& ctx, bool stochastic) {
    check_k(kind, k);
    auto f = [&](cplx x) { return f_eval(ctx.mode, x); };
    const cplx lam = ctx.lambda, eta = ctx.eta, L = ctx.Lambda;
    const cplx x = ctx.z - ctx.w;
    const double kk = k;
    const cplx den = f(x + (L + 1.0) * eta);
    if (!stochastic) {
        switch (kind) {
            case PlaquetteKind::A:
                return ratio(f(x + (L + 1.0 - 2.0 * kk) * eta), den, "a: f(z-w+(L+1)eta)") *
                       ratio(f(lam + 2.0 * kk * eta), f(lam), "a: f(lambda)");
            case PlaquetteKind::B:
                return -ratio(f(-lam + x + (L - 1.0 - 2.0 * kk) * eta), den,
                              "b: f(z-w+(L+1)eta)") *
                       ratio(f(2.0 * eta), f(lam), "b: f(lambda)");
            case PlaquetteKind::C:
                return -ratio(f(-lam - x + (L + 1.0 - 2.0 * kk) * eta), den,
                              "c: f(z-w+(L+1)eta)") *
                       ratio(f(2.0 * (L + 1.0 - kk) * eta), f(lam), "c: f(lambda)") *
                       ratio(f(2.0 * kk * eta), f(2.0 * eta), "c: f(2eta)");
            case PlaquetteKind::D:
                return ratio(f(x + (-L + 1.0 + 2.0 * kk) * eta), den, "d: f(z-w+(L+1)eta)") *
                       ratio(f(lam - 2.0 * (L - kk) * eta), f(lam), "d: f(lambda)");
        }
    }
    switch (kind) {
        case PlaquetteKind::A:
            return ratio(f(x + (L + 1.0 - 2.0 * kk) * eta), den, "a^stoch: f(z-w+(L+1)eta)") *
                   ratio(f(-lam + 2.0 * (L + 1.0 - kk) * eta),
                         f(-lam + 2.0 * (L + 1.0 - 2.0 * kk) * eta),
                         "a^stoch: f(-lambda+2(L+1-2k)eta)");
        case PlaquetteKind::B:
            return ratio(f(-lam + x + (L - 1.0 - 2.0 * kk) * eta), den,
                         "b^stoch: f(z-w+(L+1)eta)") *
                   ratio(f(2.0 * (kk - L) * eta), f(lam - 2.0 * (L - 1.0 - 2.0 * kk) * eta),
                         "b^stoch: f(lambda-2(L-1-2k)eta)");
        case PlaquetteKind::C:
            return ratio(f(-lam - x + (L + 1.0 - 2.0 * kk) * eta), den,
                         "c^stoch: f(z-w+(L+1)eta)") *
                   ratio(f(2.0 * kk * eta), f(-lam + 2.0 * (L + 1.0 - 2.0 * kk) * eta),
                         "c^stoch: f(-lambda+2(L+1-2k)eta)");
        case PlaquetteKind::D:
            return ratio(f(x + (-L + 1.0 + 2.0 * kk) * eta), den, "d^stoch: f(z-w+(L+1)eta)") *
                   ratio(f(lam + 2.0 * (kk + 1.0) * eta),
                         f(lam - 2.0 * (L - 1.0 - 2.0 * kk) * eta),
                         "d^stoch: f(lambda-2(L-1-2k)eta)");
    }
    return 0.0;
}

cplx weight_stochastic_alt(PlaquetteKind kind, int k, const WeightContext& ctx) {
    check_k(kind, k);
    auto f = [&](cplx x) { return f_eval(ctx.mode, x); };
    const cplx lam = ctx.lambda, eta = ctx.eta, L = ctx.Lambda;
    const cplx x = ctx.z - ctx.w;
    const double kk = k;
    const cplx den = f(x + (L + 1.0) * eta);
    switch (kind) {
        case PlaquetteKind::A:
            return ratio(f(x + (L + 1.0 - 2.0 * kk) * eta), den, "a^stoch: f(z-w+(L+1)eta)") *
                   ratio(f(lam - 2.0 * (L + 1.0 - kk) * eta),
                         f(lam - 2.0 * (L + 1.0 - 2.0 * kk) * eta),
                         "a^stoch: f(lambda-2(L+1-2k)eta)");
        case PlaquetteKind::C:
            return ratio(f(lam + x - (L + 1.0 - 2.0 * kk) * eta), den,
                         "c^stoch: f(z-w+(L+1)eta)") *
                   ratio(f(2.0 * kk * eta), f(lam - 2.0 * (L + 1.0 - 2.0 * kk) * eta),
                         "c^stoch: f(lambda-2(L+1-2k)eta)");
        case PlaquetteKind::B:
        case PlaquetteKind::D:
            return weight(kind, k, ctx, true);
    }
    return 0.0;
}

cplx hat_ratio(PlaquetteKind kind, int k, cplx lambda, cplx Lambda, cplx eta,
               const FunctionMode& mode) {
    check_k(kind, k);
    auto f = [&](cplx x) { return f_eval(mode, x); };
    const cplx lam = lambda, L = Lambda;
    const double kk = k;
    switch (kind) {
        case PlaquetteKind::A:
            return ratio(f(lam), f(lam - 2.0 * (L + 1.0 - 2.0 * kk) * eta), "a-hat") *
                   ratio(f(lam - 2.0 * (L + 1.0 - kk) * eta), f(lam + 2.0 * kk * eta), "a-hat");
        case PlaquetteKind::B:
            return ratio(f(lam), f(lam - 2.0 * (L - 1.0 - 2.0 * kk) * eta), "b-hat") *
                   ratio(f(2.0 * (L - kk) * eta), f(2.0 * eta), "b-hat");
        case PlaquetteKind::C:
            return ratio(f(lam), f(lam - 2.0 * (L + 1.0 - 2.0 * kk) * eta), "c-hat") *
                   ratio(f(2.0 * eta), f(2.0 * (L + 1.0 - kk) * eta), "c-hat");
        case PlaquetteKind::D:
            return ratio(f(lam), f(lam - 2.0 * (L - 1.0 - 2.0 * kk) * eta), "d-hat") *
                   ratio(f(lam + 2.0 * (kk + 1.0) * eta), f(lam - 2.0 * (L - kk) * eta), "d-hat");
    }
    return 0.0;
}

cplx hs6v_weight(Hs6vTable table, int i1, int j1, int i2, int j2, cplx q, cplx s, cplx xi,
                 cplx u) {
    const bool legal = i1 >= 0 && i2 >= 0 && (j1 == 0 || j1 == 1) && (j2 == 0 || j2 == 1) &&
                       i1 + j1 == i2 + j2;
    if (!legal)
        throw InvalidParameter("hs6v_weight: illegal pattern (" + std::to_string(i1) + "," +
                               std::to_string(j1) + ";" + std::to_string(i2) + "," +
                               std::to_string(j2) + ")");
    const int k = i1;
    const cplx xu = xi * u;
    const cplx den = 1.0 - s * xu;
    const cplx qk = std::pow(q, k);
    const bool st = table == Hs6vTable::Stochastic;
    if (j1 == 0 && j2 == 0) return ratio(1.0 - s * qk * xu, den, "1-s xi u");
    if (j1 == 1 && j2 == 0)
        return st ? ratio(1.0 - s * s * qk, den, "1-s xi u")
                  : ratio(1.0 - qk * q, den, "1-s xi u");
    if (j1 == 0 && j2 == 1)
        return st ? ratio(-s * xu + s * qk * xu, den, "1-s xi u")
                  : ratio((1.0 - s * s * qk / q) * xu, den, "1-s xi u");
    return st ? ratio(-s * xu + s * s * qk, den, "1-s xi u") : ratio(xu - s * qk, den, "1-s xi u");
}

cplx hs6v_limit_factor(PlaquetteKind kind, int k, cplx q_half, cplx s) {
    const cplx q = q_half * q_half;
    const cplx qk = std::pow(q, k);
    switch (kind) {
        case PlaquetteKind::A: return 1.0 / qk;
        case PlaquetteKind::B:
            return (q - 1.0) / (std::pow(q_half, k + 2) * (1.0 - qk * q));
        case PlaquetteKind::C:
            return (1.0 - qk) / (s * std::pow(q_half, 3 * (k - 1)) * (1.0 - q));
        case PlaquetteKind::D: return -1.0 / (s * qk);
    }
    return 0.0;
}

cplx dyn6v_weight(SpinHalf symbol, cplx lambda, cplx q, cplx xi, cplx u) {
    const cplx qh = std::sqrt(q);
    const cplx xu = xi * u;
    const cplx e = std::exp(2.0 * kPi * kI * lambda);
    const cplx den = 1.0 - xu / qh;
    switch (symbol) {
        case SpinHalf::Empty:
        case SpinHalf::Cross: return 1.0;
        case SpinHalf::Vertical:
            return ratio(1.0 - qh * xu, den, "1-q^{-1/2} xi u") *
                   ratio(1.0 / q - e, 1.0 - e, "1-e^{2 pi i lambda}");
        case SpinHalf::UpTurn:
            return ratio(1.0 - 1.0 / q, den, "1-q^{-1/2} xi u") *
                   ratio(qh * xu - e, 1.0 - e, "1-e^{2 pi i lambda}");
        case SpinHalf::RightTurn:
            return ratio((qh - 1.0 / qh) * xu, den, "1-q^{-1/2} xi u") *
                   ratio(1.0 / (qh * xu) - e, 1.0 - e, "1-e^{2 pi i lambda}");
        case SpinHalf::Horizontal:
            return ratio(1.0 / q - xu / qh, den, "1-q^{-1/2} xi u") *
                   ratio(q - e, 1.0 - e, "1-e^{2 pi i lambda}");
    }
    return 0.0;
}

double rational_weight(SpinHalf symbol, double lambda, double z, double w) {
    const double x = z - w;
    const double den = lambda * (x + 1.0);
    auto r = [&](double num) {
        if (std::abs(den) < 1e-13 * std::max(1.0, std::abs(num)))
            throw SingularError("vanishing denominator lambda(z-w+1) in rational weight");
        return num / den;
    };
    switch (symbol) {
        case SpinHalf::Empty:
        case SpinHalf::Cross: return 1.0;
        case SpinHalf::Vertical: return r((lambda - 1.0) * x);
        case SpinHalf::UpTurn: return r(lambda - x);
        case SpinHalf::RightTurn: return r(lambda + x);
        case SpinHalf::Horizontal: return r((lambda + 1.0) * x);
    }
    return 0.0;
}

}  // namespace irf
