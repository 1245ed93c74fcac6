#pragma once

#include <string>

#include "irf/special_functions.hpp"

namespace irf {

// A and D keep the vertical occupation k, B raises it by one, C lowers it.
enum class PlaquetteKind { A, B, C, D };

const char* kind_name(PlaquetteKind k);

struct WeightContext {
    cplx lambda;  // filling of the top-left square
    cplx w;
    cplx z;
    cplx Lambda;
    cplx eta;
    FunctionMode mode;
};

// Coefficient of the operator table (stochastic = false) or the stochastic
// table (stochastic = true). k is the incoming vertical occupation.
cplx weight(PlaquetteKind kind, int k, const WeightContext& ctx, bool stochastic);

// Stochastic weights written with lambda entering f with the opposite sign
// (the form used for the introductory a/c table). Equal to weight(..., true).
cplx weight_stochastic_alt(PlaquetteKind kind, int k, const WeightContext& ctx);

// w-independent ratio between the stochastic and the plain weight.
cplx hat_ratio(PlaquetteKind kind, int k, cplx lambda, cplx Lambda, cplx eta,
               const FunctionMode& mode);

// Higher spin six vertex weights w(i1,j1;i2,j2) and L(i1,j1;i2,j2).
enum class Hs6vTable { Plain, Stochastic };
cplx hs6v_weight(Hs6vTable table, int i1, int j1, int i2, int j2, cplx q, cplx s, cplx xi,
                 cplx u);

// Factor c with lim_{lambda -> -i inf} weight(kind, k, ...) = c * w(...) for
// the matching plain pattern.
cplx hs6v_limit_factor(PlaquetteKind kind, int k, cplx q, cplx s);

// The six spin-1/2 plaquettes. Empty = a_0, Vertical = a_1, UpTurn = b_0
// (path from the left turns up), RightTurn = c_1 (path from below turns
// right), Horizontal = d_0, Cross = d_1.
enum class SpinHalf { Empty, Vertical, UpTurn, RightTurn, Horizontal, Cross };

const char* spin_half_name(SpinHalf s);
SpinHalf spin_half_of(PlaquetteKind kind, int k);

// Dynamic stochastic six vertex weights (Lambda = 1), q^{1/2} principal.
cplx dyn6v_weight(SpinHalf symbol, cplx lambda, cplx q, cplx xi, cplx u);

// Rational stochastic weights, 2 eta = 1.
double rational_weight(SpinHalf symbol, double lambda, double z, double w);

}  // namespace irf
