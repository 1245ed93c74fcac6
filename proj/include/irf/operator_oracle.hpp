#pragma once

#include <map>
#include <vector>

#include "irf/model_params.hpp"
#include "irf/plaquette_weights.hpp"
#include "irf/signature.hpp"

namespace irf {

// Finite linear combination of pure tensors e_{m_0} ⊗ ... over the columns
// [first_column, first_column + ncols).
struct FinitaryVector {
    std::size_t first_column = 0;
    std::size_t ncols = 0;
    int cap = 8;
    std::map<std::vector<int>, cplx> terms;

    static FinitaryVector basis(const std::vector<int>& occ, std::size_t first_column = 0,
                                int cap = 8);
    static FinitaryVector of(const Signature& sig, std::size_t ncols, int cap = 8);

    cplx coefficient(const std::vector<int>& occ) const;
    cplx coefficient(const Signature& sig) const;
    bool zero() const { return terms.empty(); }
};

// Action of a(lambda,w), b, c or d on the tensor product of the columns of v,
// via the 2x2 matrix-product rule. Throws CapExceeded if an occupation would
// exceed v.cap.
FinitaryVector apply_operator(PlaquetteKind op, cplx lambda, cplx w, const FinitaryVector& v,
                              const IrfParams& params);

// Coefficient of E_nu in b(lambda,w_1) b(lambda+2eta,w_2) ... E_mu.
cplx skew_B_oracle(const Signature& nu, const Signature& mu, cplx lambda,
                   const std::vector<cplx>& ws, const IrfParams& params);

// Coefficient of E_mu in dbar(lambda,w_1) dbar(lambda+2eta,w_2) ... E_nu.
cplx skew_D_oracle(const Signature& nu, const Signature& mu, cplx lambda,
                   const std::vector<cplx>& ws, const IrfParams& params);

// <c(lambda,w_1) c(lambda-2eta,w_2) ... (e_{k_1} ⊗ ... ⊗ e_{k_m}), e_0 ⊗ ... ⊗ e_0>
// on the columns 1..m.
cplx c_matrix_element(const std::vector<cplx>& ws, const std::vector<int>& ks, cplx lambda,
                      const IrfParams& params);

}  // namespace irf
