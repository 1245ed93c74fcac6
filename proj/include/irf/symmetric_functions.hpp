#pragma once

#include <map>
#include <vector>

#include "irf/model_params.hpp"
#include "irf/signature.hpp"

namespace irf {

cplx phi(int k, cplx u, const PQGrid& grid, const FunctionMode& mode);
cplx psi(int l, cplx v, const PQGrid& grid, const FunctionMode& mode);

// Symmetrization formula for B_mu(lambda; u_1..u_M), M = length(mu) <= 9.
cplx B_mu(const Signature& mu, cplx lambda, const std::vector<cplx>& us,
          const IrfParams& params);

// Symmetrization formula for D_nu(lambda; v_1..v_n) = D_{nu/0^N}.
cplx D_nu(const Signature& nu, cplx lambda, const std::vector<cplx>& vs,
          const IrfParams& params);

enum class FunctionFamily { B, D };

// value * prod_{i<count} f(lambda + 2 eta i); the same factor for both families.
cplx normalize(FunctionFamily kind, cplx value, cplx lambda, int count, const IrfParams& params);

// Norm constant of the orthogonality relation.
cplx c_mu(const Signature& mu, cplx lambda, const IrfParams& params);

// D^norm_nu(lambda; rho), trigonometric mode only.
cplx D_rho(const Signature& nu, cplx lambda, const IrfParams& params);

// Sum over path configurations in the strip. Stochastic mode uses the
// stochastic weights, starts at column 1 and shifts lambda by -2 eta Lambda_0.
cplx skew_B_lattice(const Signature& kappa, const Signature& nu, cplx lambda,
                    const std::vector<cplx>& ws, const IrfParams& params, bool stochastic);

// All kappa reachable from nu with kappa_1 <= max_part, with their lattice values.
std::map<Signature, cplx> skew_B_lattice_all(const Signature& nu, cplx lambda,
                                             const std::vector<cplx>& ws, const IrfParams& params,
                                             bool stochastic, int max_part);

// Single-row transfer weight between occupation vectors over columns
// [start, ncols), path entering from the left and ending up.
cplx row_weight(const std::vector<int>& out_occ, const std::vector<int>& in_occ, cplx lambda,
                cplx w, const IrfParams& params, std::size_t start, bool stochastic);

// B^stoch_{kappa/nu}(lambda; u) through the rho-specialized D functions and B^norm.
cplx B_stoch_formula(const Signature& kappa, const Signature& nu, cplx lambda,
                     const std::vector<cplx>& us, const IrfParams& params);


// Closed form of c_matrix_element over the columns 1..m (m = ks.size()).
cplx c_symmetrization(const std::vector<cplx>& ws, const std::vector<int>& ks, cplx lambda,
                      const IrfParams& params);

}  // namespace irf
