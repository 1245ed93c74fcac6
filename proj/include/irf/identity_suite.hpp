#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "irf/model_params.hpp"
#include "irf/signature.hpp"

namespace irf {

struct TruncationInfo {
    int cap = 0;            // largest part admitted in the truncated sum
    int terms = 0;          // nonzero terms summed
    double tail_estimate = 0.0;
    std::string note;
};

struct CheckReport {
    std::string name;
    nlohmann::json parameters = nlohmann::json::object();
    cplx lhs{0.0};
    cplx rhs{0.0};
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    bool warning = false;  // passed, but the tail estimate exceeds tolerance/10
    std::optional<TruncationInfo> truncation;

    std::string status() const;
};

// residual = |lhs - rhs| / scale with scale = max(1, |rhs|) unless given.
CheckReport make_report(std::string name, nlohmann::json parameters, cplx lhs, cplx rhs,
                        double tolerance, std::optional<TruncationInfo> trunc = std::nullopt,
                        std::optional<double> scale = std::nullopt);

nlohmann::json to_json(const CheckReport& r);
CheckReport report_from_json(const nlohmann::json& j);

// Default tolerances by error source.
inline constexpr double kClosedFormTol = 1e-10;
inline constexpr double kSeriesTol = 1e-7;
inline constexpr double kQuadratureTol = 1e-6;

// The m! terms of the symmetrized sum, in lexicographic permutation order.
std::vector<cplx> symmetrization_terms(const std::vector<cplx>& vs, cplx beta,
                                       const FunctionMode& mode);

CheckReport check_symmetrization_lemma(int m, const std::vector<cplx>& vs, cplx beta,
                                       const FunctionMode& mode, double tol = kClosedFormTol);

// General skew-Cauchy identity; one u and one v gives the elementary version.
CheckReport check_skew_cauchy(const Signature& mu, const Signature& nu,
                              const std::vector<cplx>& us, const std::vector<cplx>& vs,
                              const IrfParams& params, int cap = 12, double tol = kSeriesTol);

enum class PieriVariant { Pieri2, Pieri, Cauchy };

struct PieriInputs {
    Signature sig;  // nu for Pieri2, mu for Pieri, unused for Cauchy
    std::vector<cplx> us;
    std::vector<cplx> vs;
    int cap = 12;
};

CheckReport check_pieri(PieriVariant variant, const PieriInputs& in, const IrfParams& params,
                        double tol = kSeriesTol);

CheckReport check_cauchy_rho(const std::vector<cplx>& us, const IrfParams& params, int cap = 12,
                             double tol = kSeriesTol);

CheckReport check_orthogonality(const Signature& mu, const Signature& nu, const IrfParams& params,
                                double tol = kQuadratureTol);

CheckReport check_D_integral(const Signature& nu, const std::vector<cplx>& vs,
                             const IrfParams& params, double tol = kQuadratureTol);

// Quadrature of the rho-specialized D against the closed form.
CheckReport check_D_rho_integral(const Signature& nu, const IrfParams& params,
                                 double tol = kQuadratureTol);

// Ts must be nondecreasing; Y[j][i] holds Y_i^{(j+1)} for i >= 1 (index 0 unused).
CheckReport check_nested_sum_lemma(const std::vector<int>& Ts,
                                   const std::vector<std::vector<double>>& Y,
                                   double tol = 1e-12);

// Randomized property checks (worst residual over the draws).
CheckReport check_stochasticity(const FunctionMode& mode, int draws, std::uint64_t seed,
                                double tol = kClosedFormTol);
CheckReport check_sine_identity(int draws, std::uint64_t seed, double tol = kClosedFormTol);
CheckReport check_oracle_B(int draws, std::uint64_t seed, double tol = 1e-8);
CheckReport check_oracle_D(int draws, std::uint64_t seed, double tol = 1e-8);
CheckReport check_c_lemma(int draws, std::uint64_t seed, double tol = 1e-8);
CheckReport check_stochastic_B(int draws, std::uint64_t seed, double tol = 1e-8);

// Sum over kappa of B^stoch_{kappa/nu}(lambda; u) with the monitored geometric tail.
CheckReport check_sum_to_one(const Signature& nu, const std::vector<cplx>& us,
                             const IrfParams& params, double tol = 1e-6);

struct SuiteOptions {
    std::optional<double> tolerance;  // overrides every default when set
    std::uint64_t seed = 0;
    int threads = 1;
};

// Runs the named suite ("identities", "weights", "oracle", "stochastic",
// "orthogonality") on a parameter pack; reports sorted by name.
std::vector<CheckReport> run_suite(const std::string& suite, const IrfParams& params,
                                   const SuiteOptions& opts = {});
std::vector<std::string> suite_names();

}  // namespace irf
