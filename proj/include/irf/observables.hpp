#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "irf/identity_suite.hpp"
#include "irf/model_params.hpp"
#include "irf/samplers.hpp"

namespace irf {

enum class ObsModel { Irf, Asep, Rational, Ssep };

const char* obs_model_name(ObsModel m);
// Accepts irf / dyn6v, asep, rational, ssep.
ObsModel parse_obs_model(const std::string& s);

struct ObservableSpec {
    std::vector<int> xs;  // x_1 >= x_2 >= ... >= x_n
    int N = 1;            // row index (IRF, rational)
    double t = 0.0;       // time (ASEP, SSEP)

    std::size_t n() const { return xs.size(); }
    void validate(ObsModel m) const;
};

// Model plus its parameters: IRF and rational read `params`, the exclusion
// processes read `exclusion`.
struct ObsSetup {
    ObsModel model = ObsModel::Irf;
    IrfParams params;
    ExclusionKind exclusion;

    static ObsSetup irf(IrfParams p) { return {ObsModel::Irf, std::move(p), {}}; }
    static ObsSetup rational(IrfParams p) { return {ObsModel::Rational, std::move(p), {}}; }
    static ObsSetup asep(double q, double alpha) {
        return {ObsModel::Asep, {}, ExclusionKind::asep(q, alpha)};
    }
    static ObsSetup ssep(double lambda_bar) {
        return {ObsModel::Ssep, {}, ExclusionKind::ssep(lambda_bar)};
    }
    void validate() const;
};

// O(x, N) at height h, lambda = params.lambda0().
cplx obs_O(int h, int x, int N, const IrfParams& params);
// Same value through q, alpha and the s_j.
cplx obs_O_six_vertex(int h, int x, int N, const IrfParams& params);
// q^{N-Lambda} + e^{2 pi i lambda} q^{2k} - q^k O and its factored form.
cplx obs_linear(int h, int k, int x, int N, const IrfParams& params);
cplx obs_linear_factored(int h, int k, int x, int N, const IrfParams& params);

cplx obs_O_rational(int h, int x, int N, cplx lambda);
// In terms of s_x; h = (s_x - x) / 2.
cplx obs_O_asep(long s, long x, double q, double alpha);
double obs_O_ssep(long s, long x, double lambda_bar);

// Bracketed product of the averaged expression for one configuration, without
// the Pochhammer normalization. `values` holds h(x_i, N) for IRF/rational and
// s_{x_i} for the exclusion processes.
cplx observable_product(const ObsSetup& setup, const ObservableSpec& spec,
                        std::span<const long> values);
// (e^{2 pi i lambda}; q)_n, (-1/alpha; q)_n or (-lambda)_n.
cplx observable_normalization(const ObsSetup& setup, std::size_t n);

struct ExactOptions {
    double tol = 1e-10;  // quadrature, relative to max(1, |value|)
    double residue_tol = 1e-8;
    int threads = 1;
};

struct ExactValue {
    cplx value;
    std::size_t nodes = 0;
    std::optional<cplx> residue;  // n = 1 residue sum when well conditioned
    std::string contour;          // description of the contours used
    std::string note;
};

// Contour integral for the model. For n = 1 the residue sum is computed too and
// an Error is thrown when the two disagree beyond residue_tol.
ExactValue exact_E(const ObsSetup& setup, const ObservableSpec& spec,
                   const ExactOptions& opts = {});

// Normalized average by exact enumeration of the quadrant (IRF, rational);
// complex weights allowed.
cplx enum_E(const ObsSetup& setup, const ObservableSpec& spec);

// E[prod_k (q^h(x_{k+1}, N) - q^k)] over the stochastic higher spin six vertex
// model, by enumeration and by the contour integral around the 1/u_k.
cplx six_vertex_moment_enum(const IrfParams& params, const ObservableSpec& spec);
ExactValue six_vertex_moment_integral(const IrfParams& params, const ObservableSpec& spec,
                                      const ExactOptions& opts = {});

// Left side of the all-x-equal moment identity, by enumeration.
cplx factorized_moment_enum(const IrfParams& params, int x, int N, int n);

struct McEstimate {
    cplx mean;
    double stderr_ = 0.0;
    std::size_t samples = 0;
};

// Normalized Monte Carlo average; trajectory i uses seed counter_hash(seed, i).
McEstimate mc_E(const ObsSetup& setup, const ObservableSpec& spec, std::size_t samples,
                std::uint64_t seed, int threads = 1);

// IRF / rational: enumeration at each lambda (replacing lambda0), pairwise
// agreement to tol. SSEP: lambdas are lambda_bar values, ASEP: alpha values,
// MC with agreement within 4 combined standard errors.
CheckReport lambda_independence_report(const ObsSetup& setup, const ObservableSpec& spec,
                                       const std::vector<cplx>& lambdas, std::size_t samples,
                                       std::uint64_t seed, double tol = 1e-9, int threads = 1);

// Positive root h of O = h (h + x + lambda_bar).
double ssep_height_from_O(double O, long x, double lambda_bar);

// E[O^m], m = 1..n, for the dynamic SSEP from usual-SSEP factorial moments
// E[prod_{k<m} (h - k)] (index m - 1) at a single x.
std::vector<double> ssep_O_moments(const std::vector<double>& factorial_moments, long x,
                                   double lambda_bar);

// Record {model, spec, method, value, stderr?}.
nlohmann::json observable_record(const ObsSetup& setup, const ObservableSpec& spec,
                                 const std::string& method, cplx value,
                                 std::optional<double> stderr_ = std::nullopt);

}  // namespace irf
