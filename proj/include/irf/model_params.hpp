#pragma once

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "irf/special_functions.hpp"

namespace irf {

struct Column {
    cplx z;
    cplx Lambda;
};

// Columns are indexed from 0; column 0 is the boundary column that the
// stochastic model drops. Rows are w_1, w_2, ... stored from index 0.
class IrfParams {
public:
    IrfParams() = default;
    IrfParams(FunctionMode mode, cplx eta, cplx lambda0, std::vector<Column> columns,
              std::vector<cplx> rows);

    const FunctionMode& mode() const { return mode_; }
    cplx eta() const { return eta_; }
    cplx lambda0() const { return lambda0_; }
    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<cplx>& rows() const { return rows_; }
    std::size_t num_columns() const { return columns_.size(); }

    cplx z(std::size_t j) const { return columns_.at(j).z; }
    cplx Lambda(std::size_t j) const { return columns_.at(j).Lambda; }
    // w_k for k >= 1
    cplx w(std::size_t k) const { return rows_.at(k - 1); }

    // Lambda_a + ... + Lambda_{b-1}
    cplx Lambda_sum(std::size_t a, std::size_t b) const;

    cplx p(std::size_t j) const { return z(j) + (1.0 - Lambda(j)) * eta_; }
    cplx q(std::size_t j) const { return z(j) + (1.0 + Lambda(j)) * eta_; }

    cplx f(cplx x) const { return f_eval(mode_, x); }

    IrfParams with_lambda0(cplx l) const;
    IrfParams with_rows(std::vector<cplx> rows) const;
    IrfParams with_columns(std::vector<Column> columns) const;

private:
    FunctionMode mode_;
    cplx eta_{0.04, 0.01};
    cplx lambda0_{0.0, 0.0};
    std::vector<Column> columns_;
    std::vector<cplx> rows_;
    std::vector<cplx> prefix_;  // prefix_[j] = Lambda_{[0,j)}
};

struct PQGrid {
    std::vector<cplx> p;
    std::vector<cplx> q;
};

PQGrid pq_grid(const IrfParams& params);
// Recovers (z_j, Lambda_j) from (p_j, q_j).
std::vector<Column> columns_from_grid(const PQGrid& grid, cplx eta);

struct ContourFamily {
    std::vector<Circle> gammas;  // gammas[0] = gamma_1 (outermost)
};

struct AdmissibilityDiagnostic {
    std::string message;
};

struct AdmissibilityOptions {
    double gap = -1.0;           // safety gap g; negative means |2 eta|
    double cover_margin = 0.02;  // added to the p-cluster radius for gamma_M
};

// Concentric circles around the p-centroid over the first `ncols` columns
// (all columns when ncols == 0).
std::variant<ContourFamily, AdmissibilityDiagnostic> check_admissible(
    const IrfParams& params, int M, std::size_t ncols = 0, const AdmissibilityOptions& opts = {});
// Returns an empty string when the family satisfies all three conditions.
std::string audit_contours(const IrfParams& params, const ContourFamily& family,
                           std::size_t ncols = 0);

struct SixVertexParams {
    cplx q;
    cplx alpha;
    std::vector<cplx> s;   // per column
    std::vector<cplx> xi;  // per column
    std::vector<cplx> u;   // per row (u[0] = u_1)
};

SixVertexParams to_six_vertex(const IrfParams& params);
// Inverse on principal branches; needs the mode and Lambda_j are recovered from s_j.
IrfParams from_six_vertex(const SixVertexParams& sv, const FunctionMode& mode);

// Preset names: trig-admissible, trig-wide, dyn6v-positive, rational-positive.
IrfParams make_preset(const std::string& name);
std::vector<std::string> preset_names();
// Invariant checks run on every preset at load; throws on violation.
void validate_preset(const std::string& name, const IrfParams& params);

IrfParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const IrfParams& params);
IrfParams load_params_file(const std::string& path);

}  // namespace irf
