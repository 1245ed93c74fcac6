#include "irf/model_params.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "irf/errors.hpp"
#include "irf/rng.hpp"

namespace irf {

IrfParams::IrfParams(FunctionMode mode, cplx eta, cplx lambda0, std::vector<Column> columns,
                     std::vector<cplx> rows)
    : mode_(mode), eta_(eta), lambda0_(lambda0), columns_(std::move(columns)),
      rows_(std::move(rows)) {
    mode_.validate();
    prefix_.assign(columns_.size() + 1, cplx{0.0});
    for (std::size_t j = 0; j < columns_.size(); ++j) prefix_[j + 1] = prefix_[j] + columns_[j].Lambda;
}

cplx IrfParams::Lambda_sum(std::size_t a, std::size_t b) const {
    if (b <= a) return 0.0;
    if (b > columns_.size())
        throw InvalidParameter("Lambda_sum: column range [" + std::to_string(a) + "," +
                               std::to_string(b) + ") exceeds " +
                               std::to_string(columns_.size()) + " columns");
    return prefix_[b] - prefix_[a];
}

IrfParams IrfParams::with_lambda0(cplx l) const {
    return IrfParams(mode_, eta_, l, columns_, rows_);
}

IrfParams IrfParams::with_rows(std::vector<cplx> rows) const {
    return IrfParams(mode_, eta_, lambda0_, columns_, std::move(rows));
}

IrfParams IrfParams::with_columns(std::vector<Column> columns) const {
    return IrfParams(mode_, eta_, lambda0_, std::move(columns), rows_);
}

PQGrid pq_grid(const IrfParams& params) {
    PQGrid g;
    for (std::size_t j = 0; j < params.num_columns(); ++j) {
        g.p.push_back(params.p(j));
        g.q.push_back(params.q(j));
    }
    return g;
}

std::vector<Column> columns_from_grid(const PQGrid& grid, cplx eta) {
    std::vector<Column> out;
    for (std::size_t j = 0; j < grid.p.size(); ++j) {
        const cplx Lambda = (grid.q[j] - grid.p[j]) / (2.0 * eta);
        const cplx z = 0.5 * (grid.p[j] + grid.q[j]) - eta;
        out.push_back({z, Lambda});
    }
    return out;
}

namespace {

std::size_t used_columns(const IrfParams& params, std::size_t ncols) {
    if (ncols == 0 || ncols > params.num_columns()) return params.num_columns();
    return ncols;
}

std::string fmt_c(cplx z) {
    std::ostringstream os;
    os.precision(6);
    os << "(" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i)";
    return os.str();
}

}  // namespace

std::variant<ContourFamily, AdmissibilityDiagnostic> check_admissible(
    const IrfParams& params, int M, std::size_t ncols, const AdmissibilityOptions& opts) {
    if (M < 1) throw InvalidParameter("check_admissible: M must be >= 1");
    const std::size_t n = used_columns(params, ncols);
    if (n == 0) return AdmissibilityDiagnostic{"no columns"};

    cplx c = 0.0;
    for (std::size_t j = 0; j < n; ++j) c += params.p(j);
    c /= static_cast<double>(n);
    double spread = 0.0;
    for (std::size_t j = 0; j < n; ++j) spread = std::max(spread, std::abs(params.p(j) - c));

    const double step = std::abs(2.0 * params.eta());
    const double gap = opts.gap < 0 ? step : opts.gap;
    ContourFamily fam;
    fam.gammas.resize(M);
    double r = spread + opts.cover_margin;
    for (int i = M - 1; i >= 0; --i) {
        fam.gammas[i] = Circle{c, r};
        r += step + gap;
    }
    std::string why = audit_contours(params, fam, n);
    if (!why.empty()) return AdmissibilityDiagnostic{why};
    return fam;
}

std::string audit_contours(const IrfParams& params, const ContourFamily& family,
                           std::size_t ncols) {
    const std::size_t n = used_columns(params, ncols);
    const auto& g = family.gammas;
    if (g.empty()) return "empty contour family";
    const Circle& inner = g.back();
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(params.p(j) - inner.center) >= inner.radius)
            return "p_" + std::to_string(j) + "=" + fmt_c(params.p(j)) + " outside gamma_" +
                   std::to_string(g.size());
    }
    const double step = std::abs(2.0 * params.eta());
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        // gamma_{i+1} + 2 eta must lie strictly inside gamma_i
        const double need = std::abs(g[i + 1].center + 2.0 * params.eta() - g[i].center) +
                            g[i + 1].radius;
        if (need >= g[i].radius || g[i].radius - g[i + 1].radius < step)
            return "gamma_" + std::to_string(i + 2) + "+2eta not inside gamma_" +
                   std::to_string(i + 1);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(params.q(j) - g[i].center) <= g[i].radius)
                return "q inside gamma_" + std::to_string(i + 1) + ": q_" + std::to_string(j) +
                       "=" + fmt_c(params.q(j));
        }
    }
    return {};
}

SixVertexParams to_six_vertex(const IrfParams& params) {
    const cplx eta = params.eta();
    SixVertexParams sv;
    sv.q = std::exp(-4.0 * kPi * kI * eta);
    sv.alpha = -std::exp(-2.0 * kPi * kI * params.lambda0());
    for (std::size_t j = 0; j < params.num_columns(); ++j) {
        sv.s.push_back(std::exp(2.0 * kPi * kI * eta * params.Lambda(j)));
        sv.xi.push_back(std::exp(2.0 * kPi * kI * params.z(j)));
    }
    for (cplx w : params.rows()) sv.u.push_back(std::exp(2.0 * kPi * kI * (eta - w)));
    return sv;
}

IrfParams from_six_vertex(const SixVertexParams& sv, const FunctionMode& mode) {
    const cplx two_pi_i = 2.0 * kPi * kI;
    const cplx eta = -std::log(sv.q) / (2.0 * two_pi_i);
    const cplx lambda0 = -std::log(-sv.alpha) / two_pi_i;
    std::vector<Column> cols;
    for (std::size_t j = 0; j < sv.s.size(); ++j)
        cols.push_back({std::log(sv.xi[j]) / two_pi_i, std::log(sv.s[j]) / (two_pi_i * eta)});
    std::vector<cplx> rows;
    for (cplx u : sv.u) rows.push_back(eta - std::log(u) / two_pi_i);
    return IrfParams(mode, eta, lambda0, std::move(cols), std::move(rows));
}

namespace {

IrfParams trig_cluster(double Lambda_center, std::uint64_t seed) {
    CounterRng rng(seed, 1);
    const cplx eta{0.04, 0.01};
    std::vector<Column> cols;
    for (int j = 0; j < 24; ++j) {
        const cplx z{0.1 + rng.uniform(-0.01, 0.01), rng.uniform(-0.01, 0.01)};
        cols.push_back({z, Lambda_center + rng.uniform(-0.05, 0.05)});
    }
    cplx pc = 0.0;
    for (const auto& c : cols) pc += c.z + (1.0 - c.Lambda) * eta;
    pc /= static_cast<double>(cols.size());
    std::vector<cplx> rows;
    for (int k = 0; k < 8; ++k)
        rows.push_back(pc + cplx{rng.uniform(-0.005, 0.005), rng.uniform(-0.005, 0.005)});
    return IrfParams(FunctionMode::trigonometric(), eta, {0.37, 0.21}, std::move(cols),
                     std::move(rows));
}

IrfParams dyn6v_positive() {
    CounterRng rng(0x6d76ULL, 1);
    // q = e^{-4 pi i eta} = 1/2
    const cplx eta = kI * std::log(0.5) / (4.0 * kPi);
    std::vector<Column> cols;
    double zeta_mean = 0.0;
    for (int j = 0; j < 9; ++j) {
        const double zeta = 0.01 * rng.uniform();
        zeta_mean += zeta;
        cols.push_back({kI * zeta, 1.0});
    }
    zeta_mean /= 9.0;
    // xi*u = sqrt(2) e^{2 pi (omega - zeta)}; centre it at 3
    const double base = std::log(3.0 / std::sqrt(2.0)) / (2.0 * kPi);
    std::vector<cplx> rows;
    for (int k = 0; k < 8; ++k) rows.push_back(kI * (zeta_mean + base + 0.01 * (rng.uniform() - 0.5)));
    return IrfParams(FunctionMode::trigonometric(), eta, {0.5, 0.0}, std::move(cols),
                     std::move(rows));
}

IrfParams rational_positive() {
    CounterRng rng(0x7261ULL, 1);
    std::vector<Column> cols;
    for (int j = 0; j < 9; ++j) cols.push_back({1.0 + 0.3 * rng.uniform(), 1.0});
    std::vector<cplx> rows;
    for (int k = 0; k < 8; ++k) rows.push_back(0.2 * rng.uniform());
    return IrfParams(FunctionMode::rational(), 0.5, -100.0, std::move(cols), std::move(rows));
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"trig-admissible", "trig-wide", "dyn6v-positive", "rational-positive"};
}

IrfParams make_preset(const std::string& name) {
    IrfParams p;
    if (name == "trig-admissible")
        p = trig_cluster(1.2, 0x7461ULL);
    else if (name == "trig-wide")
        p = trig_cluster(6.0, 0x7461ULL);
    else if (name == "dyn6v-positive")
        p = dyn6v_positive();
    else if (name == "rational-positive")
        p = rational_positive();
    else
        throw InvalidParameter("unknown preset '" + name + "'");
    validate_preset(name, p);
    return p;
}

void validate_preset(const std::string& name, const IrfParams& params) {
    auto fail = [&](const std::string& why) {
        throw InvalidParameter("preset '" + name + "' failed validation: " + why);
    };
    const PQGrid g = pq_grid(params);
    const auto back = columns_from_grid(g, params.eta());
    for (std::size_t j = 0; j < back.size(); ++j) {
        if (std::abs(back[j].z - params.z(j)) > 1e-12 ||
            std::abs(back[j].Lambda - params.Lambda(j)) > 1e-12)
            fail("p/q grid does not invert at column " + std::to_string(j));
    }
    if (name == "trig-admissible" || name == "trig-wide") {
        const int M = name == "trig-wide" ? 3 : 1;
        auto r = check_admissible(params, M);
        if (auto* d = std::get_if<AdmissibilityDiagnostic>(&r)) fail(d->message);
    } else if (name == "dyn6v-positive") {
        const SixVertexParams sv = to_six_vertex(params);
        if (std::abs(sv.q.imag()) > 1e-12 || !(sv.q.real() > 0 && sv.q.real() < 1))
            fail("q not in (0,1)");
        if (std::abs(sv.alpha.imag()) > 1e-12 || !(sv.alpha.real() > 0)) fail("alpha not > 0");
        const double qm = 1.0 / std::sqrt(sv.q.real());
        for (std::size_t j = 1; j < sv.xi.size(); ++j) {
            if (std::abs(params.Lambda(j) - 1.0) > 1e-14) fail("Lambda_j != 1");
            for (cplx u : sv.u) {
                const cplx xu = sv.xi[j] * u;
                if (std::abs(xu.imag()) > 1e-12 || xu.real() < qm)
                    fail("xi*u must be real and >= q^{-1/2}");
                // b0 first factor times its maximal second factor must stay <= 1
                const double x = xu.real();
                const double first = (1.0 / sv.q.real() - 1.0) / (qm * x - 1.0);
                if (first * std::max(1.0, x / qm) > 1.0) fail("b0 weight exceeds 1");
            }
        }
    } else if (name == "rational-positive") {
        if (params.lambda0().real() > -50.0) fail("lambda0 not large negative");
        for (std::size_t j = 1; j < params.num_columns(); ++j)
            for (cplx w : params.rows())
                if (!((params.z(j) - w).real() > 0)) fail("z - w must be positive");
    }
}

namespace {

cplx read_complex(const nlohmann::json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InvalidParameter(std::string("config: '") + what +
                           "' must be a number or a [re, im] pair");
}

nlohmann::json write_complex(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

}  // namespace

IrfParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InvalidParameter("config: top level must be an object");
    FunctionMode mode = FunctionMode::trigonometric();
    const std::string m = j.value("mode", std::string("trigonometric"));
    if (m == "elliptic") {
        if (!j.contains("tau")) throw InvalidParameter("config: elliptic mode needs 'tau'");
        mode = FunctionMode::elliptic(read_complex(j.at("tau"), "tau"));
    } else if (m == "rational") {
        mode = FunctionMode::rational();
    } else if (m != "trigonometric") {
        throw InvalidParameter("config: unknown mode '" + m + "'");
    }
    for (const char* key : {"eta", "lambda0", "columns", "rows"})
        if (!j.contains(key)) throw InvalidParameter(std::string("config: missing '") + key + "'");
    std::vector<Column> cols;
    for (const auto& c : j.at("columns")) {
        if (!c.contains("z") || !c.contains("Lambda"))
            throw InvalidParameter("config: each column needs 'z' and 'Lambda'");
        cols.push_back({read_complex(c.at("z"), "z"), read_complex(c.at("Lambda"), "Lambda")});
    }
    std::vector<cplx> rows;
    for (const auto& w : j.at("rows")) rows.push_back(read_complex(w, "rows"));
    return IrfParams(mode, read_complex(j.at("eta"), "eta"),
                     read_complex(j.at("lambda0"), "lambda0"), std::move(cols), std::move(rows));
}

nlohmann::json params_to_json(const IrfParams& params) {
    nlohmann::json j;
    j["mode"] = mode_name(params.mode().kind);
    if (params.mode().kind == FunctionMode::Kind::Elliptic) j["tau"] = write_complex(params.mode().tau);
    j["eta"] = write_complex(params.eta());
    j["lambda0"] = write_complex(params.lambda0());
    j["columns"] = nlohmann::json::array();
    for (const auto& c : params.columns())
        j["columns"].push_back({{"z", write_complex(c.z)}, {"Lambda", write_complex(c.Lambda)}});
    j["rows"] = nlohmann::json::array();
    for (cplx w : params.rows()) j["rows"].push_back(write_complex(w));
    return j;
}

IrfParams load_params_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidParameter("config file '" + path + "': " + e.what());
    }
    return params_from_json(j);
}

}  // namespace irf
