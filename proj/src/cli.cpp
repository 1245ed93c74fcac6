#include "irf/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "irf/asymptotics.hpp"
#include "irf/errors.hpp"
#include "irf/identity_suite.hpp"
#include "irf/model_params.hpp"
#include "irf/observables.hpp"
#include "irf/parallel.hpp"
#include "irf/rng.hpp"
#include "irf/samplers.hpp"

namespace irf {

using nlohmann::json;

namespace {

bool discrete_model(ObsModel m) { return m == ObsModel::Irf || m == ObsModel::Rational; }

std::string fmt_double(double v) { return fmt::format("{:.17g}", v); }

IrfParams load_params(const RunConfig& c, const std::string& fallback) {
    if (!c.config_path.empty()) return load_params_file(c.config_path);
    return make_preset(c.preset.empty() ? fallback : c.preset);
}

ObsSetup make_setup(const RunConfig& c) {
    const ObsModel m = parse_obs_model(c.model);
    switch (m) {
        case ObsModel::Irf: return ObsSetup::irf(load_params(c, "dyn6v-positive"));
        case ObsModel::Rational: return ObsSetup::rational(load_params(c, "rational-positive"));
        case ObsModel::Asep: return ObsSetup::asep(c.q, c.alpha);
        case ObsModel::Ssep: return ObsSetup::ssep(c.lambda_bar);
    }
    throw InvalidParameter("unknown model");
}

void csv_reports(const std::vector<CheckReport>& rs, std::ostream& out) {
    out << "name,status,residual,tolerance\n";
    for (const auto& r : rs)
        out << r.name << ',' << r.status() << ',' << fmt_double(r.residual) << ','
            << fmt_double(r.tolerance) << '\n';
}

int report_exit(const std::vector<CheckReport>& rs, std::ostream& err) {
    int code = 0;
    for (const auto& r : rs)
        if (!r.passed && is_gating(r)) {
            err << "FAILED " << r.name << '\n';
            code = 1;
        }
    return code;
}

int emit_reports(const RunConfig& c, const std::vector<CheckReport>& rs, std::ostream& out,
                 std::ostream& err) {
    if (c.format == OutputFormat::Csv) {
        csv_reports(rs, out);
    } else {
        json arr = json::array();
        for (const auto& r : rs) {
            json j = to_json(r);
            if (c.tolerance) j["tolerance_override"] = *c.tolerance;
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << '\n';
    }
    return report_exit(rs, err);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SuiteOptions so;
    so.tolerance = c.tolerance;
    so.seed = c.seed;
    so.threads = c.threads;
    const IrfParams p = load_params(c, "trig-admissible");
    return emit_reports(c, run_suite(c.suite, p, so), out, err);
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
    const ObsModel m = parse_obs_model(c.model);
    if (c.format == OutputFormat::Json)
        throw InvalidParameter("simulate writes CSV; use --format csv");
    if (discrete_model(m)) {
        const IrfParams p = load_params(c, m == ObsModel::Irf ? "dyn6v-positive" : "rational-positive");
        // heights of every vertex row, one block per trajectory
        const auto blocks = map_chunks<std::string>(
            c.samples, c.threads,
            [&](std::size_t lo, std::size_t hi) {
                std::string s;
                for (std::size_t i = lo; i < hi; ++i) {
                    const QuadrantState st = sample_irf(p, c.X, c.Y, counter_hash(c.seed, i));
                    for (int y = 1; y <= c.Y; ++y)
                        for (int x = 1; x <= c.X + 1; ++x)
                            s += fmt::format("{},{},{},{}\n", i, x, y, height(st, x, y));
                }
                return s;
            },
            64);
        out << "trajectory,x,N,h\n";
        for (const auto& b : blocks) out << b;
        return 0;
    }
    const ObsSetup setup = make_setup(c);
    validate_exclusion(setup.exclusion);
    if (!(c.t >= 0.0)) throw InvalidParameter("--t must be >= 0");
    if (c.x_min > c.x_max) throw InvalidParameter("--x-range must be increasing");
    const auto blocks = map_chunks<std::string>(
        c.samples, c.threads,
        [&](std::size_t lo, std::size_t hi) {
            std::string s;
            for (std::size_t i = lo; i < hi; ++i) {
                const ExclusionState st = simulate_exclusion(ExclusionState::step(setup.exclusion),
                                                             c.t, counter_hash(c.seed, i));
                for (long x = c.x_min; x <= c.x_max; ++x)
                    s += fmt::format("{},{},{},{}\n", i, fmt_double(c.t), x, st.at(x));
            }
            return s;
        },
        64);
    out << "trajectory,t,x,s\n";
    for (const auto& b : blocks) out << b;
    return 0;
}

int cmd_observables(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const ObsSetup setup = make_setup(c);
    ObservableSpec spec{c.xs, c.N, c.t};
    setup.validate();
    spec.validate(setup.model);

    struct Row {
        std::string method;
        cplx value;
        std::optional<double> stderr_;
        double ms = 0.0;
    };
    std::vector<Row> rows;
    for (const auto& method : c.compare) {
        const auto t0 = std::chrono::steady_clock::now();
        Row r{method, {}, std::nullopt};
        if (method == "exact") {
            ExactOptions eo;
            eo.threads = c.threads;
            r.value = exact_E(setup, spec, eo).value;
        } else if (method == "enum") {
            if (!discrete_model(setup.model))
                throw InvalidParameter("enum is available for dyn6v and rational only");
            r.value = enum_E(setup, spec);
        } else if (method == "mc") {
            const McEstimate e = mc_E(setup, spec, c.samples, c.seed, c.threads);
            r.value = e.mean;
            r.stderr_ = e.stderr_;
        } else {
            throw InvalidParameter("unknown --compare method '" + method + "'");
        }
        r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                   .count();
        rows.push_back(r);
    }

    // discrepancies against the first method; MC agreement within 4 sigma,
    // deterministic methods to the tolerance (default 1e-6 relative)
    const double tol = c.tolerance.value_or(1e-6);
    std::vector<CheckReport> checks;
    std::vector<double> disc(rows.size(), 0.0);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& a = rows.front();
        const auto& b = rows[i];
        disc[i] = std::abs(b.value - a.value);
        json p{{"methods", {a.method, b.method}}};
        const std::string name = "observables." + a.method + "_vs_" + b.method;
        const double se = std::hypot(a.stderr_.value_or(0.0), b.stderr_.value_or(0.0));
        if (se > 0.0) {
            p["stderr"] = se;
            checks.push_back(make_report(name, p, b.value, a.value, c.tolerance.value_or(4.0),
                                         std::nullopt, se));
        } else {
            checks.push_back(make_report(name, p, b.value, a.value, tol));
        }
    }

    if (c.format == OutputFormat::Csv) {
        out << "method,re,im,stderr,discrepancy\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            out << r.method << ',' << fmt_double(r.value.real()) << ','
                << fmt_double(r.value.imag()) << ','
                << (r.stderr_ ? fmt_double(*r.stderr_) : std::string{}) << ','
                << fmt_double(disc[i]) << '\n';
        }
    } else {
        json res = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            json j = observable_record(setup, spec, rows[i].method, rows[i].value, rows[i].stderr_);
            j["discrepancy"] = disc[i];
            if (c.timing) j["runtime_ms"] = rows[i].ms;
            res.push_back(std::move(j));
        }
        json checks_j = json::array();
        for (const auto& r : checks) checks_j.push_back(to_json(r));
        out << json{{"results", res}, {"checks", checks_j}}.dump(2) << '\n';
    }
    return report_exit(checks, err);
}

int cmd_asymptotics(const RunConfig& c, std::ostream& out, std::ostream& err) {
    if (c.study == "suite") {
        AsymptoticsOptions o;
        o.L_hydro = c.L;
        o.tau = c.tau;
        o.lambda_bar = c.lambda_bar;
        o.ks_trajectories = c.ks_trajectories;
        o.run_ks = c.ks;
        o.seed = c.seed;
        o.threads = c.threads;
        o.tolerance = c.tolerance;
        return emit_reports(c, run_asymptotics_suite(o), out, err);
    }
    const std::vector<double> chis =
        c.chis.empty() ? std::vector<double>{-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0} : c.chis;
    if (c.study == "profile") {
        const auto rows = hydrodynamic_table(c.L, c.tau, chis, c.samples, c.seed, c.threads);
        if (c.format == OutputFormat::Csv) {
            out << "chi,profile,exact,empirical,stderr\n";
            for (const auto& r : rows)
                out << fmt_double(r.chi) << ',' << fmt_double(r.profile) << ','
                    << fmt_double(r.exact) << ',' << fmt_double(r.empirical) << ','
                    << fmt_double(r.stderr_) << '\n';
        } else {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"chi", r.chi},
                               {"profile", r.profile},
                               {"exact", r.exact},
                               {"empirical", r.empirical},
                               {"stderr", r.stderr_}});
            out << arr.dump(2) << '\n';
        }
        return 0;
    }
    if (c.study == "limit") {
        json arr = json::array();
        for (double chi : chis) {
            RegimeSpec rs;
            rs.regime = parse_regime(c.regime);
            rs.l = c.l;
            rs.lambda_bar = c.lambda_bar;
            rs.chi = chi;
            rs.tau = c.tau;
            const LimitProfile lp = limit_profile(rs);
            json j{{"regime", regime_name(rs.regime)}, {"chi", chi}, {"tau", c.tau}};
            if (const double* v = std::get_if<double>(&lp)) {
                j["value"] = *v;
            } else {
                const auto& g = std::get<GammaLimit>(lp);
                j["gamma"] = {{"shape", g.a}, {"scale", g.b}};
                j["min_height"] = g.height(0.0);
            }
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << '\n';
        return 0;
    }
    throw InvalidParameter("unknown --study '" + c.study + "' (suite, profile, limit)");
}

}  // namespace

void RunConfig::validate() const {
    if (samples < 1) throw InvalidParameter("--samples must be >= 1");
    if (threads < 1) throw InvalidParameter("--threads must be >= 1");
    if (tolerance && !(*tolerance > 0.0)) throw InvalidParameter("--tolerance must be > 0");
    if (!preset.empty() && !config_path.empty())
        throw InvalidParameter("--preset and --config are exclusive");
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        c.validate();
        std::ostringstream buf;
        int code = 0;
        if (c.command == "verify")
            code = cmd_verify(c, buf, err);
        else if (c.command == "simulate")
            code = cmd_simulate(c, buf);
        else if (c.command == "observables")
            code = cmd_observables(c, buf, err);
        else if (c.command == "asymptotics")
            code = cmd_asymptotics(c, buf, err);
        else
            throw InvalidParameter("unknown command '" + c.command + "'");
        if (c.out.empty()) {
            out << buf.str();
        } else {
            std::ofstream f(c.out, std::ios::binary);
            if (!f) throw InvalidParameter("cannot write " + c.out);
            f << buf.str();
        }
        return code;
    } catch (const InvalidParameter& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynamic stochastic IRF models: identities, samplers, observables"};
    app.require_subcommand(1);
    RunConfig c;
    std::string format = "json";

    auto common = [&](CLI::App* s) {
        auto* preset = s->add_option("--preset", c.preset, "parameter preset");
        s->add_option("--config", c.config_path, "parameter JSON file")->excludes(preset);
        s->add_option("--seed", c.seed, "64-bit seed");
        s->add_option("--samples", c.samples, "Monte Carlo samples / trajectories");
        s->add_option("--threads", c.threads, "worker threads");
        s->add_option("--out", c.out, "output path");
        s->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--tolerance", c.tolerance, "override default tolerances");
    };

    auto* verify = app.add_subcommand("verify", "run an identity suite");
    common(verify);
    verify->add_option("--suite", c.suite, "suite name")->check(CLI::IsMember(suite_names()));

    auto* simulate = app.add_subcommand("simulate", "sample trajectories (CSV)");
    common(simulate);
    simulate->add_option("--model", c.model, "ssep, asep, dyn6v, rational")->required();
    simulate->add_option("--trajectories", c.samples, "number of trajectories");
    simulate->add_option("--lambda-bar", c.lambda_bar, "dynamic SSEP parameter");
    simulate->add_option("--q", c.q, "ASEP q");
    simulate->add_option("--alpha", c.alpha, "ASEP alpha");
    simulate->add_option("--t", c.t, "time");
    simulate->add_option("--X", c.X, "quadrant columns");
    simulate->add_option("--Y", c.Y, "quadrant rows");
    std::vector<long> xr;
    simulate->add_option("--x-range", xr, "x_min,x_max")->delimiter(',')->expected(2);

    auto* obs = app.add_subcommand("observables", "compare exact, enumeration and MC averages");
    common(obs);
    obs->add_option("--model", c.model, "dyn6v, rational, asep, ssep")->required();
    obs->add_option("--xs", c.xs, "x_1 >= ... >= x_n")->delimiter(',')->required();
    obs->add_option("--N", c.N, "row (dyn6v, rational)");
    obs->add_option("--t", c.t, "time (asep, ssep)");
    obs->add_option("--lambda-bar", c.lambda_bar, "dynamic SSEP parameter");
    obs->add_option("--q", c.q, "ASEP q");
    obs->add_option("--alpha", c.alpha, "ASEP alpha");
    obs->add_option("--compare", c.compare, "exact, mc, enum")->delimiter(',');
    obs->add_flag("--timing", c.timing, "add runtime_ms to each record");

    auto* asy = app.add_subcommand("asymptotics", "large-scale limits of the SSEP height");
    common(asy);
    asy->add_option("--study", c.study, "suite, profile or limit")
        ->check(CLI::IsMember({"suite", "profile", "limit"}));
    asy->add_option("--L", c.L, "scale");
    asy->add_option("--tau", c.tau, "rescaled time");
    asy->add_option("--lambda-bar", c.lambda_bar, "regime IV parameter");
    asy->add_option("--chi", c.chis, "rescaled positions")->delimiter(',');
    asy->add_option("--regime", c.regime, "I, II, III, IV");
    asy->add_option("--l", c.l, "regime II parameter");
    asy->add_option("--trajectories", c.samples, "trajectories for the profile table");
    asy->add_option("--ks-trajectories", c.ks_trajectories, "trajectories for the KS check");
    bool no_ks = false;
    asy->add_flag("--no-ks", no_ks, "skip the Kolmogorov-Smirnov check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    c.command = app.get_subcommands().front()->get_name();
    c.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (c.command == "simulate" && !simulate->count("--format")) c.format = OutputFormat::Csv;
    if (xr.size() == 2) {
        c.x_min = xr[0];
        c.x_max = xr[1];
    }
    if (c.compare.empty()) c.compare = {"exact"};
    c.ks = !no_ks;
    return run(c, out, err);
}

}  // namespace irf
