// One line per acceptance criterion. Exit status is nonzero only for
// unexpected failures; the elliptic stochasticity sub-check is known to fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "irf/asymptotics.hpp"
#include "irf/cli.hpp"
#include "irf/identity_suite.hpp"
#include "irf/model_params.hpp"
#include "irf/observables.hpp"

using namespace irf;

namespace {

// pinned tolerances
constexpr double kTolClosed = 1e-10;      // 1, 2, 3
constexpr double kTolOracle = 1e-8;       // 4, 5
constexpr double kTolSumToOne = 1e-6;     // 5
constexpr double kTolSeries = 1e-7;       // 6
constexpr double kTolQuad = 1e-6;         // 7, 8 (integral, q-moment)
constexpr double kTolLambda = 1e-9;       // 8 (enumeration across lambda)
constexpr double kSigmas = 4.0;           // 9
constexpr double kTolNested = 1e-12;      // 9
constexpr std::size_t kMcSamples = 100000;

struct Outcome {
    std::vector<CheckReport> reports;
    std::set<std::string> known;  // names allowed to fail
};

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

std::vector<CheckReport> select(const std::vector<CheckReport>& rs,
                                std::initializer_list<const char*> prefixes) {
    std::vector<CheckReport> out;
    for (const auto& r : rs)
        for (const char* p : prefixes)
            if (starts_with(r.name, p)) {
                out.push_back(r);
                break;
            }
    return out;
}

SuiteOptions pinned(double tol) {
    SuiteOptions o;
    o.tolerance = tol;
    return o;
}

Outcome c1() {
    Outcome o;
    o.reports = select(run_suite("weights", make_preset("trig-admissible"), pinned(kTolClosed)),
                       {"stochasticity"});
    o.known.insert("stochasticity.elliptic");
    return o;
}

Outcome c2() {
    return {select(run_suite("weights", make_preset("trig-admissible"), pinned(kTolClosed)),
                   {"sine_identity"}),
            {}};
}

Outcome c3() {
    return {select(run_suite("identities", make_preset("trig-admissible"), pinned(kTolClosed)),
                   {"symmetrization_lemma"}),
            {}};
}

Outcome c4() {
    return {run_suite("oracle", make_preset("trig-admissible"), pinned(kTolOracle)), {}};
}

Outcome c5() {
    const IrfParams P = make_preset("trig-admissible");
    auto rs = select(run_suite("stochastic", P, pinned(kTolOracle)), {"stochastic_B"});
    for (auto& r : select(run_suite("stochastic", P, pinned(kTolSumToOne)), {"sum_to_one"}))
        rs.push_back(r);
    return {rs, {}};
}

Outcome c6() {
    return {select(run_suite("identities", make_preset("trig-admissible"), pinned(kTolSeries)),
                   {"skew_cauchy", "pieri", "cauchy_rho"}),
            {}};
}

Outcome c7() {
    Outcome o;
    for (const char* preset : {"trig-admissible", "trig-wide"}) {
        for (auto r : run_suite("orthogonality", make_preset(preset), pinned(kTolQuad))) {
            r.name = std::string(preset) + "." + r.name;
            o.reports.push_back(r);
        }
    }
    return o;
}

Outcome c8() {
    Outcome o;
    const IrfParams P = make_preset("dyn6v-positive");
    const cplx l0 = P.lambda0();
    const std::vector<cplx> lambdas{l0, l0 + 0.3, {0.2, 0.4}, {0.0, -5.0}};
    const std::vector<std::vector<int>> xss{{3}, {4, 2}, {3, 3, 1}, {5, 4, 2}, {5, 5}};
    for (const auto& xs : xss)
        for (int N : {1, 3, 5}) {
            const ObservableSpec spec{xs, N, 0.0};
            const std::string tag = fmt::format("xs{}.N{}", fmt::join(xs, "_"), N);
            auto li = lambda_independence_report(ObsSetup::irf(P), spec, lambdas, 0, 0, kTolLambda);
            li.name += "." + tag;
            o.reports.push_back(li);
            const cplx ex = exact_E(ObsSetup::irf(P), spec).value;
            const cplx en = enum_E(ObsSetup::irf(P), spec);
            o.reports.push_back(make_report("integral_vs_enum." + tag, {}, ex, en, kTolQuad));
            const cplx at5 = enum_E(ObsSetup::irf(P.with_lambda0({0.0, -5.0})), spec);
            o.reports.push_back(make_report("q_moment_at_minus_5i." + tag, {},
                                            six_vertex_moment_enum(P, spec), at5, kTolQuad));
        }
    return o;
}

Outcome c9() {
    Outcome o;
    const IrfParams P = make_preset("dyn6v-positive");
    auto mc_check = [&](const std::string& name, const ObsSetup& s, const ObservableSpec& spec,
                        std::uint64_t seed) {
        const cplx ex = exact_E(s, spec).value;
        const McEstimate mc = mc_E(s, spec, kMcSamples, seed);
        o.reports.push_back(make_report(name, {{"stderr", mc.stderr_}}, mc.mean, ex, kSigmas,
                                        std::nullopt, mc.stderr_));
    };
    mc_check("mc.dyn6v.xs3.N3", ObsSetup::irf(P), {{3}, 3, 0.0}, 11);
    mc_check("mc.dyn6v.xs3_2.N4", ObsSetup::irf(P), {{3, 2}, 4, 0.0}, 12);
    mc_check("mc.ssep.lb2.xs1.t1", ObsSetup::ssep(2.0), {{1}, 1, 1.0}, 13);
    mc_check("mc.ssep.lb2.xs1_0.t1", ObsSetup::ssep(2.0), {{1, 0}, 1, 1.0}, 14);
    mc_check("mc.ssep.lb0.5.xs0_0.t4", ObsSetup::ssep(0.5), {{0, 0}, 1, 4.0}, 15);
    for (auto& r : select(run_suite("identities", make_preset("trig-admissible"), pinned(kTolNested)),
                          {"nested_sum"}))
        o.reports.push_back(r);
    return o;
}

Outcome c10() {
    AsymptoticsOptions a;
    a.run_ks = false;
    Outcome o{run_asymptotics_suite(a), {}};
    // soft, reported only
    auto ks = regime_iv_ks_check(1e4, 1.0, 1.0, 0.0, 200, 0);
    o.reports.push_back(ks);
    return o;
}

Outcome c11() {
    Outcome o;
    auto capture = [](RunConfig c) {
        std::ostringstream out, err;
        run(c, out, err);
        return out.str();
    };
    auto compare = [&](const std::string& name, RunConfig c) {
        c.threads = 1;
        const std::string a = capture(c);
        const std::string b = capture(c);
        c.threads = 4;
        const std::string d = capture(c);
        const bool same = !a.empty() && a == b && a == d;
        CheckReport r = make_report(name, {{"bytes", a.size()}}, same ? 0.0 : 1.0, 0.0, 0.0);
        o.reports.push_back(r);
    };
    RunConfig v;
    v.command = "verify";
    v.suite = "oracle";
    v.seed = 3;
    compare("determinism.verify", v);
    RunConfig s;
    s.command = "simulate";
    s.model = "ssep";
    s.lambda_bar = 2.0;
    s.t = 1.0;
    s.samples = 1000;
    s.seed = 7;
    s.format = OutputFormat::Csv;
    compare("determinism.simulate", s);
    RunConfig m;
    m.command = "observables";
    m.model = "dyn6v";
    m.xs = {3, 2};
    m.N = 4;
    m.compare = {"exact", "mc", "enum"};
    m.samples = 20000;
    m.seed = 5;
    compare("determinism.observables", m);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"stochasticity of plaquette weights", c1},
        {"sine identity", c2},
        {"symmetrization lemma", c3},
        {"oracle equivalence", c4},
        {"stochastic lattice vs formula, sum to one", c5},
        {"skew-Cauchy, Pieri, Cauchy, rho-Cauchy", c6},
        {"orthogonality and D integrals", c7},
        {"lambda independence, integral, q-moments", c8},
        {"MC vs exact, nested sum", c9},
        {"hydrodynamics, regime IV moments, heat equation", c10},
        {"determinism", c11},
    };
    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        std::string error;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            error = e.what();
        }
        bool pass = error.empty() && !o.reports.empty();
        std::vector<std::string> failed, known;
        double worst = 0.0;
        for (const auto& r : o.reports) {
            if (r.tolerance > 0.0) worst = std::max(worst, r.residual / r.tolerance);
            if (r.passed || !is_gating(r)) continue;
            (o.known.count(r.name) ? known : failed).push_back(r.name);
        }
        if (!failed.empty()) pass = false;
        const bool known_fail = pass && !known.empty();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::string line = fmt::format("criterion {:2d} {:<48} {} checks={} worst_residual/tol={:.3g} ({:.1f}s)",
                                       i + 1, criteria[i].first, pass && !known_fail ? "PASS" : "FAIL",
                                       o.reports.size(), worst, secs);
        if (!error.empty()) line += " error: " + error;
        if (!failed.empty()) line += " failed: " + fmt::format("{}", fmt::join(failed, ","));
        if (!known.empty())
            line += " known-unattainable: " + fmt::format("{}", fmt::join(known, ","));
        for (const auto& r : o.reports)
            if (!is_gating(r))
                line += fmt::format(" soft[{}: {} residual={:.3g} tol={:.3g}]", r.name,
                                    r.passed ? "pass" : "fail", r.residual, r.tolerance);
        std::puts(line.c_str());
        std::fflush(stdout);
        if (!pass) ++unexpected;
    }
    return unexpected == 0 ? 0 : 1;
}
