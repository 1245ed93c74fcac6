#include "doctest.h"

#include "irf/errors.hpp"
#include "irf/identity_suite.hpp"
#include "irf/model_params.hpp"
#include "irf/rng.hpp"

using namespace irf;

TEST_SUITE("identity_suite") {

TEST_CASE("reports round trip through JSON") {
    const CheckReport r = make_report("x.y", {{"a", 1}}, {1.0, 2.0}, {1.0, 2.0 + 1e-9}, 1e-8,
                                      TruncationInfo{12, 40, 1e-10, "tail"});
    const CheckReport back = report_from_json(to_json(r));
    CHECK(to_json(back) == to_json(r));
    CHECK(back.truncation->cap == 12);
}

TEST_CASE("large tail estimates downgrade a pass") {
    const auto warn = make_report("w", {}, 1.0, 1.0, 1e-7, TruncationInfo{5, 5, 1e-7, ""});
    CHECK(warn.passed);
    CHECK(warn.status() == "passed-with-warning");
    const auto fine = make_report("w", {}, 1.0, 1.0, 1e-7, TruncationInfo{5, 5, 1e-10, ""});
    CHECK(fine.status() == "passed");
    const auto bad = make_report("w", {}, 1.0, 2.0, 1e-7);
    CHECK(bad.status() == "failed");
    const auto nan = make_report("w", {}, std::nan(""), 2.0, 1e-7);
    CHECK_FALSE(nan.passed);
}

TEST_CASE("nested sum lemma needs nondecreasing T") {
    CounterRng g(3, 4);
    std::vector<std::vector<double>> Y;
    for (int T : {2, 3, 5}) {
        std::vector<double> row(static_cast<std::size_t>(T) + 1);
        for (auto& v : row) v = g.uniform(-1.0, 1.0);
        Y.push_back(row);
    }
    CHECK(check_nested_sum_lemma({2, 3, 5}, Y).passed);
    std::swap(Y[0], Y[2]);
    CHECK_THROWS_AS(check_nested_sum_lemma({5, 3, 2}, Y), InvalidParameter);
}

TEST_CASE("symmetrization lemma for m up to 6") {
    CounterRng g(4, 1);
    for (const auto& mode : {FunctionMode::trigonometric(), FunctionMode::elliptic({0.1, 1.1})})
        for (int m = 1; m <= 6; ++m) {
            std::vector<cplx> v(static_cast<std::size_t>(m));
            for (auto& x : v) x = {g.uniform(-0.5, 0.5), g.uniform(-0.3, 0.3)};
            CHECK(check_symmetrization_lemma(m, v, {0.11, 0.07}, mode).passed);
            CHECK(symmetrization_terms(v, {0.11, 0.07}, mode).size() ==
                  static_cast<std::size_t>(std::tgamma(m + 1) + 0.5));
        }
}

TEST_CASE("randomized checks") {
    CHECK(check_stochasticity(FunctionMode::trigonometric(), 200, 1).passed);
    CHECK(check_stochasticity(FunctionMode::rational(), 200, 1).passed);
    CHECK_FALSE(check_stochasticity(FunctionMode::elliptic({0.1, 1.1}), 200, 1).passed);
    CHECK(check_sine_identity(200, 1).passed);
    CHECK(check_oracle_B(10, 1).passed);
    CHECK(check_oracle_D(10, 1).passed);
    CHECK(check_c_lemma(10, 1).passed);
    CHECK(check_stochastic_B(10, 1).passed);
}

TEST_CASE("orthogonality with three nested contours") {
    const IrfParams P = make_preset("trig-wide");
    CHECK(check_orthogonality({2, 1, 0}, {2, 1, 0}, P).passed);
    const auto off = check_orthogonality({1, 1, 0}, {2, 1, 0}, P);
    CHECK(off.passed);
    CHECK(std::abs(off.lhs) < 1e-6 * std::max(1.0, std::abs(off.rhs)) + 1e-6);
}

TEST_CASE("suites are deterministic and sorted") {
    const IrfParams P = make_preset("trig-admissible");
    SuiteOptions o;
    o.seed = 9;
    const auto a = run_suite("oracle", P, o);
    const auto b = run_suite("oracle", P, o);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(to_json(a[i]) == to_json(b[i]));
    for (std::size_t i = 1; i < a.size(); ++i) CHECK(a[i - 1].name <= a[i].name);
    CHECK_THROWS_AS(run_suite("nope", P), InvalidParameter);
}

TEST_CASE("tolerance override is applied") {
    SuiteOptions o;
    o.tolerance = 1e-3;
    for (const auto& r : run_suite("weights", make_preset("trig-admissible"), o))
        CHECK(r.tolerance == 1e-3);
}

}
