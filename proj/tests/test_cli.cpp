#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "irf/cli.hpp"

using namespace irf;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "irf_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> with(std::vector<std::string> a, std::vector<std::string> b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("verify identities under trig-admissible") {
    const auto r = call({"verify", "--suite", "identities", "--preset", "trig-admissible"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j.is_array());
    CHECK(j.size() > 10);
    for (const auto& rep : j) CHECK(rep["passed"].get<bool>());
}

TEST_CASE("verify records a tolerance override and reports failures") {
    const auto r = call({"verify", "--suite", "weights", "--tolerance", "1e-9"});
    const auto j = nlohmann::json::parse(r.out);
    for (const auto& rep : j) CHECK(rep["tolerance"].get<double>() == 1e-9);
    // elliptic stochasticity fails
    CHECK(r.code == 1);
    CHECK(r.err.find("stochasticity.elliptic") != std::string::npos);
}

TEST_CASE("simulate is byte identical across reruns and threads") {
    const std::vector<std::string> base{"simulate", "--model", "ssep", "--lambda-bar", "2",
                                        "--t", "1", "--trajectories", "200", "--seed", "7"};
    const auto a = call(base);
    const auto b = call(base);
    const auto c = call(with(base, {"--threads", "4"}));
    CHECK(a.code == 0);
    CHECK(a.out.rfind("trajectory,t,x,s", 0) == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(call(with(base, {"--seed", "8"})).out != a.out);
}

TEST_CASE("observables compares three methods") {
    const auto r = call({"observables", "--model", "dyn6v", "--xs", "3,2", "--N", "4", "--compare",
                         "exact,mc,enum", "--samples", "20000"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["results"].size() == 3);
    for (const auto& rec : j["results"]) CHECK(rec.contains("discrepancy"));
    CHECK(j["results"][2]["discrepancy"].get<double>() < 1e-9);
    const auto csv = call({"observables", "--model", "dyn6v", "--xs", "3,2", "--N", "4",
                           "--compare", "exact,enum", "--format", "csv"});
    CHECK(csv.out.rfind("method,re,im,stderr,discrepancy", 0) == 0);
}

TEST_CASE("timing adds runtime") {
    const auto r = call({"observables", "--model", "dyn6v", "--xs", "3", "--N", "2", "--compare",
                         "exact", "--timing"});
    CHECK(nlohmann::json::parse(r.out)["results"][0].contains("runtime_ms"));
}

TEST_CASE("out writes a file") {
    const std::string path = "cli_test_out.json";
    std::remove(path.c_str());
    const auto r = call({"asymptotics", "--no-ks", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    CHECK(nlohmann::json::parse(ss.str()).is_array());
    std::remove(path.c_str());
}

TEST_CASE("asymptotics limit study") {
    const auto iv = nlohmann::json::parse(
        call({"asymptotics", "--study", "limit", "--regime", "IV", "--lambda-bar", "2"}).out);
    REQUIRE(iv.is_array());
    CHECK(iv[0]["gamma"]["shape"].get<double>() == 2.0);
    const auto iii = call({"asymptotics", "--study", "limit", "--regime", "III", "--chi", "0"});
    CHECK(iii.code == 0);
    const auto j = nlohmann::json::parse(iii.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["value"].get<double>() == doctest::Approx(std::pow(1.0 / M_PI, 0.25)));
}

TEST_CASE("usage errors exit 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"verify", "--suite", "nope"}).code == 2);
    CHECK(call({"verify", "--preset", "trig-admissible", "--config", "x.json"}).code == 2);
    CHECK(call({"verify", "--preset", "no-such-preset"}).code == 2);
    CHECK(call({"simulate", "--model", "ssep", "--format", "json"}).code == 2);
    CHECK(call({"simulate", "--model", "ssep", "--samples", "0"}).code == 2);
    CHECK(call({"observables", "--model", "dyn6v", "--compare", "magic"}).code == 2);
}

}
