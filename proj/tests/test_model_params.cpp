#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "irf/errors.hpp"
#include "irf/model_params.hpp"

using namespace irf;

TEST_SUITE("model_params") {

TEST_CASE("every preset loads and validates") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        CHECK_NOTHROW(make_preset(name));
    }
    CHECK_THROWS_AS(make_preset("nope"), InvalidParameter);
}

TEST_CASE("pq grid inverts to the columns") {
    const IrfParams P = make_preset("trig-admissible");
    const auto back = columns_from_grid(pq_grid(P), P.eta());
    REQUIRE(back.size() == P.num_columns());
    for (std::size_t j = 0; j < back.size(); ++j) {
        CHECK(std::abs(back[j].z - P.z(j)) < 1e-12);
        CHECK(std::abs(back[j].Lambda - P.Lambda(j)) < 1e-12);
    }
}

TEST_CASE("Lambda_sum uses prefix sums") {
    const IrfParams P = make_preset("trig-wide");
    cplx s = 0.0;
    for (std::size_t j = 2; j < 7; ++j) s += P.Lambda(j);
    CHECK(std::abs(P.Lambda_sum(2, 7) - s) < 1e-13);
    CHECK(P.Lambda_sum(3, 3) == cplx{0.0});
    CHECK_THROWS_AS(P.Lambda_sum(0, P.num_columns() + 1), InvalidParameter);
}

TEST_CASE("six vertex parameters round trip") {
    for (const char* name : {"trig-admissible", "dyn6v-positive"}) {
        const IrfParams P = make_preset(name);
        const IrfParams B = from_six_vertex(to_six_vertex(P), P.mode());
        CHECK(std::abs(B.eta() - P.eta()) < 1e-12);
        CHECK(std::abs(B.lambda0() - P.lambda0()) < 1e-12);
        for (std::size_t j = 0; j < P.num_columns(); ++j) {
            CHECK(std::abs(B.z(j) - P.z(j)) < 1e-12);
            CHECK(std::abs(B.Lambda(j) - P.Lambda(j)) < 1e-12);
        }
        for (std::size_t k = 1; k <= P.rows().size(); ++k) CHECK(std::abs(B.w(k) - P.w(k)) < 1e-12);
    }
}

TEST_CASE("dyn6v preset has q = 1/2 and alpha > 0") {
    const auto sv = to_six_vertex(make_preset("dyn6v-positive"));
    CHECK(std::abs(sv.q - 0.5) < 1e-14);
    CHECK(sv.alpha.real() > 0.0);
    CHECK(std::abs(sv.alpha.imag()) < 1e-12);
}

TEST_CASE("admissible families pass their own audit") {
    for (const char* name : {"trig-admissible", "trig-wide"}) {
        const IrfParams P = make_preset(name);
        for (int M = 1; M <= 3; ++M) {
            const auto r = check_admissible(P, M);
            if (const auto* fam = std::get_if<ContourFamily>(&r)) {
                CHECK(fam->gammas.size() == static_cast<std::size_t>(M));
                CHECK(audit_contours(P, *fam).empty());
            } else {
                CHECK_FALSE(std::get<AdmissibilityDiagnostic>(r).message.empty());
            }
        }
    }
    // the wide preset admits three nested contours
    CHECK(std::holds_alternative<ContourFamily>(check_admissible(make_preset("trig-wide"), 3)));
}

TEST_CASE("json round trip and file loading") {
    const IrfParams P = make_preset("rational-positive");
    const auto j = params_to_json(P);
    const IrfParams Q = params_from_json(j);
    CHECK(params_to_json(Q) == j);
    const std::string path = "model_params_roundtrip.json";
    {
        std::ofstream f(path);
        f << j.dump();
    }
    CHECK(params_to_json(load_params_file(path)) == j);
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_params_file("does-not-exist.json"), InvalidParameter);
    CHECK_THROWS_AS(params_from_json({{"mode", "elliptic"}}), InvalidParameter);
    CHECK_THROWS_AS(params_from_json({{"eta", 0.1}}), InvalidParameter);
}

}
