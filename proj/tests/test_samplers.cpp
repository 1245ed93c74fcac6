#include "doctest.h"

#include <cmath>
#include <limits>
#include <map>

#include "irf/errors.hpp"
#include "irf/model_params.hpp"
#include "irf/samplers.hpp"

using namespace irf;

TEST_SUITE("samplers") {

TEST_CASE("sampled quadrants are consistent") {
    const IrfParams P = make_preset("dyn6v-positive");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const QuadrantState s = sample_irf(P, 6, 6, seed);
        CHECK_NOTHROW(check_state(s));
        for (int x = 0; x <= 6; ++x)
            for (int y = 0; y <= 6; ++y)
                CHECK(std::abs(filling(s, x, y) - filling_row_first(s, x, y)) < 1e-12);
        for (int N = 1; N <= 6; ++N) {
            CHECK(height(s, 1, N) == N);
            for (int x = 1; x <= 6; ++x) CHECK(height(s, x + 1, N) <= height(s, x, N));
        }
    }
}

TEST_CASE("sampling is a pure function of the seed") {
    const IrfParams P = make_preset("rational-positive");
    const QuadrantState a = sample_irf(P, 5, 5, 42), b = sample_irf(P, 5, 5, 42);
    CHECK(a.vert == b.vert);
    CHECK(a.horiz == b.horiz);
}

TEST_CASE("enumerated crossing law is a probability distribution") {
    for (const char* name : {"dyn6v-positive", "rational-positive"}) {
        const IrfParams P = make_preset(name);
        const EnumResult r = enumerate_distribution(P, 3, 5);
        cplx total = r.escaped;
        for (const auto& [sig, w] : r.distribution) {
            total += w;
            CHECK(w.real() >= -1e-14);
        }
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("Monte Carlo frequencies follow the enumerated law") {
    const IrfParams P = make_preset("dyn6v-positive");
    const int N = 2, X = 3;
    const EnumResult r = enumerate_distribution(P, N, X);
    std::map<std::vector<int>, double> freq;
    const int M = 20000;
    for (int i = 0; i < M; ++i) {
        const QuadrantState s = sample_irf(P, X, N, static_cast<std::uint64_t>(i));
        std::vector<int> occ;
        for (int x = 1; x <= X; ++x) occ.push_back(s.vert[x][N]);
        freq[occ] += 1.0 / M;
    }
    for (const auto& [occ, p] : r.occupations) {
        const double pr = p.real();
        const double sd = std::sqrt(pr * (1.0 - pr) / M);
        CHECK(std::abs(freq[occ] - pr) < 5.0 * sd + 1e-12);
    }
}

TEST_CASE("exclusion rates") {
    const auto k = ExclusionKind::ssep(2.0);
    CHECK(k.rate_down(3) == doctest::Approx(5.0 / 4.0));
    CHECK(k.rate_up(3) == doctest::Approx(5.0 / 6.0));
    const auto usual = ExclusionKind::ssep(std::numeric_limits<double>::infinity());
    CHECK(usual.rate_down(7) == 1.0);
    CHECK(usual.rate_up(7) == 1.0);
    CHECK_THROWS_AS(validate_exclusion(ExclusionKind::ssep(-1.0)), InvalidParameter);
    CHECK_THROWS_AS(validate_exclusion(ExclusionKind::asep(0.5, -0.5)), InvalidParameter);
    CHECK_NOTHROW(validate_exclusion(ExclusionKind::asep(2.0, -0.5)));
}

TEST_CASE("exclusion trajectories keep the slope constraint") {
    for (const auto& kind : {ExclusionKind::ssep(1.5), ExclusionKind::asep(0.5, 2.0)}) {
        const ExclusionState init = ExclusionState::step(kind);
        long events = 0;
        bool steps_ok = true;
        const auto st = simulate_exclusion(init, 20.0, 9, [&](const ExclusionEvent& e) {
            ++events;
            steps_ok &= e.t >= 0.0 && e.t <= 20.0;
        });
        CHECK(events > 0);
        CHECK(steps_ok);
        for (long x = st.lmin; x < st.lmax; ++x) CHECK(std::abs(st.at(x + 1) - st.at(x)) == 1);
        for (long x = st.lmin; x <= st.lmax; ++x) {
            CHECK((st.at(x) - x) % 2 == 0);
            CHECK(st.h_asep(x) == (st.at(x) - x) / 2);
        }
        // no particle is created or destroyed: far right still empty, far left still full
        CHECK(st.at(st.lmin) == -st.lmin);
        CHECK(st.at(st.lmax) == st.lmax);
        // particles to the right of lmin equal the right-boundary height difference
        const long n = static_cast<long>(st.particles().size());
        CHECK(n == (st.at(st.lmin) - st.at(st.lmax) + (st.lmax - st.lmin)) / 2);
        CHECK(st.at(0) >= 0);
    }
}

TEST_CASE("particle picture round trip") {
    const auto st = simulate_exclusion(ExclusionState::step(ExclusionKind::ssep(3.0)), 5.0, 4);
    const auto back = ExclusionState::from_particles(st.particles(), st.lmin, st.lmax,
                                                     st.at(st.lmin), st.kind);
    CHECK(back.s == st.s);
}

TEST_CASE("exclusion runs are reproducible and the window grows") {
    const auto kind = ExclusionKind::ssep(2.0);
    const auto a = simulate_exclusion(ExclusionState::step(kind), 30.0, 77);
    const auto b = simulate_exclusion(ExclusionState::step(kind), 30.0, 77);
    CHECK(a.s == b.s);
    CHECK(a.lmax - a.lmin > 16);  // the window had to grow
    CHECK_THROWS_AS(simulate_exclusion(ExclusionState::step(kind), -1.0, 1), InvalidParameter);
    CHECK_THROWS_AS(ExclusionState::step(kind, 2), InvalidParameter);
}

}
