#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "irf/model_params.hpp"
#include "irf/plaquette_weights.hpp"
#include "irf/signature.hpp"

namespace irf {

// Paths in the window [0, X] x [0, Y] of the quadrant. Vertices (x, y) with
// 1 <= x <= X, 1 <= y <= Y; column x uses params column x, row y uses w_y.
struct QuadrantState {
    int X = 0;
    int Y = 0;
    cplx lambda0;
    IrfParams params;
    // vert[x][r]: paths on the edge (x, r) -> (x, r+1), 1 <= x <= X, 0 <= r <= Y
    std::vector<std::vector<int>> vert;
    // horiz[x][y]: paths on the edge (x, y) -> (x+1, y), 0 <= x <= X, 1 <= y <= Y
    std::vector<std::vector<int>> horiz;

    static QuadrantState empty(const IrfParams& params, int X, int Y);
    PlaquetteKind kind_at(int x, int y) const;
};

inline constexpr double kPositivityEps = 1e-9;

// Markovian sweep over anti-diagonals; the Bernoulli draw at (x, y) uses a
// uniform keyed by (seed, x, y) only.
QuadrantState sample_irf(const IrfParams& params, int X, int Y, std::uint64_t seed);

// Filling of the unit square [x, x+1] x [y, y+1], 0 <= x <= X, 0 <= y <= Y.
cplx filling(const QuadrantState& s, int x, int y);
// Same square reached along the top of the bottom row first, then up the
// column, versus up column 0 first, then along the row.
cplx filling_row_first(const QuadrantState& s, int x, int y);

// Paths passing through or below the vertex (x, N), 1 <= x <= X + 1.
int height(const QuadrantState& s, int x, int N);

// Throws Error when arrow conservation or the boundary conditions fail.
void check_state(const QuadrantState& s);

struct EnumResult {
    // occupation of the vertical edges above row N at columns 1..X, for every
    // configuration of the rows 1..N restricted to those columns
    std::map<std::vector<int>, cplx> occupations;
    // configurations with all N crossings at columns <= X
    std::map<Signature, cplx> distribution;
    cplx escaped{0.0};  // mass of configurations with a crossing beyond X
};

// Exact crossing law at height N + 1/2 by row transfer over columns 1..X.
EnumResult enumerate_distribution(const IrfParams& params, int N, int X);
// Same window for the stochastic higher spin six vertex model with the
// parameters of to_six_vertex(params).
EnumResult enumerate_six_vertex(const IrfParams& params, int N, int X);

// Exclusion processes in the height picture s_x.
struct ExclusionKind {
    enum class Type { DynamicAsep, DynamicSsep };
    Type type = Type::DynamicSsep;
    double q = 1.0;
    double alpha = 0.0;
    double lambda_bar = 1.0;  // lambda = -lambda_bar; infinity gives the usual SSEP

    static ExclusionKind asep(double q, double alpha) { return {Type::DynamicAsep, q, alpha, 0.0}; }
    static ExclusionKind ssep(double lambda_bar) { return {Type::DynamicSsep, 1.0, 0.0, lambda_bar}; }

    // Rates of s -> s - 2 (at a local maximum) and s -> s + 2 (local minimum).
    double rate_down(long s) const;
    double rate_up(long s) const;
};

struct ExclusionState {
    long lmin = -8;
    long lmax = 8;
    std::vector<long> s;  // s[x - lmin]
    double t = 0.0;
    ExclusionKind kind;
    long max_window = 1L << 24;

    static ExclusionState step(const ExclusionKind& kind, long half_width = 8);
    long at(long x) const;  // |x| outside the window
    long h_asep(long x) const { return (at(x) - x) / 2; }
    // Particles at x + 1/2 for s_{x+1} - s_x = -1, x in [lmin, lmax).
    std::vector<long> particles() const;
    static ExclusionState from_particles(const std::vector<long>& particles, long lmin, long lmax,
                                         long s_at_lmin, const ExclusionKind& kind);
};

// Validates rates for the step initial condition; throws InvalidParameter.
void validate_exclusion(const ExclusionKind& kind);

struct ExclusionEvent {
    double t;
    long x;
    long s;  // new value
};
using EventSink = std::function<void(const ExclusionEvent&)>;

// Event-driven simulation up to time t + T. Exponential clocks per site are
// drawn from a uniform keyed by (seed, x, per-site draw count).
ExclusionState simulate_exclusion(const ExclusionState& initial, double T, std::uint64_t seed,
                                  const EventSink& sink = {});

}  // namespace irf
