#include "irf/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>

#include "irf/errors.hpp"
#include "irf/rng.hpp"

namespace irf {

QuadrantState QuadrantState::empty(const IrfParams& params, int X, int Y) {
    if (X < 0 || Y < 0) throw InvalidParameter("quadrant window must be nonnegative");
    if (static_cast<std::size_t>(X) >= params.num_columns() && X > 0)
        throw InvalidParameter("quadrant: X = " + std::to_string(X) + " needs " +
                               std::to_string(X + 1) + " columns");
    if (static_cast<std::size_t>(Y) > params.rows().size())
        throw InvalidParameter("quadrant: Y = " + std::to_string(Y) + " exceeds the " +
                               std::to_string(params.rows().size()) + " row parameters");
    QuadrantState s;
    s.X = X;
    s.Y = Y;
    s.lambda0 = params.lambda0();
    s.params = params;
    s.vert.assign(static_cast<std::size_t>(X) + 1, std::vector<int>(static_cast<std::size_t>(Y) + 1, 0));
    s.horiz.assign(static_cast<std::size_t>(X) + 1, std::vector<int>(static_cast<std::size_t>(Y) + 1, 0));
    for (int y = 1; y <= Y; ++y) s.horiz[0][y] = 1;
    return s;
}

PlaquetteKind QuadrantState::kind_at(int x, int y) const {
    const int in_h = horiz[x - 1][y];
    const int out_h = horiz[x][y];
    if (in_h == 0) return out_h == 0 ? PlaquetteKind::A : PlaquetteKind::C;
    return out_h == 0 ? PlaquetteKind::B : PlaquetteKind::D;
}

namespace {

cplx eta2(const QuadrantState& s) { return 2.0 * s.params.eta(); }

void check_prob(cplx w, int x, int y, const char* which) {
    if (std::abs(w.imag()) > kPositivityEps || w.real() < -kPositivityEps ||
        w.real() > 1.0 + kPositivityEps)
        throw PositivityError("weight " + std::string(which) + " at vertex (" + std::to_string(x) +
                              ", " + std::to_string(y) + ") is (" + std::to_string(w.real()) +
                              ", " + std::to_string(w.imag()) + "), not a probability");
}

}  // namespace

cplx filling(const QuadrantState& s, int x, int y) {
    if (x < 0 || y < 0 || x > s.X || y > s.Y) throw InvalidParameter("filling: outside window");
    // along the bottom row, then up column x
    cplx v = s.lambda0;
    for (int j = 1; j <= x; ++j) v -= eta2(s) * s.params.Lambda(static_cast<std::size_t>(j));
    for (int r = 1; r <= y; ++r) v += eta2(s) * (1.0 - 2.0 * s.horiz[x][r]);
    return v;
}

cplx filling_row_first(const QuadrantState& s, int x, int y) {
    if (x < 0 || y < 0 || x > s.X || y > s.Y) throw InvalidParameter("filling: outside window");
    cplx v = s.lambda0 - eta2(s) * static_cast<double>(y);
    for (int j = 1; j <= x; ++j)
        v += eta2(s) * (2.0 * s.vert[j][y] - s.params.Lambda(static_cast<std::size_t>(j)));
    return v;
}

int height(const QuadrantState& s, int x, int N) {
    if (x < 1 || x > s.X + 1 || N < 0 || N > s.Y) throw InvalidParameter("height: outside window");
    int h = N;
    for (int j = 1; j < x; ++j) h -= s.vert[j][N];
    return h;
}

void check_state(const QuadrantState& s) {
    for (int y = 1; y <= s.Y; ++y)
        if (s.horiz[0][y] != 1) throw Error("boundary: row " + std::to_string(y) + " has no entering path");
    for (int x = 1; x <= s.X; ++x) {
        if (s.vert[x][0] != 0) throw Error("boundary: path entering from the bottom");
        for (int y = 1; y <= s.Y; ++y) {
            const int in = s.vert[x][y - 1] + s.horiz[x - 1][y];
            const int out = s.vert[x][y] + s.horiz[x][y];
            if (in != out || s.horiz[x][y] > 1 || s.vert[x][y] < 0)
                throw Error("arrow conservation fails at (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
        }
    }
}

QuadrantState sample_irf(const IrfParams& params, int X, int Y, std::uint64_t seed) {
    QuadrantState s = QuadrantState::empty(params, X, Y);
    const cplx eta = params.eta();
    for (int diag = 2; diag <= X + Y; ++diag) {
        for (int x = std::max(1, diag - Y); x <= std::min(X, diag - 1); ++x) {
            const int y = diag - x;
            const int k = s.vert[x][y - 1];
            const int in_h = s.horiz[x - 1][y];
            const auto col = static_cast<std::size_t>(x);
            WeightContext ctx{filling(s, x - 1, y), params.w(static_cast<std::size_t>(y)),
                              params.z(col), params.Lambda(col), eta, params.mode()};
            const double u = to_unit(counter_hash(seed, static_cast<std::uint64_t>(x),
                                                  static_cast<std::uint64_t>(y)));
            if (in_h == 0) {
                const cplx a = weight(PlaquetteKind::A, k, ctx, true);
                check_prob(a, x, y, "a");
                const bool stay = k == 0 || u < a.real();
                if (k > 0) check_prob(weight(PlaquetteKind::C, k, ctx, true), x, y, "c");
                s.vert[x][y] = stay ? k : k - 1;
                s.horiz[x][y] = stay ? 0 : 1;
            } else {
                const cplx b = weight(PlaquetteKind::B, k, ctx, true);
                check_prob(b, x, y, "b");
                check_prob(weight(PlaquetteKind::D, k, ctx, true), x, y, "d");
                const bool up = u < b.real();
                s.vert[x][y] = up ? k + 1 : k;
                s.horiz[x][y] = up ? 0 : 1;
            }
        }
    }
    return s;
}

namespace {

using RowWeight = std::function<cplx(PlaquetteKind, int k, std::size_t col, int y, cplx lm)>;

void check_enum_window(const IrfParams& params, int N, int X) {
    if (N < 0 || N > 5 || X < 1 || X > 8) throw InvalidParameter("enumerate: need N <= 5, 1 <= X <= 8");
    if (static_cast<std::size_t>(X) >= params.num_columns())
        throw InvalidParameter("enumerate: needs " + std::to_string(X + 1) + " columns");
    if (static_cast<std::size_t>(N) > params.rows().size())
        throw InvalidParameter("enumerate: needs " + std::to_string(N) + " row parameters");
}

EnumResult row_transfer(const IrfParams& params, int N, int X, const RowWeight& wt) {
    const cplx eta = params.eta();
    const auto nx = static_cast<std::size_t>(X);
    std::map<std::vector<int>, cplx> dist{{std::vector<int>(nx, 0), 1.0}};
    for (int y = 1; y <= N; ++y) {
        std::map<std::vector<int>, cplx> next;
        for (const auto& [occ, pr] : dist) {
            std::vector<int> out(nx);
            std::function<void(std::size_t, int, cplx, cplx)> rec = [&](std::size_t i, int s,
                                                                         cplx lm, cplx acc) {
                if (i == nx) {
                    next[out] += acc;
                    return;
                }
                const std::size_t col = i + 1;
                const int k = occ[i];
                auto step = [&](PlaquetteKind kind, int ns, int nk) {
                    if (nk < 0) return;
                    const cplx cf = wt(kind, k, col, y, lm);
                    if (cf == 0.0) return;
                    out[i] = nk;
                    rec(i + 1, ns, lm - 2.0 * eta * (params.Lambda(col) - 2.0 * nk), acc * cf);
                };
                if (s == 0) {
                    step(PlaquetteKind::A, 0, k);
                    step(PlaquetteKind::C, 1, k - 1);
                } else {
                    step(PlaquetteKind::B, 0, k + 1);
                    step(PlaquetteKind::D, 1, k);
                }
            };
            rec(0, 1, params.lambda0() - 2.0 * eta * static_cast<double>(y), pr);
        }
        dist = std::move(next);
    }
    EnumResult r;
    r.occupations = dist;
    for (const auto& [occ, pr] : dist) {
        if (std::accumulate(occ.begin(), occ.end(), 0) == N)
            r.distribution[Signature::from_occupation(occ, 1)] += pr;
        else
            r.escaped += pr;
    }
    return r;
}

}  // namespace

EnumResult enumerate_distribution(const IrfParams& params, int N, int X) {
    check_enum_window(params, N, X);
    return row_transfer(params, N, X, [&](PlaquetteKind kind, int k, std::size_t col, int y, cplx lm) {
        WeightContext ctx{lm, params.w(static_cast<std::size_t>(y)), params.z(col),
                          params.Lambda(col), params.eta(), params.mode()};
        return weight(kind, k, ctx, true);
    });
}

EnumResult enumerate_six_vertex(const IrfParams& params, int N, int X) {
    check_enum_window(params, N, X);
    const SixVertexParams sv = to_six_vertex(params);
    return row_transfer(params, N, X, [&](PlaquetteKind kind, int k, std::size_t col, int y, cplx) {
        const auto u = sv.u[static_cast<std::size_t>(y) - 1];
        // pattern (i1, j1; i2, j2): vertical in, horizontal in, vertical out, horizontal out
        auto L = [&](int j1, int i2, int j2) {
            return hs6v_weight(Hs6vTable::Stochastic, k, j1, i2, j2, sv.q, sv.s[col], sv.xi[col], u);
        };
        switch (kind) {
            case PlaquetteKind::A: return L(0, k, 0);
            case PlaquetteKind::B: return L(1, k + 1, 0);
            case PlaquetteKind::C: return L(0, k - 1, 1);
            case PlaquetteKind::D: return L(1, k, 1);
        }
        return cplx{0.0};
    });
}

double ExclusionKind::rate_down(long s) const {
    if (type == Type::DynamicSsep) {
        if (std::isinf(lambda_bar)) return 1.0;
        const double sb = static_cast<double>(s) + lambda_bar;
        return sb / (sb - 1.0);
    }
    const double qs = std::pow(q, -static_cast<double>(s));
    return q * (1.0 + alpha * qs) / (1.0 + alpha * qs * q);
}

double ExclusionKind::rate_up(long s) const {
    if (type == Type::DynamicSsep) {
        if (std::isinf(lambda_bar)) return 1.0;
        const double sb = static_cast<double>(s) + lambda_bar;
        return sb / (sb + 1.0);
    }
    const double qs = std::pow(q, -static_cast<double>(s));
    return (1.0 + alpha * qs) / (1.0 + alpha * qs / q);
}

void validate_exclusion(const ExclusionKind& kind) {
    if (kind.type == ExclusionKind::Type::DynamicSsep) {
        if (!(kind.lambda_bar > 0.0))
            throw InvalidParameter("dynamic SSEP needs lambda_bar > 0 (lambda < 0) for positive rates");
        return;
    }
    if (!(kind.q > 0.0)) throw InvalidParameter("dynamic ASEP needs q > 0");
    const bool ok = kind.alpha >= 0.0 || (kind.q > 1.0 && kind.alpha > -1.0);
    if (!ok)
        throw InvalidParameter("dynamic ASEP needs alpha >= 0, or q > 1 and alpha > -1, for the "
                               "step initial condition");
}

ExclusionState ExclusionState::step(const ExclusionKind& kind, long half_width) {
    if (half_width < 4) throw InvalidParameter("step window half width must be >= 4");
    ExclusionState st;
    st.kind = kind;
    st.lmin = -half_width;
    st.lmax = half_width;
    for (long x = st.lmin; x <= st.lmax; ++x) st.s.push_back(std::abs(x));
    return st;
}

long ExclusionState::at(long x) const {
    if (x < lmin || x > lmax) return std::abs(x);
    return s[static_cast<std::size_t>(x - lmin)];
}

std::vector<long> ExclusionState::particles() const {
    std::vector<long> out;
    for (long x = lmin; x < lmax; ++x)
        if (at(x + 1) - at(x) == -1) out.push_back(x);
    return out;
}

ExclusionState ExclusionState::from_particles(const std::vector<long>& particles, long lmin,
                                              long lmax, long s_at_lmin,
                                              const ExclusionKind& kind) {
    ExclusionState st;
    st.kind = kind;
    st.lmin = lmin;
    st.lmax = lmax;
    std::vector<bool> occ(static_cast<std::size_t>(lmax - lmin), false);
    for (long p : particles) {
        if (p < lmin || p >= lmax) throw InvalidParameter("particle outside the window");
        occ[static_cast<std::size_t>(p - lmin)] = true;
    }
    long v = s_at_lmin;
    st.s.push_back(v);
    for (long x = lmin; x < lmax; ++x) {
        v += occ[static_cast<std::size_t>(x - lmin)] ? -1 : 1;
        st.s.push_back(v);
    }
    return st;
}

namespace {

class ExclusionSim {
public:
    ExclusionSim(const ExclusionState& st, std::uint64_t seed) : st_(st), seed_(seed) {
        draws_.assign(st_.s.size(), 0);
        version_.assign(st_.s.size(), 0);
    }

    double rate(long x) const {
        if (x <= st_.lmin || x >= st_.lmax) return 0.0;
        const long s = st_.at(x), l = st_.at(x - 1), r = st_.at(x + 1);
        if (l == s - 1 && r == s - 1) return st_.kind.rate_down(s);
        if (l == s + 1 && r == s + 1) return st_.kind.rate_up(s);
        return 0.0;
    }

    void schedule(long x, double now) {
        const auto i = static_cast<std::size_t>(x - st_.lmin);
        ++version_[i];
        const double r = rate(x);
        if (r < 0.0 || !std::isfinite(r))
            throw InvalidParameter("nonpositive or non-finite rate " + std::to_string(r) +
                                   " at site " + std::to_string(x));
        if (r == 0.0) return;
        const double u = to_unit_open0(counter_hash(seed_, static_cast<std::uint64_t>(x), draws_[i]++));
        heap_.push({now - std::log(u) / r, x, version_[i]});
    }

    void grow(double now) {
        const long margin = std::max<long>(8, (st_.lmax - st_.lmin) / 2);
        const long nmin = st_.lmin - margin, nmax = st_.lmax + margin;
        if (nmax - nmin + 1 > st_.max_window)
            throw ResourceError("exclusion window would exceed " + std::to_string(st_.max_window) +
                                " sites");
        std::vector<long> ns;
        std::vector<std::uint64_t> nd, nv;
        for (long x = nmin; x <= nmax; ++x) {
            const bool inside = x >= st_.lmin && x <= st_.lmax;
            ns.push_back(inside ? st_.at(x) : std::abs(x));
            nd.push_back(inside ? draws_[static_cast<std::size_t>(x - st_.lmin)] : 0);
            nv.push_back(inside ? version_[static_cast<std::size_t>(x - st_.lmin)] : 0);
        }
        const long old_min = st_.lmin, old_max = st_.lmax;
        st_.s = std::move(ns);
        draws_ = std::move(nd);
        version_ = std::move(nv);
        st_.lmin = nmin;
        st_.lmax = nmax;
        // the old edge sites gain neighbours; all others outside were untouched
        for (long x : {old_min, old_max}) schedule(x, now);
    }

    ExclusionState run(double T, const EventSink& sink) {
        const double t_end = st_.t + T;
        for (long x = st_.lmin + 1; x < st_.lmax; ++x) schedule(x, st_.t);
        while (!heap_.empty()) {
            const Item it = heap_.top();
            if (it.t > t_end) break;
            heap_.pop();
            const auto i = static_cast<std::size_t>(it.x - st_.lmin);
            if (version_[i] != it.version) continue;
            const long s = st_.s[i];
            const long l = st_.at(it.x - 1);
            st_.s[i] = (l == s - 1) ? s - 2 : s + 2;
            st_.t = it.t;
            if (sink) sink({it.t, it.x, st_.s[i]});
            for (long y = it.x - 1; y <= it.x + 1; ++y) schedule(y, it.t);
            if (it.x - st_.lmin <= 3 || st_.lmax - it.x <= 3) grow(it.t);
        }
        st_.t = t_end;
        return st_;
    }

private:
    struct Item {
        double t;
        long x;
        std::uint64_t version;
        bool operator>(const Item& o) const { return t != o.t ? t > o.t : x > o.x; }
    };
    ExclusionState st_;
    std::uint64_t seed_;
    std::vector<std::uint64_t> draws_;
    std::vector<std::uint64_t> version_;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap_;
};

}  // namespace

ExclusionState simulate_exclusion(const ExclusionState& initial, double T, std::uint64_t seed,
                                  const EventSink& sink) {
    if (T < 0.0) throw InvalidParameter("simulate_exclusion: T must be >= 0");
    validate_exclusion(initial.kind);
    if (initial.s.size() != static_cast<std::size_t>(initial.lmax - initial.lmin + 1))
        throw InvalidParameter("exclusion state window size mismatch");
    if (initial.at(initial.lmin) != std::abs(initial.lmin) ||
        initial.at(initial.lmax) != std::abs(initial.lmax))
        throw InvalidParameter("exclusion window boundary must carry the step profile");
    if (T == 0.0) return initial;
    ExclusionSim sim(initial, seed);
    return sim.run(T, sink);
}

}  // namespace irf
