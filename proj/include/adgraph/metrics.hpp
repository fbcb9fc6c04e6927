#pragma once

// Breadth-first invariants: neighborhood profiles, distances, girth,
// 4-cycles, diameter, the census of 3-neighborhood sizes, and the explicit
// parameterizations of 3-neighborhoods in the rigid graph.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adgraph/graph.hpp"
#include "adgraph/graph_spec.hpp"
#include "adgraph/parallel.hpp"
#include "adgraph/rng.hpp"

namespace adg {

/// Reusable BFS scratch space.  Visited marks are epoch stamps, so resetting
/// between searches is O(1).
class BfsWorkspace {
public:
    explicit BfsWorkspace(std::size_t n = 0) { resize(n); }

    void resize(std::size_t n) {
        if (stamp_.size() != n) {
            stamp_.assign(n, 0);
            dist_.assign(n, 0);
            parent_.assign(n, 0);
            epoch_ = 0;
        }
    }

    void reset() {
        if (++epoch_ == 0) {
            std::fill(stamp_.begin(), stamp_.end(), 0);
            epoch_ = 1;
        }
    }

    bool seen(vertex_id v) const { return stamp_[v] == epoch_; }
    void visit(vertex_id v, std::uint32_t d, vertex_id parent = 0) {
        stamp_[v] = epoch_;
        dist_[v] = d;
        parent_[v] = parent;
    }
    std::uint32_t dist(vertex_id v) const { return dist_[v]; }
    vertex_id parent(vertex_id v) const { return parent_[v]; }

    std::vector<vertex_id> frontier, next;

private:
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint32_t> dist_;
    std::vector<vertex_id> parent_;
    std::uint32_t epoch_ = 0;
};

struct NeighborhoodProfile {
    vertex_id origin = 0;
    unsigned radius = 0;
    std::vector<std::uint64_t> level_sizes;             // r_1 .. r_radius
    std::vector<std::vector<vertex_id>> level_sets;     // sorted; empty unless requested
};

/// Exact sizes of the distance levels 1..radius around origin.
template <NeighborGraph G>
NeighborhoodProfile bfs_profile(const G& g, vertex_id origin, unsigned radius, bool keep_sets,
                                BfsWorkspace& ws) {
    if (radius == 0) throw std::invalid_argument("radius must be at least 1");
    ws.resize(g.vertex_count());
    ws.reset();
    NeighborhoodProfile prof;
    prof.origin = origin;
    prof.radius = radius;
    prof.level_sizes.assign(radius, 0);
    if (keep_sets) prof.level_sets.assign(radius, {});
    ws.frontier.assign(1, origin);
    ws.visit(origin, 0);
    for (unsigned d = 1; d <= radius && !ws.frontier.empty(); ++d) {
        ws.next.clear();
        for (vertex_id u : ws.frontier) {
            g.for_each_neighbor(u, [&](vertex_id w) {
                if (!ws.seen(w)) {
                    ws.visit(w, d, u);
                    ws.next.push_back(w);
                }
            });
        }
        prof.level_sizes[d - 1] = ws.next.size();
        if (keep_sets) {
            prof.level_sets[d - 1] = ws.next;
            std::sort(prof.level_sets[d - 1].begin(), prof.level_sets[d - 1].end());
        }
        std::swap(ws.frontier, ws.next);
    }
    return prof;
}

template <NeighborGraph G>
NeighborhoodProfile bfs_profile(const G& g, vertex_id origin, unsigned radius, bool keep_sets = false) {
    BfsWorkspace ws(g.vertex_count());
    return bfs_profile(g, origin, radius, keep_sets, ws);
}

/// Vertices at distance exactly `radius` from origin, sorted.
template <NeighborGraph G>
std::vector<vertex_id> sphere(const G& g, vertex_id origin, unsigned radius) {
    return std::move(bfs_profile(g, origin, radius, true).level_sets.back());
}

/// Shortest-path length by bidirectional BFS; nullopt when unreachable.
template <NeighborGraph G>
std::optional<unsigned> distance(const G& g, vertex_id u, vertex_id v) {
    if (u == v) return 0u;
    const std::size_t n = g.vertex_count();
    // 0 unseen, 1 reached from u, 2 reached from v
    std::vector<std::uint8_t> owner(n, 0);
    std::vector<vertex_id> front_u{u}, front_v{v}, next;
    owner[u] = 1;
    owner[v] = 2;
    unsigned du = 0, dv = 0;
    while (!front_u.empty() && !front_v.empty()) {
        const bool expand_u = front_u.size() <= front_v.size();
        auto& front = expand_u ? front_u : front_v;
        const std::uint8_t mine = expand_u ? 1 : 2, other = expand_u ? 2 : 1;
        next.clear();
        bool met = false;
        for (vertex_id x : front) {
            g.for_each_neighbor(x, [&](vertex_id w) {
                if (owner[w] == other) met = true;
                else if (owner[w] == 0) {
                    owner[w] = mine;
                    next.push_back(w);
                }
            });
        }
        (expand_u ? du : dv) += 1;
        if (met) return du + dv;
        std::swap(front, next);
    }
    return std::nullopt;
}

/// Eccentricity of v and the number of vertices it reaches (itself included).
template <NeighborGraph G>
std::pair<unsigned, std::size_t> eccentricity(const G& g, vertex_id v, BfsWorkspace& ws) {
    ws.resize(g.vertex_count());
    ws.reset();
    ws.visit(v, 0);
    ws.frontier.assign(1, v);
    std::size_t reached = 1;
    unsigned ecc = 0;
    while (!ws.frontier.empty()) {
        ws.next.clear();
        for (vertex_id u : ws.frontier)
            g.for_each_neighbor(u, [&](vertex_id w) {
                if (!ws.seen(w)) {
                    ws.visit(w, ecc + 1, u);
                    ws.next.push_back(w);
                }
            });
        if (ws.next.empty()) break;
        ++ecc;
        reached += ws.next.size();
        std::swap(ws.frontier, ws.next);
    }
    return {ecc, reached};
}

namespace detail {

// Shortest cycle detectable from source, or `bound` if none shorter exists.
// Expansion stops at depth d once 2d >= bound since deeper non-tree edges
// only close cycles of length >= 2d.
template <NeighborGraph G>
unsigned shortest_cycle_from(const G& g, vertex_id source, unsigned bound, BfsWorkspace& ws) {
    ws.resize(g.vertex_count());
    ws.reset();
    ws.visit(source, 0, source);
    ws.frontier.assign(1, source);
    unsigned best = bound;
    for (unsigned d = 0; !ws.frontier.empty() && 2 * d < best; ++d) {
        ws.next.clear();
        for (vertex_id u : ws.frontier) {
            g.for_each_neighbor(u, [&](vertex_id w) {
                if (!ws.seen(w)) {
                    ws.visit(w, d + 1, u);
                    ws.next.push_back(w);
                } else if (w != ws.parent(u)) {
                    best = std::min(best, ws.dist(u) + ws.dist(w) + 1);
                }
            });
        }
        std::swap(ws.frontier, ws.next);
    }
    return best;
}

template <NeighborGraph G>
std::optional<unsigned> girth_over(const G& g, const std::vector<vertex_id>& sources) {
    constexpr unsigned none = std::numeric_limits<unsigned>::max() / 4;
    BfsWorkspace ws(g.vertex_count());
    unsigned best = none;
    for (vertex_id s : sources) best = detail::shortest_cycle_from(g, s, best, ws);
    if (best == none) return std::nullopt;
    return best;
}

// Vertices with last coordinate 0.  Translating the last coordinate (+b on
// points, -b on lines) is an automorphism of every AdGraph, so these are
// representatives for any automorphism-invariant vertex quantity.
inline std::vector<vertex_id> translation_representatives(const AdGraph& g) {
    std::vector<vertex_id> reps;
    reps.reserve(g.vertex_count() / g.q());
    for (vertex_id v = 0; v < g.vertex_count(); v += g.q()) reps.push_back(v);
    return reps;
}

}  // namespace detail

/// Girth; nullopt for an acyclic graph.
template <NeighborGraph G>
std::optional<unsigned> girth(const G& g) {
    std::vector<vertex_id> all(g.vertex_count());
    for (vertex_id v = 0; v < all.size(); ++v) all[v] = v;
    return detail::girth_over(g, all);
}

inline std::optional<unsigned> girth(const AdGraph& g) {
    return detail::girth_over(g, detail::translation_representatives(g));
}

/// True iff two distinct vertices have at least two common neighbors.
template <NeighborGraph G>
bool has_4cycle(const G& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> mark(n, 0);
    std::vector<std::uint32_t> count(n, 0);
    for (vertex_id v = 0; v < n; ++v) {
        const std::uint32_t stamp = v + 1;
        bool found = false;
        g.for_each_neighbor(v, [&](vertex_id u) {
            g.for_each_neighbor(u, [&](vertex_id w) {
                if (w == v || found) return;
                if (mark[w] != stamp) {
                    mark[w] = stamp;
                    count[w] = 0;
                }
                if (++count[w] >= 2) found = true;
            });
        });
        if (found) return true;
    }
    return false;
}

struct DiameterResult {
    bool connected = true;
    unsigned diameter = 0;
    std::size_t components = 1;
};

namespace detail {

template <NeighborGraph G>
std::size_t component_count(const G& g) {
    BfsWorkspace ws(g.vertex_count());
    std::vector<bool> done(g.vertex_count(), false);
    std::size_t comps = 0;
    for (vertex_id v = 0; v < g.vertex_count(); ++v) {
        if (done[v]) continue;
        ++comps;
        eccentricity(g, v, ws);
        for (vertex_id w = 0; w < g.vertex_count(); ++w)
            if (ws.seen(w)) done[w] = true;
    }
    return comps;
}

template <NeighborGraph G>
DiameterResult diameter_over(const G& g, const std::vector<vertex_id>& sources, unsigned workers) {
    DiameterResult res;
    {
        BfsWorkspace ws(g.vertex_count());
        if (eccentricity(g, sources.front(), ws).second != g.vertex_count()) {
            res.connected = false;
            res.diameter = 0;
            res.components = component_count(g);
            return res;
        }
    }
    if (workers == 0) workers = default_workers();
    std::vector<BfsWorkspace> spaces(workers);
    std::vector<unsigned> ecc(sources.size(), 0);
    parallel_for(sources.size(), workers, [&](std::size_t i, unsigned w) {
        ecc[i] = eccentricity(g, sources[i], spaces[w]).first;
    });
    res.diameter = *std::max_element(ecc.begin(), ecc.end());
    return res;
}

}  // namespace detail

/// Maximum eccentricity over every vertex.
template <NeighborGraph G>
DiameterResult diameter(const G& g, unsigned workers = 1) {
    std::vector<vertex_id> all(g.vertex_count());
    for (vertex_id v = 0; v < all.size(); ++v) all[v] = v;
    return detail::diameter_over(g, all, workers);
}

/// Diameter from one BFS per last-coordinate translation class.
inline DiameterResult diameter(const AdGraph& g, unsigned workers = 1) {
    return detail::diameter_over(g, detail::translation_representatives(g), workers);
}

/// r_3 of every vertex by one depth-3 BFS per vertex.
template <NeighborGraph G>
std::vector<std::uint64_t> vertex_r3(const G& g, unsigned workers = 1) {
    if (workers == 0) workers = default_workers();
    std::vector<BfsWorkspace> spaces(workers);
    std::vector<std::uint64_t> out(g.vertex_count());
    parallel_for(g.vertex_count(), workers, [&](std::size_t v, unsigned w) {
        out[v] = bfs_profile(g, static_cast<vertex_id>(v), 3, false, spaces[w]).level_sizes[2];
    });
    return out;
}

/// r_3 of every vertex, computed once per translation class.
inline std::vector<std::uint64_t> vertex_r3(const AdGraph& g, unsigned workers = 1) {
    if (workers == 0) workers = default_workers();
    const auto reps = detail::translation_representatives(g);
    std::vector<BfsWorkspace> spaces(workers);
    std::vector<std::uint64_t> rep_value(reps.size());
    parallel_for(reps.size(), workers, [&](std::size_t i, unsigned w) {
        rep_value[i] = bfs_profile(g, reps[i], 3, false, spaces[w]).level_sizes[2];
    });
    std::vector<std::uint64_t> out(g.vertex_count());
    for (vertex_id v = 0; v < out.size(); ++v) out[v] = rep_value[v / g.q()];
    return out;
}

struct R3Census {
    struct Entry {
        Side side;
        Elem A, B;
        std::uint64_t r3;
    };
    std::vector<Entry> entries;  // sorted by (side, A, B)
    std::size_t argmax = 0;      // index into entries
    std::size_t second = 0;      // first entry with the second-largest distinct value
    bool unique_max = false;
    bool unique_second = false;
    std::size_t spot_checks = 0;

    const Entry& at(Side side, Elem A, Elem B, std::uint32_t q) const {
        return entries[(side == Side::line ? std::size_t{q} * q : 0) + std::size_t{A.value} * q + B.value];
    }
};

/// Fills argmax, second and the uniqueness flags from the entries.
inline void summarize_census(R3Census& c) {
    if (c.entries.empty()) return;
    // Deterministic tie-break: highest value, then smallest class key.
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.entries.size(); ++i)
        if (c.entries[i].r3 > c.entries[best].r3) best = i;
    c.argmax = best;
    const std::uint64_t top = c.entries[best].r3;
    std::optional<std::size_t> runner;
    for (std::size_t i = 0; i < c.entries.size(); ++i)
        if (c.entries[i].r3 < top && (!runner || c.entries[i].r3 > c.entries[*runner].r3)) runner = i;
    c.second = runner.value_or(best);
    const std::uint64_t second_value = c.entries[c.second].r3;
    const auto top_count = std::count_if(c.entries.begin(), c.entries.end(), [&](auto& e) { return e.r3 == top; });
    const auto second_count =
        std::count_if(c.entries.begin(), c.entries.end(), [&](auto& e) { return e.r3 == second_value; });
    c.unique_max = top_count == 1;
    c.unique_second = runner && second_count == 1;
}

/// r_3 over the 2q^2 classes (side, A, B) with representatives (A,B,0),
/// [A,B,0].  Translation invariance in the third coordinate is re-checked on
/// `spot_checks` seeded random (class, c) pairs.
inline R3Census r3_census(const AdGraph& g, unsigned workers = 1,
                          std::uint64_t seed = SplitMix64::default_seed, std::size_t spot_checks = 8) {
    if (g.dim() != 3) throw std::invalid_argument("census needs a 3-dimensional graph");
    if (workers == 0) workers = default_workers();
    const std::uint32_t q = g.q();
    const auto reps = detail::translation_representatives(g);
    R3Census c;
    c.entries.resize(reps.size());
    std::vector<BfsWorkspace> spaces(workers);
    parallel_for(reps.size(), workers, [&](std::size_t i, unsigned w) {
        const VertexRef v = g.vertex(reps[i]);
        c.entries[i] = {v.side, v.coords[0], v.coords[1],
                        bfs_profile(g, reps[i], 3, false, spaces[w]).level_sizes[2]};
    });

    SplitMix64 rng = SplitMix64(seed).split("census-translation");
    BfsWorkspace ws(g.vertex_count());
    for (std::size_t k = 0; k < spot_checks; ++k) {
        const std::size_t cls = rng.below(reps.size());
        const std::uint32_t shift = 1 + static_cast<std::uint32_t>(rng.below(q - 1));
        const std::uint64_t r3 = bfs_profile(g, reps[cls] + shift, 3, false, ws).level_sizes[2];
        if (r3 != c.entries[cls].r3)
            throw std::logic_error("r3 differs within a translation class");
        ++c.spot_checks;
    }

    summarize_census(c);
    return c;
}

// ---------------------------------------------------------------------------
// Explicit 3-neighborhoods of lines [A,B,0] in the rigid graph.

/// Reading of the symbol in the b^2 a term of the linear coefficient.
enum class CReading {
    lowercase_c,            // the path coordinate c
    third_coordinate_zero,  // the start line's third coordinate, i.e. 0
};

/// Numerator P_{A,B}(b, c; a) of the third coordinate of the 3-path endpoint
/// (b, c, P / (b - a)) from [A, B, 0].
inline Elem p_ab_eval(const Field& F, Elem A, Elem B, Elem b, Elem c, Elem a,
                      CReading reading = CReading::lowercase_c) {
    auto add = [&](Elem x, Elem y) { return F.add(x, y); };
    auto sub = [&](Elem x, Elem y) { return F.sub(x, y); };
    auto mul = [&](Elem x, Elem y) { return F.mul(x, y); };
    const Elem one = F.one(), two = F.from_int(2);
    const Elem k = sub(sub(mul(A, b), B), c);  // A b - B - c
    const Elem a2 = mul(a, a), a3 = mul(a2, a), a4 = mul(a3, a);
    const Elem b2 = mul(b, b), c2 = mul(c, c), B2 = mul(B, B);
    const Elem C = reading == CReading::lowercase_c ? c : F.zero();

    Elem t4 = mul(mul(mul(A, A), k), a4);
    Elem t3 = mul(mul(mul(A, add(sub(A, mul(two, B)), one)), k), a3);
    Elem t2 = F.neg(mul(mul(mul(B, add(sub(mul(two, A), B), one)), k), a2));
    Elem lin = F.zero();
    lin = sub(lin, mul(mul(A, c2), b2));
    lin = add(lin, mul(mul(A, B2), b));
    lin = sub(lin, mul(mul(A, c2), b));
    lin = sub(lin, mul(mul(A, C), b2));
    lin = sub(lin, mul(B2, B));
    lin = sub(lin, mul(B2, c));
    Elem t1 = mul(lin, a);
    Elem t0 = mul(mul(mul(c, b), add(add(mul(c, b), c), b)), add(c, B));
    return add(add(add(t4, t3), add(t2, t1)), t0);
}

/// Endpoint of the 3-path [A,B,0] ~ (a,*,*) ~ [x,*,*] ~ (b,c,*) with
/// x = (c - A a + B) / (b - a); requires a != b.
inline VertexRef three_path_endpoint(const AdGraph& g, Elem A, Elem B, Elem a, Elem b, Elem c) {
    const Field& F = g.field();
    const VertexRef start = VertexRef::line(A, B, F.zero());
    const VertexRef p1 = g.neighbor(start, a);
    const Elem x = F.div(F.add(F.sub(c, F.mul(A, a)), B), F.sub(b, a));
    const VertexRef l2 = g.neighbor(p1, x);
    return g.neighbor(l2, b);
}

enum class ParamVariant { general, zero_zero, zero_one };

namespace detail {

inline void require_rigid(const AdGraph& g) {
    const AdGraph ref = make_rigid(g.field());
    const std::uint32_t q = g.q();
    bool same = g.dim() == 3 && g.is_three_var();
    for (std::uint32_t a = 0; same && a < q; ++a)
        for (std::uint32_t b = 0; same && b < q; ++b) {
            same = g.f_value(a, b) == ref.f_value(a, b);
            for (std::uint32_t c = 0; same && c < q; ++c) same = g.g_value(a, b, c) == ref.g_value(a, b, c);
        }
    if (!same) throw std::invalid_argument("operation is defined for the rigid graph only");
}

}  // namespace detail

/// Point set given by the closed-form parameterization of the 3-neighborhood
/// of [A,B,0] (general), [0,0,0] or [0,1,0]; sorted vertex ids.
inline std::vector<vertex_id> r3_param_set(const AdGraph& g, ParamVariant variant, Elem A = {}, Elem B = {}) {
    detail::require_rigid(g);
    const Field& F = g.field();
    const std::uint32_t q = F.q();
    const Elem minus_one = F.neg(F.one());
    std::vector<bool> in(g.vertex_count(), false);
    for (std::uint32_t bv = 0; bv < q; ++bv)
        for (std::uint32_t cv = 0; cv < q; ++cv)
            for (std::uint32_t av = 0; av < q; ++av) {
                const Elem a{av}, b{bv}, c{cv};
                if (a == b) continue;
                const Elem t = F.inv(F.sub(b, a));
                Elem third;
                switch (variant) {
                case ParamVariant::general:
                    if (c == F.sub(F.mul(A, b), B)) continue;
                    third = F.mul(p_ab_eval(F, A, B, b, c, a), t);
                    break;
                case ParamVariant::zero_zero: {
                    if (c.value == 0) continue;
                    const Elem bc = F.mul(b, c);
                    third = F.mul(F.mul(F.mul(b, F.mul(c, c)), F.add(F.add(bc, b), c)), t);
                    break;
                }
                case ParamVariant::zero_one: {
                    if (c == minus_one) continue;
                    const Elem bc = F.mul(b, c);
                    const Elem c1 = F.add(c, F.one());
                    const Elem num = F.mul(F.sub(F.mul(bc, F.add(F.add(bc, c), b)), b), c1);
                    third = F.add(F.mul(num, t), c1);
                    break;
                }
                }
                in[g.vertex_id_of(VertexRef::point(b, c, third))] = true;
            }
    std::vector<vertex_id> out;
    for (vertex_id v = 0; v < in.size(); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Special vertex sets.

enum class SpecialKind {
    lines_L,   // [0, a, r], r in F
    points_P,  // (0, a, r), r in F
    fan_F,     // N([0,0,-r]) minus (0,0,r)
    core_N,    // intersection of R^2(v) over v in F_r
    meet_I,    // R^2[0,1,0] intersect R^2[0,0,b]
};

inline std::vector<vertex_id> special_set(const AdGraph& g, SpecialKind kind, Elem param) {
    if (g.dim() != 3) throw std::invalid_argument("special sets need a 3-dimensional graph");
    const Field& F = g.field();
    const Elem zero = F.zero();
    std::vector<vertex_id> out;
    switch (kind) {
    case SpecialKind::lines_L:
    case SpecialKind::points_P:
        for (Elem r : F.elements())
            out.push_back(g.vertex_id_of(kind == SpecialKind::lines_L ? VertexRef::line(zero, param, r)
                                                                      : VertexRef::point(zero, param, r)));
        break;
    case SpecialKind::fan_F: {
        const vertex_id skip = g.vertex_id_of(VertexRef::point(zero, zero, param));
        g.for_each_neighbor(g.vertex_id_of(VertexRef::line(zero, zero, F.neg(param))), [&](vertex_id w) {
            if (w != skip) out.push_back(w);
        });
        break;
    }
    case SpecialKind::core_N: {
        const auto fan = special_set(g, SpecialKind::fan_F, param);
        std::vector<std::uint32_t> hits(g.vertex_count(), 0);
        for (vertex_id v : fan)
            for (vertex_id w : sphere(g, v, 2)) ++hits[w];
        for (vertex_id w = 0; w < hits.size(); ++w)
            if (hits[w] == fan.size()) out.push_back(w);
        break;
    }
    case SpecialKind::meet_I: {
        const auto s1 = sphere(g, g.vertex_id_of(VertexRef::line(zero, F.one(), zero)), 2);
        const auto s2 = sphere(g, g.vertex_id_of(VertexRef::line(zero, zero, param)), 2);
        std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(out));
        break;
    }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace adg
