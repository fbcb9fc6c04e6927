#pragma once

// Automorphisms and isomorphisms.
//
// aut_group runs an individualization-refinement search.  The first path of
// the search tree fixes a base b_1..b_k; processing levels bottom-up, the
// orbit of b_{i+1} in the pointwise stabilizer of b_1..b_i is found by
// searching the subtree below each candidate for a leaf equivalent to the
// first leaf.  The order is the product of those orbit sizes.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adgraph/graph.hpp"
#include "adgraph/metrics.hpp"
#include "adgraph/rng.hpp"

namespace adg {

using big_int = boost::multiprecision::cpp_int;

struct VertexMap {
    std::vector<vertex_id> images;

    static VertexMap identity(std::size_t n) {
        VertexMap m;
        m.images.resize(n);
        std::iota(m.images.begin(), m.images.end(), vertex_id{0});
        return m;
    }

    std::size_t size() const { return images.size(); }
    vertex_id operator()(vertex_id v) const { return images[v]; }

    bool is_bijection() const {
        std::vector<bool> hit(images.size(), false);
        for (vertex_id w : images) {
            if (w >= images.size() || hit[w]) return false;
            hit[w] = true;
        }
        return true;
    }

    bool is_identity() const {
        for (vertex_id v = 0; v < images.size(); ++v)
            if (images[v] != v) return false;
        return true;
    }

    VertexMap inverse() const {
        VertexMap r;
        r.images.resize(images.size());
        for (vertex_id v = 0; v < images.size(); ++v) r.images[images[v]] = v;
        return r;
    }

    friend bool operator==(const VertexMap&, const VertexMap&) = default;
};

/// a after b: v -> a(b(v)).
inline VertexMap compose(const VertexMap& a, const VertexMap& b) {
    if (a.size() != b.size()) throw std::invalid_argument("maps of different sizes");
    VertexMap r;
    r.images.resize(a.size());
    for (vertex_id v = 0; v < a.size(); ++v) r.images[v] = a.images[b.images[v]];
    return r;
}

class search_limit_exceeded : public std::runtime_error {
public:
    search_limit_exceeded(std::uint64_t nodes, std::size_t generators)
        : std::runtime_error("search tree node limit (" + std::to_string(nodes) + ") exceeded after " +
                             std::to_string(generators) + " generators"),
          nodes(nodes), generators_found(generators) {}
    std::uint64_t nodes;
    std::size_t generators_found;
};

// ---------------------------------------------------------------------------
// Known automorphism families.

/// t3(b): (p1,p2,p3) -> (p1,p2,p3+b), [l1,l2,l3] -> [l1,l2,l3-b].
inline VertexMap translation_t3(const AdGraph& g, Elem b) {
    if (g.dim() != 3) throw std::invalid_argument("t3 needs a 3-dimensional graph");
    const Field& F = g.field();
    VertexMap m;
    m.images.resize(g.vertex_count());
    for (vertex_id v = 0; v < g.vertex_count(); ++v) {
        VertexRef r = g.vertex(v);
        r.coords[2] = r.side == Side::point ? F.add(r.coords[2], b) : F.sub(r.coords[2], b);
        m.images[v] = g.vertex_id_of(r);
    }
    return m;
}

/// t2(a,b): (p1,p2+a,p3+b), [l1,l2-a,l3-b]; only for third equations of
/// the form h(p1, l1).
inline VertexMap translation_t2(const AdGraph& g, Elem a, Elem b) {
    if (!g.is_two_var()) throw std::invalid_argument("t2 needs a graph with third equation h(p1, l1)");
    const Field& F = g.field();
    VertexMap m;
    m.images.resize(g.vertex_count());
    for (vertex_id v = 0; v < g.vertex_count(); ++v) {
        VertexRef r = g.vertex(v);
        const bool pt = r.side == Side::point;
        r.coords[1] = pt ? F.add(r.coords[1], a) : F.sub(r.coords[1], a);
        r.coords[2] = pt ? F.add(r.coords[2], b) : F.sub(r.coords[2], b);
        m.images[v] = g.vertex_id_of(r);
    }
    return m;
}

namespace detail {

inline bool fixed_by_frobenius(const MultiPoly& poly) {
    for (const auto& [ex, c] : poly.terms())
        if (poly.field().frobenius(c) != c) return false;
    return true;
}

}  // namespace detail

/// Coordinate-wise p-th power on both sides.
inline VertexMap frobenius_map(const AdGraph& g) {
    bool ok = detail::fixed_by_frobenius(g.f());
    if (auto* t = std::get_if<ThreeVar>(&g.g_kind())) ok = ok && detail::fixed_by_frobenius(t->g);
    if (auto* t = std::get_if<TwoVar>(&g.g_kind())) ok = ok && detail::fixed_by_frobenius(t->h);
    if (!ok) throw std::invalid_argument("graph coefficients are not fixed by the Frobenius map");
    const Field& F = g.field();
    VertexMap m;
    m.images.resize(g.vertex_count());
    for (vertex_id v = 0; v < g.vertex_count(); ++v) {
        VertexRef r = g.vertex(v);
        for (unsigned i = 0; i < g.dim(); ++i) r.coords[i] = F.frobenius(r.coords[i]);
        m.images[v] = g.vertex_id_of(r);
    }
    return m;
}

/// Smallest k >= 1 with m^k = identity.
inline std::uint64_t map_order(const VertexMap& m) {
    std::vector<bool> done(m.size(), false);
    std::uint64_t order = 1;
    for (vertex_id v = 0; v < m.size(); ++v) {
        if (done[v]) continue;
        std::uint64_t len = 0;
        for (vertex_id w = v; !done[w]; w = m.images[w]) {
            done[w] = true;
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

/// Whether the bijection g1 -> g2 given by m maps every edge to an edge.
/// With equal edge counts this is an isomorphism.
template <NeighborGraph G1, NeighborGraph G2>
bool preserves_edges(const G1& g1, const G2& g2, const VertexMap& m) {
    for (vertex_id v = 0; v < g1.vertex_count(); ++v) {
        bool ok = true;
        g1.for_each_neighbor(v, [&](vertex_id u) { ok = ok && adjacent(g2, m.images[v], m.images[u]); });
        if (!ok) return false;
    }
    return true;
}

template <NeighborGraph G>
bool is_automorphism(const G& g, const VertexMap& m) {
    if (m.size() != g.vertex_count() || !m.is_bijection())
        throw std::invalid_argument("vertex map is not a bijection of the vertex set");
    return preserves_edges(g, g, m);
}

template <NeighborGraph G>
bool bipartition_preserved(const G& g, const VertexMap& m) {
    for (vertex_id v = 0; v < g.vertex_count(); ++v)
        if (g.side(m.images[v]) != g.side(v)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Individualization-refinement.

namespace detail {

struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), vertex_id{0}); }
    vertex_id find(vertex_id v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }
    bool unite(vertex_id a, vertex_id b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
    std::vector<vertex_id> parent;
};

/// Colors 0..k-1 given by the rank of each vertex's value.
inline std::vector<std::uint32_t> rank_colors(const std::vector<std::uint64_t>& values,
                                              const std::vector<std::uint64_t>& distinct) {
    std::vector<std::uint32_t> out(values.size());
    for (std::size_t v = 0; v < values.size(); ++v)
        out[v] = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), values[v]) -
                                            distinct.begin());
    return out;
}

inline std::vector<std::uint64_t> sorted_distinct(std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

struct IrNode {
    std::vector<std::uint32_t> color;
    std::uint32_t cells = 0;
    std::uint64_t inv = 0;
};

// Every step is a function of the colored graph alone, so isomorphic inputs
// give corresponding nodes with equal invariants.  Neighbor multisets are
// compared by a commutative hash; a collision only leaves a coarser
// partition, never a wrong answer, because leaves are checked edge by edge.
template <NeighborGraph G>
class IrEngine {
public:
    IrEngine(const G& g, std::uint64_t node_limit, std::uint64_t& nodes)
        : g_(g), n_(g.vertex_count()), node_limit_(node_limit), nodes_(nodes), hash_(n_), order_(n_) {}

    IrNode root(std::vector<std::uint32_t> colors) {
        IrNode node;
        node.cells = colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
        node.color = std::move(colors);
        refine(node);
        return node;
    }

    IrNode child(const IrNode& parent, vertex_id v) {
        IrNode node;
        node.color.resize(n_);
        const std::uint32_t cv = parent.color[v];
        for (vertex_id u = 0; u < n_; ++u) {
            const std::uint32_t c = parent.color[u];
            node.color[u] = c < cv ? c : c > cv ? c + 1 : (u == v ? cv : cv + 1);
        }
        node.cells = parent.cells + 1;
        node.inv = SplitMix64::mix(parent.inv ^ (0x5bd1e995ull * (cv + 1)));
        refine(node);
        return node;
    }

    bool discrete(const IrNode& node) const { return node.cells == n_; }

    /// Lowest color among the largest cells.  Smallest-cell selection gives
    /// long bases on the biaffine graph, with many levels whose stabilizer
    /// orbit is trivial, and every such level costs a full subtree search.
    std::uint32_t target_cell(const IrNode& node) const {
        std::vector<std::uint32_t> size(node.cells, 0);
        for (std::uint32_t c : node.color) ++size[c];
        std::uint32_t best = node.cells;
        for (std::uint32_t c = 0; c < node.cells; ++c)
            if (size[c] > 1 && (best == node.cells || size[c] > size[best])) best = c;
        return best;
    }

    std::vector<vertex_id> cell_members(const IrNode& node, std::uint32_t cell) const {
        std::vector<vertex_id> out;
        for (vertex_id v = 0; v < n_; ++v)
            if (node.color[v] == cell) out.push_back(v);
        return out;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    void refine(IrNode& node) {
        if (++nodes_ > node_limit_) throw search_limit_exceeded(node_limit_, 0);
        std::uint64_t inv = node.inv;
        for (;;) {
            for (vertex_id v = 0; v < n_; ++v) {
                std::uint64_t h = 0;
                g_.for_each_neighbor(v, [&](vertex_id u) { h += SplitMix64::mix(node.color[u] + 0x9E37ull); });
                hash_[v] = h;
            }
            std::iota(order_.begin(), order_.end(), vertex_id{0});
            std::sort(order_.begin(), order_.end(), [&](vertex_id a, vertex_id b) {
                if (node.color[a] != node.color[b]) return node.color[a] < node.color[b];
                return hash_[a] < hash_[b];
            });
            std::vector<std::uint32_t> next(n_);
            std::uint32_t cells = 0;
            std::uint64_t run = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                const vertex_id v = order_[i];
                if (i > 0) {
                    const vertex_id w = order_[i - 1];
                    if (node.color[v] != node.color[w] || hash_[v] != hash_[w]) {
                        inv = SplitMix64::mix(inv ^ hash_[w] ^ (run << 40));
                        ++cells;
                        run = 0;
                    }
                }
                next[v] = cells;
                ++run;
            }
            if (n_ > 0) {
                inv = SplitMix64::mix(inv ^ hash_[order_[n_ - 1]] ^ (run << 40));
                ++cells;
            }
            const bool stable = cells == node.cells;
            node.color = std::move(next);
            node.cells = cells;
            if (stable) break;
        }
        node.inv = SplitMix64::mix(inv ^ node.cells);
    }

    const G& g_;
    std::size_t n_;
    std::uint64_t node_limit_;
    std::uint64_t& nodes_;
    std::vector<std::uint64_t> hash_;
    std::vector<vertex_id> order_;
};

struct FirstPath {
    std::vector<IrNode> nodes;        // nodes[0] is the refined root
    std::vector<std::uint32_t> cells; // target cell at each non-leaf node
    std::vector<vertex_id> base;      // individualized vertices
};

template <NeighborGraph G>
FirstPath first_path(IrEngine<G>& eng, std::vector<std::uint32_t> colors) {
    FirstPath fp;
    fp.nodes.push_back(eng.root(std::move(colors)));
    while (!eng.discrete(fp.nodes.back())) {
        const std::uint32_t cell = eng.target_cell(fp.nodes.back());
        const vertex_id b = eng.cell_members(fp.nodes.back(), cell).front();
        fp.cells.push_back(cell);
        fp.base.push_back(b);
        fp.nodes.push_back(eng.child(fp.nodes.back(), b));
    }
    return fp;
}

/// Depth-first search below `node` (at `depth`) for a leaf accepted by
/// `accept`, following only nodes whose invariants match the first path.
/// `seq` holds the vertices individualized on the way to `node`; children in
/// one orbit of the known generators fixing `seq` pointwise have equivalent
/// subtrees, so one child per such orbit is explored.
template <NeighborGraph G, class Accept>
std::optional<VertexMap> find_leaf(IrEngine<G>& eng, const IrNode& node, std::size_t depth,
                                   const FirstPath& fp, std::vector<vertex_id>& seq,
                                   const std::vector<VertexMap>& gens, Accept&& accept) {
    if (depth >= fp.nodes.size() || node.inv != fp.nodes[depth].inv || node.cells != fp.nodes[depth].cells)
        return std::nullopt;
    if (eng.discrete(node)) return accept(node);
    const auto members = eng.cell_members(node, eng.target_cell(node));
    std::vector<const VertexMap*> fixing;
    for (const auto& m : gens)
        if (std::all_of(seq.begin(), seq.end(), [&](vertex_id v) { return m.images[v] == v; }))
            fixing.push_back(&m);
    std::optional<UnionFind> uf;
    if (!fixing.empty()) {
        uf.emplace(node.color.size());
        for (const VertexMap* m : fixing)
            for (vertex_id v : members) uf->unite(v, m->images[v]);
    }
    std::vector<char> tried(node.color.size(), 0);
    for (vertex_id u : members) {
        if (uf) {
            const vertex_id r = uf->find(u);
            if (tried[r]) continue;
            tried[r] = 1;
        }
        seq.push_back(u);
        auto r = find_leaf(eng, eng.child(node, u), depth + 1, fp, seq, gens, accept);
        seq.pop_back();
        if (r) return r;
    }
    return std::nullopt;
}

// Map sending the vertex colored c in `from` to the vertex colored c in `to`.
inline VertexMap leaf_map(const IrNode& from, const IrNode& to) {
    std::vector<vertex_id> pos(to.color.size());
    for (vertex_id v = 0; v < to.color.size(); ++v) pos[to.color[v]] = v;
    VertexMap m;
    m.images.resize(from.color.size());
    for (vertex_id v = 0; v < from.color.size(); ++v) m.images[v] = pos[from.color[v]];
    return m;
}

}  // namespace detail

struct AutOptions {
    std::uint64_t node_limit = 2'000'000;
    unsigned workers = 1;  // used for the initial r3 coloring
};

struct AutReport {
    big_int order = 1;
    std::vector<VertexMap> generators;
    std::size_t orbit_count_points = 0;
    std::size_t orbit_count_lines = 0;
    bool translation_only = false;
    std::vector<vertex_id> base;
    std::vector<std::uint64_t> base_orbit_sizes;
    std::uint64_t nodes = 0;
};

namespace detail {

template <NeighborGraph G>
bool is_translation_only(const G& g, const std::vector<VertexMap>& gens) {
    if constexpr (std::is_same_v<G, AdGraph>) {
        if (g.dim() != 3) return false;
        // translations form a group, so checking generators suffices
        for (const auto& m : gens) {
            const VertexRef img = g.vertex(m.images[0]);
            if (img.side != Side::point || img.coords[0].value != 0 || img.coords[1].value != 0) return false;
            if (!(m == translation_t3(g, img.coords[2]))) return false;
        }
        return true;
    } else {
        (void)g;
        (void)gens;
        return false;
    }
}

}  // namespace detail

template <NeighborGraph G>
AutReport aut_group(const G& g, const AutOptions& opt = {}) {
    const std::size_t n = g.vertex_count();
    const auto r3 = vertex_r3(g, opt.workers);
    std::uint64_t nodes = 0;
    detail::IrEngine<G> eng(g, opt.node_limit, nodes);
    AutReport rep;
    detail::UnionFind uf(n);
    try {
        const detail::FirstPath fp = detail::first_path(eng, detail::rank_colors(r3, detail::sorted_distinct(r3)));
        const detail::IrNode& leaf0 = fp.nodes.back();
        rep.base = fp.base;
        rep.base_orbit_sizes.assign(fp.base.size(), 1);

        for (std::size_t i = fp.base.size(); i-- > 0;) {
            const vertex_id b = fp.base[i];
            const auto cell = eng.cell_members(fp.nodes[i], fp.cells[i]);
            std::vector<vertex_id> rejected;
            std::vector<char> rejected_root(n, 0);
            for (vertex_id w : cell) {
                if (w == b || uf.find(w) == uf.find(b) || rejected_root[uf.find(w)]) continue;
                std::vector<vertex_id> seq(fp.base.begin(), fp.base.begin() + static_cast<std::ptrdiff_t>(i));
                seq.push_back(w);
                auto found = detail::find_leaf(eng, eng.child(fp.nodes[i], w), i + 1, fp, seq, rep.generators,
                                               [&](const detail::IrNode& leaf) -> std::optional<VertexMap> {
                                                   VertexMap m = detail::leaf_map(leaf0, leaf);
                                                   if (preserves_edges(g, g, m)) return m;
                                                   return std::nullopt;
                                               });
                if (found) {
                    for (vertex_id v = 0; v < n; ++v) uf.unite(v, found->images[v]);
                    rep.generators.push_back(std::move(*found));
                    std::fill(rejected_root.begin(), rejected_root.end(), 0);
                    for (vertex_id x : rejected) rejected_root[uf.find(x)] = 1;
                } else {
                    rejected.push_back(w);
                    rejected_root[uf.find(w)] = 1;
                }
            }
            std::uint64_t orbit = 0;
            for (vertex_id w : cell)
                if (uf.find(w) == uf.find(b)) ++orbit;
            rep.base_orbit_sizes[i] = orbit;
            rep.order *= orbit;
        }
    } catch (const search_limit_exceeded&) {
        throw search_limit_exceeded(opt.node_limit, rep.generators.size());
    }
    rep.nodes = nodes;

    std::vector<char> has_point(n, 0), has_line(n, 0);
    for (vertex_id v = 0; v < n; ++v) (g.side(v) == Side::point ? has_point : has_line)[uf.find(v)] = 1;
    rep.orbit_count_points = static_cast<std::size_t>(std::count(has_point.begin(), has_point.end(), 1));
    rep.orbit_count_lines = static_cast<std::size_t>(std::count(has_line.begin(), has_line.end(), 1));
    rep.translation_only = detail::is_translation_only(g, rep.generators);
    return rep;
}

struct IsoResult {
    bool isomorphic = false;
    std::optional<VertexMap> witness;  // g1 vertex -> g2 vertex
    std::string reason;                // why not, when a cheap invariant decided
    std::uint64_t nodes = 0;
};

template <NeighborGraph G1, NeighborGraph G2>
IsoResult are_isomorphic(const G1& g1, const G2& g2, const AutOptions& opt = {}) {
    IsoResult res;
    if (g1.vertex_count() != g2.vertex_count()) {
        res.reason = "vertex counts differ";
        return res;
    }
    std::uint64_t e1 = 0, e2 = 0;
    for (vertex_id v = 0; v < g1.vertex_count(); ++v) {
        g1.for_each_neighbor(v, [&](vertex_id) { ++e1; });
        g2.for_each_neighbor(v, [&](vertex_id) { ++e2; });
    }
    if (e1 != e2) {
        res.reason = "edge counts differ";
        return res;
    }
    const auto r1 = vertex_r3(g1, opt.workers);
    const auto r2 = vertex_r3(g2, opt.workers);
    {
        auto s1 = r1, s2 = r2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 != s2) {
            res.reason = "r3 multisets differ";
            return res;
        }
    }
    const auto distinct = detail::sorted_distinct(r1);
    std::uint64_t nodes1 = 0, nodes2 = 0;
    detail::IrEngine<G1> eng1(g1, opt.node_limit, nodes1);
    detail::IrEngine<G2> eng2(g2, opt.node_limit, nodes2);
    const detail::FirstPath fp = detail::first_path(eng1, detail::rank_colors(r1, distinct));
    const detail::IrNode& leaf1 = fp.nodes.back();
    // automorphisms of g2 make sibling subtrees in its search tree equivalent
    AutReport aut2 = aut_group(g2, opt);
    const std::vector<VertexMap> gens2 = std::move(aut2.generators);
    std::vector<vertex_id> seq;
    auto found = detail::find_leaf(eng2, eng2.root(detail::rank_colors(r2, distinct)), 0, fp, seq, gens2,
                                   [&](const detail::IrNode& leaf) -> std::optional<VertexMap> {
                                       VertexMap m = detail::leaf_map(leaf1, leaf);
                                       if (preserves_edges(g1, g2, m)) return m;
                                       return std::nullopt;
                                   });
    res.nodes = nodes1 + nodes2 + aut2.nodes;
    if (found) {
        res.isomorphic = true;
        res.witness = std::move(found);
    } else {
        res.reason = "no equivalent leaf in the search tree";
    }
    return res;
}

}  // namespace adg
