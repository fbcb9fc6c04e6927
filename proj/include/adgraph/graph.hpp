#pragma once

// Algebraically defined bipartite graphs.
//
// Dimension 3: a point (p1,p2,p3) and a line [l1,l2,l3] are adjacent iff
//   p2 + l2 = f(p1, l1)   and   p3 + l3 = g(p1, p2, l1)
// (or h(p1, l1) in place of g).  Dimension 2 keeps only the first equation.
// A neighbor is determined by its first coordinate, so every vertex has
// degree q.  Adjacency is evaluated from tabulated f, g; no edge lists.

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "adgraph/field.hpp"
#include "adgraph/poly.hpp"

namespace adg {

using vertex_id = std::uint32_t;

enum class Side : std::uint8_t { point = 0, line = 1 };

struct VertexRef {
    Side side = Side::point;
    std::uint8_t dim = 3;
    std::array<Elem, 3> coords{};

    static VertexRef point(Elem a, Elem b, Elem c) { return {Side::point, 3, {a, b, c}}; }
    static VertexRef line(Elem a, Elem b, Elem c) { return {Side::line, 3, {a, b, c}}; }
    static VertexRef point(Elem a, Elem b) { return {Side::point, 2, {a, b, Elem{}}}; }
    static VertexRef line(Elem a, Elem b) { return {Side::line, 2, {a, b, Elem{}}}; }

    Elem first() const { return coords[0]; }

    friend bool operator==(const VertexRef& a, const VertexRef& b) {
        if (a.side != b.side || a.dim != b.dim) return false;
        for (unsigned i = 0; i < a.dim; ++i)
            if (a.coords[i] != b.coords[i]) return false;
        return true;
    }
};

/// "(1,2,3)" for points, "[1,2,3]" for lines.
inline std::string to_string(const VertexRef& v) {
    std::string s(1, v.side == Side::point ? '(' : '[');
    for (unsigned i = 0; i < v.dim; ++i) {
        if (i) s += ',';
        s += std::to_string(v.coords[i].value);
    }
    s += v.side == Side::point ? ')' : ']';
    return s;
}

/// Third equation uses g(p1, p2, l1).
struct ThreeVar {
    MultiPoly g;
};
/// Third equation uses h(p1, l1).
struct TwoVar {
    MultiPoly h;
};
using GKind = std::variant<std::monostate, ThreeVar, TwoVar>;

template <class G>
concept NeighborGraph = requires(const G& g, vertex_id v, void (*fn)(vertex_id)) {
    { g.vertex_count() } -> std::convertible_to<std::size_t>;
    { g.side(v) } -> std::same_as<Side>;
    g.for_each_neighbor(v, fn);
};

class AdGraph {
public:
    AdGraph(Field field, MultiPoly f, GKind g_kind, std::string label = {})
        : field_(std::move(field)), f_(std::move(f)), g_kind_(std::move(g_kind)),
          label_(std::move(label)) {
        if (f_.arity() != 2) throw arity_error("f must have arity 2");
        if (!(f_.field() == field_)) throw arity_error("f is over a different field");
        dim_ = std::holds_alternative<std::monostate>(g_kind_) ? 2 : 3;
        if (auto* t = std::get_if<ThreeVar>(&g_kind_); t && t->g.arity() != 3)
            throw arity_error("g must have arity 3");
        if (auto* t = std::get_if<TwoVar>(&g_kind_); t && t->h.arity() != 2)
            throw arity_error("h must have arity 2");
        q_ = field_.q();
        per_side_ = 1;
        for (unsigned i = 0; i < dim_; ++i) per_side_ *= q_;
        if (std::uint64_t{per_side_} * 2 > std::numeric_limits<vertex_id>::max())
            throw std::length_error("graph too large for 32-bit vertex ids");
        tabulate();
    }

    const Field& field() const { return field_; }
    const MultiPoly& f() const { return f_; }
    const GKind& g_kind() const { return g_kind_; }
    const std::string& label() const { return label_; }
    unsigned dim() const { return dim_; }
    std::uint32_t q() const { return q_; }
    std::size_t vertex_count() const { return 2 * std::size_t{per_side_}; }
    std::size_t side_size() const { return per_side_; }
    std::uint32_t degree(vertex_id) const { return q_; }
    bool is_three_var() const { return std::holds_alternative<ThreeVar>(g_kind_); }
    bool is_two_var() const { return std::holds_alternative<TwoVar>(g_kind_); }

    Side side(vertex_id v) const { return v < per_side_ ? Side::point : Side::line; }

    vertex_id vertex_id_of(const VertexRef& v) const {
        if (v.dim != dim_) throw std::invalid_argument("vertex dimension differs from graph");
        vertex_id id = 0;
        for (unsigned i = 0; i < dim_; ++i) {
            if (v.coords[i].value >= q_) throw field_error("coordinate outside the field");
            id = id * q_ + v.coords[i].value;
        }
        return (v.side == Side::line ? per_side_ : 0) + id;
    }

    VertexRef vertex(vertex_id id) const {
        if (id >= vertex_count()) throw std::out_of_range("vertex id out of range");
        VertexRef v;
        v.dim = static_cast<std::uint8_t>(dim_);
        v.side = side(id);
        std::uint32_t rest = id % per_side_;
        for (unsigned i = dim_; i-- > 0;) {
            v.coords[i] = Elem{rest % q_};
            rest /= q_;
        }
        return v;
    }

    /// Neighbor of v whose first coordinate is `first`.
    VertexRef neighbor(const VertexRef& v, Elem first) const {
        if (first.value >= q_) throw field_error("coordinate outside the field");
        return vertex(neighbor_id(vertex_id_of(v), first.value));
    }

    /// All q neighbors ordered by first coordinate.
    std::vector<VertexRef> neighbors(const VertexRef& v) const {
        std::vector<VertexRef> out;
        out.reserve(q_);
        const vertex_id id = vertex_id_of(v);
        for (std::uint32_t c = 0; c < q_; ++c) out.push_back(vertex(neighbor_id(id, c)));
        return out;
    }

    vertex_id neighbor_id(vertex_id id, std::uint32_t first) const {
        if (!cache_.empty()) return cache_[std::size_t{id} * q_ + first];
        return compute_neighbor(id, first);
    }

    template <class Fn>
    void for_each_neighbor(vertex_id id, Fn&& fn) const {
        if (!cache_.empty()) {
            const vertex_id* row = cache_.data() + std::size_t{id} * q_;
            for (std::uint32_t c = 0; c < q_; ++c) fn(row[c]);
        } else {
            for (std::uint32_t c = 0; c < q_; ++c) fn(compute_neighbor(id, c));
        }
    }

    bool adjacent(vertex_id u, vertex_id v) const {
        if (side(u) == side(v)) return false;
        return neighbor_id(u, first_coord(v)) == v;
    }

    std::uint32_t first_coord(vertex_id id) const { return (id % per_side_) / (per_side_ / q_); }

    /// Materializes the (vertex_count x q) neighbor table.  Call before the
    /// graph is shared between threads.
    void build_cache() {
        if (!cache_.empty()) return;
        std::vector<vertex_id> table(vertex_count() * q_);
        for (vertex_id v = 0; v < vertex_count(); ++v)
            for (std::uint32_t c = 0; c < q_; ++c) table[std::size_t{v} * q_ + c] = compute_neighbor(v, c);
        cache_ = std::move(table);
    }
    bool has_cache() const { return !cache_.empty(); }

    /// Value of f(p1, l1) and of the third-equation function.
    std::uint32_t f_value(std::uint32_t p1, std::uint32_t l1) const { return f_tab_[p1 * q_ + l1]; }
    std::uint32_t g_value(std::uint32_t p1, std::uint32_t p2, std::uint32_t l1) const {
        if (is_three_var()) return g_tab_[(std::size_t{p1} * q_ + p2) * q_ + l1];
        return g_tab_[std::size_t{p1} * q_ + l1];
    }

private:
    void tabulate() {
        f_tab_.resize(std::size_t{q_} * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = 0; b < q_; ++b)
                f_tab_[a * q_ + b] = static_cast<std::uint32_t>(f_.eval({Elem{a}, Elem{b}}).value);
        if (auto* t = std::get_if<ThreeVar>(&g_kind_)) {
            if (!(t->g.field() == field_)) throw arity_error("g is over a different field");
            g_tab_.resize(std::size_t{q_} * q_ * q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t b = 0; b < q_; ++b)
                    for (std::uint32_t c = 0; c < q_; ++c)
                        g_tab_[(std::size_t{a} * q_ + b) * q_ + c] = t->g.eval({Elem{a}, Elem{b}, Elem{c}}).value;
        } else if (auto* h = std::get_if<TwoVar>(&g_kind_)) {
            if (!(h->h.field() == field_)) throw arity_error("h is over a different field");
            g_tab_.resize(std::size_t{q_} * q_);
            for (std::uint32_t a = 0; a < q_; ++a)
                for (std::uint32_t c = 0; c < q_; ++c)
                    g_tab_[std::size_t{a} * q_ + c] = h->h.eval({Elem{a}, Elem{c}}).value;
        }
    }

    vertex_id compute_neighbor(vertex_id id, std::uint32_t first) const {
        const bool is_point = id < per_side_;
        std::uint32_t rest = is_point ? id : id - per_side_;
        std::uint32_t c[3];
        for (unsigned i = dim_; i-- > 0;) {
            c[i] = rest % q_;
            rest /= q_;
        }
        std::uint32_t out[3];
        out[0] = first;
        // point (c) -> line [first, ...]; line [c] -> point (first, ...)
        const std::uint32_t p1 = is_point ? c[0] : first;
        const std::uint32_t l1 = is_point ? first : c[0];
        out[1] = field_.sub(Elem{f_value(p1, l1)}, Elem{c[1]}).value;
        if (dim_ == 3) {
            const std::uint32_t p2 = is_point ? c[1] : out[1];
            out[2] = field_.sub(Elem{g_value(p1, p2, l1)}, Elem{c[2]}).value;
        }
        vertex_id nid = 0;
        for (unsigned i = 0; i < dim_; ++i) nid = nid * q_ + out[i];
        return is_point ? nid + per_side_ : nid;
    }

    Field field_;
    MultiPoly f_;
    GKind g_kind_;
    std::string label_;
    unsigned dim_ = 3;
    std::uint32_t q_ = 0;
    std::uint32_t per_side_ = 0;
    std::vector<std::uint32_t> f_tab_;
    std::vector<std::uint32_t> g_tab_;
    std::vector<vertex_id> cache_;
};

inline AdGraph build_graph(const Field& field, const MultiPoly& f, const GKind& g_kind,
                           std::string label = {}) {
    return AdGraph(field, f, g_kind, std::move(label));
}

/// Drops the third coordinate: the q-to-1 covering of the dimension-2 graph.
inline VertexRef covering_map(const VertexRef& v) {
    if (v.dim != 3) throw std::invalid_argument("covering map needs a 3-dimensional vertex");
    VertexRef r = v;
    r.dim = 2;
    r.coords[2] = Elem{};
    return r;
}

/// Plain adjacency-list graph; used for relabelled copies and test fixtures.
class ExplicitGraph {
public:
    ExplicitGraph(std::vector<std::vector<vertex_id>> adjacency, std::vector<Side> sides)
        : adj_(std::move(adjacency)), sides_(std::move(sides)) {
        if (adj_.size() != sides_.size()) throw std::invalid_argument("side vector length mismatch");
        for (auto& row : adj_) std::sort(row.begin(), row.end());
    }

    static ExplicitGraph from_edges(std::size_t n, const std::vector<std::pair<vertex_id, vertex_id>>& edges,
                                    std::vector<Side> sides) {
        std::vector<std::vector<vertex_id>> adj(n);
        for (auto [u, v] : edges) {
            adj.at(u).push_back(v);
            adj.at(v).push_back(u);
        }
        return ExplicitGraph(std::move(adj), std::move(sides));
    }

    /// Copy of g with vertex v renamed to perm[v].
    template <NeighborGraph G>
    static ExplicitGraph relabeled(const G& g, const std::vector<vertex_id>& perm) {
        const std::size_t n = g.vertex_count();
        std::vector<std::vector<vertex_id>> adj(n);
        std::vector<Side> sides(n);
        for (vertex_id v = 0; v < n; ++v) {
            sides[perm[v]] = g.side(v);
            g.for_each_neighbor(v, [&](vertex_id w) { adj[perm[v]].push_back(perm[w]); });
        }
        return ExplicitGraph(std::move(adj), std::move(sides));
    }

    std::size_t vertex_count() const { return adj_.size(); }
    Side side(vertex_id v) const { return sides_[v]; }
    std::uint32_t degree(vertex_id v) const { return static_cast<std::uint32_t>(adj_[v].size()); }

    template <class Fn>
    void for_each_neighbor(vertex_id v, Fn&& fn) const {
        for (vertex_id w : adj_[v]) fn(w);
    }

    bool adjacent(vertex_id u, vertex_id v) const {
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

private:
    std::vector<std::vector<vertex_id>> adj_;
    std::vector<Side> sides_;
};

template <NeighborGraph G>
bool adjacent(const G& g, vertex_id u, vertex_id v) {
    if constexpr (requires { g.adjacent(u, v); }) {
        return g.adjacent(u, v);
    } else {
        bool found = false;
        g.for_each_neighbor(u, [&](vertex_id w) { found = found || w == v; });
        return found;
    }
}

}  // namespace adg
