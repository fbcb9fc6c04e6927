#include <gtest/gtest.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "adgraph/graph.hpp"
#include "adgraph/graph_spec.hpp"

using namespace adg;

namespace {

// Adjacency straight from the defining equations
//   p2 + l2 = p1 l1,   p3 + l3 = p1 p2 l1 (p1 + p2 + p1 p2)
bool rigid_edge(const Field& f, const VertexRef& p, const VertexRef& l) {
    const Elem p1 = p.coords[0], p2 = p.coords[1], p3 = p.coords[2];
    const Elem l1 = l.coords[0], l2 = l.coords[1], l3 = l.coords[2];
    const Elem g = f.mul(f.mul(f.mul(p1, p2), l1), f.add(f.add(p1, p2), f.mul(p1, p2)));
    return f.add(p2, l2) == f.mul(p1, l1) && f.add(p3, l3) == g;
}

std::size_t edge_count(const AdGraph& g) {
    std::size_t e = 0;
    for (vertex_id v = 0; v < g.vertex_count(); ++v) g.for_each_neighbor(v, [&](vertex_id) { ++e; });
    return e / 2;
}

}  // namespace

TEST(Graph, Sizes) {
    const AdGraph r = make_rigid(make_field(7));
    EXPECT_EQ(r.vertex_count(), 686u);
    EXPECT_EQ(r.dim(), 3u);
    EXPECT_EQ(edge_count(r), 343u * 7);
    const AdGraph b = make_biaffine(make_field(5));
    EXPECT_EQ(b.vertex_count(), 50u);
    EXPECT_EQ(b.dim(), 2u);
    const AdGraph gq = make_quadrangle(make_field(7));
    EXPECT_EQ(gq.vertex_count(), 686u);
    EXPECT_TRUE(gq.is_two_var());
    EXPECT_TRUE(r.is_three_var());
}

TEST(Graph, NeighborExamples) {
    const Field f = make_field(7);
    const AdGraph r = make_rigid(f);
    EXPECT_EQ(r.neighbor(VertexRef::point(Elem{1}, Elem{2}, Elem{3}), Elem{4}),
              VertexRef::line(Elem{4}, Elem{2}, Elem{2}));
    for (Elem a : f.elements())
        for (Elem rr : f.elements())
            for (Elem x : f.elements())
                EXPECT_EQ(r.neighbor(VertexRef::point(f.zero(), a, rr), x), VertexRef::line(x, f.neg(a), f.neg(rr)));
    std::set<std::uint32_t> firsts;
    for (const VertexRef& n : r.neighbors(VertexRef::line(f.zero(), f.zero(), f.zero()))) {
        EXPECT_EQ(n.side, Side::point);
        EXPECT_EQ(n.coords[1], f.zero());
        EXPECT_EQ(n.coords[2], f.zero());
        firsts.insert(n.coords[0].value);
    }
    EXPECT_EQ(firsts.size(), 7u);
}

TEST(Graph, AdjacencyMatchesEquations) {
    const Field f = make_field(5);
    const AdGraph r = make_rigid(f);
    const std::size_t side = r.side_size();
    for (vertex_id p = 0; p < side; ++p)
        for (vertex_id l = side; l < 2 * side; ++l) {
            const bool expect = rigid_edge(f, r.vertex(p), r.vertex(l));
            ASSERT_EQ(r.adjacent(p, l), expect);
            ASSERT_EQ(r.adjacent(l, p), expect);
        }
}

TEST(Graph, NeighborIsAnInvolutionOnFirstCoordinates) {
    for (std::uint64_t q : {7, 9}) {
        const Field f = Field::of_order(q);
        for (const AdGraph& g : {make_rigid(f), make_quadrangle(f), make_biaffine(f)})
            for (vertex_id v = 0; v < g.vertex_count(); ++v) {
                const VertexRef vr = g.vertex(v);
                for (Elem c : f.elements()) ASSERT_EQ(g.neighbor(g.neighbor(vr, c), vr.first()), vr);
            }
    }
}

TEST(Graph, RegularSimpleAndBipartite) {
    for (std::uint64_t q : {3, 5, 7, 9, 11, 13}) {
        const AdGraph g = make_rigid(Field::of_order(q));
        for (vertex_id v = 0; v < g.vertex_count(); ++v) {
            std::set<vertex_id> seen;
            g.for_each_neighbor(v, [&](vertex_id w) {
                EXPECT_NE(g.side(w), g.side(v));
                EXPECT_TRUE(g.adjacent(w, v));
                seen.insert(w);
            });
            ASSERT_EQ(seen.size(), q) << "q=" << q << " v=" << v;
        }
    }
}

TEST(Graph, NeighborCacheAgrees) {
    const Field f = make_field(7);
    const AdGraph plain = make_rigid(f);
    AdGraph cached = make_rigid(f);
    cached.build_cache();
    EXPECT_TRUE(cached.has_cache());
    for (vertex_id v = 0; v < plain.vertex_count(); ++v) {
        std::vector<vertex_id> a, b;
        plain.for_each_neighbor(v, [&](vertex_id w) { a.push_back(w); });
        cached.for_each_neighbor(v, [&](vertex_id w) { b.push_back(w); });
        ASSERT_EQ(a, b);
    }
}

TEST(Graph, VertexIds) {
    const Field f = make_field(7);
    const AdGraph r = make_rigid(f);
    EXPECT_EQ(r.vertex_id_of(VertexRef::point(f.zero(), f.zero(), f.zero())), 0u);
    EXPECT_EQ(r.vertex_id_of(VertexRef::line(f.zero(), f.zero(), f.zero())), 343u);
    for (vertex_id v = 0; v < r.vertex_count(); ++v) ASSERT_EQ(r.vertex_id_of(r.vertex(v)), v);
    EXPECT_EQ(to_string(r.vertex(343 + 7 * 1 + 2)), "[0,1,2]");
    EXPECT_EQ(to_string(r.vertex(1)), "(0,0,1)");
}

TEST(Graph, CoveringMap) {
    const Field f = make_field(7);
    EXPECT_EQ(covering_map(VertexRef::point(Elem{1}, Elem{2}, Elem{3})), VertexRef::point(Elem{1}, Elem{2}));
    EXPECT_THROW(covering_map(VertexRef::point(Elem{1}, Elem{2})), std::invalid_argument);
    for (const AdGraph& g : {make_rigid(f), make_quadrangle(f)}) {
        const AdGraph base = make_biaffine(f);
        std::map<vertex_id, int> fibre;
        for (vertex_id v = 0; v < g.vertex_count(); ++v) {
            const vertex_id bv = base.vertex_id_of(covering_map(g.vertex(v)));
            ++fibre[bv];
            g.for_each_neighbor(v, [&](vertex_id w) {
                ASSERT_TRUE(base.adjacent(bv, base.vertex_id_of(covering_map(g.vertex(w)))));
            });
        }
        EXPECT_EQ(fibre.size(), base.vertex_count());
        for (auto [v, n] : fibre) EXPECT_EQ(n, 7);
    }
}

TEST(GraphSpec, ParsingAndAliases) {
    const GraphSpec r = parse_graph_spec("R");
    EXPECT_EQ(r.f, "p1*l1");
    EXPECT_EQ(r.g, std::string(rigid_g));
    EXPECT_TRUE(parse_graph_spec("BIAFFINE").g.empty());
    const GraphSpec s = parse_graph_spec(" q=9, e=2 ; f = p1*l1 ; g = p1*l1^2 ");
    EXPECT_EQ(s.q, 9u);
    EXPECT_EQ(s.e, 2u);
    EXPECT_EQ(s.canonical(9), "q=9;f=p1*l1;g=p1*l1^2");
    EXPECT_TRUE(make_graph("q=7;f=p1*l1;g=p1*l1^2").is_two_var());
    EXPECT_TRUE(make_graph("q=7;f=p1*l1;g=p2*l1").is_three_var());
    EXPECT_EQ(make_graph("q=5;f=p1*l1").dim(), 2u);
    EXPECT_EQ(make_graph("R", 7).vertex_count(), 686u);
}

TEST(GraphSpec, Errors) {
    EXPECT_THROW(parse_graph_spec("q=7;h=p1"), parse_error);
    EXPECT_THROW(parse_graph_spec("q=7"), parse_error);
    EXPECT_THROW(parse_graph_spec("q=x;f=p1*l1"), parse_error);
    EXPECT_THROW(make_graph("R"), parse_error);
    EXPECT_THROW(make_graph("q=7;f=p1*l1", 5), parse_error);
    EXPECT_THROW(make_graph("q=9,e=1;f=p1*l1"), parse_error);
    EXPECT_THROW(make_graph("q=7;f=p1*l3"), parse_error);
    EXPECT_THROW(make_graph("R", 8), field_error);
}

TEST(ExplicitGraph, EdgesAndRelabel) {
    const auto k22 = ExplicitGraph::from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}},
                                               {Side::point, Side::point, Side::line, Side::line});
    EXPECT_TRUE(adjacent(k22, 0, 3));
    EXPECT_FALSE(adjacent(k22, 0, 1));
    const auto moved = ExplicitGraph::relabeled(k22, {3, 2, 1, 0});
    EXPECT_TRUE(adjacent(moved, 3, 0));
    EXPECT_EQ(moved.side(3), Side::point);
    EXPECT_EQ(moved.degree(0), 2u);
}
