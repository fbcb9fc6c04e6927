#include <gtest/gtest.h>

#include <cstdint>
#include <numeric>
#include <vector>

#include "adgraph/aut_oracle.hpp"
#include "adgraph/graph_spec.hpp"
#include "adgraph/rng.hpp"
#include "adgraph/symmetry.hpp"

using namespace adg;

namespace {

AdGraph rigid(std::uint64_t q) {
    AdGraph g = make_rigid(Field::of_order(q));
    g.build_cache();
    return g;
}

std::vector<vertex_id> shuffled(std::size_t n, std::uint64_t seed) {
    std::vector<vertex_id> perm(n);
    std::iota(perm.begin(), perm.end(), vertex_id{0});
    SplitMix64 rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    return perm;
}

}  // namespace

TEST(Symmetry, TranslationsFormAGroupOfAutomorphisms) {
    const AdGraph r = rigid(7);
    const Field& f = r.field();
    EXPECT_TRUE(translation_t3(r, f.zero()).is_identity());
    for (Elem a : f.elements()) {
        const VertexMap ta = translation_t3(r, a);
        EXPECT_TRUE(is_automorphism(r, ta));
        EXPECT_TRUE(bipartition_preserved(r, ta));
        if (a.value) EXPECT_EQ(map_order(ta), 7u);
        for (Elem b : f.elements()) EXPECT_EQ(compose(ta, translation_t3(r, b)), translation_t3(r, f.add(a, b)));
    }
    const AdGraph gq = make_quadrangle(f);
    EXPECT_TRUE(is_automorphism(gq, translation_t2(gq, Elem{2}, Elem{5})));
    EXPECT_THROW(translation_t2(r, Elem{1}, Elem{1}), std::invalid_argument);
}

TEST(Symmetry, Frobenius) {
    EXPECT_TRUE(frobenius_map(rigid(7)).is_identity());
    for (std::uint64_t q : {9, 25}) {
        const AdGraph r = rigid(q);
        const VertexMap fr = frobenius_map(r);
        EXPECT_TRUE(is_automorphism(r, fr));
        EXPECT_EQ(map_order(fr), 2u);
    }
}

TEST(Symmetry, NonAutomorphismsAreRejected) {
    const AdGraph r = rigid(5);
    VertexMap m = VertexMap::identity(r.vertex_count());
    std::swap(m.images[0], m.images[1]);
    EXPECT_FALSE(is_automorphism(r, m));
    m.images[1] = 1;
    EXPECT_THROW(is_automorphism(r, m), std::invalid_argument);
}

TEST(Symmetry, GroupOrders) {
    const AutReport r7 = aut_group(rigid(7));
    EXPECT_EQ(r7.order, 7);
    EXPECT_TRUE(r7.translation_only);
    for (const VertexMap& g : r7.generators) EXPECT_TRUE(is_automorphism(rigid(7), g));
    EXPECT_EQ(aut_group(rigid(13)).order, 13);
    const AutReport b5 = aut_group(make_biaffine(make_field(5)));
    EXPECT_EQ(b5.order, 4000);
    EXPECT_FALSE(b5.translation_only);
    EXPECT_EQ(b5.orbit_count_points, 1u);
    EXPECT_EQ(b5.orbit_count_lines, 1u);
}

TEST(Symmetry, GroupOrdersMatchTheExhaustiveOracle) {
    for (std::uint64_t q : {3, 5, 7}) {
        const AdGraph r = rigid(q);
        EXPECT_EQ(aut_group(r).order, aut_group_oracle(r)) << "R q=" << q;
        const AdGraph b = make_biaffine(Field::of_order(q));
        EXPECT_EQ(aut_group(b).order, aut_group_oracle(b)) << "biaffine q=" << q;
    }
    const AdGraph gq = make_quadrangle(make_field(3));
    EXPECT_EQ(aut_group(gq).order, aut_group_oracle(gq));
    EXPECT_THROW(aut_group_oracle(rigid(13)), std::length_error);
}

TEST(Symmetry, OrderIsInvariantUnderRelabelling) {
    const AdGraph b = make_biaffine(make_field(5));
    const ExplicitGraph moved = ExplicitGraph::relabeled(b, shuffled(b.vertex_count(), 9));
    EXPECT_EQ(aut_group(moved).order, 4000);
}

TEST(Symmetry, OrderDividesTheTranslationCount) {
    for (std::uint64_t q : {5, 7, 9, 11}) {
        const AutReport rep = aut_group(rigid(q));
        EXPECT_EQ(rep.order % q, 0) << q;
    }
}

TEST(Symmetry, Isomorphism) {
    const AdGraph r = rigid(7);
    const ExplicitGraph moved = ExplicitGraph::relabeled(r, shuffled(r.vertex_count(), 4));
    const IsoResult yes = are_isomorphic(r, moved);
    ASSERT_TRUE(yes.isomorphic);
    ASSERT_TRUE(yes.witness.has_value());
    EXPECT_TRUE(preserves_edges(r, moved, *yes.witness));
    EXPECT_FALSE(are_isomorphic(r, make_quadrangle(make_field(7))).isomorphic);
    EXPECT_FALSE(are_isomorphic(r, rigid(5)).isomorphic);
    // the quadrangle spelled out as a family member
    const AdGraph spelled = make_family(make_field(7), "p1*l1", "p1*l1^2");
    EXPECT_TRUE(are_isomorphic(spelled, make_quadrangle(make_field(7))).isomorphic);
}

TEST(Symmetry, FrobeniusMovesTheFibres) {
    const AdGraph r = rigid(9);
    const Field& f = r.field();
    const VertexMap fr = frobenius_map(r);
    for (Elem a : f.elements()) {
        const vertex_id p = r.vertex_id_of(VertexRef::point(f.zero(), a, f.zero()));
        const VertexRef img = r.vertex(fr(p));
        EXPECT_EQ(img.coords[0], f.zero());
        EXPECT_EQ(img.coords[1], f.frobenius(a));
    }
}
