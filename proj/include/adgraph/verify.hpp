#pragma once

// Claim suites.  Each claim id names one computer-checkable statement about
// the graphs and polynomials built here; verify_claim runs it at one field
// order and records expected and computed values.  Every check is exact.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "adgraph/aut_oracle.hpp"
#include "adgraph/graph_spec.hpp"
#include "adgraph/metrics.hpp"
#include "adgraph/parallel.hpp"
#include "adgraph/poly.hpp"
#include "adgraph/rng.hpp"
#include "adgraph/symmetry.hpp"

namespace adg {

using json = nlohmann::json;

struct VerifyOptions {
    std::uint64_t seed = SplitMix64::default_seed;
    unsigned workers = 1;
    std::size_t path_samples = 1000;     // eq2.path
    std::size_t jpoly_samples = 500;     // hd.criterion beyond the exhaustive range
    std::size_t identity_samples = 200;  // hd.identities, jpoly.not_pp, jpoly.valueset
    bool any_residue = false;            // run residue-restricted claims at every q
    std::uint64_t node_limit = 2'000'000;
    // Optional census source (the CLI plugs its cache in here).
    std::function<R3Census(const AdGraph&)> census;
};

struct ClaimResult {
    std::string claim_id;
    std::uint64_t q = 0;
    std::string status;  // passed | failed | inadmissible | error
    bool passed = false;
    bool evidence = false;  // a mismatch is reported but does not fail the run
    json expected;
    json computed;
    std::string detail;
    std::optional<std::uint64_t> seed;
    std::uint64_t runtime_ms = 0;
};

struct ClaimInfo {
    std::string id;
    std::string checks;
    bool evidence = false;
    bool in_all = true;  // sub-claims run only when named
    bool sampled = false;
    // nullopt when q is admissible, otherwise the violated constraint
    std::function<std::optional<std::string>(const Field&, const VerifyOptions&)> admissible;
    std::function<void(const Field&, const VerifyOptions&, SplitMix64&, ClaimResult&)> run;
};

namespace detail {

inline AdGraph cached_rigid(const Field& F) {
    AdGraph g = make_rigid(F);
    g.build_cache();
    return g;
}

inline R3Census census_of(const AdGraph& g, const VerifyOptions& opt) {
    return opt.census ? opt.census(g) : r3_census(g, opt.workers, opt.seed);
}

inline std::optional<std::string> any_q(const Field&, const VerifyOptions&) { return std::nullopt; }

inline std::optional<std::string> need_min(const Field& F, std::uint64_t lo) {
    if (F.q() < lo) return "requires q >= " + std::to_string(lo);
    return std::nullopt;
}

inline std::optional<std::string> need_residue(const Field& F, const VerifyOptions& opt, std::uint64_t lo) {
    if (auto r = need_min(F, lo)) return r;
    if (F.q() % 3 != 1 && !opt.any_residue) return "requires q = 1 mod 3 (pass --any-residue to run anyway)";
    return std::nullopt;
}

inline std::vector<vertex_id> ids_of(const AdGraph& g, const std::vector<VertexRef>& refs) {
    std::vector<vertex_id> out;
    for (const auto& r : refs) out.push_back(g.vertex_id_of(r));
    std::sort(out.begin(), out.end());
    return out;
}

inline JPoly random_jpoly(const Field& F, SplitMix64& rng) {
    return {Elem{static_cast<std::uint32_t>(rng.below(F.q()))}, Elem{static_cast<std::uint32_t>(rng.below(F.q()))},
            Elem{static_cast<std::uint32_t>(rng.below(F.q()))}};
}

inline json jpoly_json(const JPoly& j) { return json::array({j.c2.value, j.c1.value, j.cm1.value}); }

// ---- census claims -------------------------------------------------------

inline void run_prop31(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    const std::int64_t q = F.q();
    const auto c = census_of(cached_rigid(F), opt);
    const std::uint64_t v010 = c.at(Side::line, F.zero(), F.one(), F.q()).r3;
    const std::uint64_t v000 = c.at(Side::line, F.zero(), F.zero(), F.q()).r3;
    const std::int64_t e010 = q * q * q - 4 * q * q + 9 * q - 8;
    const std::int64_t e000 = q * q * q - 4 * q * q + 8 * q - 6;
    r.expected = {{"r3_line_0_1_0", e010}, {"r3_line_0_0_0", e000}};
    r.computed = {{"r3_line_0_1_0", v010}, {"r3_line_0_0_0", v000}};
    r.passed = static_cast<std::int64_t>(v010) == e010 && static_cast<std::int64_t>(v000) == e000;
}

inline void run_thm32(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    const auto c = census_of(cached_rigid(F), opt);
    const std::uint64_t v010 = c.at(Side::line, F.zero(), F.one(), F.q()).r3;
    const std::uint64_t v000 = c.at(Side::line, F.zero(), F.zero(), F.q()).r3;
    std::uint64_t other_line = 0, point = 0;
    for (const auto& e : c.entries) {
        if (e.side == Side::point) point = std::max(point, e.r3);
        else if (!(e.A.value == 0 && (e.B.value == 0 || e.B == F.one()))) other_line = std::max(other_line, e.r3);
    }
    r.expected = "max over other line classes < r3[0,0,0] < r3[0,1,0]; max over point classes < r3[0,0,0]";
    r.computed = {{"r3_line_0_1_0", v010},
                  {"r3_line_0_0_0", v000},
                  {"max_other_line", other_line},
                  {"max_point", point},
                  {"classes", c.entries.size()}};
    r.passed = other_line < v000 && v000 < v010 && point < v000;
}

// ---- automorphism claims -------------------------------------------------

inline void run_thm21(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    const AutReport aut = aut_group(R, {opt.node_limit, opt.workers});
    bool verified = true, sides = true;
    for (const auto& m : aut.generators) {
        verified = verified && is_automorphism(R, m);
        sides = sides && bipartition_preserved(R, m);
    }
    const big_int q2 = big_int(F.q()) * F.q();
    const bool not_q2 = aut.order % q2 != 0;
    r.expected = {{"order", std::to_string(F.p())}, {"translation_only", true}};
    r.computed = {{"order", aut.order.str()},
                  {"translation_only", aut.translation_only},
                  {"generators", aut.generators.size()},
                  {"generators_verified", verified},
                  {"bipartition_preserved", sides},
                  {"order_not_divisible_by_q2", not_q2}};
    bool oracle_ok = true;
    if (R.vertex_count() <= oracle_vertex_limit) {
        const big_int o = aut_group_oracle(R);
        r.computed["oracle_order"] = o.str();
        oracle_ok = o == aut.order;
    } else {
        r.computed["oracle_order"] = nullptr;
    }
    r.passed = aut.order == F.p() && aut.translation_only && verified && sides && not_q2 && oracle_ok;
}

inline void run_conj51(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    const AutReport aut = aut_group(R, {opt.node_limit, opt.workers});
    const big_int want = big_int(F.e()) * F.q();
    r.expected = {{"order", want.str()}};
    r.computed = {{"order", aut.order.str()}, {"translation_only", aut.translation_only}};
    r.passed = aut.order == want;
}

inline void run_viglione(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    AdGraph g = make_biaffine(F);
    g.build_cache();
    const AutReport aut = aut_group(g, {opt.node_limit, opt.workers});
    const big_int q = F.q();
    const big_int want = 2 * big_int(F.e()) * q * q * q * (q - 1) * (q - 1);
    r.expected = {{"order", want.str()}};
    r.computed = {{"order", aut.order.str()}, {"generators", aut.generators.size()}};
    r.passed = aut.order == want;
}

inline void run_frobenius(const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    const VertexMap m = frobenius_map(R);
    const bool aut = is_automorphism(R, m);
    const std::uint64_t order = map_order(m);
    const bool sides = bipartition_preserved(R, m);
    r.expected = {{"automorphism", true}, {"order", F.e()}, {"bipartition_preserved", true}};
    r.computed = {{"automorphism", aut}, {"order", order}, {"bipartition_preserved", sides}};
    r.passed = aut && order == F.e() && sides;
}

inline void run_fixed_sets(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    const AutReport aut = aut_group(R, {opt.node_limit, opt.workers});
    const Elem zero = F.zero();
    auto image = [](const VertexMap& m, std::vector<vertex_id> s) {
        for (auto& v : s) v = m.images[v];
        std::sort(s.begin(), s.end());
        return s;
    };
    const auto L0 = special_set(R, SpecialKind::lines_L, zero);
    const auto L1 = special_set(R, SpecialKind::lines_L, F.one());
    std::vector<std::vector<vertex_id>> P;
    for (Elem a : F.elements()) P.push_back(special_set(R, SpecialKind::points_P, a));
    bool l0 = true, l1 = true, p0 = true, pab = true, paa = true;
    for (const auto& m : aut.generators) {
        l0 = l0 && image(m, L0) == L0;
        l1 = l1 && image(m, L1) == L1;
        p0 = p0 && image(m, P[0]) == P[0];
        for (std::size_t a = 0; a < P.size(); ++a) {
            const auto img = image(m, P[a]);
            const auto hit = std::find(P.begin(), P.end(), img);
            pab = pab && hit != P.end();
            paa = paa && img == P[a];
        }
    }
    r.expected = {{"L0_fixed", true}, {"L1_fixed", true}, {"P0_fixed", true}, {"Pa_onto_some_Pb", true}};
    r.computed = {{"generators", aut.generators.size()},
                  {"group_order", aut.order.str()},
                  {"L0_fixed", l0},
                  {"L1_fixed", l1},
                  {"P0_fixed", p0},
                  {"Pa_onto_some_Pb", pab},
                  {"Pa_onto_Pa", paa}};
    r.passed = l0 && l1 && p0 && pab && (!aut.translation_only || paa);
}

// ---- distance claims -----------------------------------------------------

struct Tally {
    std::uint64_t checked = 0, violations = 0;
    json to_json() const { return {{"checked", checked}, {"violations", violations}}; }
};

// Parts (i) and (iii) are invariant under the third-coordinate translations,
// so sources with third coordinate 0 cover every vertex.

// Vertices at distance 2 have distinct first components.
inline Tally lemma41_i(const AdGraph& R) {
    Tally t;
    BfsWorkspace ws(R.vertex_count());
    for (vertex_id v : translation_representatives(R)) {
        const auto prof = bfs_profile(R, v, 2, true, ws);
        for (vertex_id w : prof.level_sets[1]) {
            ++t.checked;
            if (R.first_coord(w) == R.first_coord(v)) ++t.violations;
        }
    }
    return t;
}

// (0,b,r) and (0,c,s) are at distance 4 whenever b != c.
inline Tally lemma41_ii(const AdGraph& R) {
    const Field& F = R.field();
    Tally t;
    BfsWorkspace ws(R.vertex_count());
    for (Elem b : F.elements())
        for (Elem rr : F.elements()) {
            const vertex_id src = R.vertex_id_of(VertexRef::point(F.zero(), b, rr));
            const auto prof = bfs_profile(R, src, 4, true, ws);
            const auto& lvl4 = prof.level_sets[3];
            for (Elem c : F.elements()) {
                if (c == b) continue;
                for (Elem s : F.elements()) {
                    ++t.checked;
                    const vertex_id dst = R.vertex_id_of(VertexRef::point(F.zero(), c, s));
                    if (!std::binary_search(lvl4.begin(), lvl4.end(), dst)) ++t.violations;
                }
            }
        }
    return t;
}

// [x,y,r], [x,y,s] (and the points alike) are at distance >= 6 for r != s.
inline Tally lemma41_iii(const AdGraph& R) {
    Tally t;
    const std::uint32_t q = R.q();
    BfsWorkspace ws(R.vertex_count());
    for (vertex_id v : translation_representatives(R)) {
        bfs_profile(R, v, 5, false, ws);
        const vertex_id block = v - v % q;  // same side, same first two coordinates
        for (vertex_id w = block; w < block + q; ++w) {
            if (w == v) continue;
            ++t.checked;
            if (ws.seen(w)) ++t.violations;
        }
    }
    return t;
}

inline void run_lemma41_part(int part, const Field& F, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    static const char* names[] = {"i", "ii", "iii"};
    json computed = json::object();
    bool ok = true;
    for (int k = 0; k < 3; ++k) {
        if (part >= 0 && part != k) continue;
        const Tally t = k == 0 ? lemma41_i(R) : k == 1 ? lemma41_ii(R) : lemma41_iii(R);
        computed[names[k]] = t.to_json();
        ok = ok && t.violations == 0 && t.checked > 0;
    }
    r.expected = "zero violations";
    r.computed = std::move(computed);
    r.passed = ok;
}

inline void run_special_sets(const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    std::uint64_t fan_bad = 0, core_bad = 0, meet_bad = 0, la_bad = 0;
    for (Elem x : F.elements()) {
        std::vector<VertexRef> fan, core, meet;
        for (Elem y : F.elements()) {
            if (y.value != 0) fan.push_back(VertexRef::point(y, F.zero(), x));
            core.push_back(VertexRef::point(F.zero(), y, x));
            if (y.value != 0) meet.push_back(VertexRef::line(y, F.add(x, F.one()), x));
        }
        fan_bad += special_set(R, SpecialKind::fan_F, x) != ids_of(R, fan);
        core_bad += special_set(R, SpecialKind::core_N, x) != ids_of(R, core);
        meet_bad += special_set(R, SpecialKind::meet_I, x) != ids_of(R, meet);
        la_bad += special_set(R, SpecialKind::lines_L, x).size() != F.q() ||
                  special_set(R, SpecialKind::points_P, x).size() != F.q();
    }
    r.expected = "F_r = {(x,0,r): x != 0}, N_r = {(0,a,r)}, I_b = {[x,b+1,b]: x != 0}, |L_a| = |P_a| = q";
    r.computed = {{"F_mismatches", fan_bad},
                  {"N_mismatches", core_bad},
                  {"I_mismatches", meet_bad},
                  {"L_P_size_mismatches", la_bad},
                  {"parameters", F.q()}};
    r.passed = fan_bad + core_bad + meet_bad + la_bad == 0;
}

// ---- structural claims ---------------------------------------------------

inline void run_diam(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    const DiameterResult d = diameter(cached_rigid(F), opt.workers);
    const unsigned want = F.q() == 3 ? 7 : 6;
    r.expected = {{"diameter", want}};
    r.computed = {{"diameter", d.diameter}, {"connected", d.connected}};
    if (!d.connected) r.computed["components"] = d.components;
    r.passed = d.connected && d.diameter == want;
}

inline void run_c4free(const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
    const bool c4 = has_4cycle(cached_rigid(F));
    r.expected = {{"has_4cycle", false}};
    r.computed = {{"has_4cycle", c4}};
    r.passed = !c4;
}

inline void run_gq_girth(const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
    AdGraph g = make_quadrangle(F);
    g.build_cache();
    const auto gi = girth(g);
    r.expected = {{"girth", 8}};
    r.computed = {{"girth", gi ? json(*gi) : json(nullptr)}};
    r.passed = gi && *gi == 8;
}

inline void run_cover(const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    const AdGraph B = make_biaffine(F);
    std::vector<std::uint32_t> preimages(B.vertex_count(), 0);
    std::uint64_t edge_bad = 0, nbhd_bad = 0;
    for (vertex_id v = 0; v < R.vertex_count(); ++v) {
        const VertexRef rv = R.vertex(v);
        const VertexRef cv = covering_map(rv);
        const vertex_id bv = B.vertex_id_of(cv);
        ++preimages[bv];
        std::vector<vertex_id> img;
        R.for_each_neighbor(v, [&](vertex_id w) {
            const vertex_id bw = B.vertex_id_of(covering_map(R.vertex(w)));
            if (!B.adjacent(bv, bw)) ++edge_bad;
            img.push_back(bw);
        });
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        std::vector<vertex_id> target;
        B.for_each_neighbor(bv, [&](vertex_id w) { target.push_back(w); });
        std::sort(target.begin(), target.end());
        if (img != target || img.size() != F.q()) ++nbhd_bad;
    }
    const bool q_to_1 = std::all_of(preimages.begin(), preimages.end(), [&](auto c) { return c == F.q(); });
    r.expected = {{"q_to_1", true}, {"edge_violations", 0}, {"neighborhood_violations", 0}};
    r.computed = {{"q_to_1", q_to_1}, {"edge_violations", edge_bad}, {"neighborhood_violations", nbhd_bad}};
    r.passed = q_to_1 && edge_bad == 0 && nbhd_bad == 0;
}

inline void run_iso_chain(const Field& F, const VerifyOptions& opt, SplitMix64&, ClaimResult& r) {
    static const char* gs[] = {"p1^2*l1-p1*p2", "p2*l1", "p1*l1^2", "p1^2*l1"};
    std::vector<AdGraph> graphs;
    for (const char* g : gs) {
        graphs.push_back(make_family(F, "p1*l1", g));
        graphs.back().build_cache();
    }
    const AutOptions ao{opt.node_limit, opt.workers};
    json pairs = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = i + 1; j < graphs.size(); ++j) {
            const IsoResult iso = are_isomorphic(graphs[i], graphs[j], ao);
            const bool witnessed = iso.isomorphic && iso.witness && iso.witness->is_bijection() &&
                                   preserves_edges(graphs[i], graphs[j], *iso.witness);
            pairs.push_back({{"g1", gs[i]}, {"g2", gs[j]}, {"isomorphic", iso.isomorphic}, {"witness_verified", witnessed}});
            ok = ok && witnessed;
        }
    const IsoResult rq = are_isomorphic(cached_rigid(F), graphs[2], ao);
    r.expected = "the four graphs pairwise isomorphic with verified witnesses; R not isomorphic to g = p1*l1^2";
    r.computed = {{"pairs", pairs}, {"rigid_vs_p1*l1^2", {{"isomorphic", rq.isomorphic}, {"reason", rq.reason}}}};
    r.passed = ok && !rq.isomorphic;
}

// ---- 3-path parameterization ----------------------------------------------

inline void run_eq2_path(const Field& F, const VerifyOptions& opt, SplitMix64& rng, ClaimResult& r) {
    const AdGraph R = cached_rigid(F);
    const std::uint32_t q = F.q();
    auto draw = [&] { return Elem{static_cast<std::uint32_t>(rng.below(q))}; };
    std::uint64_t bad = 0, bad_alt = 0;
    for (std::size_t k = 0; k < opt.path_samples; ++k) {
        Elem A, B, a, b, c;
        do {
            A = draw(), B = draw(), a = draw(), b = draw(), c = draw();
        } while (a == b || c == F.sub(F.mul(A, b), B));
        const VertexRef end = three_path_endpoint(R, A, B, a, b, c);
        const Elem t = F.inv(F.sub(b, a));
        const Elem want = F.mul(p_ab_eval(F, A, B, b, c, a), t);
        const Elem alt = F.mul(p_ab_eval(F, A, B, b, c, a, CReading::third_coordinate_zero), t);
        const bool head = end.side == Side::point && end.coords[0] == b && end.coords[1] == c;
        if (!head || end.coords[2] != want) ++bad;
        if (!head || end.coords[2] != alt) ++bad_alt;
    }
    r.computed = {{"samples", opt.path_samples}, {"failures", bad}, {"failures_if_C_is_zero", bad_alt}};
    r.expected = {{"failures", 0}};
    bool sets_ok = true;
    if (q <= 13) {
        const Elem zero = F.zero();
        auto level3 = [&](const VertexRef& v) { return sphere(R, R.vertex_id_of(v), 3); };
        const Elem A = F.one(), B = F.from_int(2);
        const bool e1 = r3_param_set(R, ParamVariant::general, A, B) == level3(VertexRef::line(A, B, zero));
        const bool e3 = r3_param_set(R, ParamVariant::zero_zero) == level3(VertexRef::line(zero, zero, zero));
        const bool e4 = r3_param_set(R, ParamVariant::zero_one) == level3(VertexRef::line(zero, F.one(), zero));
        r.computed["general_1_2_set_equal"] = e1;
        r.computed["zero_zero_set_equal"] = e3;
        r.computed["zero_one_set_equal"] = e4;
        r.expected["set_equality"] = true;
        sets_ok = e1 && e3 && e4;
    }
    r.passed = bad == 0 && sets_ok;
}

// ---- polynomial claims ---------------------------------------------------

inline void run_hd_criterion(const Field& F, const VerifyOptions& opt, SplitMix64& rng, ClaimResult& r) {
    const std::uint32_t q = F.q();
    std::uint64_t cases = 0, monic_cubics = 0, disagree = 0, pps = 0;
    auto check = [&](const MultiPoly& f) {
        const bool bf = is_pp_bruteforce(f);
        const bool hd = is_pp_hermite_dickson(f);
        ++cases;
        pps += bf;
        disagree += bf != hd;
    };
    if (q <= 7) {
        // every polynomial of degree 1..3
        for (std::uint32_t c3 = 0; c3 < q; ++c3)
            for (std::uint32_t c2 = 0; c2 < q; ++c2)
                for (std::uint32_t c1 = 0; c1 < q; ++c1)
                    for (std::uint32_t c0 = 0; c0 < q; ++c0) {
                        if (c3 == 0 && c2 == 0 && c1 == 0) continue;
                        const Elem cs[] = {Elem{c0}, Elem{c1}, Elem{c2}, Elem{c3}};
                        check(MultiPoly::univariate(F, cs));
                        monic_cubics += c3 == 1;
                    }
        r.computed = {{"mode", "exhaustive degree <= 3"}, {"monic_cubics", monic_cubics}};
    } else {
        for (std::size_t k = 0; k < opt.jpoly_samples; ++k) check(to_poly(random_jpoly(F, rng), F));
        r.computed = {{"mode", "sampled J"}};
    }
    r.computed["cases"] = cases;
    r.computed["permutation_polynomials"] = pps;
    r.computed["disagreements"] = disagree;
    r.expected = {{"disagreements", 0}};
    r.passed = disagree == 0 && cases > 0;
}

inline void run_jpoly_not_pp(const Field& F, const VerifyOptions& opt, SplitMix64& rng, ClaimResult& r) {
    std::uint64_t pps = 0;
    json first = nullptr;
    for (std::size_t k = 0; k < opt.identity_samples; ++k) {
        const JPoly j = random_jpoly(F, rng);
        if (is_pp_bruteforce(to_poly(j, F))) {
            if (pps++ == 0) first = jpoly_json(j);
        }
    }
    r.expected = {{"permutation_polynomials", 0}};
    r.computed = {{"samples", opt.identity_samples}, {"permutation_polynomials", pps}, {"first_pp", first}};
    r.passed = pps == 0;
}

inline void run_jpoly_valueset(const Field& F, const VerifyOptions& opt, SplitMix64& rng, ClaimResult& r) {
    const std::uint64_t q = F.q();
    std::uint64_t bad = 0, max_vJ = 0, max_vj = 0;
    for (std::size_t k = 0; k < opt.identity_samples; ++k) {
        const JPoly j = random_jpoly(F, rng);
        const std::uint64_t vJ = j_value_count(j, F, false);
        const std::uint64_t vj = j_value_count(j, F, true);
        bool zero_hit = false;
        for (Elem t : F.elements()) {
            if (t.value == 0) continue;
            const Elem t2 = F.mul(t, t);
            const Elem v = F.add(F.add(F.mul(t2, t), F.mul(j.c2, t2)), F.add(F.mul(j.c1, t), F.mul(j.cm1, F.inv(t))));
            zero_hit = zero_hit || v.value == 0;
        }
        max_vJ = std::max(max_vJ, vJ);
        max_vj = std::max(max_vj, vj);
        if (vj > vJ || vJ > q - 2 || (!zero_hit && vj > q - 3)) ++bad;
    }
    r.expected = "#V_j <= #V_J <= q-2, and #V_j <= q-3 when 0 is not a value of j";
    r.computed = {{"samples", opt.identity_samples}, {"violations", bad}, {"max_VJ", max_vJ}, {"max_Vj", max_vj}};
    r.passed = bad == 0;
}

inline void run_hd_identities(const Field& F, const VerifyOptions& opt, SplitMix64& rng, ClaimResult& r) {
    const Exponents top{F.q() - 1};
    std::uint64_t bad[3] = {0, 0, 0};
    for (std::size_t k = 0; k < opt.identity_samples; ++k) {
        const JPoly j = random_jpoly(F, rng);
        const MultiPoly J = to_poly(j, F);
        const Elem c1 = j.c1, c2 = j.c2, cm = j.cm1;
        const Elem cm2 = F.mul(cm, cm);
        const Elem want[3] = {
            F.mul(F.from_int(2), F.mul(c1, cm)),
            F.mul(F.from_int(3), F.mul(c2, cm2)),
            F.add(F.mul(F.from_int(4), F.mul(cm2, cm)), F.mul(F.from_int(6), F.mul(F.mul(c1, c1), cm2))),
        };
        MultiPoly pw = reduce_mod_xq(J);
        for (int n = 2; n <= 4; ++n) {
            pw = reduce_mod_xq(pw * J);
            if (pw.coefficient(top) != want[n - 2]) ++bad[n - 2];
        }
    }
    r.expected = {{"mismatches_J2", 0}, {"mismatches_J3", 0}, {"mismatches_J4", 0}};
    r.computed = {{"samples", opt.identity_samples},
                  {"mismatches_J2", bad[0]},
                  {"mismatches_J3", bad[1]},
                  {"mismatches_J4", bad[2]}};
    r.passed = bad[0] + bad[1] + bad[2] == 0;
}

inline void run_wan(const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
    const std::uint32_t q = F.q();
    const std::uint64_t bound = wan_bound(3, F);
    std::uint64_t polys = 0, non_pp = 0, bad = 0, worst = 0;
    std::vector<std::uint32_t> seen(q, 0);
    std::uint32_t stamp = 0;
    for (std::uint32_t c3 = 1; c3 < q; ++c3)
        for (std::uint32_t c2 = 0; c2 < q; ++c2)
            for (std::uint32_t c1 = 0; c1 < q; ++c1)
                for (std::uint32_t c0 = 0; c0 < q; ++c0) {
                    ++polys;
                    ++stamp;
                    std::uint64_t size = 0;
                    for (Elem x : F.elements()) {
                        Elem v{c3};
                        v = F.add(F.mul(v, x), Elem{c2});
                        v = F.add(F.mul(v, x), Elem{c1});
                        v = F.add(F.mul(v, x), Elem{c0});
                        if (seen[v.value] != stamp) {
                            seen[v.value] = stamp;
                            ++size;
                        }
                    }
                    if (size == q) continue;
                    ++non_pp;
                    worst = std::max(worst, size);
                    if (size > bound) ++bad;
                }
    r.expected = {{"bound", bound}, {"violations", 0}};
    r.computed = {{"polynomials", polys}, {"non_pp", non_pp}, {"max_non_pp_value_set", worst}, {"violations", bad}};
    r.passed = bad == 0;
}

inline void run_pairing(const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
    std::uint64_t pairs = 0, bad = 0;
    for (Elem g : F.elements()) {
        if (g.value == 0) continue;
        for (Elem t : F.elements()) {
            if (t.value == 0) continue;
            const Elem u = F.mul(g, F.inv(t));
            ++pairs;
            if (F.add(t, F.mul(g, F.inv(t))) != F.add(u, F.mul(g, F.inv(u)))) ++bad;
        }
    }
    r.expected = {{"violations", 0}};
    r.computed = {{"pairs", pairs}, {"violations", bad}};
    r.passed = bad == 0;
}

}  // namespace detail

/// Every claim, sorted by id.
inline const std::vector<ClaimInfo>& claim_registry() {
    using namespace detail;
    static const std::vector<ClaimInfo> reg = [] {
        auto min_q = [](std::uint64_t lo) {
            return [lo](const Field& F, const VerifyOptions&) { return need_min(F, lo); };
        };
        auto residue = [](std::uint64_t lo) {
            return [lo](const Field& F, const VerifyOptions& o) { return need_residue(F, o, lo); };
        };
        auto prime = [](const Field& F, const VerifyOptions&) -> std::optional<std::string> {
            if (F.e() != 1) return "requires prime q";
            return std::nullopt;
        };
        auto lemma = [](int part) {
            return [part](const Field& F, const VerifyOptions&, SplitMix64&, ClaimResult& r) {
                run_lemma41_part(part, F, r);
            };
        };
        std::vector<ClaimInfo> v = {
            {"c4free", "the rigid graph has no 4-cycles", false, true, false, any_q, run_c4free},
            {"conj5.1", "|Aut(R)| = e q", true, true, false, any_q, run_conj51},
            {"cover", "dropping the third coordinate is a q-to-1 covering of the biaffine graph", false, true, false,
             any_q, run_cover},
            {"diam", "diameter of the rigid graph is 6 (7 when q = 3)", false, true, false, any_q, run_diam},
            {"eq2.path", "3-path endpoints from [A,B,0] match P_{A,B}(b,c;a)/(b-a); closed-form 3-spheres match BFS",
             false, true, true, any_q, run_eq2_path},
            {"fixed.sets", "automorphisms of R fix L_0, L_1, P_0 and permute the P_a", false, true, false, residue(7),
             run_fixed_sets},
            {"frobenius", "coordinate-wise p-th power is an automorphism of R of order e", false, true, false, any_q,
             run_frobenius},
            {"gq.girth", "Gamma(p1*l1, p1*l1^2) has girth 8", false, true, false, any_q, run_gq_girth},
            {"hd.criterion", "Hermite-Dickson test agrees with exhaustive evaluation", false, true, true, any_q,
             run_hd_criterion},
            {"hd.identities", "X^{q-1} coefficients of J^2, J^3, J^4 match closed forms", false, true, true, min_q(17),
             run_hd_identities},
            {"iso.chain", "four Gamma_2 graphs pairwise isomorphic; R not isomorphic to g = p1*l1^2", false, true, false,
             any_q, run_iso_chain},
            {"jpoly.not_pp", "J is never a permutation polynomial", false, true, true, residue(17), run_jpoly_not_pp},
            {"jpoly.valueset", "#V_j <= #V_J <= q-2", false, true, true, residue(17), run_jpoly_valueset},
            {"lemma4.1", "distance facts (i)-(iii) in R", false, true, false, any_q, lemma(-1)},
            {"lemma4.1.i", "vertices at distance 2 have distinct first components", false, false, false, any_q,
             lemma(0)},
            {"lemma4.1.ii", "(0,b,r), (0,c,s) at distance 4 for b != c", false, false, false, any_q, lemma(1)},
            {"lemma4.1.iii", "[x,y,r], [x,y,s] at distance >= 6 for r != s, both sides", false, false, false, any_q,
             lemma(2)},
            {"pairing", "t + g/t takes equal values at t and g/t", false, true, false, any_q, run_pairing},
            {"prop3.1", "r3[0,1,0] = q^3-4q^2+9q-8 and r3[0,0,0] = q^3-4q^2+8q-6", false, true, false, min_q(7),
             run_prop31},
            {"special.sets", "closed forms of F_r, N_r, I_b and sizes of L_a, P_a", false, true, false, any_q,
             run_special_sets},
            {"thm2.1", "|Aut(R)| = p, all automorphisms are translations", false, true, false, prime, run_thm21},
            {"thm3.2", "strict r3 ordering with [0,1,0] and [0,0,0] on top", false, true, false, residue(7),
             run_thm32},
            {"viglione", "|Aut(Gamma(p1*l1))| = 2 e q^3 (q-1)^2", false, true, false, min_q(5), run_viglione},
            {"wan", "every non-PP cubic has #V <= q - ceil((q-1)/3)", false, true, false, any_q, run_wan},
        };
        std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
        return v;
    }();
    return reg;
}

inline const ClaimInfo* find_claim(const std::string& id) {
    for (const auto& c : claim_registry())
        if (c.id == id) return &c;
    return nullptr;
}

namespace detail {

inline std::optional<std::string> field_inadmissible(std::uint64_t q) {
    try {
        Field::of_order(q);
    } catch (const field_error& e) {
        return std::string("q must be an odd prime power: ") + e.what();
    }
    return std::nullopt;
}

inline ClaimResult run_claim(const ClaimInfo& info, std::uint64_t q, const VerifyOptions& opt) {
    ClaimResult r;
    r.claim_id = info.id;
    r.q = q;
    r.evidence = info.evidence;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (auto bad = field_inadmissible(q)) {
            r.status = "inadmissible";
            r.detail = *bad;
            return r;
        }
        const Field F = Field::of_order(q);
        if (auto bad = info.admissible(F, opt)) {
            r.status = "inadmissible";
            r.detail = *bad;
            return r;
        }
        SplitMix64 rng = SplitMix64(opt.seed).split(info.id + "@" + std::to_string(q));
        if (info.sampled) r.seed = opt.seed;
        info.run(F, opt, rng, r);
        r.status = r.passed ? "passed" : "failed";
    } catch (const std::exception& e) {
        r.passed = false;
        r.status = "error";
        r.detail = e.what();
    }
    r.runtime_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
    return r;
}

}  // namespace detail

/// Runs one claim at one q; unknown ids throw std::invalid_argument.
inline ClaimResult verify_claim(const std::string& id, std::uint64_t q, const VerifyOptions& opt = {}) {
    const ClaimInfo* info = find_claim(id);
    if (!info) throw std::invalid_argument("unknown claim '" + id + "'");
    return detail::run_claim(*info, q, opt);
}

/// Runs every (claim, q) pair.  An empty filter selects all claims (sub-claims
/// excluded); then claims whose own constraints exclude q are skipped, while a
/// q that is not an odd prime power is recorded as inadmissible for each
/// claim.  Named claims are always recorded.  Results are ordered by
/// (claim id, q) whatever the completion order.
inline std::vector<ClaimResult> verify_all(std::vector<std::uint64_t> q_list, const std::vector<std::string>& filter,
                                           const VerifyOptions& opt = {}) {
    std::vector<const ClaimInfo*> claims;
    if (filter.empty()) {
        for (const auto& c : claim_registry())
            if (c.in_all) claims.push_back(&c);
    } else {
        for (const auto& id : filter) {
            const ClaimInfo* c = find_claim(id);
            if (!c) throw std::invalid_argument("unknown claim '" + id + "'");
            if (std::find(claims.begin(), claims.end(), c) == claims.end()) claims.push_back(c);
        }
        std::sort(claims.begin(), claims.end(), [](auto* a, auto* b) { return a->id < b->id; });
    }
    std::sort(q_list.begin(), q_list.end());
    q_list.erase(std::unique(q_list.begin(), q_list.end()), q_list.end());

    std::vector<std::pair<const ClaimInfo*, std::uint64_t>> jobs;
    for (const ClaimInfo* c : claims)
        for (std::uint64_t q : q_list) {
            if (filter.empty() && !detail::field_inadmissible(q) && c->admissible(Field::of_order(q), opt)) continue;
            jobs.emplace_back(c, q);
        }
    std::vector<ClaimResult> out(jobs.size());
    unsigned workers = opt.workers == 0 ? default_workers() : opt.workers;
    VerifyOptions inner = opt;
    if (workers > 1 && jobs.size() > 1) inner.workers = 1;  // parallel across jobs instead
    parallel_for(jobs.size(), jobs.size() > 1 ? workers : 1,
                 [&](std::size_t i, unsigned) { out[i] = detail::run_claim(*jobs[i].first, jobs[i].second, inner); });
    return out;
}

/// True when some claim that is not evidence-grade did not pass.
inline bool any_required_failure(const std::vector<ClaimResult>& results) {
    return std::any_of(results.begin(), results.end(), [](const ClaimResult& r) { return !r.passed && !r.evidence; });
}

inline json to_json(const ClaimResult& r, bool with_timing = false) {
    json j = {{"claim_id", r.claim_id}, {"q", r.q},           {"status", r.status},
              {"passed", r.passed},     {"severity", r.evidence ? "evidence" : "required"},
              {"expected", r.expected}, {"computed", r.computed}};
    if (!r.detail.empty()) j["detail"] = r.detail;
    if (r.seed) j["seed"] = *r.seed;
    if (with_timing) j["runtime_ms"] = r.runtime_ms;
    return j;
}

}  // namespace adg
