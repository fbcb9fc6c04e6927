// adg: command-line front end.  Reports go to stdout, diagnostics to stderr.
// Exit status: 0 success, 1 claim failure or computation error, 2 usage error.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "adgraph/adgraph.hpp"

namespace {

using adg::json;

struct Config {
    std::uint64_t seed = adg::SplitMix64::default_seed;
    unsigned workers = 0;
    std::string cache_dir;
    std::string format = "json";
    bool timings = false;
};

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

adg::VertexRef parse_vertex(const std::string& text, const adg::AdGraph& g) {
    if (text.size() < 2) throw usage_error("bad vertex '" + text + "'");
    const char open = text.front(), close = text.back();
    const bool point = open == '(' && close == ')';
    if (!point && !(open == '[' && close == ']'))
        throw usage_error("vertex must be written (a,b,c) for a point or [a,b,c] for a line");
    std::vector<adg::Elem> coords;
    std::istringstream in(text.substr(1, text.size() - 2));
    std::string part;
    while (std::getline(in, part, ',')) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || v >= g.q()) throw usage_error("bad coordinate '" + part + "' in " + text);
        coords.push_back(adg::Elem{static_cast<std::uint32_t>(v)});
    }
    if (coords.size() != g.dim()) throw usage_error("vertex " + text + " needs " + std::to_string(g.dim()) + " coordinates");
    if (g.dim() == 2) return point ? adg::VertexRef::point(coords[0], coords[1]) : adg::VertexRef::line(coords[0], coords[1]);
    return point ? adg::VertexRef::point(coords[0], coords[1], coords[2])
                 : adg::VertexRef::line(coords[0], coords[1], coords[2]);
}

void emit(const json& j, const Config& cfg) {
    if (cfg.format == "plain" && j.is_object()) {
        for (const auto& [k, v] : j.items()) std::cout << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
        return;
    }
    if (cfg.format == "plain" && j.is_array()) {
        // one record per line
        for (const auto& row : j) std::cout << row.dump() << '\n';
        return;
    }
    if (cfg.format == "csv") throw usage_error("csv output is only available for graph census");
    std::cout << j.dump(2) << '\n';
}

struct GraphArgs {
    std::string spec;
    std::optional<std::uint64_t> q;
};

adg::AdGraph load_graph(const GraphArgs& a, bool cache_neighbors) {
    adg::AdGraph g = adg::make_graph(a.spec, a.q);
    if (cache_neighbors) g.build_cache();
    return g;
}

adg::R3Census cached_census(const adg::AdGraph& g, const Config& cfg) {
    adg::ResultCache cache(cfg.cache_dir, &std::cerr);
    const std::string csv = cache.get_or_compute(g.label(), g.q(), "census", [&] {
        return adg::census_csv(adg::r3_census(g, cfg.workers, cfg.seed));
    });
    return adg::census_from_csv(csv, g.q());
}

void add_graph_args(CLI::App* cmd, GraphArgs& a) {
    cmd->add_option("--spec", a.spec, "graph spec: R, GQ, BIAFFINE or q=..;f=..;g=..")->required();
    cmd->add_option("--q", a.q, "field order (if not in the spec)");
}

int run(int argc, char** argv) {
    CLI::App app{"Algebraically defined graphs over finite fields"};
    app.fallthrough();
    app.require_subcommand(1);
    Config cfg;
    app.add_option("--seed", cfg.seed, "64-bit seed for sampled checks")->envname("ADG_SEED");
    app.add_option("--workers", cfg.workers, "worker threads (0 = all cores)")->envname("ADG_WORKERS");
    app.add_option("--cache-dir", cfg.cache_dir, "result cache directory (empty disables)")->envname("ADG_CACHE_DIR");
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv", "plain"}));
    app.add_flag("--timings", cfg.timings, "include runtime_ms in claim results");

    // graph
    auto* graph = app.add_subcommand("graph", "graph invariants");
    graph->require_subcommand(1);
    GraphArgs ga;
    auto* stats = graph->add_subcommand("stats", "sizes and degree");
    auto* census = graph->add_subcommand("census", "r3 over all translation classes");
    auto* girth = graph->add_subcommand("girth", "shortest cycle length");
    auto* diam = graph->add_subcommand("diameter", "largest distance");
    auto* dist = graph->add_subcommand("distance", "distance between two vertices");
    auto* prof = graph->add_subcommand("profile", "distance level sizes around a vertex");
    for (auto* c : {stats, census, girth, diam, dist, prof}) add_graph_args(c, ga);
    std::string from, to, origin;
    unsigned radius = 3;
    dist->add_option("--from", from, "(a,b,c) or [a,b,c]")->required();
    dist->add_option("--to", to, "(a,b,c) or [a,b,c]")->required();
    prof->add_option("--vertex", origin, "(a,b,c) or [a,b,c]")->required();
    prof->add_option("--radius", radius, "levels to report")->check(CLI::PositiveNumber);

    // aut
    auto* aut = app.add_subcommand("aut", "automorphism group");
    aut->require_subcommand(1);
    auto* aut_order = aut->add_subcommand("order", "group order and orbit counts");
    auto* aut_gens = aut->add_subcommand("generators", "generators as image lists");
    std::uint64_t node_limit = adg::AutOptions{}.node_limit;
    for (auto* c : {aut_order, aut_gens}) {
        add_graph_args(c, ga);
        c->add_option("--node-limit", node_limit, "search tree node budget");
    }

    // iso
    auto* iso = app.add_subcommand("iso", "isomorphism test with witness");
    std::string spec_a, spec_b;
    std::optional<std::uint64_t> iso_q;
    iso->add_option("first", spec_a, "graph spec")->required();
    iso->add_option("second", spec_b, "graph spec")->required();
    iso->add_option("--q", iso_q, "field order");
    iso->add_option("--node-limit", node_limit, "search tree node budget");

    // pp
    auto* pp = app.add_subcommand("pp", "permutation polynomials");
    pp->require_subcommand(1);
    std::string poly_text;
    std::uint64_t pp_q = 0;
    auto* pp_test = pp->add_subcommand("test", "is the polynomial a permutation of F_q");
    auto* pp_vs = pp->add_subcommand("valueset", "value set of the polynomial");
    for (auto* c : {pp_test, pp_vs}) {
        c->add_option("--poly", poly_text, "polynomial in x")->required();
        c->add_option("--q", pp_q, "field order")->required();
    }

    // verify
    auto* verify = app.add_subcommand("verify", "check claims");
    std::vector<std::string> claim_args;
    std::vector<std::uint64_t> q_list;
    bool any_residue = false;
    verify->add_option("claims", claim_args, "claim ids or 'all' (comma or space separated)")->required();
    verify->add_option("--q", q_list, "field orders, comma separated")->required()->delimiter(',');
    verify->add_flag("--any-residue", any_residue, "also run residue-restricted claims at other q");
    verify->add_option("--node-limit", node_limit, "search tree node budget");
    auto* list = app.add_subcommand("claims", "list claim ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (cfg.workers == 0) cfg.workers = adg::default_workers();
    if (cfg.format == "csv" && !census->parsed()) throw usage_error("csv output is only available for graph census");

    if (graph->parsed()) {
        const adg::AdGraph g = load_graph(ga, !stats->parsed() && !dist->parsed());
        json out = {{"spec", g.label()}, {"q", g.q()}, {"seed", cfg.seed}};
        if (stats->parsed()) {
            out["p"] = g.field().p();
            out["e"] = g.field().e();
            out["dim"] = g.dim();
            out["vertices"] = g.vertex_count();
            out["edges"] = g.side_size() * g.q();
            out["degree"] = g.q();
        } else if (census->parsed()) {
            if (g.dim() != 3) throw usage_error("census needs a 3-dimensional graph");
            const adg::R3Census c = cached_census(g, cfg);
            if (cfg.format == "csv") {
                std::cout << adg::census_csv(c);
                return 0;
            }
            out["summary"] = adg::census_summary_json(c);
            json rows = json::array();
            for (const auto& e : c.entries)
                rows.push_back({{"side", adg::side_name(e.side)}, {"A", e.A.value}, {"B", e.B.value}, {"r3", e.r3}});
            out["classes"] = rows;
        } else if (girth->parsed()) {
            const auto gi = adg::girth(g);
            out["girth"] = gi ? json(*gi) : json(nullptr);
        } else if (diam->parsed()) {
            const auto d = adg::diameter(g, cfg.workers);
            out["connected"] = d.connected;
            out["diameter"] = d.diameter;
            if (!d.connected) out["components"] = d.components;
        } else if (dist->parsed()) {
            const auto a = parse_vertex(from, g), b = parse_vertex(to, g);
            const auto d = adg::distance(g, g.vertex_id_of(a), g.vertex_id_of(b));
            out["from"] = adg::to_string(a);
            out["to"] = adg::to_string(b);
            out["distance"] = d ? json(*d) : json(nullptr);
        } else {
            const auto v = parse_vertex(origin, g);
            const json p = adg::profile_json(g, adg::bfs_profile(g, g.vertex_id_of(v), radius));
            out.update(p);
        }
        emit(out, cfg);
        return 0;
    }

    if (aut->parsed()) {
        const adg::AdGraph g = load_graph(ga, true);
        const adg::AutReport r = adg::aut_group(g, {node_limit, cfg.workers});
        json out = {{"spec", g.label()}, {"q", g.q()}, {"seed", cfg.seed}};
        out.update(adg::aut_json(r));
        if (aut_gens->parsed()) {
            json gens = json::array();
            for (const auto& m : r.generators) gens.push_back(m.images);
            out["generators"] = gens;
        }
        emit(out, cfg);
        return 0;
    }

    if (iso->parsed()) {
        adg::AdGraph a = adg::make_graph(spec_a, iso_q), b = adg::make_graph(spec_b, iso_q);
        a.build_cache();
        b.build_cache();
        const adg::IsoResult r = adg::are_isomorphic(a, b, {node_limit, cfg.workers});
        const bool verified = r.witness && r.witness->is_bijection() && adg::preserves_edges(a, b, *r.witness);
        json out = {{"first", a.label()}, {"second", b.label()}, {"seed", cfg.seed}, {"isomorphic", r.isomorphic},
                    {"witness_verified", verified}};
        if (!r.isomorphic) out["reason"] = r.reason;
        emit(out, cfg);
        return r.isomorphic == verified ? 0 : 1;
    }

    if (pp->parsed()) {
        const adg::Field F = adg::Field::of_order(pp_q);
        const adg::ValueSetReport vs = adg::value_set(adg::parse_univariate(poly_text, F));
        json out = {{"pp", vs.is_pp}, {"valueset", vs.size}};
        if (pp_vs->parsed()) {
            json values = json::array();
            for (adg::Elem v : vs.values) values.push_back(v.value);
            out["values"] = values;
        }
        emit(out, cfg);
        return 0;
    }

    if (list->parsed()) {
        json out = json::array();
        for (const auto& c : adg::claim_registry())
            out.push_back({{"claim_id", c.id}, {"checks", c.checks}, {"severity", c.evidence ? "evidence" : "required"},
                           {"in_all", c.in_all}});
        emit(out, cfg);
        return 0;
    }

    // verify
    std::vector<std::string> filter;
    bool all = false;
    for (const auto& arg : claim_args) {
        std::istringstream in(arg);
        std::string id;
        while (std::getline(in, id, ','))
            if (id == "all") all = true;
            else if (!id.empty()) filter.push_back(id);
    }
    if (all) filter.clear();
    adg::VerifyOptions opt;
    opt.seed = cfg.seed;
    opt.workers = cfg.workers;
    opt.any_residue = any_residue;
    opt.node_limit = node_limit;
    if (!cfg.cache_dir.empty()) opt.census = [&](const adg::AdGraph& g) { return cached_census(g, cfg); };
    const auto results = adg::verify_all(q_list, filter, opt);
    json out = json::array();
    for (const auto& r : results) out.push_back(adg::to_json(r, cfg.timings));
    emit(out, cfg);
    return adg::any_required_failure(results) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const usage_error& e) {
        std::cerr << "adg: " << e.what() << '\n';
        return 2;
    } catch (const adg::parse_error& e) {
        std::cerr << "adg: " << e.what() << '\n';
        return 2;
    } catch (const adg::field_error& e) {
        std::cerr << "adg: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "adg: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "adg: " << e.what() << '\n';
        return 1;
    }
}
