#pragma once

// Graph specification strings:
//   "q=<int>[,e=<int>];f=<poly>[;g=<poly>]"
// f is written in p1, l1; g in p1, p2, l1 (three-variable form) or p1, l1
// (two-variable form).  Omitting g gives the 2-dimensional graph of f.
// Aliases: "R", "GQ" and "BIAFFINE" (the 2-dimensional graph of p1*l1).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "adgraph/graph.hpp"
#include "adgraph/poly_parse.hpp"

namespace adg {

struct GraphSpec {
    std::optional<std::uint64_t> q;
    std::optional<std::uint32_t> e;
    std::string f = "p1*l1";
    std::string g;  // empty: 2-dimensional

    /// Canonical text form; stable across runs, used in cache keys.
    std::string canonical(std::uint64_t order) const {
        std::string s = "q=" + std::to_string(order) + ";f=" + f;
        if (!g.empty()) s += ";g=" + g;
        return s;
    }
};

inline constexpr std::string_view rigid_g = "p1*p2*l1*(p1+p2+p1*p2)";
inline constexpr std::string_view quadrangle_g = "p1*l1^2";

namespace detail {

inline std::string strip(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

inline std::uint64_t parse_uint(const std::string& s, const char* what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 12)
        throw parse_error(std::string("invalid ") + what + " '" + s + "'");
    return std::stoull(s);
}

}  // namespace detail

inline GraphSpec parse_graph_spec(std::string_view text) {
    const std::string t = detail::strip(text);
    GraphSpec spec;
    if (t == "R") {
        spec.g = std::string(rigid_g);
        return spec;
    }
    if (t == "GQ") {
        spec.g = std::string(quadrangle_g);
        return spec;
    }
    if (t == "BIAFFINE") return spec;

    bool have_f = false;
    std::size_t start = 0;
    while (start <= t.size()) {
        std::size_t end = t.find(';', start);
        if (end == std::string::npos) end = t.size();
        const std::string part = detail::strip(std::string_view(t).substr(start, end - start));
        start = end + 1;
        if (part.empty()) continue;
        const std::size_t eq = part.find('=');
        const std::string key = eq == std::string::npos ? part : detail::strip(std::string_view(part).substr(0, eq));
        const std::string body = eq == std::string::npos ? "" : detail::strip(std::string_view(part).substr(eq + 1));
        if (key == "q") {
            const std::size_t comma = body.find(',');
            spec.q = detail::parse_uint(detail::strip(body.substr(0, comma)), "q");
            if (comma != std::string::npos) {
                const std::string rest = detail::strip(body.substr(comma + 1));
                const std::size_t eq2 = rest.find('=');
                if (eq2 == std::string::npos || detail::strip(rest.substr(0, eq2)) != "e")
                    throw parse_error("expected e=<int> after q");
                spec.e = static_cast<std::uint32_t>(detail::parse_uint(detail::strip(rest.substr(eq2 + 1)), "e"));
            }
        } else if (key == "f") {
            spec.f = body;
            have_f = true;
        } else if (key == "g") {
            spec.g = body;
        } else {
            throw parse_error("unrecognised graph spec component '" + part + "'");
        }
    }
    if (!have_f) throw parse_error("graph spec needs f=<poly> or an alias (R, GQ, BIAFFINE)");
    return spec;
}

/// Resolves the field order: an explicit order must agree with the spec's.
inline Field spec_field(const GraphSpec& spec, std::optional<std::uint64_t> order) {
    if (spec.q && order && *spec.q != *order)
        throw parse_error("field order given twice with different values");
    const auto q = spec.q ? spec.q : order;
    if (!q) throw parse_error("field order not specified");
    Field f = Field::of_order(*q);
    if (spec.e && *spec.e != f.e())
        throw parse_error("e=" + std::to_string(*spec.e) + " does not match q=" + std::to_string(*q));
    return f;
}

inline AdGraph make_graph(const GraphSpec& spec, const Field& field) {
    MultiPoly f = parse_poly(spec.f, field, {"p1", "l1"});
    const std::string label = spec.canonical(field.q());
    if (spec.g.empty()) return AdGraph(field, std::move(f), std::monostate{}, label);
    if (poly_identifiers(spec.g).count("p2"))
        return AdGraph(field, std::move(f), ThreeVar{parse_poly(spec.g, field, {"p1", "p2", "l1"})}, label);
    return AdGraph(field, std::move(f), TwoVar{parse_poly(spec.g, field, {"p1", "l1"})}, label);
}

inline AdGraph make_graph(std::string_view spec_text, std::optional<std::uint64_t> order = std::nullopt) {
    const GraphSpec spec = parse_graph_spec(spec_text);
    return make_graph(spec, spec_field(spec, order));
}

/// The rigid graph with f = p1 l1, g = p1 p2 l1 (p1 + p2 + p1 p2).
inline AdGraph make_rigid(const Field& field) { return make_graph(parse_graph_spec("R"), field); }
/// f = p1 l1, g = p1 l1^2.
inline AdGraph make_quadrangle(const Field& field) { return make_graph(parse_graph_spec("GQ"), field); }
/// 2-dimensional graph of f = p1 l1.
inline AdGraph make_biaffine(const Field& field) { return make_graph(parse_graph_spec("BIAFFINE"), field); }

inline AdGraph make_family(const Field& field, std::string f, std::string g) {
    GraphSpec spec;
    spec.f = std::move(f);
    spec.g = std::move(g);
    return make_graph(spec, field);
}

}  // namespace adg
