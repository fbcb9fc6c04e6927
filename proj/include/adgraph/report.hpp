#pragma once

// Text forms of results: census CSV, neighborhood and automorphism JSON.
// Field elements are written as their integer encodings.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "adgraph/metrics.hpp"
#include "adgraph/symmetry.hpp"

namespace adg {

inline constexpr const char* census_header = "side,A,B,r3";

inline std::string side_name(Side s) { return s == Side::point ? "point" : "line"; }

/// Header row, then one row per class in (side, A, B) order.
inline std::string census_csv(const R3Census& c) {
    std::ostringstream out;
    out << census_header << '\n';
    for (const auto& e : c.entries) out << side_name(e.side) << ',' << e.A.value << ',' << e.B.value << ',' << e.r3 << '\n';
    return out.str();
}

/// Inverse of census_csv; throws std::runtime_error unless the text holds
/// exactly the 2q^2 classes in order.
inline R3Census census_from_csv(const std::string& text, std::uint32_t q) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != census_header) throw std::runtime_error("census: bad header");
    R3Census c;
    const std::size_t want = 2 * std::size_t{q} * q;
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string side, a, b, r;
        if (!std::getline(row, side, ',') || !std::getline(row, a, ',') || !std::getline(row, b, ',') ||
            !std::getline(row, r))
            throw std::runtime_error("census: malformed row");
        const std::size_t k = c.entries.size();
        R3Census::Entry e{side == "line" ? Side::line : Side::point, Elem{static_cast<std::uint32_t>(std::stoul(a))},
                          Elem{static_cast<std::uint32_t>(std::stoul(b))}, std::stoull(r)};
        const std::size_t slot = (e.side == Side::line ? std::size_t{q} * q : 0) + std::size_t{e.A.value} * q + e.B.value;
        if ((side != "line" && side != "point") || e.A.value >= q || e.B.value >= q || slot != k)
            throw std::runtime_error("census: row out of order");
        c.entries.push_back(e);
    }
    if (c.entries.size() != want) throw std::runtime_error("census: wrong number of rows");
    summarize_census(c);
    return c;
}

inline nlohmann::json census_summary_json(const R3Census& c) {
    auto key = [&](std::size_t i) {
        const auto& e = c.entries[i];
        return nlohmann::json{{"side", side_name(e.side)}, {"A", e.A.value}, {"B", e.B.value}, {"r3", e.r3}};
    };
    return {{"classes", c.entries.size()},
            {"max", key(c.argmax)},
            {"unique_max", c.unique_max},
            {"second", key(c.second)},
            {"unique_second", c.unique_second}};
}

template <class G>
nlohmann::json profile_json(const G& g, const NeighborhoodProfile& p) {
    nlohmann::json origin;
    if constexpr (requires { g.vertex(p.origin); }) origin = to_string(g.vertex(p.origin));
    else origin = p.origin;
    return {{"origin", origin}, {"radius", p.radius}, {"levels", p.level_sizes}};
}

inline nlohmann::json aut_json(const AutReport& r) {
    return {{"order", r.order.str()},
            {"num_generators", r.generators.size()},
            {"orbit_counts", {{"points", r.orbit_count_points}, {"lines", r.orbit_count_lines}}},
            {"translation_only", r.translation_only}};
}

}  // namespace adg
