#pragma once

// Brute-force automorphism group order, independent of the refinement code.
//
// Partial maps are extended by backtracking with forward checking: an image
// is admissible when it keeps every distance to the vertices mapped so far
// (adjacency is the distance-1 case).  The order is the product over a base
// of the number of images of each base point that extend to a full map;
// candidates related by an automorphism already found are decided together.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "adgraph/graph.hpp"

namespace adg {

namespace detail {

template <NeighborGraph G>
class OracleSearch {
public:
    explicit OracleSearch(const G& g) : g_(g), n_(g.vertex_count()), dist_(n_ * n_, unreachable) {
        std::vector<vertex_id> frontier, next;
        for (vertex_id s = 0; s < n_; ++s) {
            std::uint8_t* row = &dist_[std::size_t{s} * n_];
            row[s] = 0;
            frontier.assign(1, s);
            for (std::uint8_t d = 1; !frontier.empty(); ++d) {
                next.clear();
                for (vertex_id u : frontier)
                    g_.for_each_neighbor(u, [&](vertex_id w) {
                        if (row[w] == unreachable) {
                            row[w] = d;
                            next.push_back(w);
                        }
                    });
                std::swap(frontier, next);
            }
        }
        // profile_[v]: rank of v's distance-degree sequence (how many
        // vertices lie at each distance); automorphisms preserve it
        std::vector<std::vector<std::uint32_t>> seq(n_);
        for (vertex_id v = 0; v < n_; ++v) {
            for (vertex_id u = 0; u < n_; ++u) {
                const std::uint8_t d = dist(v, u);
                if (d >= seq[v].size()) seq[v].resize(std::size_t{d} + 1, 0);
                ++seq[v][d];
            }
        }
        auto distinct = seq;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        profile_.resize(n_);
        for (vertex_id v = 0; v < n_; ++v)
            profile_[v] = static_cast<std::uint32_t>(std::lower_bound(distinct.begin(), distinct.end(), seq[v]) -
                                                     distinct.begin());
    }

    std::uint8_t dist(vertex_id a, vertex_id b) const { return dist_[std::size_t{a} * n_ + b]; }
    std::uint32_t profile(vertex_id v) const { return profile_[v]; }

    /// An automorphism extending the partial map src[i] -> dst[i], if any.
    std::optional<std::vector<vertex_id>> extension(const std::vector<vertex_id>& src, const std::vector<vertex_id>& dst) {
        // Every unmapped x keeps a domain of images consistent with all
        // distances to mapped vertices.  Distance 0 is only consistent with
        // itself, so the maps built are injective.
        State st{std::vector<std::vector<vertex_id>>(n_), std::vector<char>(n_, 0)};
        auto& dom = st.dom;
        std::vector<std::vector<vertex_id>> bucket;
        for (vertex_id c = 0; c < n_; ++c) {
            const std::uint8_t d = dist(c, dst[0]);
            if (d >= bucket.size()) bucket.resize(std::size_t{d} + 1);
            bucket[d].push_back(c);
        }
        for (vertex_id x = 0; x < n_; ++x) {
            const std::uint8_t d = dist(x, src[0]);
            if (d < bucket.size())
                for (vertex_id c : bucket[d])
                    if (profile_[c] == profile_[x]) dom[x].push_back(c);
            if (dom[x].empty()) return std::nullopt;
        }
        for (std::size_t i = 0; i < src.size(); ++i) {
            if (std::find(dom[src[i]].begin(), dom[src[i]].end(), dst[i]) == dom[src[i]].end()) return std::nullopt;
            if (!restrict(st, src[i], dst[i])) return std::nullopt;
        }
        return search(std::move(st));
    }

private:
    static constexpr std::uint8_t unreachable = std::numeric_limits<std::uint8_t>::max();

    struct State {
        std::vector<std::vector<vertex_id>> dom;
        std::vector<char> fixed;  // domain is a singleton already propagated
    };

    // Fixes x -> y and filters every other domain against it, propagating
    // domains that shrink to one element; false on a wipe-out.
    bool restrict(State& st, vertex_id x, vertex_id y) const {
        std::vector<std::pair<vertex_id, vertex_id>> work{{x, y}};
        while (!work.empty()) {
            const auto [a, b] = work.back();
            work.pop_back();
            if (st.fixed[a]) {
                if (st.dom[a][0] != b) return false;
                continue;
            }
            st.fixed[a] = 1;
            st.dom[a].assign(1, b);
            for (vertex_id u = 0; u < n_; ++u) {
                if (u == a) continue;
                auto& d = st.dom[u];
                const std::uint8_t want = dist(u, a);
                std::size_t keep = 0;
                for (vertex_id c : d)
                    if (dist(c, b) == want) d[keep++] = c;
                if (keep == 0) return false;
                if (keep != d.size()) {
                    d.resize(keep);
                    if (keep == 1 && !st.fixed[u]) work.emplace_back(u, d[0]);
                }
            }
        }
        return true;
    }

    std::optional<std::vector<vertex_id>> search(State st) {
        // branch on the smallest domain that is not yet a singleton
        vertex_id pick = static_cast<vertex_id>(n_);
        for (vertex_id u = 0; u < n_; ++u) {
            if (st.dom[u].size() == 1) continue;
            if (pick == n_ || st.dom[u].size() < st.dom[pick].size()) pick = u;
        }
        if (pick == n_) {
            if (!singletons_consistent(st.dom)) return std::nullopt;
            std::vector<vertex_id> img(n_);
            for (vertex_id u = 0; u < n_; ++u) img[u] = st.dom[u][0];
            return img;
        }
        for (vertex_id c : st.dom[pick]) {
            State next = st;
            if (!restrict(next, pick, c)) continue;
            if (auto r = search(std::move(next))) return r;
        }
        return std::nullopt;
    }

    // Branching filtered every domain against the vertices branched on; the
    // remaining singletons must still agree with each other.
    bool singletons_consistent(const std::vector<std::vector<vertex_id>>& dom) const {
        for (vertex_id u = 0; u < n_; ++u)
            for (vertex_id v = u + 1; v < n_; ++v)
                if (dist(u, v) != dist(dom[u][0], dom[v][0])) return false;
        return true;
    }

    const G& g_;
    std::size_t n_;
    std::vector<std::uint8_t> dist_;
    std::vector<std::uint32_t> profile_;
};

}  // namespace detail

inline constexpr std::size_t oracle_vertex_limit = 1500;

/// Order of the automorphism group, sides not distinguished.
template <NeighborGraph G>
boost::multiprecision::cpp_int aut_group_oracle(const G& g, std::size_t vertex_limit = oracle_vertex_limit) {
    const std::size_t n = g.vertex_count();
    if (n > vertex_limit) throw std::length_error("graph too large for the brute-force oracle");
    if (n == 0) return 1;
    detail::OracleSearch<G> search(g);

    // cls[v]: distance profile and distances to the base points chosen so far
    std::vector<std::uint64_t> cls(n);
    for (vertex_id v = 0; v < n; ++v) cls[v] = search.profile(v);
    std::vector<vertex_id> base;
    std::vector<std::vector<vertex_id>> found;  // automorphisms met so far
    boost::multiprecision::cpp_int order = 1;
    for (;;) {
        std::vector<std::uint64_t> keys(cls);
        std::sort(keys.begin(), keys.end());
        vertex_id pick = static_cast<vertex_id>(n);
        for (vertex_id v = 0; v < n && pick == n; ++v) {
            const auto lo = std::lower_bound(keys.begin(), keys.end(), cls[v]);
            if (lo + 1 != keys.end() && *(lo + 1) == cls[v]) pick = v;
        }
        if (pick == n) break;  // distance profiles separate all vertices

        std::vector<vertex_id> src(base), dst(base);
        src.push_back(pick);
        dst.push_back(pick);
        // Candidates joined by found automorphisms fixing the base share
        // the answer; 1 = extends, 2 = does not.
        std::vector<std::vector<vertex_id>> fixing;
        for (const auto& a : found)
            if (std::all_of(base.begin(), base.end(), [&](vertex_id b) { return a[b] == b; })) fixing.push_back(a);
        std::vector<char> answer(n, 0);
        auto classes = [&] {
            std::vector<vertex_id> root(n);
            std::iota(root.begin(), root.end(), vertex_id{0});
            auto find = [&](vertex_id v) {
                while (root[v] != v) v = root[v] = root[root[v]];
                return v;
            };
            for (const auto& a : fixing)
                for (vertex_id v = 0; v < n; ++v) {
                    const vertex_id x = find(v), y = find(a[v]);
                    if (x != y) root[std::max(x, y)] = std::min(x, y);
                }
            for (vertex_id v = 0; v < n; ++v) root[v] = find(v);
            return root;
        };
        std::vector<vertex_id> root = classes();
        for (vertex_id w = 0; w < n; ++w) {
            if (cls[w] != cls[pick] || answer[root[w]]) continue;
            dst.back() = w;
            auto ext = search.extension(src, dst);
            answer[root[w]] = ext ? 1 : 2;
            if (ext && w != pick) {
                fixing.push_back(*ext);
                found.push_back(std::move(*ext));
                std::vector<vertex_id> merged = classes();
                std::vector<char> next(n, 0);
                for (vertex_id v = 0; v < n; ++v)
                    if (answer[root[v]]) next[merged[v]] = answer[root[v]];
                root = std::move(merged);
                answer = std::move(next);
            }
        }
        std::uint64_t orbit = 0;
        for (vertex_id w = 0; w < n; ++w)
            if (cls[w] == cls[pick] && answer[root[w]] == 1) ++orbit;
        order *= orbit;
        base.push_back(pick);

        std::vector<std::pair<std::uint64_t, std::uint8_t>> pairs(n);
        for (vertex_id v = 0; v < n; ++v) pairs[v] = {cls[v], search.dist(pick, v)};
        auto sorted = pairs;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (vertex_id v = 0; v < n; ++v)
            cls[v] = static_cast<std::uint64_t>(std::lower_bound(sorted.begin(), sorted.end(), pairs[v]) -
                                                sorted.begin());
    }
    return order;
}

}  // namespace adg
