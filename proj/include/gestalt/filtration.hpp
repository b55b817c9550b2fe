// Vietoris-Rips filtration construction and fixed-scale complex extraction.

#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "gestalt/errors.hpp"
#include "gestalt/format.hpp"
#include "gestalt/geometry.hpp"

namespace gestalt {

struct Simplex {
    // Strictly increasing point indices; dim = vertices.size() - 1.
    boost::container::small_vector<std::int32_t, 4> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }

    friend bool operator==(const Simplex& a, const Simplex& b) {
        return a.vertices == b.vertices;
    }
};

struct FiltrationEntry {
    Simplex simplex;
    double value = 0.0; // max pairwise distance among the vertices
};

constexpr std::size_t kDefaultSimplexCap = 5'000'000;

// Ordered simplices of a VR filtration, sorted by (value, dim, lexicographic
// vertices). Every prefix closed under the value order is a simplicial
// complex.
class Filtration {
public:
    Filtration(std::vector<FiltrationEntry> entries, int max_dim,
               double max_eps, std::size_t vertex_count)
        : entries_(std::move(entries)), max_dim_(max_dim), max_eps_(max_eps),
          n_(vertex_count) {}

    std::span<const FiltrationEntry> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    int max_dim() const { return max_dim_; }
    double max_eps() const { return max_eps_; }
    std::size_t vertex_count() const { return n_; }

    const FiltrationEntry& operator[](std::size_t i) const {
        return entries_[i];
    }

private:
    std::vector<FiltrationEntry> entries_;
    int max_dim_ = 0;
    double max_eps_ = 0.0;
    std::size_t n_ = 0;
};

namespace detail {

inline bool entry_order(const FiltrationEntry& a, const FiltrationEntry& b) {
    if (a.value != b.value) return a.value < b.value;
    if (a.simplex.dim() != b.simplex.dim())
        return a.simplex.dim() < b.simplex.dim();
    return std::lexicographical_compare(
        a.simplex.vertices.begin(), a.simplex.vertices.end(),
        b.simplex.vertices.begin(), b.simplex.vertices.end());
}

} // namespace detail

// Build the VR filtration: a simplex enters at the largest pairwise distance
// among its vertices, with the inclusive bound d <= max_eps. Enumeration
// walks cliques with ascending vertex indices; the cap turns combinatorial
// blowup into a clean error.
inline Filtration build_vr(const DistanceMatrix& dm, int max_dim,
                           double max_eps,
                           std::size_t simplex_cap = kDefaultSimplexCap) {
    if (max_dim < 0)
        throw config_error("max_dim must be >= 0");
    if (!(max_eps > 0.0))
        throw config_error("max_eps must be positive");
    const std::size_t n = dm.size();

    std::vector<FiltrationEntry> entries;
    auto guard = [&](std::size_t extra) {
        if (entries.size() + extra > simplex_cap)
            throw capacity_error(
                "simplex count would exceed cap of " +
                std::to_string(simplex_cap) +
                "; raise the cap or lower max_eps/max_dim");
    };

    guard(n);
    for (std::size_t i = 0; i < n; ++i) {
        FiltrationEntry e;
        e.simplex.vertices.push_back(static_cast<std::int32_t>(i));
        e.value = 0.0;
        entries.push_back(std::move(e));
    }

    // Neighbor lists restricted to higher indices keep each clique enumerated
    // exactly once.
    std::vector<std::vector<std::int32_t>> up(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (dm(i, j) <= max_eps)
                up[i].push_back(static_cast<std::int32_t>(j));

    std::vector<FiltrationEntry> frontier;
    if (max_dim >= 1) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::int32_t j : up[i]) {
                guard(1);
                FiltrationEntry e;
                e.simplex.vertices = {static_cast<std::int32_t>(i), j};
                e.value = dm(i, j);
                entries.push_back(e);
                frontier.push_back(std::move(e));
            }
    }

    for (int d = 2; d <= max_dim && !frontier.empty(); ++d) {
        std::vector<FiltrationEntry> next;
        for (const FiltrationEntry& e : frontier) {
            const auto& vs = e.simplex.vertices;
            for (std::int32_t w : up[vs.back()]) {
                double value = e.value;
                bool ok = true;
                for (std::int32_t v : vs) {
                    const double dvw = dm(v, w);
                    if (dvw > max_eps) {
                        ok = false;
                        break;
                    }
                    value = std::max(value, dvw);
                }
                if (!ok) continue;
                guard(1);
                FiltrationEntry c;
                c.simplex.vertices = vs;
                c.simplex.vertices.push_back(w);
                c.value = value;
                entries.push_back(c);
                next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }

    std::sort(entries.begin(), entries.end(), detail::entry_order);
    return Filtration(std::move(entries), max_dim, max_eps, n);
}

// The state of the filtration at scale eps: every simplex with value <= eps
// (inclusive; a feature whose death equals eps is already dead here).
inline std::span<const FiltrationEntry> complex_at(const Filtration& f,
                                                   double eps) {
    if (!(eps >= 0.0) || eps > f.max_eps())
        throw config_error("eps must lie in [0, max_eps]");
    auto entries = f.entries();
    auto it = std::upper_bound(
        entries.begin(), entries.end(), eps,
        [](double e, const FiltrationEntry& fe) { return e < fe.value; });
    return entries.subspan(0, static_cast<std::size_t>(it - entries.begin()));
}

// Graph of the 0- and 1-simplices with planar coordinates attached.
struct SkeletonGraph {
    struct Edge {
        std::int32_t u, v;
        double length; // embedded distance = filtration value of the edge
    };

    std::vector<std::array<double, 2>> positions; // planar (x, y) per vertex
    std::vector<Edge> edges;
    std::vector<std::vector<std::int32_t>> adjacency; // sorted neighbor lists

    std::size_t vertex_count() const { return positions.size(); }
};

inline SkeletonGraph one_skeleton(std::span<const FiltrationEntry> complex,
                                  const EmbeddedCloud& cloud) {
    SkeletonGraph g;
    g.positions.resize(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i)
        g.positions[i] = {cloud.x(i), cloud.y(i)};
    g.adjacency.resize(cloud.size());
    for (const FiltrationEntry& e : complex) {
        if (e.simplex.dim() != 1) continue;
        const std::int32_t u = e.simplex.vertices[0];
        const std::int32_t v = e.simplex.vertices[1];
        g.edges.push_back({u, v, e.value});
        g.adjacency[u].push_back(v);
        g.adjacency[v].push_back(u);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

// Debug export: one line "value dim v0 v1 ..." per entry in sort order.
inline void write_filtration(std::ostream& os, const Filtration& f) {
    for (const FiltrationEntry& e : f.entries()) {
        os << format_g9(e.value) << ' ' << e.simplex.dim();
        for (std::int32_t v : e.simplex.vertices) os << ' ' << v;
        os << '\n';
    }
}

} // namespace gestalt
