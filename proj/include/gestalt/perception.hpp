// Reconstruction of visual perceptual results from VR(eps_g): groupings,
// closed contours, traced curves, and simplified loop summaries.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gestalt/clustering.hpp"
#include "gestalt/errors.hpp"
#include "gestalt/filtration.hpp"
#include "gestalt/geometry.hpp"
#include "gestalt/persistence.hpp"

namespace gestalt {

struct PipelineConfig {
    int max_dim = 2;
    std::optional<double> max_eps; // default: cloud diameter
    InfinityPolicy policy = InfinityPolicy::ForceSignificant;
    double replace_factor = 1.2;
    std::size_t simplex_cap = kDefaultSimplexCap;
};

struct Grouping {
    std::vector<std::int32_t> labels; // point index -> group id
    std::int32_t group_count = 0;
    double eps_g = 0.0;
    // Competing deaths were exactly equal in the 0-PD; the grouping is
    // unstable under perturbation.
    bool tie_sensitive = false;
};

// Closed vertex cycle (first == last, interior vertices distinct) with its
// source persistence pair.
struct Loop {
    std::vector<std::int32_t> vertices;
    double birth = 0.0;
    double death = 0.0;

    double persistence() const { return death - birth; }
};

struct Polyline {
    std::vector<std::int32_t> vertices;
    // Signed steering angle (radians) per interior vertex.
    std::vector<double> turn_angles;
};

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void link(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace detail

// Connected components of the graph with an edge wherever the embedded
// distance is <= eps_g; labels are canonicalized by each group's smallest
// point index.
inline Grouping group(const EmbeddedCloud& cloud, double eps_g) {
    if (!(eps_g >= 0.0))
        throw config_error("eps_g must be non-negative");
    const std::size_t n = cloud.size();
    detail::UnionFind uf(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (euclidean_distance(cloud.coords(i), cloud.coords(j)) <= eps_g)
                uf.link(i, j);

    Grouping g;
    g.eps_g = eps_g;
    g.labels.assign(n, -1);
    std::map<std::size_t, std::int32_t> root_to_label;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = uf.find(i);
        auto [it, inserted] =
            root_to_label.emplace(r, static_cast<std::int32_t>(root_to_label.size()));
        g.labels[i] = it->second;
        (void)inserted;
    }
    g.group_count = static_cast<std::int32_t>(root_to_label.size());
    return g;
}

// --- pipeline analyses -----------------------------------------------------

struct ZeroDimAnalysis {
    double max_eps = 0.0;
    Diagram diagram;          // the 0-PD
    SignificanceSplit split;
    GestaltThreshold threshold;
    std::vector<PersistencePair> pairs; // dim-0 pairs, for diagnostics
};

inline double resolve_max_eps(const DistanceMatrix& dm,
                              const PipelineConfig& cfg) {
    if (cfg.max_eps) {
        if (!(*cfg.max_eps > 0.0))
            throw config_error("max_eps must be positive");
        return *cfg.max_eps;
    }
    const double d = dm.diameter();
    return d > 0.0 ? d : 1.0;
}

// Steps 2-4 of the model for connected components: 0-PD, split, eps_g.
inline ZeroDimAnalysis analyze_zero_dim(const EmbeddedCloud& cloud,
                                        const PipelineConfig& cfg = {}) {
    const DistanceMatrix dm = distance_matrix(cloud);
    const double max_eps = resolve_max_eps(dm, cfg);
    // Dim-0 pairs only need the 1-skeleton of the filtration.
    const Filtration f = build_vr(dm, 1, max_eps, cfg.simplex_cap);
    const Reduction red = reduce(f);

    ZeroDimAnalysis a;
    a.max_eps = max_eps;
    a.diagram = diagram(red.pairs(), 0);
    a.split = split_significant(a.diagram, cfg.policy, cfg.replace_factor);
    a.threshold = threshold_0d(a.split);
    for (const PersistencePair& p : red.pairs())
        if (p.dim == 0) a.pairs.push_back(p);
    return a;
}

struct OneDimAnalysis {
    Filtration filtration;
    Reduction reduction;
    double max_eps = 0.0;
    Diagram diagram; // the 1-PD (may be empty)
    std::optional<SignificanceSplit> split;    // set iff the 1-PD is non-empty
    std::optional<GestaltThreshold> threshold; // unset on empty PD or conflict
    // Per-loop [birth, death) intervals, filled when the significant loops
    // share no common scale.
    std::vector<std::array<double, 2>> conflict_intervals;
};

// Steps 2-4 of the model for loops: 1-PD, split, eps_g. The filtration and
// reduction are retained for skeleton extraction and representative cycles.
inline OneDimAnalysis analyze_one_dim(const EmbeddedCloud& cloud,
                                      const PipelineConfig& cfg = {}) {
    if (cfg.max_dim < 2)
        throw config_error("loop analysis requires max_dim >= 2");
    const DistanceMatrix dm = distance_matrix(cloud);
    const double max_eps = resolve_max_eps(dm, cfg);
    Filtration f = build_vr(dm, cfg.max_dim, max_eps, cfg.simplex_cap);
    Reduction red = reduce(f);

    OneDimAnalysis a{std::move(f), std::move(red), max_eps, {}, {}, {}, {}};
    a.diagram = diagram(a.reduction.pairs(), 1);
    if (a.diagram.empty()) return a;
    a.split = split_significant(a.diagram, cfg.policy, cfg.replace_factor);
    try {
        a.threshold = threshold_1d(*a.split);
    } catch (const no_common_scale_error& e) {
        a.conflict_intervals = e.loop_intervals();
    }
    return a;
}

// --- loop extraction ---------------------------------------------------------

namespace detail {

// Decompose a Z_2 edge chain (every vertex has even degree) into simple
// cycles by repeated walking; cycles pop off the walk stack whenever it
// revisits a vertex.
inline std::vector<std::vector<std::int32_t>> simple_cycles(
    std::span<const std::array<std::int32_t, 2>> edges) {
    std::map<std::int32_t, std::vector<std::pair<std::int32_t, std::size_t>>>
        adj; // vertex -> (neighbor, edge id), sorted by neighbor
    for (std::size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e][0]].emplace_back(edges[e][1], e);
        adj[edges[e][1]].emplace_back(edges[e][0], e);
    }
    for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());

    std::vector<char> used(edges.size(), 0);
    std::map<std::int32_t, std::size_t> pos_on_path;
    std::vector<std::vector<std::int32_t>> cycles;

    for (const auto& [start, start_nbrs] : adj) {
        (void)start_nbrs;
        std::vector<std::int32_t> path;
        auto push = [&](std::int32_t v) {
            pos_on_path[v] = path.size();
            path.push_back(v);
        };
        push(start);
        while (!path.empty()) {
            const std::int32_t v = path.back();
            const std::pair<std::int32_t, std::size_t>* next = nullptr;
            for (const auto& cand : adj[v])
                if (!used[cand.second]) {
                    next = &cand;
                    break;
                }
            if (next == nullptr) {
                pos_on_path.erase(v);
                path.pop_back();
                continue;
            }
            used[next->second] = 1;
            const std::int32_t w = next->first;
            auto it = pos_on_path.find(w);
            if (it != pos_on_path.end()) {
                std::vector<std::int32_t> cycle(path.begin() + it->second,
                                                path.end());
                cycle.push_back(w);
                for (std::size_t k = it->second + 1; k < path.size(); ++k)
                    pos_on_path.erase(path[k]);
                path.resize(it->second + 1);
                cycles.push_back(std::move(cycle));
            } else {
                push(w);
            }
        }
    }
    return cycles;
}

// Rotate/orient a closed cycle (first == last) so the smallest vertex leads
// and its smaller neighbor comes second.
inline std::vector<std::int32_t> canonical_cycle(std::vector<std::int32_t> c) {
    c.pop_back(); // drop the closing duplicate
    const auto min_it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), min_it, c.end());
    if (c.size() > 2 && c[c.size() - 1] < c[1])
        std::reverse(c.begin() + 1, c.end());
    c.push_back(c.front());
    return c;
}

// Representative chains can carry small homologous attachments; the longest
// simple cycle is the reported loop.
inline std::vector<std::int32_t> longest_simple_cycle(
    std::span<const std::array<std::int32_t, 2>> edges) {
    auto cycles = simple_cycles(edges);
    std::vector<std::int32_t> best;
    for (auto& c : cycles) {
        auto canon = canonical_cycle(std::move(c));
        if (canon.size() > best.size() ||
            (canon.size() == best.size() &&
             std::lexicographical_compare(canon.begin(), canon.end(),
                                          best.begin(), best.end())))
            best = std::move(canon);
    }
    return best;
}

// Match the split's significant points back to dim-`dim` persistence pairs
// (multiset matching on exact (birth, death) values), ordered by descending
// persistence.
inline std::vector<PersistencePair> significant_pairs(
    std::span<const PersistencePair> pairs, int dim,
    const std::vector<DiagramPoint>& points) {
    std::vector<PersistencePair> pool;
    for (const PersistencePair& p : pairs)
        if (p.dim == dim && p.death != p.birth) pool.push_back(p);

    std::vector<PersistencePair> out;
    std::vector<char> taken(pool.size(), 0);
    for (const DiagramPoint& pt : points)
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (taken[i] || pool[i].birth != pt.birth ||
                pool[i].death != pt.death)
                continue;
            taken[i] = 1;
            out.push_back(pool[i]);
            break;
        }
    std::sort(out.begin(), out.end(),
              [](const PersistencePair& a, const PersistencePair& b) {
                  if (a.persistence() != b.persistence())
                      return a.persistence() > b.persistence();
                  if (a.birth != b.birth) return a.birth < b.birth;
                  return a.birth_index < b.birth_index;
              });
    return out;
}

inline std::vector<Loop> extract_loops(const OneDimAnalysis& a,
                                       std::optional<std::size_t> max_loops) {
    if (!a.threshold) {
        if (!a.conflict_intervals.empty())
            throw no_common_scale_error(
                "no single scale hosts all significant loops; pick per-loop "
                "scales from the reported intervals",
                a.conflict_intervals);
        throw no_loop_error("the 1-PD is empty: no loop exists at any scale");
    }
    const auto sig = significant_pairs(a.reduction.pairs(), 1,
                                       a.split->significant);
    std::vector<Loop> loops;
    for (const PersistencePair& p : sig) {
        if (max_loops && loops.size() >= *max_loops) break;
        const auto chain = a.reduction.representative_cycle(p);
        Loop loop;
        loop.vertices = longest_simple_cycle(chain);
        loop.birth = p.birth;
        loop.death = p.death;
        loops.push_back(std::move(loop));
    }
    return loops;
}

} // namespace detail

// Step 5 for closure/pragnanz: one Loop per significant dim-1 pair, sorted
// by descending persistence.
inline std::vector<Loop> close_contours(
    const EmbeddedCloud& cloud, std::optional<std::size_t> max_loops = {},
    const PipelineConfig& cfg = {}) {
    const OneDimAnalysis a = analyze_one_dim(cloud, cfg);
    if (a.diagram.empty())
        throw no_loop_error("the 1-PD is empty: no loop exists at any scale");
    return detail::extract_loops(a, max_loops);
}

// Greedy smallest-steering-angle walk over the 1-skeleton from start to end.
// Ties break by shorter planar edge, then smaller vertex index; the vertex
// just departed is excluded (other revisits are permitted).
inline Polyline trace_continuation(
    const SkeletonGraph& sk, std::int32_t start, std::int32_t end,
    std::optional<std::array<double, 2>> initial_direction = {},
    std::size_t step_limit_factor = 10) {
    const std::size_t n = sk.vertex_count();
    if (start < 0 || end < 0 || static_cast<std::size_t>(start) >= n ||
        static_cast<std::size_t>(end) >= n)
        throw config_error("start/end vertex out of range");
    if (start == end)
        throw config_error("start and end must differ");
    if (sk.adjacency[start].empty())
        throw dead_end_error("start vertex has no neighbors", start);

    auto planar = [&](std::int32_t a, std::int32_t b) {
        return std::hypot(sk.positions[b][0] - sk.positions[a][0],
                          sk.positions[b][1] - sk.positions[a][1]);
    };

    std::array<double, 2> heading{};
    if (initial_direction) {
        const double norm =
            std::hypot((*initial_direction)[0], (*initial_direction)[1]);
        if (!(norm > 0.0))
            throw config_error("initial direction must be a nonzero vector");
        heading = {(*initial_direction)[0] / norm,
                   (*initial_direction)[1] / norm};
    } else {
        std::int32_t nearest = sk.adjacency[start][0];
        for (std::int32_t c : sk.adjacency[start])
            if (planar(start, c) < planar(start, nearest)) nearest = c;
        const double len = planar(start, nearest);
        if (len > 0.0)
            heading = {(sk.positions[nearest][0] - sk.positions[start][0]) / len,
                       (sk.positions[nearest][1] - sk.positions[start][1]) / len};
        else
            heading = {1.0, 0.0};
    }

    Polyline line;
    line.vertices.push_back(start);
    std::int32_t prev = -1, current = start;
    const std::size_t step_limit = step_limit_factor * std::max<std::size_t>(n, 1);
    std::size_t steps = 0;

    while (current != end) {
        if (++steps > step_limit)
            throw walk_limit_error(
                "continuation walk exceeded the step limit without reaching "
                "the end vertex");
        const std::int32_t chosen = [&] {
            std::int32_t best = -1;
            double best_angle = 0.0, best_len = 0.0;
            for (std::int32_t c : sk.adjacency[current]) {
                if (c == prev) continue;
                const double dx = sk.positions[c][0] - sk.positions[current][0];
                const double dy = sk.positions[c][1] - sk.positions[current][1];
                const double cross = heading[0] * dy - heading[1] * dx;
                const double dot = heading[0] * dx + heading[1] * dy;
                const double angle = std::fabs(std::atan2(cross, dot));
                const double len = std::hypot(dx, dy);
                if (best < 0 || angle < best_angle ||
                    (angle == best_angle && len < best_len) ||
                    (angle == best_angle && len == best_len && c < best)) {
                    best = c;
                    best_angle = angle;
                    best_len = len;
                }
            }
            return best;
        }();
        if (chosen < 0)
            throw dead_end_error("walk reached a dead end at vertex " +
                                     std::to_string(current),
                                 current);
        const double dx = sk.positions[chosen][0] - sk.positions[current][0];
        const double dy = sk.positions[chosen][1] - sk.positions[current][1];
        const double len = std::hypot(dx, dy);
        if (len > 0.0) heading = {dx / len, dy / len};
        prev = current;
        current = chosen;
        line.vertices.push_back(current);
    }

    // Signed turn angle per interior vertex, from consecutive headings.
    for (std::size_t i = 1; i + 1 < line.vertices.size(); ++i) {
        const auto& a = sk.positions[line.vertices[i - 1]];
        const auto& b = sk.positions[line.vertices[i]];
        const auto& c = sk.positions[line.vertices[i + 1]];
        const double ux = b[0] - a[0], uy = b[1] - a[1];
        const double vx = c[0] - b[0], vy = c[1] - b[1];
        line.turn_angles.push_back(
            std::atan2(ux * vy - uy * vx, ux * vx + uy * vy));
    }
    return line;
}

// Conflict resolution between attributes: the larger inter-class z-gap
// dominates the grouping. Deaths tied exactly across the competing
// attributes flag the result tie-sensitive.
inline Grouping resolve_conflict(const AttributedCloud& cloud,
                                 const std::map<std::string, double>& scales,
                                 const PipelineConfig& cfg = {}) {
    const EmbeddedCloud embedded = embed(cloud, scales);
    const ZeroDimAnalysis a = analyze_zero_dim(embedded, cfg);
    Grouping g = group(embedded, a.threshold.eps_g);
    g.tie_sensitive = a.split.degenerate;
    return g;
}

struct PragnanzSummary {
    std::size_t significant_loop_count = 0;
    std::vector<Loop> loops;
    // min significant persistence / max noise persistence (inf if no noise).
    double separation_ratio = kInfinity;
    // The significant class barely exceeds the noise band; the diagram is
    // plausibly all noise.
    bool weak_separation = false;
};

inline PragnanzSummary pragnanz_summary(const EmbeddedCloud& cloud,
                                        const PipelineConfig& cfg = {}) {
    PragnanzSummary s;
    const OneDimAnalysis a = analyze_one_dim(cloud, cfg);
    if (a.diagram.empty()) return s;
    s.significant_loop_count = a.split->significant.size();

    double min_sig = kInfinity, max_noise = 0.0;
    for (const DiagramPoint& p : a.split->significant)
        min_sig = std::min(min_sig, p.persistence());
    for (const DiagramPoint& p : a.split->noise)
        max_noise = std::max(max_noise, p.persistence());
    s.separation_ratio =
        a.split->noise.empty() ? kInfinity : min_sig / max_noise;
    s.weak_separation = s.separation_ratio < 2.0;

    if (s.significant_loop_count > 0 && a.threshold)
        s.loops = detail::extract_loops(a, std::nullopt);
    return s;
}

} // namespace gestalt
