// Significant/noise splitting of persistence diagrams by exact 1-D 2-means
// on persistence, and the Gestalt threshold eps_g derived from the split.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gestalt/errors.hpp"
#include "gestalt/persistence.hpp"

namespace gestalt {

enum class InfinityPolicy {
    // Skip infinite points during clustering and classify them significant.
    ForceSignificant,
    // Replace the infinite death with replace_factor * (max finite death).
    Replace,
};

struct SignificanceSplit {
    int dim = 0;
    std::vector<DiagramPoint> significant;
    std::vector<DiagramPoint> noise;
    // The death value substituted for +inf under the Replace policy.
    std::optional<double> infinite_replacement;
    // No strict 2-means separation existed (all clustered persistences
    // equal); everything was classified significant.
    bool degenerate = false;
};

struct GestaltThreshold {
    int dim = 0;
    double eps_g = 0.0;
    double low = 0.0;   // valid interval [low, high)
    double high = 0.0;
};

namespace detail {

// Exact 1-D 2-means: the optimal two clusters are contiguous in sorted
// order, so enumerate the n-1 split points with prefix sums. Returns the
// count of values in the lower (noise) cluster, or 0 when no strict
// separation exists. Ties in cost prefer the smaller noise cluster.
inline std::size_t two_means_split(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n < 2) return 0;

    std::vector<double> sum(n + 1, 0.0), sumsq(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        sum[i + 1] = sum[i] + values[i];
        sumsq[i + 1] = sumsq[i] + values[i] * values[i];
    }
    auto sse = [&](std::size_t lo, std::size_t hi) { // [lo, hi)
        const double cnt = static_cast<double>(hi - lo);
        const double s = sum[hi] - sum[lo];
        return (sumsq[hi] - sumsq[lo]) - s * s / cnt;
    };

    std::size_t best = 0;
    double best_cost = 0.0;
    for (std::size_t s = 1; s < n; ++s) {
        if (!(values[s - 1] < values[s])) continue; // equal values stay together
        const double cost = sse(0, s) + sse(s, n);
        if (best == 0 || cost < best_cost ||
            (cost == best_cost && s < best)) {
            best = s;
            best_cost = cost;
        }
    }
    return best;
}

} // namespace detail

// One scalar per diagram point: its persistence |death - birth|, a monotone
// equivalent of the distance from the projection onto y = -x to the origin.
// Under ForceSignificant infinite points are skipped here (they are
// pre-assigned significant); under Replace the infinite death is replaced by
// replace_factor * max finite death.
inline std::vector<double> project_persistence(const Diagram& d,
                                               InfinityPolicy policy,
                                               double replace_factor = 1.2) {
    if (d.empty())
        throw empty_diagram_error("cannot project an empty diagram");
    if (policy == InfinityPolicy::Replace && !(replace_factor > 1.0))
        throw config_error("replace factor must exceed 1");

    double max_finite_death = 0.0;
    bool any_finite = false;
    for (const DiagramPoint& p : d.points)
        if (p.finite()) {
            max_finite_death = any_finite
                                   ? std::max(max_finite_death, p.death)
                                   : p.death;
            any_finite = true;
        }

    std::vector<double> out;
    out.reserve(d.size());
    for (const DiagramPoint& p : d.points) {
        if (p.finite()) {
            out.push_back(p.death - p.birth);
        } else if (policy == InfinityPolicy::Replace && any_finite) {
            out.push_back(replace_factor * max_finite_death - p.birth);
        }
        // ForceSignificant (or an all-infinite diagram): skipped.
    }
    return out;
}

// 2-means split of a diagram into significant and noise classes. A diagram
// with a single point is significant by itself; infinite points are always
// significant.
inline SignificanceSplit split_significant(const Diagram& d,
                                           InfinityPolicy policy =
                                               InfinityPolicy::ForceSignificant,
                                           double replace_factor = 1.2) {
    if (d.empty())
        throw empty_diagram_error("cannot split an empty diagram");
    if (policy == InfinityPolicy::Replace && !(replace_factor > 1.0))
        throw config_error("replace factor must exceed 1");

    SignificanceSplit split;
    split.dim = d.dim;

    double max_finite_death = 0.0;
    bool any_finite = false;
    for (const DiagramPoint& p : d.points)
        if (p.finite()) {
            max_finite_death = any_finite
                                   ? std::max(max_finite_death, p.death)
                                   : p.death;
            any_finite = true;
        }
    if (policy == InfinityPolicy::Replace && any_finite)
        split.infinite_replacement = replace_factor * max_finite_death;

    // Clustered coordinate per point; infinite points under ForceSignificant
    // (or with no finite death to derive a replacement from) bypass the
    // clustering and are significant outright.
    const std::size_t n = d.size();
    std::vector<double> coord(n);
    std::vector<char> forced(n, 0);
    std::vector<double> clustered;
    for (std::size_t i = 0; i < n; ++i) {
        const DiagramPoint& p = d.points[i];
        if (p.finite()) {
            coord[i] = p.persistence();
        } else if (split.infinite_replacement) {
            coord[i] = *split.infinite_replacement - p.birth;
        } else {
            forced[i] = 1;
            continue;
        }
        clustered.push_back(coord[i]);
    }

    std::size_t noise_count = 0;
    if (n > 1 && clustered.size() > 1)
        noise_count = detail::two_means_split(clustered);
    // noise_count == 0 covers: single-point diagrams, a single clustered
    // value alongside forced-significant points, and the no-strict-split
    // degenerate case.
    if (n > 1 && clustered.size() > 1 && noise_count == 0)
        split.degenerate = true;
    if (n > 1 && clustered.size() == 1 && std::count(forced.begin(), forced.end(), char(1)) > 0) {
        // A lone finite point next to infinite ones: it forms the lower
        // cluster on its own.
        noise_count = 1;
    }

    double boundary = -kInfinity;
    if (noise_count > 0) {
        std::vector<double> sorted = clustered;
        std::sort(sorted.begin(), sorted.end());
        boundary = sorted[noise_count - 1]; // values <= boundary are noise
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (forced[i] || coord[i] > boundary)
            split.significant.push_back(d.points[i]);
        else
            split.noise.push_back(d.points[i]);
    }
    return split;
}

// eps_g for a 0-PD split: the largest death time t_d of the noise points
// (all noise components are absorbed at eps_g, every significant component
// still lives). Empty noise gives eps_g = 0.
inline GestaltThreshold threshold_0d(const SignificanceSplit& s) {
    if (s.dim != 0)
        throw config_error("threshold_0d requires a dim-0 split");
    GestaltThreshold t;
    t.dim = 0;
    double min_sig_death = kInfinity;
    for (const DiagramPoint& p : s.significant)
        min_sig_death = std::min(min_sig_death, p.death);
    double t_d = 0.0;
    for (const DiagramPoint& p : s.noise) t_d = std::max(t_d, p.death);
    if (t_d >= min_sig_death)
        throw inconsistent_split_error(
            "largest noise death reaches the smallest significant death");
    t.eps_g = t_d;
    t.low = t_d;
    t.high = min_sig_death;
    return t;
}

// eps_g for a 1-PD split: the largest birth time t_b of the significant
// points; every significant loop exists in VR(eps_g).
inline GestaltThreshold threshold_1d(const SignificanceSplit& s) {
    if (s.dim != 1)
        throw config_error("threshold_1d requires a dim-1 split");
    if (s.significant.empty())
        throw config_error("threshold_1d requires a non-empty significant class");
    GestaltThreshold t;
    t.dim = 1;
    double t_b = -kInfinity;
    double min_sig_death = kInfinity;
    for (const DiagramPoint& p : s.significant) {
        t_b = std::max(t_b, p.birth);
        min_sig_death = std::min(min_sig_death, p.death);
    }
    if (t_b >= min_sig_death) {
        std::vector<std::array<double, 2>> intervals;
        intervals.reserve(s.significant.size());
        for (const DiagramPoint& p : s.significant)
            intervals.push_back({p.birth, p.death});
        throw no_common_scale_error(
            "no single scale hosts all significant loops; pick per-loop "
            "scales from the reported intervals",
            std::move(intervals));
    }
    t.eps_g = t_b;
    t.low = t_b;
    t.high = min_sig_death;
    return t;
}

} // namespace gestalt
