// Persistence pairs of a VR filtration via boundary-matrix reduction over
// Z_2, persistence diagrams, persistent Betti numbers, and representative
// 1-cycles extracted from the reduced columns.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "gestalt/errors.hpp"
#include "gestalt/filtration.hpp"

namespace gestalt {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct PersistencePair {
    int dim = 0;
    double birth = 0.0;
    double death = kInfinity;
    std::int64_t birth_index = -1; // position of the birth simplex
    std::int64_t death_index = -1; // -1 when death is infinite

    bool finite() const { return death_index >= 0; }
    double persistence() const { return death - birth; }
};

struct DiagramPoint {
    double birth = 0.0;
    double death = kInfinity;

    double persistence() const { return death - birth; }
    bool finite() const { return death != kInfinity; }

    friend bool operator==(const DiagramPoint& a, const DiagramPoint& b) {
        return a.birth == b.birth && a.death == b.death;
    }
};

// Multiset of (birth, death) points of one dimension, all strictly above the
// diagonal (zero-persistence pairs are dropped).
struct Diagram {
    int dim = 0;
    std::vector<DiagramPoint> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

namespace detail {

// Lexicographic position index for the simplices of one dimension; used to
// resolve codimension-1 faces to their filtration positions.
class FaceIndex {
public:
    FaceIndex() = default;

    FaceIndex(const Filtration& f, int dim) {
        for (std::size_t p = 0; p < f.size(); ++p)
            if (f[p].simplex.dim() == dim)
                positions_.push_back(static_cast<std::int64_t>(p));
        std::sort(positions_.begin(), positions_.end(),
                  [&](std::int64_t a, std::int64_t b) {
                      const auto& va = f[a].simplex.vertices;
                      const auto& vb = f[b].simplex.vertices;
                      return std::lexicographical_compare(va.begin(), va.end(),
                                                          vb.begin(), vb.end());
                  });
        filtration_ = &f;
    }

    std::int64_t find(std::span<const std::int32_t> vertices) const {
        auto it = std::lower_bound(
            positions_.begin(), positions_.end(), vertices,
            [&](std::int64_t p, std::span<const std::int32_t> vs) {
                const auto& vp = (*filtration_)[p].simplex.vertices;
                return std::lexicographical_compare(vp.begin(), vp.end(),
                                                    vs.begin(), vs.end());
            });
        return it == positions_.end() ? -1 : *it;
    }

private:
    const Filtration* filtration_ = nullptr;
    std::vector<std::int64_t> positions_;
};

inline std::vector<std::int64_t> symmetric_difference(
    const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) out.push_back(a[i++]);
        else if (b[j] < a[i]) out.push_back(b[j++]);
        else { ++i; ++j; }
    }
    out.insert(out.end(), a.begin() + i, a.end());
    out.insert(out.end(), b.begin() + j, b.end());
    return out;
}

} // namespace detail

// Result of the column reduction: the persistence pairs plus the reduced
// death columns needed to answer representative-cycle queries for dim-1
// pairs.
class Reduction {
public:
    explicit Reduction(const Filtration& f) { run(f); }

    const std::vector<PersistencePair>& pairs() const { return pairs_; }

    // The Z_2 chain held in the reduced column of the death simplex: a closed
    // edge cycle born at pair.birth. Only finite dim-1 pairs are supported.
    std::vector<std::array<std::int32_t, 2>> representative_cycle(
        const PersistencePair& pair) const {
        if (pair.dim != 1)
            throw unsupported_representative_error(
                "representative cycles are defined for dim-1 pairs only");
        if (!pair.finite())
            throw unsupported_representative_error(
                "dim-1 pair has infinite death; raise max_eps (a cloud-"
                "diameter bound guarantees finite deaths)");
        auto it = representatives_.find(pair.death_index);
        if (it == representatives_.end())
            throw config_error("pair does not belong to this reduction");
        return it->second;
    }

private:
    void run(const Filtration& f) {
        const std::size_t total = f.size();
        const int top_dim = f.max_dim();

        std::vector<std::vector<std::int64_t>> by_dim(top_dim + 1);
        for (std::size_t p = 0; p < total; ++p)
            by_dim[f[p].simplex.dim()].push_back(static_cast<std::int64_t>(p));

        std::vector<detail::FaceIndex> face_index(top_dim);
        for (int d = 1; d < top_dim; ++d)
            if (!by_dim[d + 1].empty())
                face_index[d] = detail::FaceIndex(f, d);

        std::vector<std::int64_t> pivot_owner(total, -1);
        std::vector<char> cleared(total, 0), negative(total, 0);
        // Reduced columns of negative simplices, keyed by their pivot row.
        std::unordered_map<std::int64_t, std::vector<std::int64_t>> col_by_pivot;

        boost::container::small_vector<std::int32_t, 4> face;
        for (int d = top_dim; d >= 1; --d) {
            col_by_pivot.clear();
            for (std::int64_t j : by_dim[d]) {
                if (cleared[j]) continue;

                std::vector<std::int64_t> col;
                const auto& vs = f[j].simplex.vertices;
                for (std::size_t omit = 0; omit < vs.size(); ++omit) {
                    std::int64_t pos;
                    if (d == 1) {
                        pos = vs[1 - omit]; // vertex i sits at position i
                    } else {
                        face.clear();
                        for (std::size_t k = 0; k < vs.size(); ++k)
                            if (k != omit) face.push_back(vs[k]);
                        pos = face_index[d - 1].find(
                            {face.data(), face.size()});
                    }
                    col.push_back(pos);
                }
                std::sort(col.begin(), col.end());

                while (!col.empty()) {
                    const std::int64_t low = col.back();
                    auto it = col_by_pivot.find(low);
                    if (it == col_by_pivot.end()) break;
                    col = detail::symmetric_difference(col, it->second);
                }
                if (col.empty()) continue; // positive: births a class

                const std::int64_t low = col.back();
                pivot_owner[low] = j;
                cleared[low] = 1;
                negative[j] = 1;
                PersistencePair pair;
                pair.dim = d - 1;
                pair.birth = f[low].value;
                pair.death = f[j].value;
                pair.birth_index = low;
                pair.death_index = j;
                pairs_.push_back(pair);
                if (d == 2) {
                    std::vector<std::array<std::int32_t, 2>> edges;
                    edges.reserve(col.size());
                    for (std::int64_t r : col) {
                        const auto& ev = f[r].simplex.vertices;
                        edges.push_back({ev[0], ev[1]});
                    }
                    representatives_.emplace(j, std::move(edges));
                }
                col_by_pivot.emplace(low, std::move(col));
            }
        }

        // Unpaired positive simplices give infinite pairs.
        for (std::size_t p = 0; p < total; ++p) {
            if (negative[p] || pivot_owner[p] >= 0) continue;
            PersistencePair pair;
            pair.dim = f[p].simplex.dim();
            pair.birth = f[p].value;
            pair.death = kInfinity;
            pair.birth_index = static_cast<std::int64_t>(p);
            pair.death_index = -1;
            pairs_.push_back(pair);
        }

        std::sort(pairs_.begin(), pairs_.end(),
                  [](const PersistencePair& a, const PersistencePair& b) {
                      if (a.dim != b.dim) return a.dim < b.dim;
                      if (a.birth != b.birth) return a.birth < b.birth;
                      if (a.death != b.death) return a.death < b.death;
                      return a.birth_index < b.birth_index;
                  });
    }

    std::vector<PersistencePair> pairs_;
    std::unordered_map<std::int64_t, std::vector<std::array<std::int32_t, 2>>>
        representatives_;
};

// Standard left-to-right column reduction over Z_2 (with the clearing
// refinement, which produces the identical pairing).
inline Reduction reduce(const Filtration& f) { return Reduction(f); }

// The (birth, death) multiset of one dimension; zero-persistence pairs are
// invisible in a PD and are dropped, multi-points keep their multiplicity.
inline Diagram diagram(std::span<const PersistencePair> pairs, int dim) {
    if (dim < 0) throw config_error("diagram dimension must be >= 0");
    Diagram d;
    d.dim = dim;
    for (const PersistencePair& p : pairs) {
        if (p.dim != dim || p.death == p.birth) continue;
        d.points.push_back({p.birth, p.death});
    }
    std::sort(d.points.begin(), d.points.end(),
              [](const DiagramPoint& a, const DiagramPoint& b) {
                  if (a.birth != b.birth) return a.birth < b.birth;
                  return a.death < b.death;
              });
    return d;
}

// Persistent Betti number beta_dim^{i,j}: classes born by i and still alive
// after j.
inline int betti_at(std::span<const PersistencePair> pairs, int dim, double i,
                    double j) {
    if (!(0.0 <= i && i <= j))
        throw config_error("betti_at requires 0 <= i <= j");
    int count = 0;
    for (const PersistencePair& p : pairs)
        if (p.dim == dim && p.birth <= i && p.death > j) ++count;
    return count;
}

} // namespace gestalt
