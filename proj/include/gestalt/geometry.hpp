// Attributed planar point sets, their lift into (m+2)-dimensional space,
// and Euclidean distance matrices.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gestalt/errors.hpp"

namespace gestalt {

struct AttributedPoint {
    double x = 0.0;
    double y = 0.0;
    // (attribute name, raw value); every point of a cloud carries the same
    // names in the same order.
    std::vector<std::pair<std::string, double>> attrs;
};

// Planar point set with named perceptual attributes (color/shape/size/...).
class AttributedCloud {
public:
    AttributedCloud() = default;

    explicit AttributedCloud(std::vector<std::string> attr_names)
        : attr_names_(std::move(attr_names)) {}

    std::size_t size() const { return xs_.size(); }
    bool empty() const { return xs_.empty(); }

    const std::vector<std::string>& attr_names() const { return attr_names_; }
    std::size_t attr_count() const { return attr_names_.size(); }

    double x(std::size_t i) const { return xs_[i]; }
    double y(std::size_t i) const { return ys_[i]; }

    // Raw attribute value j of point i, in attr_names() order.
    double attr(std::size_t i, std::size_t j) const {
        return attr_values_[i * attr_names_.size() + j];
    }

    void set_attr(std::size_t i, std::size_t j, double value) {
        attr_values_[i * attr_names_.size() + j] = value;
    }

    int attr_index(const std::string& name) const {
        auto it = std::find(attr_names_.begin(), attr_names_.end(), name);
        return it == attr_names_.end()
                   ? -1
                   : static_cast<int>(it - attr_names_.begin());
    }

    void add(double x, double y, std::span<const double> values = {}) {
        if (!std::isfinite(x) || !std::isfinite(y))
            throw config_error("point coordinates must be finite");
        if (values.size() != attr_names_.size())
            throw config_error("point carries " + std::to_string(values.size()) +
                               " attribute values, cloud expects " +
                               std::to_string(attr_names_.size()));
        for (double v : values)
            if (!std::isfinite(v))
                throw config_error("attribute values must be finite");
        xs_.push_back(x);
        ys_.push_back(y);
        attr_values_.insert(attr_values_.end(), values.begin(), values.end());
    }

    void add(const AttributedPoint& p) {
        if (p.attrs.size() != attr_names_.size())
            throw config_error("attribute list length mismatch");
        std::vector<double> values;
        values.reserve(p.attrs.size());
        for (std::size_t j = 0; j < p.attrs.size(); ++j) {
            if (p.attrs[j].first != attr_names_[j])
                throw config_error("attribute name mismatch: expected '" +
                                   attr_names_[j] + "', got '" +
                                   p.attrs[j].first + "'");
            values.push_back(p.attrs[j].second);
        }
        add(p.x, p.y, values);
    }

    AttributedPoint point(std::size_t i) const {
        AttributedPoint p;
        p.x = xs_[i];
        p.y = ys_[i];
        p.attrs.reserve(attr_names_.size());
        for (std::size_t j = 0; j < attr_names_.size(); ++j)
            p.attrs.emplace_back(attr_names_[j], attr(i, j));
        return p;
    }

private:
    std::vector<std::string> attr_names_;
    std::vector<double> xs_, ys_;
    std::vector<double> attr_values_; // row-major, size() * attr_count()
};

// Point set in (m+2)-dimensional space: (x, y, z_1, ..., z_m) per point.
class EmbeddedCloud {
public:
    EmbeddedCloud() = default;

    EmbeddedCloud(std::size_t attr_count, std::vector<double> coords)
        : m_(attr_count), coords_(std::move(coords)) {
        if (coords_.empty() || coords_.size() % dim() != 0)
            throw config_error("embedded coordinate buffer size mismatch");
    }

    std::size_t size() const { return coords_.size() / dim(); }
    std::size_t attr_count() const { return m_; }
    std::size_t dim() const { return m_ + 2; }

    double x(std::size_t i) const { return coords_[i * dim()]; }
    double y(std::size_t i) const { return coords_[i * dim() + 1]; }

    std::span<const double> coords(std::size_t i) const {
        return {coords_.data() + i * dim(), dim()};
    }

private:
    std::size_t m_ = 0;
    std::vector<double> coords_;
};

// Symmetric Euclidean distance matrix with zero diagonal.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

    std::size_t size() const { return n_; }

    double operator()(std::size_t i, std::size_t j) const {
        return d_[i * n_ + j];
    }

    void set(std::size_t i, std::size_t j, double value) {
        d_[i * n_ + j] = value;
        d_[j * n_ + i] = value;
    }

    // Largest pairwise distance (0 for a single point).
    double diameter() const {
        double m = 0.0;
        for (double v : d_) m = std::max(m, v);
        return m;
    }

private:
    std::size_t n_ = 0;
    std::vector<double> d_;
};

// Lift a planar attributed cloud into (m+2)-D space: z_{i,j} = scale[name_j]
// times the raw attribute value. Attributes absent from `scale` contribute no
// z-column; every name in `scale` must exist in the cloud.
inline EmbeddedCloud embed(const AttributedCloud& cloud,
                           const std::map<std::string, double>& scale) {
    if (cloud.empty())
        throw config_error("cannot embed an empty cloud");
    std::vector<std::size_t> cols;
    std::vector<double> factors;
    for (const auto& [name, factor] : scale) {
        int j = cloud.attr_index(name);
        if (j < 0)
            throw config_error("scale names unknown attribute '" + name + "'");
        if (!(factor >= 0.0))
            throw config_error("scale for attribute '" + name +
                               "' must be non-negative");
    }
    // Keep the cloud's attribute order for the z-columns.
    for (std::size_t j = 0; j < cloud.attr_count(); ++j) {
        auto it = scale.find(cloud.attr_names()[j]);
        if (it != scale.end()) {
            cols.push_back(j);
            factors.push_back(it->second);
        }
    }

    const std::size_t m = cols.size();
    std::vector<double> coords;
    coords.reserve(cloud.size() * (m + 2));
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        coords.push_back(cloud.x(i));
        coords.push_back(cloud.y(i));
        for (std::size_t k = 0; k < m; ++k)
            coords.push_back(factors[k] * cloud.attr(i, cols[k]));
    }
    return EmbeddedCloud(m, std::move(coords));
}

inline double euclidean_distance(std::span<const double> a,
                                 std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return std::sqrt(s);
}

inline DistanceMatrix distance_matrix(const EmbeddedCloud& cloud) {
    const std::size_t n = cloud.size();
    DistanceMatrix dm(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dm.set(i, j, euclidean_distance(cloud.coords(i), cloud.coords(j)));
    return dm;
}

// Map the bounding box into [0,1]x[0,1] with one uniform scale factor on both
// axes (longer side spans [0,1]); attributes are untouched. Aspect ratio is
// preserved so steering angles are undistorted.
inline AttributedCloud normalize_unit_square(const AttributedCloud& cloud) {
    if (cloud.empty())
        throw config_error("cannot normalize an empty cloud");
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        min_x = std::min(min_x, cloud.x(i));
        max_x = std::max(max_x, cloud.x(i));
        min_y = std::min(min_y, cloud.y(i));
        max_y = std::max(max_y, cloud.y(i));
    }
    const double extent = std::max(max_x - min_x, max_y - min_y);
    if (extent <= 0.0)
        throw degenerate_extent_error(
            "all points coincide; unit-square normalization undefined");
    const double s = 1.0 / extent;

    AttributedCloud out(cloud.attr_names());
    std::vector<double> values(cloud.attr_count());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        for (std::size_t j = 0; j < cloud.attr_count(); ++j)
            values[j] = cloud.attr(i, j);
        out.add((cloud.x(i) - min_x) * s, (cloud.y(i) - min_y) * s, values);
    }
    return out;
}

} // namespace gestalt
