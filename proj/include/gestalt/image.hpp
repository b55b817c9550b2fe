// RGB raster images, hue extraction, and uniform grid sampling into
// attributed point clouds.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gestalt/errors.hpp"
#include "gestalt/geometry.hpp"

namespace gestalt {

struct RasterImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb; // row-major, 3 bytes per pixel

    RasterImage() = default;

    RasterImage(int w, int h) : width(w), height(h) {
        if (w < 1 || h < 1)
            throw config_error("image dimensions must be >= 1");
        rgb.assign(static_cast<std::size_t>(w) * h * 3, 0);
    }

    std::uint8_t* pixel(int x, int y) {
        return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }

    const std::uint8_t* pixel(int x, int y) const {
        return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }

    void set_pixel(int x, int y, std::uint8_t r, std::uint8_t g,
                   std::uint8_t b) {
        auto* p = pixel(x, y);
        p[0] = r;
        p[1] = g;
        p[2] = b;
    }
};

// HSV hue normalized to [0,1); gray pixels (zero chroma) get hue 0.
inline double rgb_to_hue(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
    const double r = r8 / 255.0, g = g8 / 255.0, b = b8 / 255.0;
    const double mx = std::max({r, g, b});
    const double mn = std::min({r, g, b});
    const double c = mx - mn;
    if (c <= 0.0) return 0.0;
    double h;
    if (mx == r)
        h = std::fmod((g - b) / c, 6.0);
    else if (mx == g)
        h = (b - r) / c + 2.0;
    else
        h = (r - g) / c + 4.0;
    h /= 6.0;
    if (h < 0.0) h += 1.0;
    return h;
}

inline double luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return 0.299 * r + 0.587 * g + 0.114 * b;
}

namespace detail {

// Pixel (col, row) -> plane: x right, y up, then squeezed into the unit
// square with the aspect ratio preserved. A cloud without planar extent is
// mapped to the origin.
inline AttributedCloud normalize_pixel_cloud(const AttributedCloud& cloud) {
    if (cloud.size() < 2) {
        AttributedCloud out(cloud.attr_names());
        std::vector<double> values(cloud.attr_count());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            for (std::size_t j = 0; j < cloud.attr_count(); ++j)
                values[j] = cloud.attr(i, j);
            out.add(0.0, 0.0, values);
        }
        return out;
    }
    try {
        return normalize_unit_square(cloud);
    } catch (const degenerate_extent_error&) {
        AttributedCloud out(cloud.attr_names());
        std::vector<double> values(cloud.attr_count());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            for (std::size_t j = 0; j < cloud.attr_count(); ++j)
                values[j] = cloud.attr(i, j);
            out.add(0.0, 0.0, values);
        }
        return out;
    }
}

} // namespace detail

// Grid samples at pixel (a*stride, b*stride), each carrying attribute
// "hue" in [0,1]; coordinates land in the unit square.
inline AttributedCloud sample_image_uniform(const RasterImage& img,
                                            int stride) {
    if (stride < 1)
        throw config_error("stride must be >= 1");
    AttributedCloud cloud({"hue"});
    for (int row = 0; row < img.height; row += stride)
        for (int col = 0; col < img.width; col += stride) {
            const auto* p = img.pixel(col, row);
            const double hue = rgb_to_hue(p[0], p[1], p[2]);
            const double vals[1] = {hue};
            cloud.add(static_cast<double>(col),
                      static_cast<double>(img.height - 1 - row), vals);
        }
    return detail::normalize_pixel_cloud(cloud);
}

// Nearest-anchor quantization of a hue attribute onto {yellow -> 0,
// blue -> 1}, measured on the hue circle.
inline AttributedCloud quantize_hue_binary(AttributedCloud cloud,
                                           const std::string& attr = "hue") {
    const int j = cloud.attr_index(attr);
    if (j < 0)
        throw config_error("cloud has no attribute '" + attr + "'");
    constexpr double kYellow = 1.0 / 6.0;
    constexpr double kBlue = 2.0 / 3.0;
    auto circ_dist = [](double a, double b) {
        const double d = std::fabs(a - b);
        return std::min(d, 1.0 - d);
    };
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const double h = cloud.attr(i, j);
        cloud.set_attr(i, j,
                       circ_dist(h, kYellow) <= circ_dist(h, kBlue) ? 0.0 : 1.0);
    }
    return cloud;
}

// Greedy min-distance thinning: keep a point iff it lies at least `radius`
// (planar) away from every point kept before it.
inline AttributedCloud decimate_min_distance(const AttributedCloud& cloud,
                                             double radius) {
    if (!(radius >= 0.0))
        throw config_error("decimation radius must be non-negative");
    AttributedCloud out(cloud.attr_names());
    std::vector<double> values(cloud.attr_count());
    std::vector<std::array<double, 2>> kept;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        bool ok = true;
        for (const auto& q : kept)
            if (std::hypot(cloud.x(i) - q[0], cloud.y(i) - q[1]) < radius) {
                ok = false;
                break;
            }
        if (!ok) continue;
        kept.push_back({cloud.x(i), cloud.y(i)});
        for (std::size_t j = 0; j < cloud.attr_count(); ++j)
            values[j] = cloud.attr(i, j);
        out.add(cloud.x(i), cloud.y(i), values);
    }
    return out;
}

} // namespace gestalt
