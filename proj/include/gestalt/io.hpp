// CSV and JSON loading/saving of attributed point clouds.
//
// CSV: header "x,y[,attr1,...]" with a numeric body.
// JSON: {"points": [{"x": ..., "y": ..., "attrs": {...}}]}.

#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gestalt/errors.hpp"
#include "gestalt/format.hpp"
#include "gestalt/geometry.hpp"

namespace gestalt {

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

inline double parse_cell(const std::string& cell, std::size_t line_no) {
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value))
        throw parse_error("line " + std::to_string(line_no) +
                          ": expected a finite number, got '" + cell + "'");
    return value;
}

} // namespace detail

inline AttributedCloud load_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw parse_error("line 1: missing header row");
    auto header = detail::split_csv_line(line);
    if (header.size() < 2 || header[0] != "x" || header[1] != "y")
        throw parse_error("line 1: header must start with 'x,y'");
    std::vector<std::string> attr_names(header.begin() + 2, header.end());
    for (const std::string& name : attr_names)
        if (name.empty())
            throw parse_error("line 1: empty attribute name in header");

    AttributedCloud cloud(attr_names);
    std::vector<double> values(attr_names.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto cells = detail::split_csv_line(line);
        if (cells.size() != header.size())
            throw parse_error("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " cells, got " +
                              std::to_string(cells.size()));
        const double x = detail::parse_cell(cells[0], line_no);
        const double y = detail::parse_cell(cells[1], line_no);
        for (std::size_t j = 0; j < attr_names.size(); ++j)
            values[j] = detail::parse_cell(cells[j + 2], line_no);
        cloud.add(x, y, values);
    }
    if (cloud.empty())
        throw parse_error("file contains no points");
    return cloud;
}

inline AttributedCloud load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open '" + path + "'");
    try {
        return load_csv(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline void save_csv(std::ostream& out, const AttributedCloud& cloud) {
    out << "x,y";
    for (const std::string& name : cloud.attr_names()) out << ',' << name;
    out << '\n';
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        out << format_g9(cloud.x(i)) << ',' << format_g9(cloud.y(i));
        for (std::size_t j = 0; j < cloud.attr_count(); ++j)
            out << ',' << format_g9(cloud.attr(i, j));
        out << '\n';
    }
}

inline void save_csv(const std::string& path, const AttributedCloud& cloud) {
    std::ofstream out(path);
    if (!out)
        throw parse_error("cannot open '" + path + "' for writing");
    save_csv(out, cloud);
}

inline AttributedCloud load_json(std::istream& in) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("points") ||
        !doc["points"].is_array())
        throw parse_error("$: expected an object with a 'points' array");
    const auto& pts = doc["points"];
    if (pts.empty())
        throw parse_error("$.points: empty point set (need n >= 1)");

    AttributedCloud cloud;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::string where = "$.points[" + std::to_string(i) + "]";
        const auto& p = pts[i];
        if (!p.is_object() || !p.contains("x") || !p.contains("y"))
            throw parse_error(where + ": expected {\"x\", \"y\"[, \"attrs\"]}");
        if (!p["x"].is_number() || !p["y"].is_number())
            throw parse_error(where + ": x and y must be numbers");
        AttributedPoint pt;
        pt.x = p["x"].get<double>();
        pt.y = p["y"].get<double>();
        if (p.contains("attrs")) {
            if (!p["attrs"].is_object())
                throw parse_error(where + ".attrs: expected an object");
            for (const auto& [name, value] : p["attrs"].items()) {
                if (!value.is_number())
                    throw parse_error(where + ".attrs." + name +
                                      ": expected a number");
                pt.attrs.emplace_back(name, value.get<double>());
            }
        }
        if (i == 0) {
            std::vector<std::string> names;
            for (const auto& [name, value] : pt.attrs) names.push_back(name);
            cloud = AttributedCloud(names);
        }
        try {
            cloud.add(pt);
        } catch (const config_error& e) {
            throw parse_error(where + ": " + e.what());
        }
    }
    return cloud;
}

inline AttributedCloud load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open '" + path + "'");
    try {
        return load_json(in);
    } catch (const parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline void save_json(std::ostream& out, const AttributedCloud& cloud) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        nlohmann::ordered_json p;
        p["x"] = cloud.x(i);
        p["y"] = cloud.y(i);
        nlohmann::ordered_json attrs = nlohmann::ordered_json::object();
        for (std::size_t j = 0; j < cloud.attr_count(); ++j)
            attrs[cloud.attr_names()[j]] = cloud.attr(i, j);
        if (!attrs.empty()) p["attrs"] = std::move(attrs);
        pts.push_back(std::move(p));
    }
    nlohmann::ordered_json doc;
    doc["points"] = std::move(pts);
    out << doc.dump(2) << '\n';
}

inline void save_json(const std::string& path, const AttributedCloud& cloud) {
    std::ofstream out(path);
    if (!out)
        throw parse_error("cannot open '" + path + "' for writing");
    save_json(out, cloud);
}

} // namespace gestalt
