// Error taxonomy shared by the library and the CLI exit-code mapping.

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace gestalt {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration or parameters (CLI exit code 2).
class config_error : public error {
public:
    using error::error;
};

// Malformed input files, reported with a location (CLI exit code 2).
class parse_error : public error {
public:
    using error::error;
};

// Combinatorial size guard tripped (CLI exit code 4).
class capacity_error : public error {
public:
    using error::error;
};

// Data-dependent failures inside the pipeline (CLI exit code 3).
class pipeline_error : public error {
public:
    using error::error;
};

class degenerate_extent_error : public pipeline_error {
public:
    using pipeline_error::pipeline_error;
};

class empty_diagram_error : public pipeline_error {
public:
    using pipeline_error::pipeline_error;
};

class inconsistent_split_error : public pipeline_error {
public:
    using pipeline_error::pipeline_error;
};

class no_loop_error : public pipeline_error {
public:
    using pipeline_error::pipeline_error;
};

class unsupported_representative_error : public pipeline_error {
public:
    using pipeline_error::pipeline_error;
};

class dead_end_error : public pipeline_error {
public:
    dead_end_error(const std::string& what, int vertex)
        : pipeline_error(what), vertex_(vertex) {}

    int vertex() const { return vertex_; }

private:
    int vertex_ = -1;
};

class walk_limit_error : public pipeline_error {
public:
    using pipeline_error::pipeline_error;
};

// The significant loops share no common scale; carries the per-loop
// [birth, death) intervals so a caller can pick scales individually.
class no_common_scale_error : public pipeline_error {
public:
    no_common_scale_error(const std::string& what,
                          std::vector<std::array<double, 2>> intervals)
        : pipeline_error(what), intervals_(std::move(intervals)) {}

    const std::vector<std::array<double, 2>>& loop_intervals() const {
        return intervals_;
    }

private:
    std::vector<std::array<double, 2>> intervals_;
};

} // namespace gestalt
