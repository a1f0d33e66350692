#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genhilbert/criteria.hpp"
#include "genhilbert/function_space.hpp"
#include "genhilbert/measure.hpp"

namespace genhilbert {

enum class Task { moments, classify, profile, svd, solid, nuclear };

const char* to_string(Task t);
// Throws ConfigError for an unknown name.
Task task_from_string(std::string_view name);

struct RunConfig {
    MeasureSpec measure = MeasureSpec::lebesgue();
    double gamma = 0.5;
    double delta = 0.0;
    std::optional<double> p;
    std::optional<double> q;
    std::size_t truncation = 4096;
    GridSpec grid{};
    int carleson_levels = 64;
    ProfileThresholds thresholds{};
    QuadratureOptions quadrature{};
    std::size_t svd_size = 256;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    std::vector<Task> tasks{Task::moments, Task::classify};

    // Throws ConfigError naming the offending field.
    void validate() const;
};

// Parses a JSON document; unknown keys are rejected. Errors carry the line or the field path.
RunConfig parse_config(std::string_view text);

}  // namespace genhilbert
