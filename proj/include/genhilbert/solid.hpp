#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "genhilbert/measure.hpp"

namespace genhilbert {

/// Dyadic block values over [2^n, 2^{n+1} - 1], n = 0, 1, ...
/// Only blocks lying fully inside the vector are reported; a_0 belongs to no block.
struct BlockNormProfile {
    std::vector<double> blocks;
    double sup = 0.0;
    bool partial_tail_dropped = false;
};

// (sum_{m in block} |a_m|^2 / (m+1)^{2 gamma})^{1/2}
BlockNormProfile solid_hull_norm(std::span<const double> a, double gamma);

// sum_{m in block} |a_m| / (m+1)^gamma
BlockNormProfile solid_core_norm(std::span<const double> a, double gamma);

struct HullMappingResult {
    double weighted_l1 = 0.0;  // M = sum mu_n |a_n|
    BlockNormProfile image;    // block profile of H_mu a
    double image_norm = 0.0;
    bool core_mode = false;
    // unset when gamma is below the range where the bound is claimed
    // (1/2 for the hull, 1 for the core)
    std::optional<bool> bound_ok;
};

// Checks that the block norm of H_mu a stays below sum mu_n |a_n|. With core_mode the
// solid core norm replaces the hull norm. s records the Carleson exponent of the measure.
HullMappingResult hull_mapping_check(const MomentSequence& ms, std::span<const double> a,
                                     double gamma, double s, bool core_mode = false);

}  // namespace genhilbert
