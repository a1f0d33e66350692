#include "genhilbert/solid.hpp"

#include <algorithm>
#include <cmath>

#include "genhilbert/errors.hpp"
#include "genhilbert/operators.hpp"

namespace genhilbert {

namespace {

template <class Term, class Finish>
BlockNormProfile block_profile(std::span<const double> a, double gamma, Term term, Finish finish) {
    if (!(gamma > 0.0)) throw DomainError("block norms need gamma > 0");
    BlockNormProfile p;
    std::size_t lo = 1;
    for (; 2 * lo - 1 < a.size(); lo *= 2) {
        double acc = 0.0;
        for (std::size_t m = lo; m < 2 * lo; ++m) {
            acc += term(std::abs(a[m]), std::pow(static_cast<double>(m + 1), gamma));
        }
        const double v = finish(acc);
        p.blocks.push_back(v);
        p.sup = std::max(p.sup, v);
    }
    p.partial_tail_dropped = lo < a.size();
    return p;
}

}  // namespace

BlockNormProfile solid_hull_norm(std::span<const double> a, double gamma) {
    return block_profile(
        a, gamma, [](double x, double w) { return (x / w) * (x / w); },
        [](double acc) { return std::sqrt(acc); });
}

BlockNormProfile solid_core_norm(std::span<const double> a, double gamma) {
    return block_profile(
        a, gamma, [](double x, double w) { return x / w; }, [](double acc) { return acc; });
}

HullMappingResult hull_mapping_check(const MomentSequence& ms, std::span<const double> a,
                                     double gamma, double s, bool core_mode) {
    if (!(s > 0.0)) throw DomainError("hull_mapping_check: s must be positive");
    HullMappingResult res;
    res.core_mode = core_mode;
    for (std::size_t n = 0; n < a.size(); ++n) res.weighted_l1 += ms[n] * std::abs(a[n]);
    const auto b = hilbert_apply(ms, a);
    res.image = core_mode ? solid_core_norm(b, gamma) : solid_hull_norm(b, gamma);
    res.image_norm = res.image.sup;
    const double threshold = core_mode ? 1.0 : 0.5;
    if (gamma >= threshold) {
        res.bound_ok = res.image_norm <= res.weighted_l1 * (1.0 + 1e-12);
    }
    return res;
}

}  // namespace genhilbert
