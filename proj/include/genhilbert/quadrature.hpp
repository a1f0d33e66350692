#pragma once

/**
 * Gauss-Legendre panel quadrature used by the measure and criteria modules.
 *
 * Every singular integrand in this library blows up only as t -> 1^-, so
 * integrals over [0,1) are carried out in the log-complement coordinate
 *
 *     u = -log(1 - t),   t = 1 - e^{-u},   dt = e^{-u} du,
 *
 * which maps [0,1) onto [0, inf) and turns algebraic endpoint behaviour
 * (1-t)^a into smooth exponentials e^{-a u}. A UnitPoint carries t, 1-t and u
 * together so that none of them is recovered by cancellation.
 */

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace genhilbert {

struct UnitPoint {
    double t;     // point in [0,1)
    double comp;  // 1 - t, accurate even when t rounds to 1
    double u;     // -log(1 - t)

    static UnitPoint from_t(double t) {
        return {t, 1.0 - t, -std::log1p(-t)};
    }
    static UnitPoint from_log_complement(double u) {
        return {-std::expm1(-u), std::exp(-u), u};
    }
    // r_j = 1 - 2^{-j}; exact in the comp coordinate for any j.
    static UnitPoint dyadic(double level) {
        const double comp = std::exp2(-level);
        return {1.0 - comp, comp, level * std::log(2.0)};
    }
};

namespace quad {

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

// Fixed 20-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussLegendreRule& gauss_legendre20();

// Panel estimate on [a,b] with the 20-point rule; error left at zero.
double gauss_panel(const std::function<double(double)>& f, double a, double b);

// Adaptive bisection driven by |G(panel) - G(left) - G(right)|.
// Throws NumericError when max_depth is reached without meeting the tolerance.
Estimate adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth = 40);

// Panel subdivision of [a,b] produced by the same refinement rule, applied jointly
// to several test functions. Used to build reusable node sets.
struct Panel {
    double a;
    double b;
};
std::vector<Panel> refine_panels(std::span<const std::function<double(double)>> tests,
                                 std::span<const Panel> initial, double abs_tol,
                                 double* error_out, int max_depth = 30);

}  // namespace quad
}  // namespace genhilbert
