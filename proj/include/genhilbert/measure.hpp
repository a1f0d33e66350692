#pragma once

/**
 * Positive finite Borel measures on [0,1) and their moments.
 *
 * Supported families:
 *   - atomic:            finite sum of point masses t_j in [0,1)
 *   - lebesgue:          dt
 *   - beta(s):           s (1-t)^{s-1} dt, normalised so that mu([t,1)) = (1-t)^s
 *   - log_density:       dt / log(e / (1-t)), moments of order 1/(n log n)
 *   - tabulated_density: piecewise-linear density through sampled (t, value) pairs
 *
 * Every family carries a positive scale factor; scaled(c) multiplies the measure by c.
 */

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "genhilbert/quadrature.hpp"

namespace genhilbert {

enum class MeasureKind { atomic, lebesgue, beta, log_density, tabulated_density };

const char* to_string(MeasureKind kind);

struct Atom {
    double t;
    double mass;
};

struct DensitySample {
    double t;
    double value;
};

class MeasureSpec {
public:
    static MeasureSpec atomic(std::vector<Atom> atoms);
    static MeasureSpec lebesgue();
    static MeasureSpec beta(double s);
    static MeasureSpec log_density();
    static MeasureSpec tabulated(std::vector<DensitySample> table);

    MeasureSpec scaled(double c) const;

    MeasureKind kind() const { return kind_; }
    bool is_atomic() const { return kind_ == MeasureKind::atomic; }
    std::span<const Atom> atoms() const { return atoms_; }
    std::span<const DensitySample> density_table() const { return table_; }
    double s() const { return s_; }
    double scale() const { return scale_; }
    std::string describe() const;

    // Throws ConfigError when an invariant is violated.
    void validate() const;

    // Natural log of d(mu)/dt at p; -inf outside the support. Density kinds only.
    double log_density(const UnitPoint& p) const;

    // Log-complement coordinates where the density is not smooth (tabulated kind),
    // and where its support ends (+inf for the analytic families).
    std::vector<double> breakpoints_u() const;
    double support_end_u() const;

private:
    MeasureKind kind_ = MeasureKind::lebesgue;
    std::vector<Atom> atoms_;
    std::vector<DensitySample> table_;
    double s_ = 1.0;
    double scale_ = 1.0;
};

double total_mass(const MeasureSpec& m);

// mu([t,1)). Throws DomainError for t outside [0,1).
double tail_mass(const MeasureSpec& m, double t);
double tail_mass(const MeasureSpec& m, const UnitPoint& p);

struct MomentSequence {
    std::vector<double> values;  // mu_0 .. mu_N
    double total_mass = 0.0;
    double quadrature_error_bound = 0.0;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t n) const { return values[n]; }
    std::span<const double> view() const { return values; }
};

struct QuadratureOptions {
    // absolute budget on the normalised test integrals (mass and top moment)
    double tolerance = 1e-14;
    int max_depth = 30;
    // mass beyond this tail fraction is lumped into one node at the cutoff
    double tail_fraction = 1e-18;
};

// Discrete rule with sum_i weights[i] g(points[i]) ~ int g dmu. For density kinds it is a
// composite Gauss-Legendre rule in u, refined until both the mass and t^{max_moment}
// integrals pass the tolerance; for atomic measures it is exact.
struct MeasureRule {
    std::vector<UnitPoint> points;
    std::vector<double> weights;
    double error_bound = 0.0;
};

MeasureRule build_rule(const MeasureSpec& m, std::size_t max_moment,
                       const QuadratureOptions& opts = {});

double moment(const MeasureSpec& m, std::size_t n, const QuadratureOptions& opts = {});

// mu_0 .. mu_N on a single shared rule.
MomentSequence moments(const MeasureSpec& m, std::size_t N, const QuadratureOptions& opts = {});

// ---------------------------------------------------------------------------
// Integrals of non-negative, possibly unbounded integrands

enum class Singularity { bounded, at_one };

// An integrand g >= 0 described by log g, so that g(t) ~ (1-t)^{-a} can be evaluated
// arbitrarily close to t = 1 without overflow.
struct Integrand {
    std::function<double(const UnitPoint&)> log_value;

    static Integrand from_function(std::function<double(const UnitPoint&)> g);
    // (1-t)^{-gamma}
    static Integrand complement_power(double gamma);
};

struct GradedPartial {
    double level;  // partial integral over [0, 1 - 2^{-level}]
    double value;
};

struct DivergenceOptions {
    // graded levels are 2^0, 2^1, ..., 2^doublings
    int doublings = 20;
    double growth_factor = 1.25;
    int window = 5;
    double rel_tol = 1e-12;
};

struct IntegralOutcome {
    bool divergent = false;
    double value = 0.0;
    double error_bound = 0.0;
    std::vector<GradedPartial> partials;
};

IntegralOutcome integrate_against(const MeasureSpec& m, const Integrand& g,
                                  Singularity hint = Singularity::at_one,
                                  const DivergenceOptions& opts = {});

}  // namespace genhilbert
