#pragma once

/**
 * Boundedness, compactness and nuclearity tests for I_mu, H_mu and C_mu.
 *
 * Every decision is read off a finite profile toward the boundary r -> 1^-.
 * Profiles live on the dyadic grid r_j = 1 - 2^{-j}, so growth rates appear as
 * slopes of log2(value) against j.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "genhilbert/function_space.hpp"
#include "genhilbert/measure.hpp"

namespace genhilbert {

enum class Verdict { yes, no, inconclusive };

const char* to_string(Verdict v);

struct ProfileThresholds {
    // limit zero: last three values non-increasing and final < zero_fraction * sup
    double zero_fraction = 0.05;
    // limit nonzero: last three within nonzero_spread of each other and > nonzero_fraction * sup
    double nonzero_spread = 0.10;
    double nonzero_fraction = 0.2;
    // bounded: tail slope of log2(value) per level <= bounded_slope; unbounded when >= unbounded_slope
    double bounded_slope = 0.02;
    double unbounded_slope = 0.1;
    int slope_points = 5;
};

struct ProfileCurve {
    std::string name;
    std::vector<double> levels;  // j
    std::vector<double> grid;    // 1 - 2^{-j}
    std::vector<double> values;
    // set when the inner integral already diverges; values are then empty
    bool divergent = false;

    double sup = 0.0;
    double last = 0.0;
    double tail_slope = 0.0;

    void push(double level, double value);
    void summarize(int slope_points = 5);
};

Verdict profile_bounded(const ProfileCurve& c, const ProfileThresholds& th = {});

struct LimitDecision {
    Verdict limit_zero = Verdict::inconclusive;
    double final_value = 0.0;
    double sup = 0.0;
    double spread = 0.0;  // max relative gap among the last three values
};

LimitDecision compactness_limit(const ProfileCurve& c, const ProfileThresholds& th = {});

// w(r_j) * int dmu(t) / (v(t) (1 - t r_j)). Marked divergent, with no values, when
// int dmu / v is infinite.
ProfileCurve boundedness_profile(const MeasureSpec& m, const Weight& v, const Weight& w,
                                 const GridSpec& grid = {});

struct CarlesonResult {
    double s = 0.0;
    double constant = 0.0;  // sup of the ratio over the grid
    Verdict finite = Verdict::inconclusive;
    Verdict vanishing = Verdict::inconclusive;
    ProfileCurve ratios;    // mu([t_j,1)) / (1 - t_j)^s
};

CarlesonResult carleson_check(const MeasureSpec& m, double s, int levels = 64,
                              const ProfileThresholds& th = {});

struct DecayWindow {
    std::size_t lo = 16;
    std::size_t hi = 4096;
};

struct DecayFit {
    // mu_n ~ C n^{-exponent}; +inf when the window holds zero moments
    double exponent = 0.0;
    double log_constant = 0.0;
    double residual = 0.0;  // rms of the log2 residuals
    // exponent over the first half of the window minus exponent over the second half
    double drift = 0.0;
    std::size_t window_lo = 0;
    std::size_t window_hi = 0;
    std::size_t points = 0;
};

DecayFit moment_decay_fit(const MomentSequence& ms, const DecayWindow& window = {});

struct SummabilityResult {
    std::vector<std::size_t> block_ends;  // 2^i - 1
    std::vector<double> partial_sums;     // sum_{n <= block_end} mu_n n^{gamma-1}
    double sum = 0.0;
    double last_block = 0.0;
    bool converged = false;
    // fitted remainder beyond the truncation; +inf when not converged or the fitted decay is too slow
    double tail_estimate = 0.0;
};

SummabilityResult moment_summability(const MomentSequence& ms, double gamma,
                                     double block_fraction = 0.01);

struct Finding {
    Verdict verdict = Verdict::inconclusive;
    std::string criterion;
    std::vector<std::pair<std::string, double>> evidence;
    std::string note;
};

struct ClassificationReport {
    std::string operator_name;
    Finding well_defined;
    Finding bounded;
    Finding compact;
    Finding nuclear;
    double gamma = 0.0;
    double delta = 0.0;
    std::optional<double> p;
    std::optional<double> q;
    std::size_t truncation = 0;
    std::vector<ProfileCurve> curves;

    // compact=yes => bounded=yes, nuclear=yes => compact=yes, well_defined=no => all no
    bool ordering_holds() const;
    void enforce_ordering();
};

struct ClassifyOptions {
    std::size_t truncation = 4096;
    GridSpec grid{};
    int carleson_levels = 64;
    ProfileThresholds thresholds{};
    QuadratureOptions quadrature{};
};

// I_mu : H^inf_{v_gamma} -> H^inf_{v_{gamma+delta}}; needs gamma > 0 and delta > -gamma.
ClassificationReport classify_growth(const MeasureSpec& m, double gamma, double delta,
                                     const ClassifyOptions& opts = {});

// H_mu and C_mu on the Wiener algebra of absolutely summable Taylor series.
ClassificationReport classify_wiener(const MeasureSpec& m, const ClassifyOptions& opts = {});

// Singular values of the N-section, largest first.
std::vector<double> hankel_section_svd(const MomentSequence& ms, std::size_t N);

inline constexpr std::size_t kMaxSvdSection = 1024;

struct WienerBound {
    double partial = 0.0;        // sum_{k <= N} mu_k
    double tail_estimate = 0.0;  // +inf when the fitted decay exponent is <= 1
    bool converged = false;
    DecayFit fit;
};

WienerBound nuclear_bound_wiener(const MomentSequence& ms);

struct RowNormResult {
    double p = 1.0;
    double q = 1.0;
    double p_conjugate = 0.0;       // p' (inf for p = 1)
    std::vector<double> row_norms;  // ||(mu_{n+k})_n||_{p'}
    double exponent = 0.0;          // fitted decay exponent r
    double condition = 0.0;         // q (r - 1/p')
    Verdict q_summable = Verdict::inconclusive;
    // row_k (k+1)^{r - 1/p'} stays bounded across the computed rows
    bool bound_ok = false;
    double bound_constant = 0.0;
};

// Rows k = 0..rows-1, each normed over the moments available past index k.
RowNormResult lpq_row_norms(const MomentSequence& ms, double p, double q, std::size_t rows);

}  // namespace genhilbert
