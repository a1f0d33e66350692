#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "genhilbert/quadrature.hpp"

namespace genhilbert {

// Evaluation cutoff |z| <= 1 - 2^{-24}; keeps (1-r)^gamma away from underflow.
inline constexpr double kMaxRadius = 1.0 - 0x1p-24;

enum class WeightKind { standard, constant_one, tabulated };

struct WeightSample {
    double r;
    double value;
};

/// Radial, continuous, non-increasing weight on the disc.
///
/// `standard(gamma)` is (1-r)^gamma. `constant_one` is the weight of H^infty and is
/// flagged through vanishes_at_boundary(). A tabulated weight interpolates linearly
/// between samples and decays linearly to zero on [r_last, 1).
class Weight {
public:
    static Weight standard(double gamma);
    static Weight constant_one();
    static Weight tabulated(std::vector<WeightSample> table);

    WeightKind kind() const { return kind_; }
    double gamma() const { return gamma_; }
    bool vanishes_at_boundary() const { return kind_ != WeightKind::constant_one; }
    std::string describe() const;

    double operator()(double r) const;
    // log v at a point given in log-complement form; valid arbitrarily close to 1
    double log_eval(const UnitPoint& p) const;

private:
    WeightKind kind_ = WeightKind::constant_one;
    double gamma_ = 0.0;
    std::vector<WeightSample> table_;
};

// Throws DomainError for r outside [0,1).
double weight_eval(const Weight& v, double r);

/// Truncated Taylor series a_0 + a_1 z + ... + a_N z^N.
class TaylorFunction {
public:
    TaylorFunction() = default;
    explicit TaylorFunction(std::vector<std::complex<double>> coeffs);
    explicit TaylorFunction(std::span<const double> real_coeffs);

    std::span<const std::complex<double>> coeffs() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }
    bool nonneg() const { return nonneg_; }
    bool is_real() const;
    std::vector<double> real_coeffs() const;

private:
    std::vector<std::complex<double>> coeffs_;
    bool nonneg_ = true;
};

// Horner evaluation; |z| must not exceed kMaxRadius.
std::complex<double> eval(const TaylorFunction& f, std::complex<double> z);

/// Radial grid r_j = 1 - 2^{-j}, j = 0..levels, times `angles` equispaced angles.
struct GridSpec {
    int levels = 24;
    int angles = 64;
    // golden-section refinement around the best grid point
    bool refine = true;

    void validate() const;
    std::vector<UnitPoint> radii() const;
};

/// Grid approximation of sup_z v(z)|f(z)|; a lower bound of the true norm.
double weighted_sup_norm(const TaylorFunction& f, const Weight& v, const GridSpec& grid = {});

// Coefficient-sequence norm, p in [1, inf].
double lp_norm(const TaylorFunction& f, double p);
double lp_norm(std::span<const double> a, double p);

// Coefficients of (1-z)^{-gamma} up to z^N.
TaylorFunction growth_witness(double gamma, std::size_t N);

}  // namespace genhilbert
