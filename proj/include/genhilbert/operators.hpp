#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "genhilbert/function_space.hpp"
#include "genhilbert/measure.hpp"

namespace genhilbert {

/// N x N section of the moment matrix M[i][j] = mu_{i+j}.
class HankelSection {
public:
    // Needs at least 2N-1 moments.
    HankelSection(std::span<const double> moments, std::size_t N);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return mu_[i + j]; }
    Eigen::MatrixXd dense() const;

private:
    std::vector<double> mu_;
    std::size_t n_;
};

// b_n = sum_k mu_{n+k} a_k for n, k < a.size(). Direct O(N^2) sum.
std::vector<double> hilbert_apply(std::span<const double> moments, std::span<const double> a);
std::vector<double> hilbert_apply(const MomentSequence& ms, std::span<const double> a);

// Same product as a reversed linear convolution, evaluated with real FFTs.
std::vector<double> hilbert_apply_fast(std::span<const double> moments, std::span<const double> a);
std::vector<double> hilbert_apply_fast(const MomentSequence& ms, std::span<const double> a);

// c_k = mu_k * (a_0 + ... + a_k).
std::vector<double> cesaro_apply(std::span<const double> moments, std::span<const double> a);
std::vector<double> cesaro_apply(const MomentSequence& ms, std::span<const double> a);

// ---------------------------------------------------------------------------
// I_mu(f)(z) = int f(t) / (1 - t z) dmu(t)

struct ComplexEstimate {
    std::complex<double> value;
    double error_bound = 0.0;
};

/// Integral operator with a quadrature rule reused across evaluation points.
///
/// Construction checks that the t-integral of |f| against mu is finite on the
/// evaluation disc and throws NotWellDefinedError otherwise.
class IntegralOperator {
public:
    IntegralOperator(const MeasureSpec& m, const TaylorFunction& f,
                     const QuadratureOptions& opts = {});

    ComplexEstimate operator()(std::complex<double> z) const;

private:
    std::vector<UnitPoint> points_;
    std::vector<double> weights_;
    std::vector<std::complex<double>> fvals_;
    double abs_mass_ = 0.0;  // int |f| dmu
    double rule_error_ = 0.0;
};

ComplexEstimate integral_apply(const MeasureSpec& m, const TaylorFunction& f,
                               std::complex<double> z, const QuadratureOptions& opts = {});

struct CauchyOptions {
    double radius = 0.8;
    std::size_t min_nodes = 160;
};

// First `count` Taylor coefficients of an analytic F from a trapezoidal contour
// integral on |z| = radius with max(4 count, min_nodes) nodes.
std::vector<std::complex<double>> cauchy_coefficients(
    const std::function<std::complex<double>(std::complex<double>)>& F, std::size_t count,
    const CauchyOptions& opts = {});

// Taylor coefficients 0..count-1 of I_mu(f).
std::vector<std::complex<double>> integral_coefficients(const MeasureSpec& m,
                                                        const TaylorFunction& f,
                                                        std::size_t count,
                                                        const CauchyOptions& opts = {},
                                                        const QuadratureOptions& qopts = {});

// ---------------------------------------------------------------------------
// Abel summation

struct AbelOptions {
    // A(r_j) on r_j = 1 - 2^{-j}, j = 0..max_level
    int max_level = 20;
    double rel_tol = 1e-6;
    // series at radius r is cut once r^K < e^{-cutoff}
    double cutoff = 42.0;
};

struct AbelResult {
    double estimate = 0.0;
    bool converged = false;
    std::vector<double> radii;
    std::vector<double> means;        // A(r_j)
    std::vector<double> extrapolants;
};

// Limit of A(r) = sum c_k r^k as r -> 1^-, extrapolated by two Richardson rounds
// in (1 - r). Converged when the last three extrapolants agree.
AbelResult abel_sum(const std::function<double(std::size_t)>& term, const AbelOptions& opts = {});
AbelResult abel_sum(std::span<const double> c, const AbelOptions& opts = {});

// n-th coefficient of I_mu(f) as the Abel sum of k -> mu_{n+k} a_k.
// Needs n + a.size() moments. Throws NumericError when the Abel means do not settle.
double hilbert_coeff_via_abel(const MomentSequence& ms, std::span<const double> a, std::size_t n,
                              const AbelOptions& opts = {});

}  // namespace genhilbert
