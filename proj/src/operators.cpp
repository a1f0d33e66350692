#include "genhilbert/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <string>

#include "genhilbert/errors.hpp"

namespace genhilbert {

namespace {

void require_hankel_moments(std::size_t have, std::size_t len, const char* who) {
    if (len > 0 && have < 2 * len - 1) {
        throw ConfigError(std::string(who) + ": need " + std::to_string(2 * len - 1) +
                          " moments, have " + std::to_string(have));
    }
}

// FFTW planning is not reentrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {
        if (!ptr) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    void* ptr;
};

}  // namespace

HankelSection::HankelSection(std::span<const double> moments, std::size_t N) : n_(N) {
    require_hankel_moments(moments.size(), N, "HankelSection");
    const std::size_t len = N == 0 ? 0 : 2 * N - 1;
    mu_.assign(moments.begin(), moments.begin() + static_cast<std::ptrdiff_t>(len));
}

Eigen::MatrixXd HankelSection::dense() const {
    const auto n = static_cast<Eigen::Index>(n_);
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) M(i, j) = mu_[static_cast<std::size_t>(i + j)];
    }
    return M;
}

std::vector<double> hilbert_apply(std::span<const double> moments, std::span<const double> a) {
    require_hankel_moments(moments.size(), a.size(), "hilbert_apply");
    const std::size_t N = a.size();
    std::vector<double> b(N, 0.0);
    for (std::size_t n = 0; n < N; ++n) {
        const double* mu = moments.data() + n;
        double acc = 0.0;
        for (std::size_t k = 0; k < N; ++k) acc += mu[k] * a[k];
        b[n] = acc;
    }
    return b;
}

std::vector<double> hilbert_apply(const MomentSequence& ms, std::span<const double> a) {
    return hilbert_apply(ms.view(), a);
}

std::vector<double> hilbert_apply_fast(std::span<const double> moments, std::span<const double> a) {
    require_hankel_moments(moments.size(), a.size(), "hilbert_apply_fast");
    const std::size_t N = a.size();
    if (N == 0) return {};
    if (N < 16) return hilbert_apply(moments, a);

    // b_n is entry n + N - 1 of the linear convolution of mu_0..mu_{2N-2} with reversed a.
    // A cyclic length L >= 2N - 1 keeps those entries free of wrap-around.
    const std::size_t L = std::bit_ceil(2 * N - 1);
    const std::size_t H = L / 2 + 1;
    FftwBuffer xbuf(sizeof(double) * L), ybuf(sizeof(double) * L);
    FftwBuffer xf(sizeof(fftw_complex) * H), yf(sizeof(fftw_complex) * H);
    auto* x = static_cast<double*>(xbuf.ptr);
    auto* y = static_cast<double*>(ybuf.ptr);
    auto* X = static_cast<fftw_complex*>(xf.ptr);
    auto* Y = static_cast<fftw_complex*>(yf.ptr);

    fftw_plan fwd_x, fwd_y, inv;
    {
        std::lock_guard lock(planner_mutex());
        const int n = static_cast<int>(L);
        fwd_x = fftw_plan_dft_r2c_1d(n, x, X, FFTW_ESTIMATE);
        fwd_y = fftw_plan_dft_r2c_1d(n, y, Y, FFTW_ESTIMATE);
        inv = fftw_plan_dft_c2r_1d(n, X, x, FFTW_ESTIMATE);
    }
    std::fill(x, x + L, 0.0);
    std::fill(y, y + L, 0.0);
    std::copy(moments.begin(), moments.begin() + static_cast<std::ptrdiff_t>(2 * N - 1), x);
    for (std::size_t j = 0; j < N; ++j) y[j] = a[N - 1 - j];

    fftw_execute(fwd_x);
    fftw_execute(fwd_y);
    for (std::size_t i = 0; i < H; ++i) {
        const double re = X[i][0] * Y[i][0] - X[i][1] * Y[i][1];
        const double im = X[i][0] * Y[i][1] + X[i][1] * Y[i][0];
        X[i][0] = re;
        X[i][1] = im;
    }
    fftw_execute(inv);

    std::vector<double> b(N);
    const double scale = 1.0 / static_cast<double>(L);
    for (std::size_t n = 0; n < N; ++n) b[n] = x[n + N - 1] * scale;

    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(fwd_x);
        fftw_destroy_plan(fwd_y);
        fftw_destroy_plan(inv);
    }
    return b;
}

std::vector<double> hilbert_apply_fast(const MomentSequence& ms, std::span<const double> a) {
    return hilbert_apply_fast(ms.view(), a);
}

std::vector<double> cesaro_apply(std::span<const double> moments, std::span<const double> a) {
    if (moments.size() < a.size()) throw ConfigError("cesaro_apply: not enough moments");
    std::vector<double> c(a.size());
    double prefix = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        prefix += a[k];
        c[k] = moments[k] * prefix;
    }
    return c;
}

std::vector<double> cesaro_apply(const MomentSequence& ms, std::span<const double> a) {
    return cesaro_apply(ms.view(), a);
}

// ---------------------------------------------------------------------------

IntegralOperator::IntegralOperator(const MeasureSpec& m, const TaylorFunction& f,
                                   const QuadratureOptions& opts) {
    auto abs_f = Integrand::from_function(
        [&f](const UnitPoint& p) { return std::abs(eval(f, std::complex<double>(std::min(p.t, kMaxRadius), 0.0))); });
    const auto check = integrate_against(m, abs_f, Singularity::at_one);
    if (check.divergent) {
        throw NotWellDefinedError("integral operator: int |f| dmu diverges");
    }
    abs_mass_ = check.value;

    const std::size_t degree = f.size() == 0 ? 0 : f.size() - 1;
    auto rule = build_rule(m, std::max<std::size_t>(64, 2 * degree), opts);
    points_ = std::move(rule.points);
    weights_ = std::move(rule.weights);
    rule_error_ = rule.error_bound;
    fvals_.reserve(points_.size());
    for (const auto& p : points_) {
        fvals_.push_back(eval(f, std::complex<double>(std::min(p.t, kMaxRadius), 0.0)));
    }
}

ComplexEstimate IntegralOperator::operator()(std::complex<double> z) const {
    if (!(std::abs(z) < 1.0)) throw DomainError("integral_apply: |z| must be below 1");
    std::complex<double> acc = 0.0;
    double fmax = 0.0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        acc += weights_[i] * fvals_[i] / (1.0 - points_[i].t * z);
        fmax = std::max(fmax, std::abs(fvals_[i]));
    }
    const double kernel_bound = 1.0 / (1.0 - std::abs(z));
    return {acc, rule_error_ * fmax * kernel_bound +
                     4.0 * std::numeric_limits<double>::epsilon() * abs_mass_ * kernel_bound};
}

ComplexEstimate integral_apply(const MeasureSpec& m, const TaylorFunction& f,
                               std::complex<double> z, const QuadratureOptions& opts) {
    return IntegralOperator(m, f, opts)(z);
}

std::vector<std::complex<double>> cauchy_coefficients(
    const std::function<std::complex<double>(std::complex<double>)>& F, std::size_t count,
    const CauchyOptions& opts) {
    if (!(opts.radius > 0.0 && opts.radius < 1.0)) {
        throw DomainError("cauchy_coefficients: radius must lie in (0,1)");
    }
    const std::size_t K = std::max(4 * count, opts.min_nodes);
    std::vector<std::complex<double>> values(K);
    for (std::size_t k = 0; k < K; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(K);
        values[k] = F(std::polar(opts.radius, theta));
    }
    std::vector<std::complex<double>> c(count);
    for (std::size_t n = 0; n < count; ++n) {
        std::complex<double> acc = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            const std::size_t idx = (n * k) % K;
            const double theta =
                -2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(K);
            acc += values[k] * std::polar(1.0, theta);
        }
        c[n] = acc / (static_cast<double>(K) * std::pow(opts.radius, static_cast<double>(n)));
    }
    return c;
}

std::vector<std::complex<double>> integral_coefficients(const MeasureSpec& m,
                                                        const TaylorFunction& f,
                                                        std::size_t count,
                                                        const CauchyOptions& opts,
                                                        const QuadratureOptions& qopts) {
    const IntegralOperator op(m, f, qopts);
    return cauchy_coefficients([&op](std::complex<double> z) { return op(z).value; }, count, opts);
}

// ---------------------------------------------------------------------------

namespace {

AbelResult abel_core(const std::function<double(double r, std::size_t K)>& mean,
                     const AbelOptions& opts) {
    AbelResult res;
    std::vector<double> e1;
    for (int j = 0; j <= opts.max_level; ++j) {
        const double h = std::exp2(-j);
        const double r = 1.0 - h;
        const auto K = static_cast<std::size_t>(std::ceil(opts.cutoff / h)) + 1;
        res.radii.push_back(r);
        res.means.push_back(mean(r, K));
        if (j >= 1) e1.push_back(2.0 * res.means[j] - res.means[j - 1]);
        if (e1.size() >= 2) {
            const std::size_t i = e1.size() - 1;
            // e1 carries an O(h^2) error, so the second round weighs 4:1
            res.extrapolants.push_back((4.0 * e1[i] - e1[i - 1]) / 3.0);
        }
        const auto& ex = res.extrapolants;
        if (ex.size() >= 3) {
            const double last = ex.back();
            const double spread = std::max(std::abs(last - ex[ex.size() - 2]),
                                           std::abs(last - ex[ex.size() - 3]));
            const double scale = std::max(std::abs(last), std::numeric_limits<double>::min());
            if (std::isfinite(last) && (spread <= opts.rel_tol * scale || spread == 0.0)) {
                res.estimate = last;
                res.converged = true;
                return res;
            }
        }
    }
    res.estimate = res.extrapolants.empty() ? (res.means.empty() ? 0.0 : res.means.back())
                                            : res.extrapolants.back();
    return res;
}

}  // namespace

AbelResult abel_sum(const std::function<double(std::size_t)>& term, const AbelOptions& opts) {
    return abel_core(
        [&term](double r, std::size_t K) {
            double acc = 0.0, rk = 1.0;
            for (std::size_t k = 0; k < K; ++k) {
                acc += term(k) * rk;
                rk *= r;
            }
            return acc;
        },
        opts);
}

AbelResult abel_sum(std::span<const double> c, const AbelOptions& opts) {
    return abel_core(
        [c](double r, std::size_t K) {
            const std::size_t n = std::min(K, c.size());
            double acc = 0.0, rk = 1.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += c[k] * rk;
                rk *= r;
            }
            return acc;
        },
        opts);
}

double hilbert_coeff_via_abel(const MomentSequence& ms, std::span<const double> a, std::size_t n,
                              const AbelOptions& opts) {
    if (ms.size() < n + a.size()) {
        throw ConfigError("hilbert_coeff_via_abel: need " + std::to_string(n + a.size()) +
                          " moments");
    }
    std::vector<double> c(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) c[k] = ms[n + k] * a[k];
    const auto res = abel_sum(c, opts);
    if (!res.converged) {
        const double spread = res.extrapolants.size() >= 2
                                  ? std::abs(res.extrapolants.back() - res.extrapolants.front())
                                  : std::numeric_limits<double>::infinity();
        throw NumericError("hilbert_coeff_via_abel: Abel means did not settle", spread);
    }
    return res.estimate;
}

}  // namespace genhilbert
