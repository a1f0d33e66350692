#include "genhilbert/function_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "genhilbert/errors.hpp"

namespace genhilbert {

Weight Weight::standard(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ConfigError("standard weight exponent must be positive");
    }
    Weight v;
    v.kind_ = WeightKind::standard;
    v.gamma_ = gamma;
    return v;
}

Weight Weight::constant_one() { return Weight{}; }

Weight Weight::tabulated(std::vector<WeightSample> table) {
    if (table.size() < 2) throw ConfigError("weight table needs at least two samples");
    if (table.front().r != 0.0) throw ConfigError("weight table must start at r = 0");
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i].r >= 0.0 && table[i].r < 1.0)) {
            throw ConfigError("weight table radii must lie in [0,1)");
        }
        if (!(table[i].value > 0.0) || !std::isfinite(table[i].value)) {
            throw ConfigError("weight table values must be positive");
        }
        if (i > 0 && !(table[i].r > table[i - 1].r)) {
            throw ConfigError("weight table radii must be strictly increasing");
        }
        if (i > 0 && table[i].value > table[i - 1].value) {
            throw ConfigError("weight must be non-increasing in r");
        }
    }
    Weight v;
    v.kind_ = WeightKind::tabulated;
    v.table_ = std::move(table);
    return v;
}

std::string Weight::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case WeightKind::standard: os << "v_" << gamma_; break;
        case WeightKind::constant_one: os << "constant_one"; break;
        case WeightKind::tabulated: os << "tabulated(" << table_.size() << " samples)"; break;
    }
    return os.str();
}

double Weight::operator()(double r) const {
    switch (kind_) {
        case WeightKind::standard:
            return std::pow(1.0 - r, gamma_);
        case WeightKind::constant_one:
            return 1.0;
        case WeightKind::tabulated: {
            const auto& last = table_.back();
            if (r >= last.r) return last.value * (1.0 - r) / (1.0 - last.r);
            auto it = std::upper_bound(table_.begin(), table_.end(), r,
                                       [](double x, const WeightSample& s) { return x < s.r; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            return lo.value + (r - lo.r) / (hi.r - lo.r) * (hi.value - lo.value);
        }
    }
    return 1.0;
}

double Weight::log_eval(const UnitPoint& p) const {
    switch (kind_) {
        case WeightKind::standard:
            return -gamma_ * p.u;
        case WeightKind::constant_one:
            return 0.0;
        case WeightKind::tabulated: {
            const auto& last = table_.back();
            if (p.t >= last.r) {
                return std::log(last.value) - p.u - std::log1p(-last.r);
            }
            return std::log((*this)(p.t));
        }
    }
    return 0.0;
}

double weight_eval(const Weight& v, double r) {
    if (!(r >= 0.0 && r < 1.0)) throw DomainError("weight_eval: r must lie in [0,1)");
    return v(r);
}

// ---------------------------------------------------------------------------

TaylorFunction::TaylorFunction(std::vector<std::complex<double>> coeffs)
    : coeffs_(std::move(coeffs)) {
    nonneg_ = std::all_of(coeffs_.begin(), coeffs_.end(),
                          [](const auto& c) { return c.imag() == 0.0 && c.real() >= 0.0; });
}

TaylorFunction::TaylorFunction(std::span<const double> real_coeffs)
    : TaylorFunction(std::vector<std::complex<double>>(real_coeffs.begin(), real_coeffs.end())) {}

bool TaylorFunction::is_real() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return c.imag() == 0.0; });
}

std::vector<double> TaylorFunction::real_coeffs() const {
    if (!is_real()) throw DomainError("Taylor coefficients are not real");
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(c.real());
    return out;
}

std::complex<double> eval(const TaylorFunction& f, std::complex<double> z) {
    if (std::abs(z) > kMaxRadius * (1.0 + 1e-15)) {
        throw DomainError("eval: |z| exceeds the evaluation cutoff");
    }
    std::complex<double> acc = 0.0;
    const auto c = f.coeffs();
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

// ---------------------------------------------------------------------------

void GridSpec::validate() const {
    if (levels < 0 || levels > 24) throw ConfigError("grid levels must lie in [0, 24]");
    if (angles < 1) throw ConfigError("grid needs at least one angle");
}

std::vector<UnitPoint> GridSpec::radii() const {
    validate();
    std::vector<UnitPoint> out;
    for (int j = 0; j <= levels; ++j) out.push_back(UnitPoint::dyadic(j));
    return out;
}

namespace {

double radial_value(const TaylorFunction& f, const Weight& v, double r, double theta) {
    return v(r) * std::abs(eval(f, std::polar(r, theta)));
}

}  // namespace

double weighted_sup_norm(const TaylorFunction& f, const Weight& v, const GridSpec& grid) {
    const auto radii = grid.radii();
    const int angles = f.nonneg() ? 1 : grid.angles;
    double best = 0.0;
    std::size_t best_j = 0;
    double best_theta = 0.0;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        const double r = std::min(radii[j].t, kMaxRadius);
        for (int k = 0; k < angles; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / angles;
            const double val = radial_value(f, v, r, theta);
            if (val > best) {
                best = val;
                best_j = j;
                best_theta = theta;
            }
        }
    }
    if (!grid.refine || radii.size() < 2) return best;

    // golden-section search along the ray through the best grid point
    double lo = best_j == 0 ? 0.0 : radii[best_j - 1].t;
    double hi = best_j + 1 < radii.size() ? radii[best_j + 1].t : kMaxRadius;
    hi = std::min(hi, kMaxRadius);
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = radial_value(f, v, x1, best_theta), f2 = radial_value(f, v, x2, best_theta);
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = radial_value(f, v, x2, best_theta);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = radial_value(f, v, x1, best_theta);
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

double lp_norm(std::span<const double> a, double p) {
    if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double x : a) m = std::max(m, std::abs(x));
        return m;
    }
    if (p == 2.0) {
        double scale = 0.0, ssq = 1.0;  // overflow-safe two-norm
        for (double x : a) {
            if (x == 0.0) continue;
            const double ax = std::abs(x);
            if (scale < ax) {
                ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
                scale = ax;
            } else {
                ssq += (ax / scale) * (ax / scale);
            }
        }
        return scale * std::sqrt(ssq);
    }
    double sum = 0.0;
    for (double x : a) sum += std::pow(std::abs(x), p);
    return std::pow(sum, 1.0 / p);
}

double lp_norm(const TaylorFunction& f, double p) {
    std::vector<double> mags;
    mags.reserve(f.size());
    for (const auto& c : f.coeffs()) mags.push_back(std::abs(c));
    return lp_norm(mags, p);
}

TaylorFunction growth_witness(double gamma, std::size_t N) {
    if (!(gamma > 0.0)) throw DomainError("growth_witness: gamma must be positive");
    std::vector<double> a(N + 1);
    a[0] = 1.0;
    for (std::size_t n = 1; n <= N; ++n) {
        a[n] = a[n - 1] * (static_cast<double>(n) - 1.0 + gamma) / static_cast<double>(n);
    }
    return TaylorFunction(std::span<const double>(a));
}

}  // namespace genhilbert
