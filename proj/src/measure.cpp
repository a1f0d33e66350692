#include "genhilbert/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "genhilbert/errors.hpp"

namespace genhilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();
// exp(-745) is the last value above zero in double precision
constexpr double kMaxLogComplement = 745.0;

double interpolate_table(std::span<const DensitySample> table, double t) {
    if (t < table.front().t || t > table.back().t) return 0.0;
    auto it = std::upper_bound(table.begin(), table.end(), t,
                               [](double x, const DensitySample& s) { return x < s.t; });
    if (it == table.end()) return std::max(table.back().value, 0.0);
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    return std::max(lo.value + w * (hi.value - lo.value), 0.0);
}

// int_t^{end} of the piecewise-linear density
double table_tail(std::span<const DensitySample> table, double t) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
        const double a = std::max(table[i].t, t);
        const double b = table[i + 1].t;
        if (a >= b) continue;
        sum += 0.5 * (interpolate_table(table, a) + interpolate_table(table, b)) * (b - a);
    }
    return sum;
}

}  // namespace

const char* to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::atomic: return "atomic";
        case MeasureKind::lebesgue: return "lebesgue";
        case MeasureKind::beta: return "beta";
        case MeasureKind::log_density: return "log_density";
        case MeasureKind::tabulated_density: return "tabulated_density";
    }
    return "unknown";
}

MeasureSpec MeasureSpec::atomic(std::vector<Atom> atoms) {
    MeasureSpec m;
    m.kind_ = MeasureKind::atomic;
    m.atoms_ = std::move(atoms);
    std::sort(m.atoms_.begin(), m.atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.t < b.t; });
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::lebesgue() {
    MeasureSpec m;
    m.kind_ = MeasureKind::lebesgue;
    return m;
}

MeasureSpec MeasureSpec::beta(double s) {
    MeasureSpec m;
    m.kind_ = MeasureKind::beta;
    m.s_ = s;
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::log_density() {
    MeasureSpec m;
    m.kind_ = MeasureKind::log_density;
    return m;
}

MeasureSpec MeasureSpec::tabulated(std::vector<DensitySample> table) {
    MeasureSpec m;
    m.kind_ = MeasureKind::tabulated_density;
    m.table_ = std::move(table);
    m.validate();
    return m;
}

MeasureSpec MeasureSpec::scaled(double c) const {
    MeasureSpec m = *this;
    m.scale_ *= c;
    m.validate();
    return m;
}

std::string MeasureSpec::describe() const {
    std::ostringstream os;
    os << to_string(kind_);
    if (kind_ == MeasureKind::beta) os << "(s=" << s_ << ")";
    if (kind_ == MeasureKind::atomic) os << "(" << atoms_.size() << " atoms)";
    if (kind_ == MeasureKind::tabulated_density) os << "(" << table_.size() << " samples)";
    if (scale_ != 1.0) os << " x " << scale_;
    return os.str();
}

void MeasureSpec::validate() const {
    if (!(scale_ > 0.0) || !std::isfinite(scale_)) {
        throw ConfigError("measure scale must be positive and finite");
    }
    switch (kind_) {
        case MeasureKind::atomic:
            if (atoms_.empty()) throw ConfigError("atomic measure needs at least one atom");
            for (const auto& a : atoms_) {
                if (!(a.t >= 0.0 && a.t < 1.0)) {
                    throw ConfigError("atom location must lie in [0,1)");
                }
                if (!(a.mass > 0.0) || !std::isfinite(a.mass)) {
                    throw ConfigError("atom mass must be positive and finite");
                }
            }
            break;
        case MeasureKind::beta:
            if (!(s_ > 0.0) || !std::isfinite(s_)) {
                throw ConfigError("beta measure parameter s must be positive");
            }
            break;
        case MeasureKind::tabulated_density: {
            if (table_.size() < 2) throw ConfigError("density table needs at least two samples");
            for (std::size_t i = 0; i < table_.size(); ++i) {
                const auto& s = table_[i];
                if (!(s.t >= 0.0 && s.t < 1.0)) {
                    throw ConfigError("density sample location must lie in [0,1)");
                }
                if (!(s.value >= 0.0) || !std::isfinite(s.value)) {
                    throw ConfigError("density samples must be finite and non-negative");
                }
                if (i > 0 && !(s.t > table_[i - 1].t)) {
                    throw ConfigError("density sample locations must be strictly increasing");
                }
            }
            if (!(table_tail(table_, 0.0) > 0.0)) {
                throw ConfigError("tabulated density has zero total mass");
            }
            break;
        }
        case MeasureKind::lebesgue:
        case MeasureKind::log_density:
            break;
    }
}

double MeasureSpec::log_density(const UnitPoint& p) const {
    const double log_scale = std::log(scale_);
    switch (kind_) {
        case MeasureKind::lebesgue:
            return log_scale;
        case MeasureKind::beta:
            return log_scale + std::log(s_) - (s_ - 1.0) * p.u;
        case MeasureKind::log_density:
            // 1 / log(e/(1-t)) = 1 / (1 + u)
            return log_scale - std::log1p(p.u);
        case MeasureKind::tabulated_density: {
            const double v = interpolate_table(table_, p.t);
            return v > 0.0 ? log_scale + std::log(v) : -kInf;
        }
        case MeasureKind::atomic:
            break;
    }
    throw std::logic_error("atomic measures have no density");
}

std::vector<double> MeasureSpec::breakpoints_u() const {
    std::vector<double> out;
    if (kind_ == MeasureKind::tabulated_density) {
        for (const auto& s : table_) out.push_back(-std::log1p(-s.t));
    }
    return out;
}

double MeasureSpec::support_end_u() const {
    if (kind_ == MeasureKind::tabulated_density) return -std::log1p(-table_.back().t);
    if (kind_ == MeasureKind::atomic) return -std::log1p(-atoms_.back().t);
    return kInf;
}

double total_mass(const MeasureSpec& m) { return tail_mass(m, UnitPoint::from_t(0.0)); }

double tail_mass(const MeasureSpec& m, double t) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("tail_mass: t must lie in [0,1)");
    return tail_mass(m, UnitPoint::from_t(t));
}

double tail_mass(const MeasureSpec& m, const UnitPoint& p) {
    double raw = 0.0;
    switch (m.kind()) {
        case MeasureKind::atomic:
            for (const auto& a : m.atoms()) {
                if (a.t >= p.t) raw += a.mass;
            }
            break;
        case MeasureKind::lebesgue:
            raw = p.comp;
            break;
        case MeasureKind::beta:
            raw = p.comp > 0.0 ? std::pow(p.comp, m.s()) : std::exp(-m.s() * p.u);
            break;
        case MeasureKind::log_density:
            // int_u^inf e^{-v}/(1+v) dv = e * E1(1+u), and Ei(-x) = -E1(x)
            raw = -std::numbers::e * std::expint(-(1.0 + p.u));
            break;
        case MeasureKind::tabulated_density:
            raw = table_tail(m.density_table(), p.t);
            break;
    }
    return m.scale() * raw;
}

// ---------------------------------------------------------------------------

MeasureRule build_rule(const MeasureSpec& m, std::size_t max_moment, const QuadratureOptions& opts) {
    MeasureRule rule;
    if (m.is_atomic()) {
        for (const auto& a : m.atoms()) {
            rule.points.push_back(UnitPoint::from_t(a.t));
            rule.weights.push_back(a.mass * m.scale());
        }
        return rule;
    }

    const double total = total_mass(m);
    double u_max = m.support_end_u();
    if (!std::isfinite(u_max)) {
        u_max = 8.0;
        while (u_max < kMaxLogComplement &&
               tail_mass(m, UnitPoint::from_log_complement(u_max)) > opts.tail_fraction * total) {
            u_max = std::min(2.0 * u_max, kMaxLogComplement);
        }
    }

    std::vector<double> cuts = m.breakpoints_u();
    for (double u = 0.0; u < u_max; u += 1.0) cuts.push_back(u);
    cuts.push_back(u_max);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<quad::Panel> initial;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i] >= 0.0 && cuts[i + 1] <= u_max && cuts[i + 1] > cuts[i]) {
            initial.push_back({cuts[i], cuts[i + 1]});
        }
    }

    auto base = [&m](double u) {
        const UnitPoint p = UnitPoint::from_log_complement(u);
        return std::exp(m.log_density(p) - u);
    };
    const double n_top = static_cast<double>(std::max<std::size_t>(max_moment, 1));
    const double n_mid = std::floor(std::sqrt(n_top));
    auto powered = [&base](double n) {
        // t^n = exp(n log1p(-e^{-u})) keeps relative accuracy where pow(t, n) would amplify round-off in t by n
        return [&base, n](double u) { return std::exp(n * std::log1p(-std::exp(-u))) * base(u); };
    };
    // normalise each test integral by a first estimate so one absolute budget fits all
    auto first_estimate = [&](const std::function<double(double)>& f) {
        double sum = 0.0;
        for (const auto& p : initial) sum += quad::gauss_panel(f, p.a, p.b);
        return sum > 0.0 ? sum : 1.0;
    };
    std::vector<std::function<double(double)>> tests;
    for (double n : {0.0, n_mid, n_top}) {
        std::function<double(double)> f = powered(n);
        const double scale = first_estimate(f);
        tests.push_back([f, scale](double u) { return f(u) / scale; });
    }

    double err = 0.0;
    const auto panels = quad::refine_panels(tests, initial, opts.tolerance, &err, opts.max_depth);
    if (!(err <= opts.tolerance)) {
        throw NumericError("moment quadrature did not reach the requested tolerance", err);
    }

    const auto& gl = quad::gauss_legendre20();
    rule.points.reserve(panels.size() * gl.nodes.size() + 1);
    rule.weights.reserve(panels.size() * gl.nodes.size() + 1);
    for (const auto& panel : panels) {
        const double half = 0.5 * (panel.b - panel.a);
        const double mid = 0.5 * (panel.a + panel.b);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = mid + half * gl.nodes[i];
            const UnitPoint p = UnitPoint::from_log_complement(u);
            const double w = half * gl.weights[i] * std::exp(m.log_density(p) - u);
            if (w > 0.0) {
                rule.points.push_back(p);
                rule.weights.push_back(w);
            }
        }
    }
    const double lumped = tail_mass(m, UnitPoint::from_log_complement(u_max));
    if (lumped > 0.0) {
        rule.points.push_back(UnitPoint::from_log_complement(u_max));
        rule.weights.push_back(lumped);
    }
    rule.error_bound = (err + 64.0 * std::numeric_limits<double>::epsilon()) * total;
    return rule;
}

double moment(const MeasureSpec& m, std::size_t n, const QuadratureOptions& opts) {
    const MeasureRule rule = build_rule(m, n, opts);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        sum += rule.weights[i] * std::pow(rule.points[i].t, static_cast<double>(n));
    }
    return sum;
}

MomentSequence moments(const MeasureSpec& m, std::size_t N, const QuadratureOptions& opts) {
    const MeasureRule rule = build_rule(m, N, opts);
    MomentSequence out;
    out.values.assign(N + 1, 0.0);
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        const double t = rule.points[i].t;
        const double w = rule.weights[i];
        double power = 1.0;
        for (std::size_t n = 0; n <= N; ++n) {
            out.values[n] += w * power;
            power *= t;
            if (power == 0.0) break;
        }
    }
    out.total_mass = total_mass(m);
    out.quadrature_error_bound = rule.error_bound;
    return out;
}

// ---------------------------------------------------------------------------

Integrand Integrand::from_function(std::function<double(const UnitPoint&)> g) {
    return {[g = std::move(g)](const UnitPoint& p) { return std::log(g(p)); }};
}

Integrand Integrand::complement_power(double gamma) {
    return {[gamma](const UnitPoint& p) { return gamma * p.u; }};
}

namespace {

double checked_log_value(const Integrand& g, const UnitPoint& p) {
    const double v = g.log_value(p);
    if (std::isnan(v)) throw DomainError("integrand undefined (or negative) inside [0,1)");
    return v;
}

}  // namespace

IntegralOutcome integrate_against(const MeasureSpec& m, const Integrand& g, Singularity hint,
                                  const DivergenceOptions& opts) {
    IntegralOutcome out;
    const double ln2 = std::numbers::ln2;

    if (hint == Singularity::bounded) {
        const MeasureRule rule = build_rule(m, 0);
        double sum = 0.0, g_max = 0.0;
        for (std::size_t i = 0; i < rule.points.size(); ++i) {
            const double gv = std::exp(checked_log_value(g, rule.points[i]));
            sum += rule.weights[i] * gv;
            g_max = std::max(g_max, gv);
        }
        out.value = sum;
        out.error_bound = rule.error_bound * g_max;
        out.partials.push_back({rule.points.back().u / ln2, sum});
        out.divergent = !std::isfinite(sum);
        return out;
    }

    const int levels = opts.doublings;
    std::vector<double> level_u;
    for (int i = 0; i <= levels; ++i) level_u.push_back(std::exp2(i) * ln2);

    if (m.is_atomic()) {
        for (int i = 0; i <= levels; ++i) {
            double sum = 0.0;
            for (const auto& a : m.atoms()) {
                const UnitPoint p = UnitPoint::from_t(a.t);
                if (p.u <= level_u[i]) sum += a.mass * m.scale() * std::exp(checked_log_value(g, p));
            }
            out.partials.push_back({std::exp2(i), sum});
        }
    } else {
        auto h = [&](double u) {
            const UnitPoint p = UnitPoint::from_log_complement(u);
            const double log_rho = m.log_density(p);
            if (log_rho == -kInf) return 0.0;
            return std::exp(checked_log_value(g, p) + log_rho - u);
        };
        const double end_u = m.support_end_u();
        std::vector<double> breaks = m.breakpoints_u();
        double running = 0.0;
        double lower = 0.0;
        for (int i = 0; i <= levels; ++i) {
            const double upper = std::min(level_u[i], end_u);
            std::vector<double> cuts{lower};
            for (double b : breaks) {
                if (b > lower && b < upper) cuts.push_back(b);
            }
            cuts.push_back(upper);
            for (std::size_t k = 0; k + 1 < cuts.size() && std::isfinite(running); ++k) {
                if (cuts[k + 1] <= cuts[k]) continue;
                // exponents of size u carry absolute round-off ~ eps u, which the integrand inherits
                const double rel = std::max(opts.rel_tol, 16.0 * kEps * (1.0 + cuts[k + 1]));
                const auto est = quad::adaptive_gauss(h, cuts[k], cuts[k + 1], rel * running, rel);
                running += est.value;
                out.error_bound += est.error;
            }
            lower = std::max(lower, upper);
            out.partials.push_back({std::exp2(i), running});
            if (!std::isfinite(running)) break;
        }
    }

    out.value = out.partials.back().value;
    const std::size_t n = out.partials.size();
    if (!std::isfinite(out.value)) {
        out.divergent = true;
        return out;
    }
    if (n > static_cast<std::size_t>(opts.window)) {
        const double earlier = out.partials[n - 1 - opts.window].value;
        if (earlier > 0.0 && out.value > opts.growth_factor * earlier) out.divergent = true;
    }
    if (n >= 2) out.error_bound += std::abs(out.value - out.partials[n - 2].value);
    return out;
}

}  // namespace genhilbert
