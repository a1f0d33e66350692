#include "genhilbert/criteria.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "genhilbert/errors.hpp"

namespace genhilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

}  // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::yes: return "yes";
        case Verdict::no: return "no";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

// ---------------------------------------------------------------------------
// Profiles

void ProfileCurve::push(double level, double value) {
    levels.push_back(level);
    grid.push_back(1.0 - std::exp2(-level));
    values.push_back(value);
}

void ProfileCurve::summarize(int slope_points) {
    sup = 0.0;
    for (double v : values) sup = std::isfinite(v) ? std::max(sup, v) : kInf;
    last = values.empty() ? 0.0 : values.back();
    tail_slope = 0.0;
    std::vector<double> x, y;
    const std::size_t n = values.size();
    const std::size_t from = n > static_cast<std::size_t>(slope_points) ? n - slope_points : 0;
    for (std::size_t i = from; i < n; ++i) {
        if (values[i] > 0.0 && std::isfinite(values[i])) {
            x.push_back(levels[i]);
            y.push_back(std::log2(values[i]));
        }
    }
    if (x.size() >= 2) tail_slope = least_squares(x, y).slope;
}

Verdict profile_bounded(const ProfileCurve& c, const ProfileThresholds& th) {
    if (c.divergent) return Verdict::no;
    if (c.values.empty()) return Verdict::inconclusive;
    for (double v : c.values) {
        if (!std::isfinite(v)) return Verdict::no;
    }
    if (c.values.back() == 0.0) return Verdict::yes;
    if (c.tail_slope <= th.bounded_slope) return Verdict::yes;
    if (c.tail_slope >= th.unbounded_slope) return Verdict::no;
    return Verdict::inconclusive;
}

LimitDecision compactness_limit(const ProfileCurve& c, const ProfileThresholds& th) {
    LimitDecision d;
    d.sup = c.sup;
    if (c.divergent) {
        d.limit_zero = Verdict::no;
        d.final_value = kInf;
        return d;
    }
    const std::size_t n = c.values.size();
    if (n < 3) return d;
    const double a = c.values[n - 3], b = c.values[n - 2], f = c.values[n - 1];
    d.final_value = f;
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(f)) {
        d.limit_zero = Verdict::no;
        return d;
    }
    const double hi = std::max({a, b, f}), lo = std::min({a, b, f});
    d.spread = hi > 0.0 ? (hi - lo) / hi : 0.0;
    const bool decreasing = (a > b && b > f) || (f == 0.0 && b <= a && f <= b);
    if (decreasing && f < th.zero_fraction * c.sup) {
        d.limit_zero = Verdict::yes;
    } else if (d.spread <= th.nonzero_spread && lo > th.nonzero_fraction * c.sup) {
        d.limit_zero = Verdict::no;
    }
    return d;
}

ProfileCurve boundedness_profile(const MeasureSpec& m, const Weight& v, const Weight& w,
                                 const GridSpec& grid) {
    grid.validate();
    ProfileCurve c;
    c.name = "boundedness";
    const Integrand inv_v{[&v](const UnitPoint& p) { return -v.log_eval(p); }};
    const auto base = integrate_against(m, inv_v, Singularity::at_one);
    if (base.divergent) {
        c.divergent = true;
        c.sup = kInf;
        c.last = kInf;
        return c;
    }
    for (int j = 0; j <= grid.levels; ++j) {
        const UnitPoint r = UnitPoint::dyadic(j);
        const Integrand g{[&v, r](const UnitPoint& p) {
            // 1 - t r = (1 - t) + t (1 - r), free of cancellation near t = r = 1
            return -v.log_eval(p) - std::log(p.comp + p.t * r.comp);
        }};
        const auto inner = integrate_against(m, g, Singularity::at_one);
        if (inner.divergent) {
            c.push(j, kInf);
            continue;
        }
        c.push(j, std::exp(w.log_eval(r)) * inner.value);
    }
    c.summarize();
    return c;
}

CarlesonResult carleson_check(const MeasureSpec& m, double s, int levels,
                              const ProfileThresholds& th) {
    if (!(s > 0.0)) throw DomainError("carleson_check: s must be positive");
    if (levels < 3) throw ConfigError("carleson_check: need at least three levels");
    CarlesonResult res;
    res.s = s;
    res.ratios.name = "carleson";
    for (int j = 0; j <= levels; ++j) {
        const UnitPoint t = UnitPoint::dyadic(j);
        const double tail = tail_mass(m, t);
        res.ratios.push(j, tail == 0.0 ? 0.0 : tail * std::exp(s * t.u));
    }
    res.ratios.summarize(th.slope_points);
    res.constant = res.ratios.sup;
    res.finite = profile_bounded(res.ratios, th);
    res.vanishing = compactness_limit(res.ratios, th).limit_zero;
    if (res.finite == Verdict::no) res.vanishing = Verdict::no;
    return res;
}

// ---------------------------------------------------------------------------
// Moment statistics

DecayFit moment_decay_fit(const MomentSequence& ms, const DecayWindow& window) {
    if (window.lo < 1 || window.hi <= window.lo) throw ConfigError("decay window is empty");
    if (ms.size() < 3) throw DomainError("moment_decay_fit: too few moments");
    const std::size_t top = std::min(window.hi, ms.size() - 1);
    DecayFit fit;
    std::vector<double> x, y;
    bool zero = false;
    std::size_t n = 1;
    while (n < window.lo) n *= 2;
    fit.window_lo = n;
    for (; n <= top; n *= 2) {
        fit.window_hi = n;
        if (!(ms[n] > 0.0)) {
            zero = true;
            continue;
        }
        x.push_back(std::log2(static_cast<double>(n)));
        y.push_back(std::log2(ms[n]));
    }
    fit.points = x.size();
    if (zero) {
        fit.exponent = kInf;
        return fit;
    }
    if (x.size() < 3) throw DomainError("moment_decay_fit: window holds fewer than three points");
    const auto all = least_squares(x, y);
    fit.exponent = -all.slope;
    fit.log_constant = all.intercept * std::log(2.0);
    fit.residual = all.rms;
    const std::size_t mid = x.size() / 2;
    const std::vector<double> x1(x.begin(), x.begin() + mid + 1), y1(y.begin(), y.begin() + mid + 1);
    const std::vector<double> x2(x.begin() + mid, x.end()), y2(y.begin() + mid, y.end());
    fit.drift = least_squares(x2, y2).slope - least_squares(x1, y1).slope;
    return fit;
}

SummabilityResult moment_summability(const MomentSequence& ms, double gamma,
                                     double block_fraction) {
    if (!(gamma > 0.0)) throw DomainError("moment_summability: gamma must be positive");
    if (ms.size() < 2) throw DomainError("moment_summability: too few moments");
    SummabilityResult res;
    const auto term = [&](std::size_t n) {
        return n == 0 ? ms[0] : ms[n] * std::pow(static_cast<double>(n), gamma - 1.0);
    };
    double acc = term(0);
    res.block_ends.push_back(0);
    res.partial_sums.push_back(acc);
    std::size_t lo = 1;
    while (2 * lo - 1 <= ms.size() - 1) {
        double block = 0.0;
        for (std::size_t n = lo; n < 2 * lo; ++n) block += term(n);
        acc += block;
        res.block_ends.push_back(2 * lo - 1);
        res.partial_sums.push_back(acc);
        res.last_block = block;
        lo *= 2;
    }
    res.sum = acc;
    res.converged = std::isfinite(acc) && res.last_block < block_fraction * acc;

    res.tail_estimate = kInf;
    // a fitted remainder only means something once the blocks have settled
    if (res.converged && ms.size() > 32) {
        const auto fit = moment_decay_fit(ms, {16, std::min<std::size_t>(4096, res.block_ends.back())});
        const double alpha = fit.exponent - (gamma - 1.0);
        const std::size_t end = res.block_ends.back();
        if (std::isinf(fit.exponent)) {
            res.tail_estimate = 0.0;
        } else if (alpha > 1.0) {
            res.tail_estimate = term(end) * static_cast<double>(end) / (alpha - 1.0);
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Classification

bool ClassificationReport::ordering_holds() const {
    if (well_defined.verdict == Verdict::no &&
        (bounded.verdict != Verdict::no || compact.verdict != Verdict::no ||
         nuclear.verdict != Verdict::no)) {
        return false;
    }
    if (compact.verdict == Verdict::yes && bounded.verdict != Verdict::yes) return false;
    if (nuclear.verdict == Verdict::yes && compact.verdict != Verdict::yes) return false;
    return true;
}

void ClassificationReport::enforce_ordering() {
    if (well_defined.verdict == Verdict::no) {
        for (Finding* f : {&bounded, &compact, &nuclear}) {
            if (f->verdict != Verdict::no) {
                f->verdict = Verdict::no;
                f->note = "operator is not well defined";
            }
        }
        return;
    }
    if (bounded.verdict == Verdict::no && compact.verdict != Verdict::no) {
        compact.verdict = Verdict::no;
        compact.note = "not bounded";
    }
    if (compact.verdict == Verdict::yes && bounded.verdict != Verdict::yes) {
        compact.verdict = Verdict::inconclusive;
        compact.note = "boundedness undecided";
    }
    if (compact.verdict == Verdict::no && nuclear.verdict != Verdict::no) {
        nuclear.verdict = Verdict::no;
        nuclear.note = "not compact";
    }
    if (nuclear.verdict == Verdict::yes && compact.verdict != Verdict::yes) {
        nuclear.verdict = Verdict::inconclusive;
        nuclear.note = "compactness undecided";
    }
}

namespace {

void add_integral_evidence(Finding& f, const IntegralOutcome& out) {
    if (out.divergent) {
        f.evidence.emplace_back("last_partial", out.partials.empty() ? 0.0 : out.partials.back().value);
        if (out.partials.size() > 5) {
            f.evidence.emplace_back("partial_growth",
                                    out.partials.back().value /
                                        out.partials[out.partials.size() - 6].value);
        }
    } else {
        f.evidence.emplace_back("integral", out.value);
        f.evidence.emplace_back("integral_error", out.error_bound);
    }
}

Verdict combine(Verdict primary, Verdict check, std::string& note) {
    if (primary == Verdict::inconclusive) return primary;
    if (check != Verdict::inconclusive && check != primary) {
        note = "tail-mass and kernel-profile evidence disagree";
        return Verdict::inconclusive;
    }
    return primary;
}

}  // namespace

ClassificationReport classify_growth(const MeasureSpec& m, double gamma, double delta,
                                     const ClassifyOptions& opts) {
    if (!(gamma > 0.0)) throw DomainError("classify_growth: gamma must be positive");
    if (!(delta > -gamma)) throw DomainError("classify_growth: delta must exceed -gamma");
    m.validate();

    ClassificationReport rep;
    rep.operator_name = "I_mu: H^inf(v_" + fmt(gamma) + ") -> H^inf(v_" + fmt(gamma + delta) + ")";
    rep.gamma = gamma;
    rep.delta = delta;
    rep.truncation = opts.truncation;

    const auto ms = moments(m, opts.truncation, opts.quadrature);
    const auto domain = integrate_against(m, Integrand::complement_power(gamma));
    const auto summ = moment_summability(ms, gamma);
    const Weight v = Weight::standard(gamma);
    const Weight w = Weight::standard(gamma + delta);

    rep.well_defined.criterion = "integrability of 1/v_gamma against mu";
    rep.well_defined.verdict = domain.divergent ? Verdict::no : Verdict::yes;
    add_integral_evidence(rep.well_defined, domain);

    auto profile = boundedness_profile(m, v, w, opts.grid);

    if (gamma + delta < 1.0) {
        const double s = 1.0 - delta;
        const auto car = carleson_check(m, s, opts.carleson_levels, opts.thresholds);
        const auto kernel_bounded = profile_bounded(profile, opts.thresholds);
        const auto kernel_limit = compactness_limit(profile, opts.thresholds);

        rep.bounded.criterion = "(1-delta)-Carleson condition on mu";
        rep.bounded.verdict = combine(car.finite, kernel_bounded, rep.bounded.note);
        rep.bounded.evidence = {{"s", s},
                                {"carleson_constant", car.constant},
                                {"carleson_tail_slope", car.ratios.tail_slope},
                                {"kernel_profile_sup", profile.sup},
                                {"kernel_profile_tail_slope", profile.tail_slope}};

        rep.compact.criterion = "vanishing (1-delta)-Carleson condition on mu";
        rep.compact.verdict = combine(car.vanishing, kernel_limit.limit_zero, rep.compact.note);
        rep.compact.evidence = {{"s", s},
                                {"carleson_final_ratio", car.ratios.last},
                                {"kernel_profile_final", kernel_limit.final_value},
                                {"kernel_profile_spread", kernel_limit.spread}};
        rep.curves.push_back(std::move(profile));
        rep.curves.push_back(car.ratios);
    } else {
        // well defined, bounded and compact coincide in this range
        const Verdict verdict = rep.well_defined.verdict;
        for (Finding* f : {&rep.bounded, &rep.compact}) {
            f->criterion = "integrability of 1/v_gamma against mu (sum mu_n n^(gamma-1) finite)";
            f->verdict = verdict;
            add_integral_evidence(*f, domain);
        }
        const Verdict summable = summ.converged ? Verdict::yes : Verdict::no;
        if (summable != verdict) {
            rep.well_defined.note = "dyadic moment sums at this truncation point the other way";
        }
        rep.curves.push_back(std::move(profile));
        if (1.0 - delta > 0.0) {
            rep.curves.push_back(carleson_check(m, 1.0 - delta, opts.carleson_levels, opts.thresholds).ratios);
        }
    }
    for (Finding* f : {&rep.well_defined, &rep.bounded, &rep.compact}) {
        f->evidence.emplace_back("moment_sum", summ.sum);
        f->evidence.emplace_back("moment_sum_last_block", summ.last_block);
    }

    rep.nuclear.criterion = "no nuclearity test on growth spaces; follows compactness only negatively";
    rep.nuclear.verdict = Verdict::inconclusive;
    rep.enforce_ordering();
    return rep;
}

ClassificationReport classify_wiener(const MeasureSpec& m, const ClassifyOptions& opts) {
    m.validate();
    ClassificationReport rep;
    rep.operator_name = "H_mu, C_mu: l1_A -> l1_A";
    rep.gamma = 1.0;
    rep.truncation = opts.truncation;
    const auto ms = moments(m, opts.truncation, opts.quadrature);
    const auto wb = nuclear_bound_wiener(ms);
    const auto total = integrate_against(m, Integrand::complement_power(1.0));
    const Verdict verdict = total.divergent ? Verdict::no : Verdict::yes;
    for (Finding* f : {&rep.well_defined, &rep.bounded, &rep.compact, &rep.nuclear}) {
        f->criterion = "summability of the moments (int dmu/(1-t) finite)";
        f->verdict = verdict;
        add_integral_evidence(*f, total);
        f->evidence.emplace_back("moment_partial_sum", wb.partial);
        f->evidence.emplace_back("moment_tail_estimate", wb.tail_estimate);
        if ((wb.converged ? Verdict::yes : Verdict::no) != verdict) {
            f->note = "dyadic moment sums at this truncation point the other way";
        }
    }
    rep.enforce_ordering();
    return rep;
}

std::vector<double> hankel_section_svd(const MomentSequence& ms, std::size_t N) {
    if (N == 0) return {};
    if (N > kMaxSvdSection) throw ConfigError("hankel_section_svd: section size above 1024");
    if (ms.size() < 2 * N - 1) throw ConfigError("hankel_section_svd: need 2N-1 moments");
    const auto n = static_cast<Eigen::Index>(N);
    Eigen::MatrixXd M(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) M(i, j) = ms[static_cast<std::size_t>(i + j)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericError("hankel_section_svd: eigensolver did not converge", kInf);
    }
    std::vector<double> sigma(N);
    for (std::size_t i = 0; i < N; ++i) sigma[i] = std::abs(es.eigenvalues()(static_cast<Eigen::Index>(i)));
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

WienerBound nuclear_bound_wiener(const MomentSequence& ms) {
    WienerBound wb;
    const auto summ = moment_summability(ms, 1.0);
    for (double x : ms.values) wb.partial += x;
    wb.converged = summ.converged;
    if (ms.size() > 32) {
        wb.fit = moment_decay_fit(ms);
        const double n = static_cast<double>(ms.size() - 1);
        if (std::isinf(wb.fit.exponent)) {
            wb.tail_estimate = 0.0;
        } else if (wb.fit.exponent > 1.0) {
            wb.tail_estimate = ms.values.back() * n / (wb.fit.exponent - 1.0);
        } else {
            wb.tail_estimate = kInf;
        }
    } else {
        wb.tail_estimate = kInf;
    }
    return wb;
}

RowNormResult lpq_row_norms(const MomentSequence& ms, double p, double q, std::size_t rows) {
    if (!(p >= 1.0)) throw DomainError("lpq_row_norms: p must be >= 1");
    if (!(q >= 1.0) || std::isinf(q)) throw DomainError("lpq_row_norms: q must lie in [1, inf)");
    if (rows == 0 || rows > ms.size()) throw ConfigError("lpq_row_norms: bad row count");
    RowNormResult res;
    res.p = p;
    res.q = q;
    res.p_conjugate = p == 1.0 ? kInf : (std::isinf(p) ? 1.0 : p / (p - 1.0));
    const double inv_pc = std::isinf(res.p_conjugate) ? 0.0 : 1.0 / res.p_conjugate;

    res.row_norms.reserve(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        res.row_norms.push_back(lp_norm(ms.view().subspan(k), res.p_conjugate));
    }
    const auto fit = moment_decay_fit(ms);
    res.exponent = fit.exponent;
    res.condition = std::isinf(fit.exponent) ? kInf : q * (fit.exponent - inv_pc);
    if (res.condition > 1.05) {
        res.q_summable = Verdict::yes;
    } else if (res.condition < 0.95) {
        res.q_summable = Verdict::no;
    }

    // row_k (k+1)^{r - 1/p'} over the first and second half of the rows
    double first = 0.0, second = 0.0;
    for (std::size_t k = 1; k < rows; ++k) {
        const double rk = res.row_norms[k];
        const double ck = rk == 0.0 ? 0.0
                                    : rk * std::pow(static_cast<double>(k + 1), fit.exponent - inv_pc);
        double& half = k < rows / 2 ? first : second;
        half = std::max(half, ck);
    }
    res.bound_constant = std::max(first, second);
    res.bound_ok = std::isfinite(res.bound_constant) && second <= 1.25 * first + 1e-300;
    return res;
}

}  // namespace genhilbert
