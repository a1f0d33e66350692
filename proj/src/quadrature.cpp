#include "genhilbert/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "genhilbert/errors.hpp"

namespace genhilbert::quad {

const GaussLegendreRule& gauss_legendre20() {
    static const GaussLegendreRule rule = [] {
        using gauss = boost::math::quadrature::gauss<double, 20>;
        const auto& x = gauss::abscissa();
        const auto& w = gauss::weights();
        GaussLegendreRule r;
        // boost stores the non-negative half of the symmetric rule
        for (std::size_t i = 0; i < x.size(); ++i) {
            r.nodes.push_back(-x[i]);
            r.weights.push_back(w[i]);
            r.nodes.push_back(x[i]);
            r.weights.push_back(w[i]);
        }
        return r;
    }();
    return rule;
}

double gauss_panel(const std::function<double(double)>& f, double a, double b) {
    const auto& rule = gauss_legendre20();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
    }
    return half * sum;
}

namespace {

struct Piece {
    double a, b, value, err;
    bool operator<(const Piece& other) const { return err < other.err; }
};

Piece evaluate_piece(const std::function<double(double)>& f, double a, double b) {
    const double m = 0.5 * (a + b);
    const double whole = gauss_panel(f, a, b);
    const double halves = gauss_panel(f, a, m) + gauss_panel(f, m, b);
    return {a, b, halves, std::abs(whole - halves)};
}

}  // namespace

Estimate adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, double rel_tol, int max_depth) {
    if (a == b) return {};
    std::priority_queue<Piece> queue;
    Piece first = evaluate_piece(f, a, b);
    if (!std::isfinite(first.value)) return {first.value, first.err};
    queue.push(first);
    double total = first.value;
    double total_err = first.err;
    // max_depth bounds the bisection depth of the narrowest panel; the split budget
    // follows from it so pathological integrands cannot run unbounded.
    const double min_width = std::abs(b - a) * std::exp2(-max_depth);
    int splits = 0;
    const int max_splits = 20000;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        Piece worst = queue.top();
        if (std::abs(worst.b - worst.a) <= min_width || splits >= max_splits) {
            throw NumericError("adaptive quadrature did not converge", total_err);
        }
        queue.pop();
        const double m = 0.5 * (worst.a + worst.b);
        Piece left = evaluate_piece(f, worst.a, m);
        Piece right = evaluate_piece(f, m, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
            return {left.value + right.value, std::numeric_limits<double>::infinity()};
        }
        queue.push(left);
        queue.push(right);
        ++splits;
    }
    // re-sum to shed the drift of the incremental updates
    double sum = 0.0, err = 0.0;
    while (!queue.empty()) {
        sum += queue.top().value;
        err += queue.top().err;
        queue.pop();
    }
    return {sum, err};
}

namespace {
constexpr std::size_t kMaxPanels = 1u << 14;
}  // namespace

std::vector<Panel> refine_panels(std::span<const std::function<double(double)>> tests,
                                 std::span<const Panel> initial, double abs_tol,
                                 double* error_out, int max_depth) {
    struct Item {
        Panel p;
        double err;
        int depth;
        bool operator<(const Item& o) const { return err < o.err; }
    };
    auto panel_error = [&](const Panel& p) {
        const double m = 0.5 * (p.a + p.b);
        double worst = 0.0;
        for (const auto& f : tests) {
            const double whole = gauss_panel(f, p.a, p.b);
            const double halves = gauss_panel(f, p.a, m) + gauss_panel(f, m, p.b);
            double e = std::abs(whole - halves);
            // differences at round-off level carry no information
            if (e <= 64.0 * std::numeric_limits<double>::epsilon() * std::abs(whole)) e = 0.0;
            worst = std::max(worst, e);
        }
        return worst;
    };

    std::priority_queue<Item> queue;
    double total_err = 0.0;
    for (const auto& p : initial) {
        Item item{p, panel_error(p), 0};
        total_err += item.err;
        queue.push(item);
    }
    while (total_err > abs_tol && !queue.empty()) {
        Item worst = queue.top();
        if (worst.depth >= max_depth || !std::isfinite(worst.err) || queue.size() >= kMaxPanels) break;
        queue.pop();
        const double m = 0.5 * (worst.p.a + worst.p.b);
        Item left{{worst.p.a, m}, 0.0, worst.depth + 1};
        Item right{{m, worst.p.b}, 0.0, worst.depth + 1};
        left.err = panel_error(left.p);
        right.err = panel_error(right.p);
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
    }

    std::vector<Panel> out;
    out.reserve(queue.size());
    double err = 0.0;
    while (!queue.empty()) {
        out.push_back(queue.top().p);
        err += queue.top().err;
        queue.pop();
    }
    std::sort(out.begin(), out.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    if (error_out) *error_out = err;
    return out;
}

}  // namespace genhilbert::quad
