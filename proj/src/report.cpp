#include "genhilbert/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <random>

#include "genhilbert/errors.hpp"
#include "genhilbert/operators.hpp"
#include "genhilbert/solid.hpp"

namespace genhilbert {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const fs::path& path, const std::string& x_name, const std::string& y_name,
               const std::vector<double>& x, const std::vector<double>& y) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << x_name << ',' << y_name << '\n';
    for (std::size_t i = 0; i < x.size(); ++i) {
        out << format_number(x[i]) << ',' << format_number(y[i]) << '\n';
    }
}

namespace {

ojson num(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

ojson echo_measure(const MeasureSpec& m) {
    ojson j;
    j["kind"] = to_string(m.kind());
    switch (m.kind()) {
        case MeasureKind::beta: j["s"] = m.s(); break;
        case MeasureKind::atomic: {
            ojson atoms = ojson::array();
            for (const auto& a : m.atoms()) atoms.push_back({a.t, a.mass});
            j["atoms"] = atoms;
            break;
        }
        case MeasureKind::tabulated_density: {
            ojson table = ojson::array();
            for (const auto& s : m.density_table()) table.push_back({s.t, s.value});
            j["table"] = table;
            break;
        }
        default: break;
    }
    j["scale"] = m.scale();
    return j;
}

ojson echo_config(const RunConfig& cfg) {
    ojson j;
    j["measure"] = echo_measure(cfg.measure);
    j["space"] = {{"gamma", cfg.gamma}, {"delta", cfg.delta}};
    if (cfg.p && cfg.q) j["sequence_space"] = {{"p", num(*cfg.p)}, {"q", *cfg.q}};
    j["truncation"] = cfg.truncation;
    j["grid"] = {{"levels", cfg.grid.levels}, {"angles", cfg.grid.angles}};
    const auto& th = cfg.thresholds;
    j["tolerances"] = {{"quadrature", cfg.quadrature.tolerance},
                       {"carleson_levels", cfg.carleson_levels},
                       {"zero_fraction", th.zero_fraction},
                       {"nonzero_spread", th.nonzero_spread},
                       {"nonzero_fraction", th.nonzero_fraction},
                       {"bounded_slope", th.bounded_slope},
                       {"unbounded_slope", th.unbounded_slope}};
    j["svd_size"] = cfg.svd_size;
    j["seed"] = cfg.seed;
    j["output"] = {{"dir", cfg.output_dir}};
    ojson tasks = ojson::array();
    for (Task t : cfg.tasks) tasks.push_back(to_string(t));
    j["tasks"] = tasks;
    return j;
}

ojson finding_json(const Finding& f) {
    ojson j;
    j["verdict"] = to_string(f.verdict);
    j["criterion"] = f.criterion;
    ojson ev = ojson::object();
    for (const auto& [k, v] : f.evidence) ev[k] = num(v);
    j["evidence"] = ev;
    if (!f.note.empty()) j["note"] = f.note;
    return j;
}

ojson report_json(const ClassificationReport& r) {
    ojson j;
    j["operator"] = r.operator_name;
    ojson params = {{"gamma", r.gamma}, {"delta", r.delta}};
    if (r.p) params["p"] = num(*r.p);
    if (r.q) params["q"] = num(*r.q);
    j["parameters"] = params;
    j["truncation"] = r.truncation;
    j["well_defined"] = finding_json(r.well_defined);
    j["bounded"] = finding_json(r.bounded);
    j["compact"] = finding_json(r.compact);
    j["nuclear"] = finding_json(r.nuclear);
    return j;
}

ojson curve_json(const ProfileCurve& c, const ProfileThresholds& th) {
    ojson j;
    j["divergent"] = c.divergent;
    j["points"] = c.values.size();
    j["sup"] = num(c.sup);
    j["last"] = num(c.last);
    j["tail_slope"] = num(c.tail_slope);
    j["bounded"] = to_string(profile_bounded(c, th));
    j["limit_zero"] = to_string(compactness_limit(c, th).limit_zero);
    return j;
}

ojson blocks_json(const BlockNormProfile& b) {
    ojson blocks = ojson::array();
    for (double v : b.blocks) blocks.push_back(num(v));
    return {{"sup", num(b.sup)}, {"blocks", blocks}, {"partial_tail_dropped", b.partial_tail_dropped}};
}

ojson mapping_json(const HullMappingResult& r) {
    ojson j;
    j["mode"] = r.core_mode ? "core" : "hull";
    j["weighted_l1"] = num(r.weighted_l1);
    j["image_norm"] = num(r.image_norm);
    j["bound_ok"] = r.bound_ok ? ojson(*r.bound_ok) : ojson(nullptr);
    return j;
}

class Runner {
public:
    Runner(const RunConfig& cfg, ReportDocument& doc) : cfg_(cfg), doc_(doc), dir_(cfg.output_dir) {
        opts_.truncation = cfg.truncation;
        opts_.grid = cfg.grid;
        opts_.carleson_levels = cfg.carleson_levels;
        opts_.thresholds = cfg.thresholds;
        opts_.quadrature = cfg.quadrature;
    }

    void task(Task t) {
        switch (t) {
            case Task::moments: run_moments(); break;
            case Task::classify: run_classify(); break;
            case Task::profile: run_profile(); break;
            case Task::svd: run_svd(); break;
            case Task::solid: run_solid(); break;
            case Task::nuclear: run_nuclear(); break;
        }
    }

private:
    const MomentSequence& ms() {
        if (!ms_) ms_ = moments(cfg_.measure, cfg_.truncation, cfg_.quadrature);
        return *ms_;
    }

    fs::path csv(const std::string& name, const std::string& x_name, const std::string& y_name,
                 const std::vector<double>& x, const std::vector<double>& y) {
        const auto path = dir_ / name;
        write_csv(path, x_name, y_name, x, y);
        doc_.files.push_back(path);
        doc_.json["files"].push_back(name);
        return path;
    }

    void not_well_defined(const std::string& what) {
        doc_.json["not_well_defined"].push_back(what);
        doc_.exit_code = exit_not_well_defined;
    }

    void run_moments() {
        const auto& m = ms();
        std::vector<double> n(m.size());
        for (std::size_t i = 0; i < n.size(); ++i) n[i] = static_cast<double>(i);
        csv("moments.csv", "n", "moment", n, m.values);
        const double t_cut = 1.0 - 1.0 / static_cast<double>(cfg_.truncation);
        ojson j;
        j["count"] = m.size();
        j["total_mass"] = num(m.total_mass);
        j["mu_N"] = num(m.values.back());
        j["quadrature_error_bound"] = num(m.quadrature_error_bound);
        // mass near 1 that t^N does not yet suppress
        j["tail_mass_above_1_minus_1_over_N"] = num(tail_mass(cfg_.measure, t_cut));
        const auto fit = moment_decay_fit(m);
        j["decay_fit"] = {{"exponent", num(fit.exponent)},
                          {"residual", num(fit.residual)},
                          {"drift", num(fit.drift)},
                          {"window", {fit.window_lo, fit.window_hi}}};
        doc_.json["moments"] = j;
    }

    void run_classify() {
        const auto rep = classify_growth(cfg_.measure, cfg_.gamma, cfg_.delta, opts_);
        doc_.json["classification"] = report_json(rep);
        if (rep.well_defined.verdict == Verdict::no) not_well_defined(rep.operator_name);
    }

    void run_profile() {
        const Weight v = Weight::standard(cfg_.gamma);
        const Weight w = Weight::standard(cfg_.gamma + cfg_.delta);
        const auto prof = boundedness_profile(cfg_.measure, v, w, cfg_.grid);
        csv("profile_boundedness.csv", "grid_value", "criterion_value", prof.grid, prof.values);
        ojson j;
        j["boundedness"] = curve_json(prof, cfg_.thresholds);
        if (prof.divergent) not_well_defined("boundedness profile: int dmu/v_gamma diverges");
        if (1.0 - cfg_.delta > 0.0) {
            const auto car = carleson_check(cfg_.measure, 1.0 - cfg_.delta, cfg_.carleson_levels,
                                            cfg_.thresholds);
            csv("profile_carleson.csv", "grid_value", "criterion_value", car.ratios.grid, car.ratios.values);
            j["carleson"] = curve_json(car.ratios, cfg_.thresholds);
            j["carleson"]["s"] = car.s;
            j["carleson"]["constant"] = num(car.constant);
            j["carleson"]["finite"] = to_string(car.finite);
            j["carleson"]["vanishing"] = to_string(car.vanishing);
        }
        doc_.json["profile"] = j;
    }

    void run_svd() {
        const auto sigma = hankel_section_svd(ms(), cfg_.svd_size);
        std::vector<double> idx(sigma.size());
        double trace = 0.0;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            idx[i] = static_cast<double>(i + 1);
            trace += sigma[i];
        }
        csv("profile_svd.csv", "grid_value", "criterion_value", idx, sigma);
        double row_sum = 0.0;
        for (std::size_t k = 0; k < 2 * cfg_.svd_size - 1; ++k) row_sum += ms()[k];
        doc_.json["svd"] = {{"size", cfg_.svd_size},
                            {"sigma_1", num(sigma.front())},
                            {"trace", num(trace)},
                            {"row_sum_bound", num(row_sum)}};
    }

    void run_solid() {
        const auto& m = ms();
        std::size_t len = 1;
        while (2 * (2 * len) - 1 <= m.size()) len *= 2;
        const double gamma = cfg_.gamma;
        const auto witness = growth_witness(gamma, len - 1).real_coeffs();

        std::mt19937_64 rng(cfg_.seed);
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        std::vector<double> random(len);
        for (std::size_t i = 0; i < len; ++i) {
            random[i] = unit(rng) * std::pow(static_cast<double>(i + 1), gamma);
        }
        const double hull = solid_hull_norm(random, gamma).sup;
        if (hull > 0.0) {
            for (double& x : random) x /= hull;
        }

        const auto fit = moment_decay_fit(m);
        const double s = std::isfinite(fit.exponent) && fit.exponent > 0.0 ? fit.exponent : 1.0;
        ojson j;
        j["length"] = len;
        j["carleson_exponent_fit"] = num(fit.exponent);
        j["witness_hull"] = blocks_json(solid_hull_norm(witness, gamma));
        j["witness_core"] = blocks_json(solid_core_norm(witness, gamma));
        const auto wmap = hull_mapping_check(m, witness, gamma, s, false);
        j["witness_mapping"] = mapping_json(wmap);
        j["random_mapping"] = mapping_json(hull_mapping_check(m, random, gamma, s, false));
        if (gamma >= 1.0) {
            j["witness_core_mapping"] = mapping_json(hull_mapping_check(m, witness, gamma, s, true));
        }
        std::vector<double> idx(wmap.image.blocks.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<double>(i);
        csv("profile_solid.csv", "grid_value", "criterion_value", idx, wmap.image.blocks);
        doc_.json["solid"] = j;
    }

    void run_nuclear() {
        const auto wb = nuclear_bound_wiener(ms());
        auto rep = classify_wiener(cfg_.measure, opts_);
        ojson j;
        j["wiener_bound"] = {{"partial", num(wb.partial)},
                             {"tail_estimate", num(wb.tail_estimate)},
                             {"converged", wb.converged},
                             {"decay_exponent", num(wb.fit.exponent)}};
        j["classification"] = report_json(rep);
        if (cfg_.p && cfg_.q) {
            const std::size_t rows = (ms().size() + 1) / 2;
            const auto r = lpq_row_norms(ms(), *cfg_.p, *cfg_.q, rows);
            std::vector<double> idx(rows);
            for (std::size_t k = 0; k < rows; ++k) idx[k] = static_cast<double>(k);
            csv("profile_rows.csv", "grid_value", "criterion_value", idx, r.row_norms);
            j["row_norms"] = {{"p", num(r.p)},
                              {"q", num(r.q)},
                              {"p_conjugate", num(r.p_conjugate)},
                              {"rows", rows},
                              {"exponent", num(r.exponent)},
                              {"condition", num(r.condition)},
                              {"criterion", "q (r - 1/p') > 1 for the fitted decay exponent r"},
                              {"q_summable", to_string(r.q_summable)},
                              {"bound_ok", r.bound_ok},
                              {"bound_constant", num(r.bound_constant)}};
        }
        doc_.json["nuclear"] = j;
        if (rep.well_defined.verdict == Verdict::no) not_well_defined(rep.operator_name);
    }

    const RunConfig& cfg_;
    ReportDocument& doc_;
    fs::path dir_;
    ClassifyOptions opts_;
    std::optional<MomentSequence> ms_;
};

}  // namespace

ReportDocument run(const RunConfig& cfg) {
    cfg.validate();
    ReportDocument doc;
    const fs::path dir(cfg.output_dir);
    fs::create_directories(dir);
    doc.files.push_back(dir / "report.json");
    doc.json["config"] = echo_config(cfg);
    doc.json["files"] = ojson::array();
    doc.json["not_well_defined"] = ojson::array();

    Runner runner(cfg, doc);
    try {
        for (Task t : cfg.tasks) runner.task(t);
    } catch (const NotWellDefinedError& e) {
        doc.json["error"] = e.what();
        doc.exit_code = exit_not_well_defined;
    } catch (const NumericError& e) {
        doc.json["error"] = e.what();
        doc.json["achieved_error"] = num(e.achieved_error());
        doc.exit_code = exit_numeric_failure;
    } catch (const DomainError& e) {
        doc.json["error"] = e.what();
        doc.exit_code = exit_invalid_config;
    }
    const char* status = doc.exit_code == exit_ok                 ? "ok"
                         : doc.exit_code == exit_not_well_defined ? "not_well_defined"
                         : doc.exit_code == exit_numeric_failure  ? "numeric_failure"
                                                                  : "invalid_config";
    doc.json["status"] = status;
    doc.json["exit_code"] = doc.exit_code;

    std::ofstream out(dir / "report.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / "report.json").string());
    out << doc.json.dump(2) << '\n';
    return doc;
}

}  // namespace genhilbert
