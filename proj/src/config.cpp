#include "genhilbert/config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include <json.hpp>

#include "genhilbert/errors.hpp"

namespace genhilbert {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxTruncation = std::size_t{1} << 20;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path + ": " + what);
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items()) {
        if (!keys.count(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
    }
}

double get_number(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path + "." + key, "must be finite");
    return x;
}

std::size_t get_count(const json& obj, const std::string& key, const std::string& path) {
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        fail(path.empty() ? key : path + "." + key, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::vector<std::pair<double, double>> get_pairs(const json& obj, const std::string& key,
                                                 const std::string& path) {
    const auto& v = obj.at(key);
    const std::string where = path + "." + key;
    if (!v.is_array() || v.empty()) fail(where, "expected a non-empty array of [x, y] pairs");
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& e = v[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            fail(where + "[" + std::to_string(i) + "]", "expected [number, number]");
        }
        out.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return out;
}

MeasureSpec parse_measure(const json& j) {
    const std::string path = "measure";
    if (!j.is_object()) fail(path, "expected an object");
    if (!j.contains("kind") || !j["kind"].is_string()) fail(path + ".kind", "missing or not a string");
    const auto kind = j["kind"].get<std::string>();
    MeasureSpec m;
    if (kind == "lebesgue") {
        reject_unknown(j, path, {"kind", "scale"});
        m = MeasureSpec::lebesgue();
    } else if (kind == "log_density") {
        reject_unknown(j, path, {"kind", "scale"});
        m = MeasureSpec::log_density();
    } else if (kind == "beta") {
        reject_unknown(j, path, {"kind", "s", "scale"});
        if (!j.contains("s")) fail(path + ".s", "required for kind beta");
        const double s = get_number(j, "s", path);
        if (!(s > 0.0)) fail(path + ".s", "must be positive");
        m = MeasureSpec::beta(s);
    } else if (kind == "atomic") {
        reject_unknown(j, path, {"kind", "atoms", "scale"});
        if (!j.contains("atoms")) fail(path + ".atoms", "required for kind atomic");
        std::vector<Atom> atoms;
        for (const auto& [t, mass] : get_pairs(j, "atoms", path)) atoms.push_back({t, mass});
        m = MeasureSpec::atomic(std::move(atoms));
    } else if (kind == "tabulated_density") {
        reject_unknown(j, path, {"kind", "table", "scale"});
        if (!j.contains("table")) fail(path + ".table", "required for kind tabulated_density");
        std::vector<DensitySample> table;
        for (const auto& [t, v] : get_pairs(j, "table", path)) table.push_back({t, v});
        m = MeasureSpec::tabulated(std::move(table));
    } else {
        fail(path + ".kind", "unknown measure kind '" + kind + "'");
    }
    if (j.contains("scale")) {
        const double c = get_number(j, "scale", path);
        if (!(c > 0.0)) fail(path + ".scale", "must be positive");
        m = m.scaled(c);
    }
    try {
        m.validate();
    } catch (const ConfigError& e) {
        fail(path, e.what());
    }
    return m;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

const char* to_string(Task t) {
    switch (t) {
        case Task::moments: return "moments";
        case Task::classify: return "classify";
        case Task::profile: return "profile";
        case Task::svd: return "svd";
        case Task::solid: return "solid";
        case Task::nuclear: return "nuclear";
    }
    return "?";
}

Task task_from_string(std::string_view name) {
    for (Task t : {Task::moments, Task::classify, Task::profile, Task::svd, Task::solid, Task::nuclear}) {
        if (name == to_string(t)) return t;
    }
    throw ConfigError("unknown task '" + std::string(name) + "'");
}

void RunConfig::validate() const {
    measure.validate();
    if (!(gamma > 0.0)) fail("space.gamma", "must be positive");
    if (!(delta > -gamma)) fail("space.delta", "must exceed -gamma");
    if (p && !(*p >= 1.0)) fail("sequence_space.p", "must be >= 1");
    if (q && !(*q >= 1.0 && std::isfinite(*q))) fail("sequence_space.q", "must lie in [1, inf)");
    if (p.has_value() != q.has_value()) fail("sequence_space", "p and q go together");
    if (truncation < 64 || truncation > kMaxTruncation) {
        fail("truncation", "must lie in [64, " + std::to_string(kMaxTruncation) + "]");
    }
    try {
        grid.validate();
    } catch (const ConfigError& e) {
        fail("grid", e.what());
    }
    if (carleson_levels < 8 || carleson_levels > 1000) fail("tolerances.carleson_levels", "must lie in [8, 1000]");
    if (!(quadrature.tolerance > 0.0 && quadrature.tolerance < 1e-3)) {
        fail("tolerances.quadrature", "must lie in (0, 1e-3)");
    }
    if (svd_size < 1 || svd_size > kMaxSvdSection) fail("svd_size", "must lie in [1, 1024]");
    const bool wants_svd = std::find(tasks.begin(), tasks.end(), Task::svd) != tasks.end();
    if (wants_svd && 2 * svd_size - 1 > truncation + 1) {
        fail("svd_size", "needs 2*svd_size-1 <= truncation+1 moments");
    }
    if (tasks.empty()) fail("tasks", "at least one task is required");
    if (output_dir.empty()) fail("output.dir", "must not be empty");
}

RunConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError("line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
    }
    reject_unknown(doc, "", {"measure", "space", "sequence_space", "truncation", "grid", "tolerances",
                             "svd_size", "seed", "output", "tasks"});
    RunConfig cfg;
    if (!doc.contains("measure")) fail("measure", "required");
    cfg.measure = parse_measure(doc["measure"]);

    if (doc.contains("space")) {
        const auto& s = doc["space"];
        reject_unknown(s, "space", {"gamma", "delta"});
        if (s.contains("gamma")) cfg.gamma = get_number(s, "gamma", "space");
        if (s.contains("delta")) cfg.delta = get_number(s, "delta", "space");
    }
    if (doc.contains("sequence_space")) {
        const auto& s = doc["sequence_space"];
        reject_unknown(s, "sequence_space", {"p", "q"});
        if (s.contains("p")) {
            if (s["p"].is_string() && s["p"].get<std::string>() == "inf") {
                cfg.p = std::numeric_limits<double>::infinity();
            } else {
                cfg.p = get_number(s, "p", "sequence_space");
            }
        }
        if (s.contains("q")) cfg.q = get_number(s, "q", "sequence_space");
    }
    if (doc.contains("truncation")) cfg.truncation = get_count(doc, "truncation", "");
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        reject_unknown(g, "grid", {"levels", "angles"});
        if (g.contains("levels")) cfg.grid.levels = static_cast<int>(std::min<std::size_t>(get_count(g, "levels", "grid"), 1000));
        if (g.contains("angles")) cfg.grid.angles = static_cast<int>(std::min<std::size_t>(get_count(g, "angles", "grid"), 1u << 20));
    }
    if (doc.contains("tolerances")) {
        const auto& t = doc["tolerances"];
        reject_unknown(t, "tolerances", {"quadrature", "carleson_levels", "zero_fraction", "nonzero_spread",
                                         "nonzero_fraction", "bounded_slope", "unbounded_slope"});
        if (t.contains("quadrature")) cfg.quadrature.tolerance = get_number(t, "quadrature", "tolerances");
        if (t.contains("carleson_levels")) {
            cfg.carleson_levels = static_cast<int>(std::min<std::size_t>(get_count(t, "carleson_levels", "tolerances"), 100000));
        }
        auto& th = cfg.thresholds;
        const auto fraction = [&](const char* key, double& out) {
            if (!t.contains(key)) return;
            out = get_number(t, key, "tolerances");
            if (!(out > 0.0 && out < 1.0)) fail(std::string("tolerances.") + key, "must lie in (0, 1)");
        };
        fraction("zero_fraction", th.zero_fraction);
        fraction("nonzero_spread", th.nonzero_spread);
        fraction("nonzero_fraction", th.nonzero_fraction);
        fraction("bounded_slope", th.bounded_slope);
        fraction("unbounded_slope", th.unbounded_slope);
        if (!(th.bounded_slope < th.unbounded_slope)) {
            fail("tolerances.bounded_slope", "must be below unbounded_slope");
        }
    }
    if (doc.contains("svd_size")) cfg.svd_size = get_count(doc, "svd_size", "");
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) fail("seed", "expected a non-negative integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        reject_unknown(o, "output", {"dir"});
        if (o.contains("dir")) {
            if (!o["dir"].is_string()) fail("output.dir", "expected a string");
            cfg.output_dir = o["dir"].get<std::string>();
        }
    }
    if (doc.contains("tasks")) {
        const auto& t = doc["tasks"];
        if (!t.is_array()) fail("tasks", "expected an array of task names");
        cfg.tasks.clear();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (!t[i].is_string()) fail("tasks[" + std::to_string(i) + "]", "expected a string");
            try {
                const Task task = task_from_string(t[i].get<std::string>());
                if (std::find(cfg.tasks.begin(), cfg.tasks.end(), task) == cfg.tasks.end()) {
                    cfg.tasks.push_back(task);
                }
            } catch (const ConfigError& e) {
                fail("tasks[" + std::to_string(i) + "]", e.what());
            }
        }
    }
    cfg.validate();
    return cfg;
}

}  // namespace genhilbert
