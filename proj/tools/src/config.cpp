#include "rampflow/tools/config.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "rampflow/alignment.hpp"
#include "rampflow/kernels.hpp"

namespace rampflow::tools {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& errors) {
    std::ostringstream os;
    os << errors.size() << " configuration error" << (errors.size() == 1 ? "" : "s");
    for (const auto& e : errors) os << "\n  " << e;
    return os.str();
}

// Typed field access that records problems instead of throwing.
class Reader {
public:
    std::vector<std::string> errors;

    void fail(const std::string& path, const std::string& what) {
        errors.push_back(path + ": " + what);
    }

    const json* object(const json& parent, const std::string& key, const std::string& path,
                       bool required = true) {
        if (!parent.contains(key) || parent.at(key).is_null()) {
            if (required) fail(path, "missing");
            return nullptr;
        }
        const json& v = parent.at(key);
        if (!v.is_object()) {
            fail(path, "expected an object");
            return nullptr;
        }
        return &v;
    }

    std::optional<double> number(const json& parent, const std::string& key,
                                 const std::string& path, std::optional<double> fallback = {}) {
        if (!parent.contains(key)) {
            if (!fallback) fail(path, "missing");
            return fallback;
        }
        const json& v = parent.at(key);
        if (!v.is_number()) {
            fail(path, "expected a number");
            return std::nullopt;
        }
        return v.get<double>();
    }

    std::optional<std::string> string(const json& parent, const std::string& key,
                                      const std::string& path,
                                      std::optional<std::string> fallback = {}) {
        if (!parent.contains(key)) {
            if (!fallback) fail(path, "missing");
            return fallback;
        }
        const json& v = parent.at(key);
        if (!v.is_string()) {
            fail(path, "expected a string");
            return std::nullopt;
        }
        return v.get<std::string>();
    }

    std::optional<bool> boolean(const json& parent, const std::string& key,
                                const std::string& path, bool fallback) {
        if (!parent.contains(key)) return fallback;
        const json& v = parent.at(key);
        if (!v.is_boolean()) {
            fail(path, "expected true or false");
            return std::nullopt;
        }
        return v.get<bool>();
    }

    std::optional<std::vector<double>> numbers(const json& parent, const std::string& key,
                                               const std::string& path, bool required) {
        if (!parent.contains(key)) {
            if (required) fail(path, "missing");
            return required ? std::nullopt : std::optional<std::vector<double>>(std::vector<double>{});
        }
        const json& v = parent.at(key);
        if (!v.is_array()) {
            fail(path, "expected an array of numbers");
            return std::nullopt;
        }
        std::vector<double> out;
        bool ok = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                fail(path + "[" + std::to_string(i) + "]", "expected a number");
                ok = false;
            } else {
                out.push_back(v[i].get<double>());
            }
        }
        if (!ok) return std::nullopt;
        return out;
    }

    void unknown_keys(const json& obj, const std::string& path,
                      std::initializer_list<const char*> allowed) {
        std::set<std::string> names(allowed.begin(), allowed.end());
        for (const auto& [k, _] : obj.items()) {
            if (!names.count(k)) fail(path.empty() ? k : path + "." + k, "unknown field");
        }
    }

    template <class F>
    void guard(const std::string& path, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            fail(path, e.what());
        }
    }
};

std::optional<VelocityLaw> read_velocity(Reader& r, const json& root) {
    if (!root.contains("velocity")) return VelocityLaw::affine();
    const json* v = r.object(root, "velocity", "velocity");
    if (!v) return std::nullopt;
    const auto type = r.string(*v, "type", "velocity.type", std::string("affine"));
    if (!type) return std::nullopt;
    std::optional<VelocityLaw> out;
    if (*type == "affine") {
        r.unknown_keys(*v, "velocity", {"type", "v_max"});
        const auto vmax = r.number(*v, "v_max", "velocity.v_max", 1.0);
        if (vmax) r.guard("velocity.v_max", [&] { out = VelocityLaw::affine(*vmax); });
    } else if (*type == "tabulated") {
        r.unknown_keys(*v, "velocity", {"type", "rho", "v"});
        const auto rho = r.numbers(*v, "rho", "velocity.rho", true);
        const auto vals = r.numbers(*v, "v", "velocity.v", true);
        if (rho && vals) r.guard("velocity", [&] { out = VelocityLaw::tabulated(*rho, *vals); });
    } else {
        r.fail("velocity.type", "expected \"affine\" or \"tabulated\", got \"" + *type + "\"");
    }
    return out;
}

std::optional<RampRate> read_rate(Reader& r, const json& parent, const std::string& key,
                                  const std::string& path) {
    const json* v = r.object(parent, key, path);
    if (!v) return std::nullopt;
    const auto type = r.string(*v, "type", path + ".type");
    if (!type) return std::nullopt;
    std::optional<RampRate> out;
    if (*type == "constant") {
        r.unknown_keys(*v, path, {"type", "value"});
        const auto value = r.number(*v, "value", path + ".value");
        if (value) r.guard(path, [&] { out = RampRate::constant(*value); });
    } else if (*type == "sinusoidal") {
        r.unknown_keys(*v, path, {"type", "amplitude"});
        const auto a = r.number(*v, "amplitude", path + ".amplitude", 1.0);
        if (a) r.guard(path, [&] { out = RampRate::sinusoidal(*a); });
    } else if (*type == "tabulated") {
        r.unknown_keys(*v, path, {"type", "times", "values"});
        const auto times = r.numbers(*v, "times", path + ".times", true);
        const auto values = r.numbers(*v, "values", path + ".values", true);
        if (times && values) r.guard(path, [&] { out = RampRate::tabulated(*times, *values); });
    } else {
        r.fail(path + ".type",
               "expected \"constant\", \"sinusoidal\" or \"tabulated\", got \"" + *type + "\"");
    }
    return out;
}

std::optional<InitialDatum> read_initial(Reader& r, const json& root) {
    const json* v = r.object(root, "initial", "initial");
    if (!v) return std::nullopt;
    const auto type = r.string(*v, "type", "initial.type");
    if (!type) return std::nullopt;
    if (*type == "constant") {
        r.unknown_keys(*v, "initial", {"type", "value"});
        const auto value = r.number(*v, "value", "initial.value");
        if (value) return InitialDatum::constant(*value);
    } else if (*type == "step") {
        r.unknown_keys(*v, "initial", {"type", "position", "left", "right"});
        const auto pos = r.number(*v, "position", "initial.position");
        const auto left = r.number(*v, "left", "initial.left");
        const auto right = r.number(*v, "right", "initial.right");
        if (pos && left && right) return InitialDatum::step(*pos, *left, *right);
    } else if (*type == "bump") {
        r.unknown_keys(*v, "initial", {"type", "center", "width", "height"});
        const auto c = r.number(*v, "center", "initial.center");
        const auto w = r.number(*v, "width", "initial.width");
        const auto h = r.number(*v, "height", "initial.height");
        if (c && w && h) return InitialDatum::bump(*c, *w, *h);
    } else {
        r.fail("initial.type", "expected \"constant\", \"step\" or \"bump\", got \"" + *type + "\"");
    }
    return std::nullopt;
}

std::optional<BoundarySide> read_side(Reader& r, const json& parent, const std::string& key,
                                      const std::string& path) {
    if (!parent.contains(key)) return BoundarySide::outflow();
    const json* v = r.object(parent, key, path);
    if (!v) return std::nullopt;
    const auto type = r.string(*v, "type", path + ".type");
    if (!type) return std::nullopt;
    if (*type == "outflow") {
        r.unknown_keys(*v, path, {"type"});
        return BoundarySide::outflow();
    }
    if (*type == "dirichlet") {
        r.unknown_keys(*v, path, {"type", "value"});
        const auto value = r.number(*v, "value", path + ".value");
        if (value) return BoundarySide::dirichlet(*value);
        return std::nullopt;
    }
    r.fail(path + ".type", "expected \"outflow\" or \"dirichlet\", got \"" + *type + "\"");
    return std::nullopt;
}

std::optional<BoundaryConditions> read_boundary(Reader& r, const json& root) {
    if (!root.contains("boundary")) return BoundaryConditions::outflow();
    const json& b = root.at("boundary");
    if (b.is_string()) {
        const auto s = b.get<std::string>();
        if (s == "outflow") return BoundaryConditions::outflow();
        if (s == "periodic") return BoundaryConditions::make_periodic();
        r.fail("boundary", "expected \"outflow\", \"periodic\" or an object, got \"" + s + "\"");
        return std::nullopt;
    }
    const json* obj = r.object(root, "boundary", "boundary");
    if (!obj) return std::nullopt;
    r.unknown_keys(*obj, "boundary", {"periodic", "left", "right"});
    const auto periodic = r.boolean(*obj, "periodic", "boundary.periodic", false);
    if (periodic && *periodic) {
        if (obj->contains("left") || obj->contains("right")) {
            r.fail("boundary", "periodic boundaries take no left/right sides");
        }
        return BoundaryConditions::make_periodic();
    }
    const auto left = read_side(r, *obj, "left", "boundary.left");
    const auto right = read_side(r, *obj, "right", "boundary.right");
    if (!periodic || !left || !right) return std::nullopt;
    BoundaryConditions bc{false, *left, *right};
    std::optional<BoundaryConditions> out;
    r.guard("boundary", [&] {
        bc.validate();
        out = bc;
    });
    return out;
}

std::vector<ModelVariant> read_models(Reader& r, const json& root) {
    std::vector<ModelVariant> out;
    if (!root.contains("models")) {
        r.fail("models", "missing");
        return out;
    }
    const json& m = root.at("models");
    if (!m.is_array() || m.empty()) {
        r.fail("models", "expected a nonempty array of model names");
        return out;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::string path = "models[" + std::to_string(i) + "]";
        if (!m[i].is_string()) {
            r.fail(path, "expected a string");
            continue;
        }
        const auto v = parse_model_variant(m[i].get<std::string>());
        if (!v) {
            r.fail(path, "unknown model \"" + m[i].get<std::string>() +
                             "\" (expected model0, model1 or model2)");
            continue;
        }
        out.push_back(*v);
    }
    return out;
}

void check_aligned(Reader& r, double value, double dx, const std::string& path) {
    if (!aligned_multiple(value, dx)) {
        std::ostringstream os;
        os.precision(17);
        os << value << " is not a multiple of domain.dx = " << dx;
        r.fail(path, os.str());
    }
}

// Presets. Ramp geometry is shared by all four experiments.
constexpr const char* kExample1 = R"({
  "name": "example1",
  "notes": "Model 1 vs Model 2 on a road with one on-ramp and one off-ramp.",
  "domain": {"x_left": -1.0, "x_right": 9.0, "dx": 0.001},
  "final_time": 7.0,
  "output_times": [0.5, 2.0, 5.0, 7.0],
  "velocity": {"type": "affine", "v_max": 1.0},
  "kernel": {"eta": 0.05, "delta": -0.01},
  "models": ["model1", "model2"],
  "ramps": {"length": 0.1, "on": [1.0, 1.1], "off": [3.0, 3.1]},
  "rates": {"on": {"type": "constant", "value": 1.2}, "off": {"type": "constant", "value": 0.8}},
  "initial": {"type": "constant", "value": 0.3},
  "boundary": {"left": {"type": "outflow"}, "right": {"type": "outflow"}},
  "cfl_safety": 0.9,
  "kappa_step": 0.05,
  "output_dir": "out/example1"
})";

constexpr const char* kExample2 = R"({
  "name": "example2",
  "notes": "Nonlocal-to-local limit for Model 2 with delta = 0. The road [-1, 9] and v = 1 - rho are assumed; the experiment does not state them.",
  "domain": {"x_left": -1.0, "x_right": 9.0, "dx": 0.001},
  "final_time": 5.0,
  "output_times": [5.0],
  "velocity": {"type": "affine", "v_max": 1.0},
  "kernel": {"eta": 0.1, "delta": 0.0},
  "models": ["model2"],
  "convergence_etas": [0.1, 0.05, 0.01, 0.004],
  "ramps": {"length": 0.1, "on": [1.0, 1.1], "off": [3.0, 3.1]},
  "rates": {"on": {"type": "constant", "value": 1.2}, "off": {"type": "constant", "value": 0.8}},
  "initial": {"type": "constant", "value": 0.3},
  "boundary": {"left": {"type": "outflow"}, "right": {"type": "outflow"}},
  "cfl_safety": 0.9,
  "kappa_step": 0.05,
  "output_dir": "out/example2"
})";

constexpr const char* kExample3 = R"({
  "name": "example3",
  "notes": "Maximum principle: Model 0 overshoots 1 near the on-ramp, Models 1 and 2 stay in [0, 1]. The road [-1, 9] is assumed.",
  "domain": {"x_left": -1.0, "x_right": 9.0, "dx": 0.01},
  "final_time": 0.3,
  "output_times": [0.1, 0.2, 0.3],
  "velocity": {"type": "affine", "v_max": 1.0},
  "kernel": {"eta": 0.05, "delta": -0.01},
  "models": ["model0", "model1", "model2"],
  "ramps": {"length": 0.1, "on": [1.0, 1.1], "off": [3.0, 3.1]},
  "rates": {"on": {"type": "constant", "value": 1.0}, "off": {"type": "constant", "value": 0.2}},
  "initial": {"type": "step", "position": 1.1, "left": 0.1, "right": 0.9},
  "boundary": {"left": {"type": "outflow"}, "right": {"type": "outflow"}},
  "cfl_safety": 0.9,
  "kappa_step": 0.05,
  "output_dir": "out/example3"
})";

constexpr const char* kExample4 = R"({
  "name": "example4",
  "notes": "Free main road fed from the left at density 0.4 with a time-periodic on-ramp; absorbing right end.",
  "domain": {"x_left": -1.0, "x_right": 5.0, "dx": 0.001},
  "final_time": 7.0,
  "output_times": [1.0, 2.0, 5.0, 7.0],
  "velocity": {"type": "affine", "v_max": 1.0},
  "kernel": {"eta": 0.1, "delta": -0.02},
  "models": ["model1", "model2"],
  "ramps": {"length": 0.1, "on": [1.0, 1.1], "off": [3.0, 3.1]},
  "rates": {"on": {"type": "sinusoidal", "amplitude": 1.0}, "off": {"type": "constant", "value": 0.2}},
  "initial": {"type": "constant", "value": 0.0},
  "boundary": {"left": {"type": "dirichlet", "value": 0.4}, "right": {"type": "outflow"}},
  "cfl_safety": 0.9,
  "kappa_step": 0.05,
  "output_dir": "out/example4"
})";

const std::map<std::string, const char*, std::less<>>& presets() {
    static const std::map<std::string, const char*, std::less<>> table{
        {"example1", kExample1},
        {"example2", kExample2},
        {"example3", kExample3},
        {"example4", kExample4},
    };
    return table;
}

}  // namespace

ConfigValidationError::ConfigValidationError(std::vector<std::string> errors)
    : std::invalid_argument(join(errors)), errors_(std::move(errors)) {}

ModelConfig RunConfig::config_for(ModelVariant v) const {
    ModelConfig c = base;
    c.variant = v;
    return c;
}

RunConfig parse_config(const json& tree) {
    Reader r;
    if (!tree.is_object()) throw ConfigValidationError({"<root>: expected an object"});
    r.unknown_keys(tree, "",
                   {"name", "notes", "domain", "final_time", "output_times", "velocity", "kernel",
                    "models", "convergence_etas", "ramps", "rates", "initial", "boundary",
                    "cfl_safety", "kappa_step", "output_dir", "plot_script"});

    RunConfig cfg;
    cfg.source = tree;
    cfg.name = r.string(tree, "name", "name", std::string("run")).value_or("run");
    cfg.notes = r.string(tree, "notes", "notes", std::string()).value_or("");

    std::optional<Grid> grid;
    if (const json* d = r.object(tree, "domain", "domain")) {
        r.unknown_keys(*d, "domain", {"x_left", "x_right", "dx"});
        const auto xl = r.number(*d, "x_left", "domain.x_left");
        const auto xr = r.number(*d, "x_right", "domain.x_right");
        const auto dx = r.number(*d, "dx", "domain.dx");
        if (xl && xr && dx) r.guard("domain", [&] { grid = build_grid(*xl, *xr, *dx); });
    }

    ProblemSetup& p = cfg.base.problem;
    const auto T = r.number(tree, "final_time", "final_time");
    if (T) {
        if (!(*T > 0.0)) r.fail("final_time", "must be positive");
        p.final_time = *T;
    }
    if (const auto times = r.numbers(tree, "output_times", "output_times", false)) {
        p.output_times = *times;
        for (std::size_t i = 0; i < times->size(); ++i) {
            const std::string path = "output_times[" + std::to_string(i) + "]";
            if (T && !((*times)[i] > 0.0 && (*times)[i] <= *T)) {
                r.fail(path, "must lie in (0, final_time]");
            }
            if (i > 0 && !((*times)[i] > (*times)[i - 1])) r.fail(path, "must be strictly increasing");
        }
    }

    if (auto v = read_velocity(r, tree)) p.velocity = std::move(*v);

    if (const json* k = r.object(tree, "kernel", "kernel")) {
        r.unknown_keys(*k, "kernel", {"eta", "delta"});
        const auto eta = r.number(*k, "eta", "kernel.eta");
        const auto delta = r.number(*k, "delta", "kernel.delta", 0.0);
        if (eta && delta) {
            cfg.base.kernel = {*eta, *delta};
            bool ok = true;
            r.guard("kernel", [&] { cfg.base.kernel.validate(); });
            if (grid) {
                const std::size_t before = r.errors.size();
                check_aligned(r, *eta, grid->dx(), "kernel.eta");
                check_aligned(r, *delta - *eta, grid->dx(), "kernel.delta");
                ok = r.errors.size() == before;
            }
            if (ok && grid) {
                r.guard("kernel", [&] { (void)make_kernel_weights(cfg.base.kernel, grid->dx()); });
            }
        }
    }

    cfg.models = read_models(r, tree);
    if (!cfg.models.empty()) cfg.base.variant = cfg.models.front();

    if (const auto etas = r.numbers(tree, "convergence_etas", "convergence_etas", false)) {
        cfg.convergence_etas = *etas;
        for (std::size_t i = 0; i < etas->size(); ++i) {
            const std::string path = "convergence_etas[" + std::to_string(i) + "]";
            if (!((*etas)[i] > 0.0)) {
                r.fail(path, "must be positive");
            } else if (grid) {
                check_aligned(r, (*etas)[i], grid->dx(), path);
            }
        }
    }

    bool has_ramps = false;
    if (tree.contains("ramps") && !tree.at("ramps").is_null()) {
        if (const json* rp = r.object(tree, "ramps", "ramps")) {
            has_ramps = true;
            r.unknown_keys(*rp, "ramps", {"length", "on", "off"});
            const auto len = r.number(*rp, "length", "ramps.length");
            const auto on = r.numbers(*rp, "on", "ramps.on", true);
            const auto off = r.numbers(*rp, "off", "ramps.off", true);
            if (on && on->size() != 2) r.fail("ramps.on", "expected [start, end]");
            if (off && off->size() != 2) r.fail("ramps.off", "expected [start, end]");
            if (grid && len && on && off && on->size() == 2 && off->size() == 2) {
                r.guard("ramps", [&] {
                    p.ramps = build_ramps(*grid, {(*on)[0], (*on)[1]}, {(*off)[0], (*off)[1]}, *len);
                });
            }
        }
    } else if (grid) {
        p.ramps = RampGeometry::none(*grid);
    }
    if (tree.contains("rates") && !tree.at("rates").is_null()) {
        if (const json* rt = r.object(tree, "rates", "rates")) {
            r.unknown_keys(*rt, "rates", {"on", "off"});
            if (auto q = read_rate(r, *rt, "on", "rates.on")) p.q_on = std::move(*q);
            if (auto q = read_rate(r, *rt, "off", "rates.off")) p.q_off = std::move(*q);
        }
    } else if (has_ramps) {
        r.fail("rates", "required when ramps are present");
    }

    if (auto init = read_initial(r, tree)) {
        p.initial = std::move(*init);
        if (grid) r.guard("initial", [&] { (void)project_initial_datum(p.initial, *grid); });
    }
    if (auto bc = read_boundary(r, tree)) p.boundary = *bc;

    if (const auto s = r.number(tree, "cfl_safety", "cfl_safety", 0.9)) {
        if (!(*s > 0.0 && *s <= 1.0)) r.fail("cfl_safety", "must lie in (0, 1]");
        p.cfl_safety = *s;
    }
    if (const auto k = r.number(tree, "kappa_step", "kappa_step", 0.05)) {
        if (!(*k > 0.0 && *k <= 1.0)) r.fail("kappa_step", "must lie in (0, 1]");
        cfg.kappa_step = *k;
    }
    cfg.output_dir =
        r.string(tree, "output_dir", "output_dir", "out/" + cfg.name).value_or("out/" + cfg.name);
    cfg.plot_script = r.boolean(tree, "plot_script", "plot_script", true).value_or(true);

    if (grid) p.grid = *grid;
    if (r.errors.empty()) r.guard("problem", [&] { p.validate(); });
    if (!r.errors.empty()) throw ConfigValidationError(std::move(r.errors));
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigValidationError({path.string() + ": cannot open file"});
    json tree;
    try {
        tree = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigValidationError({path.string() + ": parse error: " + e.what()});
    }
    return parse_config(tree);
}

json resolve_config_tree(std::string_view name_or_path) {
    if (const auto it = presets().find(name_or_path); it != presets().end()) {
        return json::parse(it->second);
    }
    const std::filesystem::path path{std::string(name_or_path)};
    std::ifstream in(path);
    if (!in) {
        throw ConfigValidationError(
            {std::string(name_or_path) + ": neither a preset name nor a readable file"});
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigValidationError({path.string() + ": parse error: " + e.what()});
    }
}

RunConfig resolve_config(std::string_view name_or_path) {
    return parse_config(resolve_config_tree(name_or_path));
}

std::vector<std::string> preset_names() {
    std::vector<std::string> out;
    for (const auto& [name, _] : presets()) out.push_back(name);
    return out;
}

json preset_tree(std::string_view name) {
    const auto it = presets().find(name);
    if (it == presets().end()) throw std::out_of_range("unknown preset: " + std::string(name));
    return json::parse(it->second);
}

}  // namespace rampflow::tools
