// scenario.cpp: strict YAML scenario parsing

#include "routersim/scenario.hpp"

#include "routersim/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string_view>

namespace routersim::scenario {

namespace {

[[noreturn]] void schema(const std::string& key, const std::string& message) {
    throw ScenarioError(kSchema, key, message);
}

std::string join(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

void require_map(const YAML::Node& node, const std::string& key) {
    if (!node.IsMap()) {
        schema(key.empty() ? "scenario" : key, "must be a mapping");
    }
}

void check_keys(const YAML::Node& node, const std::string& prefix, std::initializer_list<std::string_view> allowed) {
    require_map(node, prefix);
    for (const auto& entry : node) {
        const auto key = entry.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            schema(join(prefix, key), "unknown key");
        }
    }
}

double number(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) {
        schema(key, "must be a number");
    }
    double value = 0.0;
    try {
        value = node.as<double>();
    } catch (const YAML::BadConversion&) {
        schema(key, "must be a number, got '" + node.Scalar() + "'");
    }
    if (!std::isfinite(value)) {
        schema(key, "must be finite");
    }
    return value;
}

double positive(const YAML::Node& node, const std::string& key) {
    const double value = number(node, key);
    if (!(value > 0.0)) {
        schema(key, "must be positive");
    }
    return value;
}

std::size_t count(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) {
        schema(key, "must be a non-negative integer");
    }
    long long value = 0;
    try {
        value = node.as<long long>();
    } catch (const YAML::BadConversion&) {
        schema(key, "must be a non-negative integer, got '" + node.Scalar() + "'");
    }
    if (value < 0) {
        schema(key, "must be a non-negative integer");
    }
    return static_cast<std::size_t>(value);
}

bool flag(const YAML::Node& node, const std::string& key) {
    try {
        return node.as<bool>();
    } catch (const YAML::BadConversion&) {
        schema(key, "must be true or false");
    }
}

std::string text(const YAML::Node& node, const std::string& key) {
    if (!node.IsScalar()) {
        schema(key, "must be a string");
    }
    return node.Scalar();
}

std::vector<double> numbers(const YAML::Node& node, const std::string& key) {
    if (!node.IsSequence() || node.size() == 0) {
        schema(key, "must be a non-empty list of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(number(node[i], key + "[" + std::to_string(i) + "]"));
    }
    return out;
}

// Index written 1-based in the file, stored 0-based.
std::size_t emitter_index(const YAML::Node& node, const std::string& key, std::size_t emitters) {
    const std::size_t i = count(node, key);
    if (i < 1 || i > emitters) {
        schema(key, "emitter index must be in 1.." + std::to_string(emitters));
    }
    return i - 1;
}

ModelBlock parse_si(const YAML::Node& node) {
    check_keys(node, "model",
               {"emitters", "spacing", "positions", "density", "cross_section", "strain_sensitivity",
                "group_velocity", "cutoff", "orbital_splitting", "transition"});
    ModelBlock block;
    block.si = true;
    // Material constants default to the diamond waveguide.
    block.params = diamond_waveguide(1, 10e-9, 1.0);
    ModelParams& p = block.params;
    const auto optional = [&](const char* name, double& field) {
        if (node[name]) {
            field = number(node[name], join("model", name));
        }
    };
    optional("density", p.density);
    optional("cross_section", p.cross_section);
    optional("strain_sensitivity", p.strain_sensitivity);
    optional("group_velocity", p.group_velocity);
    optional("cutoff", p.cutoff);
    optional("orbital_splitting", p.orbital_splitting);
    if (!node["transition"]) {
        schema("model.transition", "is required");
    }
    p.transition = number(node["transition"], "model.transition");

    if (node["positions"]) {
        if (node["emitters"] || node["spacing"]) {
            schema("model.positions", "give either positions or emitters with spacing");
        }
        p.positions = numbers(node["positions"], "model.positions");
    } else {
        if (!node["emitters"]) {
            schema("model.emitters", "is required when positions are not given");
        }
        const std::size_t n = count(node["emitters"], "model.emitters");
        if (n == 0) {
            schema("model.emitters", "at least one emitter is required");
        }
        double spacing = 0.0;
        if (n > 1) {
            if (!node["spacing"]) {
                schema("model.spacing", "is required for more than one emitter");
            }
            spacing = positive(node["spacing"], "model.spacing");
        }
        p.positions.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            p.positions[j] = spacing * static_cast<double>(j);
        }
    }
    try {
        p.validate();
    } catch (const ValidationError& e) {
        schema(join("model", e.field()), e.what());
    }
    return block;
}

ModelBlock parse_dimensionless(const YAML::Node& node) {
    check_keys(node, "dimensionless", {"coupling", "cutoff", "transition", "offsets", "emitters", "spacing"});
    for (const char* key : {"coupling", "cutoff", "transition"}) {
        if (!node[key]) {
            schema(join("dimensionless", key), "is required");
        }
    }
    const double coupling = number(node["coupling"], "dimensionless.coupling");
    const double cutoff = number(node["cutoff"], "dimensionless.cutoff");
    const double transition = number(node["transition"], "dimensionless.transition");
    std::vector<double> offsets;
    if (node["offsets"]) {
        if (node["emitters"] || node["spacing"]) {
            schema("dimensionless.offsets", "give either offsets or emitters with spacing");
        }
        offsets = numbers(node["offsets"], "dimensionless.offsets");
    } else {
        if (!node["emitters"]) {
            schema("dimensionless.emitters", "is required when offsets are not given");
        }
        const std::size_t n = count(node["emitters"], "dimensionless.emitters");
        if (n == 0) {
            schema("dimensionless.emitters", "at least one emitter is required");
        }
        double spacing = 0.0;
        if (n > 1) {
            if (!node["spacing"]) {
                schema("dimensionless.spacing", "is required for more than one emitter");
            }
            spacing = positive(node["spacing"], "dimensionless.spacing");
        }
        for (std::size_t j = 0; j < n; ++j) {
            offsets.push_back(spacing * static_cast<double>(j));
        }
    }
    ModelBlock block;
    block.si = false;
    try {
        block.dimensionless = DimensionlessModel(coupling, cutoff, transition, std::move(offsets));
    } catch (const ValidationError& e) {
        schema(join("dimensionless", e.field()), e.what());
    }
    return block;
}

Numerics parse_numerics(const YAML::Node& node, Numerics base) {
    check_keys(node, "numerics",
               {"dt", "horizon", "quadrature_tolerance", "oracle_modes", "omega_max", "extrapolate", "window_start",
                "verify_horizon"});
    if (node["dt"]) {
        base.dt = positive(node["dt"], "numerics.dt");
    }
    if (node["horizon"]) {
        base.horizon = positive(node["horizon"], "numerics.horizon");
    }
    if (node["quadrature_tolerance"]) {
        base.quadrature_tolerance = positive(node["quadrature_tolerance"], "numerics.quadrature_tolerance");
        if (base.quadrature_tolerance > 1e-3 || base.quadrature_tolerance < 1e-15) {
            schema("numerics.quadrature_tolerance", "must lie in [1e-15, 1e-3]");
        }
    }
    if (node["oracle_modes"]) {
        base.oracle_modes = count(node["oracle_modes"], "numerics.oracle_modes");
        if (base.oracle_modes < 100) {
            schema("numerics.oracle_modes", "at least 100 bath modes are required");
        }
    }
    if (node["omega_max"]) {
        base.omega_max = positive(node["omega_max"], "numerics.omega_max");
    }
    if (node["extrapolate"]) {
        base.extrapolate = flag(node["extrapolate"], "numerics.extrapolate");
    }
    if (node["window_start"]) {
        base.window_start = number(node["window_start"], "numerics.window_start");
    }
    if (node["verify_horizon"]) {
        base.verify_horizon = positive(node["verify_horizon"], "numerics.verify_horizon");
    }
    if (base.dt > base.horizon) {
        schema("numerics.dt", "must not exceed numerics.horizon");
    }
    if (base.window_start && (*base.window_start < 0.0 || *base.window_start >= base.horizon)) {
        schema("numerics.window_start", "must lie in [0, numerics.horizon)");
    }
    if (base.dt > base.verify_horizon) {
        schema("numerics.verify_horizon", "must be at least numerics.dt");
    }
    return base;
}

Sweep parse_sweep(const YAML::Node& node) {
    check_keys(node, "sweep", {"variable", "start", "stop", "points"});
    for (const char* key : {"variable", "start", "stop", "points"}) {
        if (!node[key]) {
            schema(join("sweep", key), "is required");
        }
    }
    Sweep s;
    const std::string variable = text(node["variable"], "sweep.variable");
    if (variable == "transition") {
        s.variable = SweepVariable::transition;
    } else if (variable == "spacing") {
        s.variable = SweepVariable::spacing;
    } else {
        schema("sweep.variable", "must be 'transition' or 'spacing', got '" + variable + "'");
    }
    s.start = positive(node["start"], "sweep.start");
    s.stop = positive(node["stop"], "sweep.stop");
    s.points = count(node["points"], "sweep.points");
    if (s.points == 0) {
        schema("sweep.points", "must be at least 1");
    }
    if (s.points == 1 && s.start != s.stop) {
        schema("sweep.points", "a single point needs start == stop");
    }
    return s;
}

Observables parse_observables(const YAML::Node& node, std::size_t emitters) {
    check_keys(node, "observables", {"concurrence", "fidelity", "convention"});
    Observables obs;
    if (node["concurrence"]) {
        const YAML::Node list = node["concurrence"];
        if (!list.IsSequence()) {
            schema("observables.concurrence", "must be a list of [j, l] pairs");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string key = "observables.concurrence[" + std::to_string(i) + "]";
            if (!list[i].IsSequence() || list[i].size() != 2) {
                schema(key, "must be a pair [j, l]");
            }
            const Pair p{emitter_index(list[i][0], key, emitters), emitter_index(list[i][1], key, emitters)};
            if (p.first == p.second) {
                schema(key, "pair must name two different emitters");
            }
            obs.concurrence.push_back(p);
        }
    }
    if (node["fidelity"]) {
        const YAML::Node list = node["fidelity"];
        if (!list.IsSequence()) {
            schema("observables.fidelity", "must be a list of target emitters");
        }
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string key = "observables.fidelity[" + std::to_string(i) + "]";
            const std::size_t target = emitter_index(list[i], key, emitters);
            if (target == 0) {
                schema(key, "emitter 1 is the source node");
            }
            obs.fidelity.push_back(target);
        }
    }
    if (node["convention"]) {
        const std::string c = text(node["convention"], "observables.convention");
        if (c == "product") {
            obs.conventions = {ConcurrenceConvention::product};
        } else if (c == "wootters") {
            obs.conventions = {ConcurrenceConvention::wootters};
        } else if (c == "both") {
            obs.conventions = {ConcurrenceConvention::product, ConcurrenceConvention::wootters};
        } else {
            schema("observables.convention", "must be product, wootters or both");
        }
    }
    return obs;
}

std::vector<Method> parse_methods(const YAML::Node& node) {
    if (!node.IsSequence() || node.size() == 0) {
        schema("methods", "must be a non-empty list");
    }
    std::vector<Method> out;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string key = "methods[" + std::to_string(i) + "]";
        const std::string name = text(node[i], key);
        Method m{};
        if (name == "nonmarkovian") {
            m = Method::nonmarkovian;
        } else if (name == "markov") {
            m = Method::markov;
        } else if (name == "steady") {
            m = Method::steady;
        } else if (name == "oracle") {
            m = Method::oracle;
        } else {
            schema(key, "must be nonmarkovian, markov, steady or oracle");
        }
        if (std::find(out.begin(), out.end(), m) != out.end()) {
            schema(key, "listed twice");
        }
        out.push_back(m);
    }
    return out;
}

Kind parse_kind(const YAML::Node& node) {
    const std::string k = text(node, "kind");
    for (Kind kind : {Kind::spectrum_scan, Kind::dynamics, Kind::envelope, Kind::verify, Kind::figure}) {
        if (k == to_string(kind)) {
            return kind;
        }
    }
    schema("kind", "must be spectrum_scan, dynamics, envelope, verify or figure, got '" + k + "'");
}

void forbid(const YAML::Node& root, const char* key, Kind kind) {
    if (root[key]) {
        schema(key, "not allowed for kind " + std::string(to_string(kind)));
    }
}

void require_known_preset(const std::string& id, const std::string& key) {
    if (std::find(std::begin(kPresetIds), std::end(kPresetIds), id) == std::end(kPresetIds)) {
        schema(key, "unknown preset '" + id + "'");
    }
}

}  // namespace

std::string_view to_string(Kind k) {
    switch (k) {
    case Kind::spectrum_scan: return "spectrum_scan";
    case Kind::dynamics: return "dynamics";
    case Kind::envelope: return "envelope";
    case Kind::verify: return "verify";
    case Kind::figure: return "figure";
    }
    return "unknown";
}

std::vector<double> Sweep::values() const {
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        out[i] = points == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return out;
}

DimensionlessModel ModelBlock::reduced() const { return si ? reduce(params) : dimensionless; }

double ModelBlock::reduce_transition(double value) const { return si ? value / params.orbital_splitting : value; }

double ModelBlock::reduce_spacing(double value) const { return si ? spacing_to_delay(params, value) : value; }

double ModelBlock::transition() const { return si ? params.transition : dimensionless.transition(); }

Scenario parse(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        schema("scenario", std::string("not valid YAML: ") + e.what());
    }
    check_keys(root, "",
               {"kind", "figure", "preset", "model", "dimensionless", "sweep", "numerics", "transitions", "methods",
                "observables", "numeric_points", "output"});
    if (!root["kind"]) {
        schema("kind", "is required");
    }
    const Kind kind = parse_kind(root["kind"]);

    if (kind == Kind::figure) {
        for (const char* key : {"preset", "model", "dimensionless", "sweep", "transitions", "methods", "observables",
                                "numeric_points"}) {
            forbid(root, key, kind);
        }
        if (!root["figure"]) {
            schema("figure", "is required for kind figure");
        }
        const std::string id = text(root["figure"], "figure");
        require_known_preset(id, "figure");
        Scenario s = preset(id);
        if (root["numerics"]) {
            s.numerics = parse_numerics(root["numerics"], s.numerics);
            for (Scenario& stage : s.stages) {
                stage.numerics = parse_numerics(root["numerics"], stage.numerics);
            }
        }
        if (root["output"]) {
            s.output = text(root["output"], "output");
        }
        return s;
    }
    forbid(root, "figure", kind);

    Scenario s;
    s.kind = kind;
    const int blocks = (root["model"] ? 1 : 0) + (root["dimensionless"] ? 1 : 0) + (root["preset"] ? 1 : 0);
    if (blocks != 1) {
        schema("model", "exactly one of model, dimensionless or preset is required");
    }
    if (root["model"]) {
        s.model = parse_si(root["model"]);
    } else if (root["dimensionless"]) {
        s.model = parse_dimensionless(root["dimensionless"]);
    } else {
        const std::string id = text(root["preset"], "preset");
        require_known_preset(id, "preset");
        s.model = preset_model(id);
    }
    const std::size_t n = s.model.reduced().size();

    const bool swept = kind == Kind::spectrum_scan || kind == Kind::envelope;
    if (swept) {
        if (!root["sweep"]) {
            schema("sweep", "is required for kind " + std::string(to_string(kind)));
        }
        s.sweep = parse_sweep(root["sweep"]);
        if (s.sweep->variable == SweepVariable::spacing && n < 2) {
            schema("sweep.variable", "a spacing sweep needs at least two emitters");
        }
    } else {
        forbid(root, "sweep", kind);
    }
    if (root["numerics"]) {
        s.numerics = parse_numerics(root["numerics"], s.numerics);
    }

    if (kind == Kind::dynamics) {
        if (root["transitions"]) {
            s.transitions = numbers(root["transitions"], "transitions");
            for (std::size_t i = 0; i < s.transitions.size(); ++i) {
                if (!(s.transitions[i] > 0.0)) {
                    schema("transitions[" + std::to_string(i) + "]", "must be positive");
                }
            }
        }
        if (root["methods"]) {
            s.methods = parse_methods(root["methods"]);
        }
    } else {
        forbid(root, "transitions", kind);
        forbid(root, "methods", kind);
    }

    if (kind == Kind::dynamics || kind == Kind::envelope) {
        if (root["observables"]) {
            s.observables = parse_observables(root["observables"], n);
        } else if (n >= 2) {
            s.observables.concurrence = {{0, 1}};
            s.observables.fidelity = {1};
        }
        if (kind == Kind::envelope && s.observables.concurrence.empty() && s.observables.fidelity.empty()) {
            schema("observables", "an envelope needs at least one concurrence pair or fidelity target");
        }
    } else {
        forbid(root, "observables", kind);
    }

    if (kind == Kind::envelope) {
        if (root["numeric_points"]) {
            s.numeric_points = numbers(root["numeric_points"], "numeric_points");
            for (std::size_t i = 0; i < s.numeric_points.size(); ++i) {
                if (!(s.numeric_points[i] > 0.0)) {
                    schema("numeric_points[" + std::to_string(i) + "]", "must be positive");
                }
            }
        }
    } else {
        forbid(root, "numeric_points", kind);
    }

    if (kind == Kind::verify && s.numerics.oracle_modes % 2 != 0 && n > 1) {
        schema("numerics.oracle_modes", "must be even when emitters are spatially separated");
    }
    if (root["output"]) {
        s.output = text(root["output"], "output");
        if (s.output.empty()) {
            schema("output", "must be a directory path");
        }
    }
    return s;
}

Scenario load_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ScenarioError(kMissingFile, "file", "cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace routersim::scenario
