// presets.cpp: figure scenarios built from the diamond waveguide constants

#include "routersim/scenario.hpp"

namespace routersim::scenario {

namespace {

ModelBlock diamond(std::size_t emitters, double spacing_m, double w0) {
    ModelBlock block;
    block.si = true;
    block.params = diamond_waveguide(emitters, spacing_m, w0);
    return block;
}

double splitting(const ModelBlock& m) { return m.params.orbital_splitting; }

Scenario stage(Kind kind, const ModelBlock& model) {
    Scenario s;
    s.kind = kind;
    s.model = model;
    return s;
}

Sweep transition_sweep(const ModelBlock& m, double lo, double hi, std::size_t points) {
    return {SweepVariable::transition, lo * splitting(m), hi * splitting(m), points};
}

Sweep spacing_sweep(double lo_nm, double hi_nm, std::size_t points) {
    return {SweepVariable::spacing, lo_nm * 1e-9, hi_nm * 1e-9, points};
}

std::vector<double> in_splittings(const ModelBlock& m, std::initializer_list<double> w0) {
    std::vector<double> out;
    for (double w : w0) {
        out.push_back(w * splitting(m));
    }
    return out;
}

std::vector<double> in_metres(std::initializer_list<double> nm) {
    std::vector<double> out;
    for (double x : nm) {
        out.push_back(x * 1e-9);
    }
    return out;
}

const std::vector<ConcurrenceConvention> kBoth{ConcurrenceConvention::product, ConcurrenceConvention::wootters};

}  // namespace

ModelBlock preset_model(const std::string& id) {
    if (id == "fig2" || id == "fig3") {
        return diamond(2, 10e-9, 1.05);
    }
    if (id == "fig4") {
        return diamond(2, 10e-9, 1.0);
    }
    if (id == "fig5" || id == "fig6") {
        return diamond(3, 10.5e-9, 1.0);
    }
    throw ScenarioError(kUsage, "preset", "unknown figure preset '" + id + "'");
}

Scenario preset(const std::string& id) {
    const ModelBlock model = preset_model(id);
    Scenario fig;
    fig.kind = Kind::figure;
    fig.figure = id;
    fig.model = model;
    fig.output = id;

    if (id == "fig2" || id == "fig3") {
        if (id == "fig2") {
            Scenario scan = stage(Kind::spectrum_scan, model);
            scan.sweep = transition_sweep(model, 0.8, 2.0, 121);
            fig.stages.push_back(scan);
        }
        Scenario dyn = stage(Kind::dynamics, model);
        dyn.transitions = in_splittings(model, {1.05, 1.525, 1.8});
        dyn.methods = {Method::nonmarkovian, Method::steady, Method::markov};
        if (id == "fig2") {
            dyn.observables.concurrence = {{0, 1}};
            dyn.observables.conventions = kBoth;
        } else {
            dyn.observables.fidelity = {1};
        }
        fig.stages.push_back(dyn);
    } else if (id == "fig4" || id == "fig6") {
        Scenario scan = stage(Kind::spectrum_scan, model);
        scan.sweep = spacing_sweep(5.0, 20.0, 151);
        fig.stages.push_back(scan);
        Scenario env = stage(Kind::envelope, model);
        env.sweep = scan.sweep;
        if (id == "fig4") {
            env.observables.concurrence = {{0, 1}};
            env.observables.fidelity = {1};
            env.numeric_points = in_metres({6.0, 8.0, 10.0, 12.0, 15.0, 18.0});
        } else {
            env.observables.concurrence = {{0, 1}, {0, 2}};
            env.observables.fidelity = {1, 2};
            env.numeric_points = in_metres({6.0, 10.5, 15.0});
        }
        fig.stages.push_back(env);
    } else {
        Scenario scan = stage(Kind::spectrum_scan, model);
        scan.sweep = transition_sweep(model, 0.5, 2.5, 101);
        fig.stages.push_back(scan);
        Scenario dyn = stage(Kind::dynamics, model);
        dyn.transitions = in_splittings(model, {1.0, 2.0});
        dyn.methods = {Method::nonmarkovian, Method::steady};
        dyn.observables.concurrence = {{0, 1}, {0, 2}};
        dyn.observables.fidelity = {1, 2};
        dyn.observables.conventions = kBoth;
        fig.stages.push_back(dyn);
    }
    return fig;
}

}  // namespace routersim::scenario
