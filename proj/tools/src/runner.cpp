// runner.cpp: executes scenario stages in memory and commits the artifacts

#include "routersim/scenario.hpp"

#include "routersim/errors.hpp"
#include "routersim/io.hpp"
#include "routersim/parallel.hpp"
#include "routersim/quadrature.hpp"
#include "routersim/spectral.hpp"
#include "routersim/spectrum.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <system_error>

#ifndef ROUTERSIM_VERSION
#define ROUTERSIM_VERSION "0.0.0"
#endif

namespace routersim::scenario {

using json = nlohmann::json;

namespace {

// Restores the process-wide quadrature tolerance when a run ends.
class ToleranceScope {
public:
    explicit ToleranceScope(double tol) : saved_(quad::default_tolerance()) { quad::set_default_tolerance(tol); }
    ~ToleranceScope() { quad::set_default_tolerance(saved_); }
    ToleranceScope(const ToleranceScope&) = delete;
    ToleranceScope& operator=(const ToleranceScope&) = delete;

private:
    double saved_;
};

std::string scenario_key(const std::string& field) {
    for (const char* numeric : {"dt", "horizon", "oracle_modes", "omega_max"}) {
        if (field == numeric) {
            return "numerics." + field;
        }
    }
    return field == "transition" ? "transitions" : "model." + field;
}

// Runs `body`, translating library failures into scenario errors charged to `key`.
template <class F>
auto guarded(const std::string& key, F&& body) {
    try {
        return body();
    } catch (const ScenarioError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ScenarioError(kSchema, scenario_key(e.field()), e.what());
    } catch (const NumericalError& e) {
        throw ScenarioError(kNumerical, key, e.what());
    } catch (const DomainError& e) {
        throw ScenarioError(kNumerical, key, e.what());
    }
}

std::string case_label(double w0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", w0);
    return buf;
}

std::string with_suffix(const std::string& stem, const std::string& suffix) {
    return suffix.empty() ? stem + ".csv" : stem + "_" + suffix + ".csv";
}

IntegratorOptions integrator(const Numerics& n) { return {n.dt, n.horizon, n.extrapolate}; }

json model_json(const ModelBlock& m) {
    json out;
    if (m.si) {
        const ModelParams& p = m.params;
        out = {{"units", "SI"},
               {"density", p.density},
               {"cross_section", p.cross_section},
               {"strain_sensitivity", p.strain_sensitivity},
               {"group_velocity", p.group_velocity},
               {"cutoff", p.cutoff},
               {"orbital_splitting", p.orbital_splitting},
               {"transition", p.transition},
               {"positions", p.positions}};
    } else {
        out = {{"units", "dimensionless"}};
    }
    const DimensionlessModel r = m.reduced();
    out["reduced"] = {{"coupling", r.coupling()},
                      {"cutoff", r.cutoff()},
                      {"transition", r.transition()},
                      {"offsets", r.offsets()},
                      {"thresholds", bound_state_thresholds(r)}};
    return out;
}

json numerics_json(const Numerics& n) {
    return {{"dt", n.dt},
            {"horizon", n.horizon},
            {"quadrature_tolerance", n.quadrature_tolerance},
            {"oracle_modes", n.oracle_modes},
            {"omega_max", n.omega_max},
            {"extrapolate", n.extrapolate},
            {"window_start", n.long_time_start()},
            {"verify_horizon", n.verify_horizon}};
}

json states_json(const std::vector<BoundState>& states) {
    json out = json::array();
    for (const BoundState& bs : states) {
        out.push_back({{"pole", bs.pole}, {"Z", bs.weight.real()}, {"channel", bs.channel}, {"marginal", bs.marginal}});
    }
    return out;
}

std::vector<ObservableSeries> observe(const AmplitudeTrajectory& traj, const Observables& obs) {
    std::vector<ObservableSeries> out;
    for (const Pair& p : obs.concurrence) {
        for (ConcurrenceConvention c : obs.conventions) {
            out.push_back(concurrence(traj, p.first, p.second, c));
        }
    }
    for (std::size_t target : obs.fidelity) {
        out.push_back(fidelity(traj, target));
    }
    return out;
}

AmplitudeTrajectory evolve(Method method, const DimensionlessModel& model, double w0, const Numerics& n) {
    const Eigen::VectorXcd c0 = excite_first(model.size());
    switch (method) {
    case Method::nonmarkovian:
        return guarded("numerics.dt", [&] { return evolve_nonmarkovian(model, w0, c0, integrator(n)); });
    case Method::markov:
        return guarded("numerics.dt", [&] { return evolve_markov(model, w0, c0, integrator(n)); });
    case Method::steady:
        return guarded("numerics.quadrature_tolerance",
                       [&] { return steady_state(model, w0, c0).sample(time_grid(n.horizon, n.dt)); });
    case Method::oracle:
        return guarded("numerics.oracle_modes", [&] {
            const DiscretizedSystem sys = build_discretized(model, w0, n.oracle_modes, n.omega_max * model.cutoff());
            return oracle_evolve(sys, c0, integrator(n));
        });
    }
    throw ScenarioError(kSchema, "methods", "unsupported method");
}

struct Pending {
    Artifacts files;
    json stage;
    std::vector<std::string> warnings;
    bool verification_passed = true;
};

void run_spectrum(const Scenario& s, Pending& out) {
    const std::vector<double> values = s.sweep->values();
    const DimensionlessModel base = s.model.reduced();
    std::vector<double> reduced;
    for (double v : values) {
        reduced.push_back(s.sweep->variable == SweepVariable::transition ? s.model.reduce_transition(v)
                                                                         : s.model.reduce_spacing(v));
    }
    const SpectrumScan scan = guarded("numerics.quadrature_tolerance", [&] {
        return s.sweep->variable == SweepVariable::transition ? scan_transition(base, reduced)
                                                              : scan_spacing(base, base.transition(), reduced);
    });
    out.files["spectrum.csv"] = io::spectrum_csv(scan, values);
    std::size_t most = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        most = std::max(most, scan.count(i));
    }
    out.stage["sweep"] = {{"variable", s.sweep->variable == SweepVariable::transition ? "transition" : "spacing"},
                          {"start", s.sweep->start},
                          {"stop", s.sweep->stop},
                          {"points", s.sweep->points}};
    out.stage["max_bound_states"] = most;
}

void run_dynamics(const Scenario& s, Pending& out) {
    const DimensionlessModel model = s.model.reduced();
    std::vector<double> cases = s.transitions;
    if (cases.empty()) {
        cases.push_back(s.model.transition());
    }
    const std::size_t methods = s.methods.size();
    std::vector<AmplitudeTrajectory> trajs(cases.size() * methods);
    parallel_for(trajs.size(), [&](std::size_t job) {
        const double w0 = s.model.reduce_transition(cases[job / methods]);
        trajs[job] = evolve(s.methods[job % methods], model, w0, s.numerics);
    });

    out.stage["cases"] = json::array();
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const double w0 = s.model.reduce_transition(cases[c]);
        const std::string suffix = cases.size() == 1 ? "" : "w0_" + case_label(w0);
        std::vector<AmplitudeTrajectory> group(trajs.begin() + static_cast<std::ptrdiff_t>(c * methods),
                                               trajs.begin() + static_cast<std::ptrdiff_t>((c + 1) * methods));
        std::vector<ObservableSeries> series;
        for (const AmplitudeTrajectory& t : group) {
            for (auto& obs : observe(t, s.observables)) {
                series.push_back(std::move(obs));
            }
            for (const std::string& w : t.warnings) {
                out.warnings.push_back("w0 = " + case_label(w0) + ": " + w);
            }
        }
        const std::string traj_name = with_suffix("trajectory", suffix);
        out.files[traj_name] = io::trajectory_csv(group);
        json entry = {{"transition", w0}, {"trajectory", traj_name}};
        if (!series.empty()) {
            const std::string obs_name = with_suffix("observables", suffix);
            out.files[obs_name] = io::observables_csv(series);
            entry["observables"] = obs_name;
        }
        entry["bound_states"] =
            states_json(guarded("numerics.quadrature_tolerance", [&] { return find_bound_states(model, w0); }));
        out.stage["cases"].push_back(entry);
    }
}

ScanPoint sweep_point(const Scenario& s, const DimensionlessModel& base, double value) {
    if (s.sweep->variable == SweepVariable::transition) {
        return {base, s.model.reduce_transition(value)};
    }
    return {base.with_uniform_spacing(s.model.reduce_spacing(value)), base.transition()};
}

void run_envelope(const Scenario& s, Pending& out) {
    const DimensionlessModel base = s.model.reduced();
    const std::vector<double> values = s.sweep->values();
    const auto point_at = [&](double v) { return sweep_point(s, base, v); };

    struct Request {
        ObservableKind kind;
        ConcurrenceConvention convention;
        std::size_t first;
        std::size_t second;
    };
    std::vector<Request> requests;
    for (const Pair& p : s.observables.concurrence) {
        for (ConcurrenceConvention c : s.observables.conventions) {
            requests.push_back({ObservableKind::concurrence, c, p.first, p.second});
        }
    }
    for (std::size_t target : s.observables.fidelity) {
        requests.push_back({ObservableKind::fidelity, ConcurrenceConvention::product, 0, target});
    }

    std::vector<Envelope> envelopes;
    guarded("numerics.quadrature_tolerance", [&] {
        for (const Request& req : requests) {
            envelopes.push_back(
                steady_envelope(values, point_at, req.kind, req.first, req.second, req.convention));
        }
        return 0;
    });

    if (!s.numeric_points.empty()) {
        std::vector<AmplitudeTrajectory> trajs(s.numeric_points.size());
        parallel_for(trajs.size(), [&](std::size_t i) {
            const ScanPoint p = point_at(s.numeric_points[i]);
            trajs[i] = evolve(Method::nonmarkovian, p.model, p.transition, s.numerics);
        });
        for (const Request& req : requests) {
            Envelope env;
            env.kind = req.kind;
            env.convention = req.convention;
            env.first = req.first;
            env.second = req.second;
            env.source = Method::nonmarkovian;
            for (std::size_t i = 0; i < trajs.size(); ++i) {
                const Extrema ex = trajectory_extrema(trajs[i], req.kind, req.first, req.second,
                                                      s.numerics.long_time_start(), s.numerics.horizon, req.convention);
                const ScanPoint p = point_at(s.numeric_points[i]);
                env.points.push_back({s.numeric_points[i], ex.min, ex.max,
                                      guarded("numerics.quadrature_tolerance", [&] {
                                          return find_bound_states(p.model, p.transition).size();
                                      })});
            }
            envelopes.push_back(std::move(env));
        }
    }
    out.files["envelope.csv"] = io::envelope_csv(envelopes);
    out.stage["numeric_points"] = s.numeric_points;
}

json check(const std::string& name, double measured, double tolerance, bool& all) {
    const bool pass = std::isfinite(measured) && measured <= tolerance;
    all = all && pass;
    json out = {{"name", name}, {"tolerance", tolerance}, {"pass", pass}};
    out["measured"] = std::isfinite(measured) ? json(measured) : json(nullptr);
    return out;
}

void run_verify(const Scenario& s, Pending& out) {
    const DimensionlessModel model = s.model.reduced();
    const double w0 = model.transition();
    const Numerics& n = s.numerics;
    const DiscretizedSystem sys = guarded("numerics.oracle_modes", [&] {
        return build_discretized(model, w0, n.oracle_modes, n.omega_max * model.cutoff());
    });
    const OracleSpectrum spectrum = guarded("numerics.oracle_modes", [&] { return diagonalize(sys); });
    const std::vector<BoundState> states =
        guarded("numerics.quadrature_tolerance", [&] { return find_bound_states(model, w0); });

    bool all = true;
    json checks = json::array();

    double density_error = 0.0;
    double density_scale = 0.0;
    for (std::size_t k = 0; k < sys.bins; ++k) {
        const double omega = sys.mode_frequencies(static_cast<Eigen::Index>(k * (sys.modes() / sys.bins)));
        const Eigen::MatrixXd exact = spectral_density(model, omega);
        density_error = std::max(density_error, (sys.reconstructed_density(k) - exact).cwiseAbs().maxCoeff());
        density_scale = std::max(density_scale, exact.cwiseAbs().maxCoeff());
    }
    checks.push_back(check("density_reconstruction", density_scale > 0.0 ? density_error / density_scale : 0.0,
                           1e-2, all));

    const std::vector<double> below = spectrum.below_band();
    const double count_mismatch =
        std::abs(static_cast<double>(below.size()) - static_cast<double>(states.size()));
    checks.push_back(check("bound_state_count", count_mismatch, 0.0, all));
    double pole_error = count_mismatch == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < states.size() && count_mismatch == 0.0; ++k) {
        pole_error = std::max(pole_error, std::abs(below[k] - states[k].pole));
    }
    checks.push_back(check("pole_match", pole_error, 1e-3, all));

    const IntegratorOptions window{n.dt, n.verify_horizon, n.extrapolate};
    const Eigen::VectorXcd c0 = excite_first(model.size());
    const AmplitudeTrajectory exact =
        guarded("numerics.dt", [&] { return evolve_nonmarkovian(model, w0, c0, window); });
    const AmplitudeTrajectory oracle =
        guarded("numerics.oracle_modes", [&] { return oracle_evolve(sys, spectrum, c0, window); });
    checks.push_back(check("trajectory_match", (exact.amplitudes - oracle.amplitudes).cwiseAbs().maxCoeff(), 1e-3, all));

    json report = {{"pass", all},
                   {"transition", w0},
                   {"oracle_modes", sys.modes()},
                   {"omega_max", n.omega_max * model.cutoff()},
                   {"recurrence_time", sys.recurrence_time()},
                   {"poles", states_json(states)},
                   {"oracle_below_band", below},
                   {"checks", checks},
                   {"warnings", oracle.warnings}};
    out.files["verify.json"] = report.dump(2) + "\n";
    out.warnings.insert(out.warnings.end(), oracle.warnings.begin(), oracle.warnings.end());
    out.verification_passed = all;
}

void run_stage(const Scenario& s, Pending& out) {
    const ToleranceScope tolerance(s.numerics.quadrature_tolerance);
    out.stage = {{"kind", to_string(s.kind)}, {"model", model_json(s.model)}, {"numerics", numerics_json(s.numerics)}};
    switch (s.kind) {
    case Kind::spectrum_scan: run_spectrum(s, out); break;
    case Kind::dynamics: run_dynamics(s, out); break;
    case Kind::envelope: run_envelope(s, out); break;
    case Kind::verify: run_verify(s, out); break;
    case Kind::figure: throw ScenarioError(kSchema, "kind", "figure stages cannot nest");
    }
}

}  // namespace

RunResult execute(const Scenario& scenario) {
    const auto started = std::chrono::steady_clock::now();
    std::vector<const Scenario*> stages;
    if (scenario.kind == Kind::figure) {
        for (const Scenario& st : scenario.stages) {
            stages.push_back(&st);
        }
    } else {
        stages.push_back(&scenario);
    }

    RunResult result;
    json meta = {{"software", {{"name", "routersim"}, {"version", ROUTERSIM_VERSION}}},
                 {"kind", to_string(scenario.kind)},
                 {"threads", worker_count()},
                 {"stages", json::array()}};
    if (!scenario.figure.empty()) {
        meta["figure"] = scenario.figure;
    }
    for (const Scenario* st : stages) {
        Pending pending;
        run_stage(*st, pending);
        json files = json::array();
        for (auto& [name, body] : pending.files) {
            if (result.files.count(name) != 0) {
                throw ScenarioError(kSchema, "kind", "two stages both write " + name);
            }
            files.push_back(name);
            result.files[name] = std::move(body);
        }
        pending.stage["files"] = files;
        meta["stages"].push_back(pending.stage);
        result.warnings.insert(result.warnings.end(), pending.warnings.begin(), pending.warnings.end());
        result.verification_passed = result.verification_passed && pending.verification_passed;
    }
    if (scenario.kind == Kind::figure) {
        result.files[scenario.figure + ".gp"] = plot_script(scenario, result.files);
    }
    meta["warnings"] = result.warnings;
    meta["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    result.files["meta.json"] = meta.dump(2) + "\n";
    return result;
}

void commit(const Artifacts& files, const std::filesystem::path& directory) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) {
        throw ScenarioError(kOutput, "output", "cannot create '" + directory.string() + "': " + ec.message());
    }
    std::vector<fs::path> staged;
    const auto discard = [&] {
        for (const fs::path& p : staged) {
            fs::remove(p, ec);
        }
    };
    for (const auto& [name, body] : files) {
        const fs::path tmp = directory / ("." + name + ".partial");
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        out.close();
        staged.push_back(tmp);
        if (!out) {
            discard();
            throw ScenarioError(kOutput, "output", "cannot write '" + tmp.string() + "'");
        }
    }
    auto it = files.begin();
    for (const fs::path& tmp : staged) {
        fs::rename(tmp, directory / (it++)->first, ec);
        if (ec) {
            discard();
            throw ScenarioError(kOutput, "output", "cannot rename '" + tmp.string() + "': " + ec.message());
        }
    }
}

int run_and_write(const Scenario& scenario) {
    try {
        const RunResult result = execute(scenario);
        commit(result.files, scenario.output);
        for (const std::string& w : result.warnings) {
            std::cerr << "sim: warning: " << w << "\n";
        }
        std::cout << "wrote " << result.files.size() << " files to " << scenario.output.string() << "\n";
        if (!result.verification_passed) {
            std::cerr << "sim: verification failed; see " << (scenario.output / "verify.json").string() << "\n";
            return kVerificationFailed;
        }
        return kOk;
    } catch (const ScenarioError& e) {
        std::cerr << "sim: error [" << e.key() << "]: " << e.message() << "\n";
        return e.code();
    }
}

}  // namespace routersim::scenario
