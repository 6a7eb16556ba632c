// observables.cpp: figures of merit built from emitter amplitudes

#include "routersim/observables.hpp"

#include "routersim/errors.hpp"
#include "routersim/parallel.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <cmath>
#include <limits>

namespace routersim {

using cd = std::complex<double>;

namespace {

void check_pair(const AmplitudeTrajectory& traj, std::size_t first, std::size_t second) {
    if (first == second) {
        throw DomainError("concurrence: emitter pair must be distinct");
    }
    if (first >= traj.emitters() || second >= traj.emitters()) {
        throw DomainError("concurrence: emitter index out of range");
    }
}

void check_target(std::size_t emitters, std::size_t target) {
    if (target == 0) {
        throw DomainError("fidelity: emitter 1 is the source node, not a target");
    }
    if (target >= emitters) {
        throw DomainError("fidelity: target index out of range");
    }
}

double observe(const Eigen::VectorXcd& c, ObservableKind kind, std::size_t first, std::size_t second,
               ConcurrenceConvention convention) {
    if (kind == ObservableKind::fidelity) {
        return transfer_fidelity(c(static_cast<Eigen::Index>(second)));
    }
    const cd cj = c(static_cast<Eigen::Index>(first));
    const cd cl = c(static_cast<Eigen::Index>(second));
    if (convention == ConcurrenceConvention::product) {
        return product_concurrence(cj, cl, kEqualSuperposition);
    }
    return wootters_concurrence(pair_density_matrix(cj, cl, kEqualSuperposition, kEqualSuperposition));
}

std::string convention_suffix(ObservableKind kind, ConcurrenceConvention convention) {
    if (kind == ObservableKind::fidelity) {
        return "fidelity";
    }
    return convention == ConcurrenceConvention::product ? "concurrence_product" : "concurrence_wootters";
}

}  // namespace

std::string ObservableSeries::kind_label() const {
    return convention_suffix(kind, convention) + ":" + std::string(to_string(source));
}

std::string ObservableSeries::pair_label() const {
    return std::to_string(first + 1) + "-" + std::to_string(second + 1);
}

std::string Envelope::label() const {
    std::string out =
        convention_suffix(kind, convention) + "_" + std::to_string(first + 1) + "-" + std::to_string(second + 1);
    if (source != Method::steady) {
        out += ":" + std::string(to_string(source));
    }
    return out;
}

double product_concurrence(cd cj, cd cl, double excited_amplitude) {
    const double a2 = excited_amplitude * excited_amplitude;
    return std::sqrt(2.0) * a2 * std::abs(cj * std::conj(cl));
}

Eigen::Matrix4cd pair_density_matrix(cd cj, cd cl, double ground_amplitude, double excited_amplitude) {
    Eigen::Vector4cd psi;
    psi << ground_amplitude, excited_amplitude * cl, excited_amplitude * cj, 0.0;
    Eigen::Matrix4cd rho = psi * psi.adjoint();
    // Weight of the excitation sitting on other emitters or in the bath.
    const double a2 = excited_amplitude * excited_amplitude;
    const double elsewhere = std::max(0.0, a2 * (1.0 - std::norm(cj) - std::norm(cl)));
    rho(0, 0) += elsewhere;
    return rho;
}

double wootters_concurrence(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    // σ_y ⊗ σ_y in the |gg⟩,|ge⟩,|eg⟩,|ee⟩ basis.
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Eigen::Matrix4cd r = rho * flip * rho.conjugate() * flip;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(r, false);
    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) {
        lambda[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

ObservableSeries concurrence(const AmplitudeTrajectory& traj, std::size_t first, std::size_t second,
                             ConcurrenceConvention convention, double excited_amplitude) {
    check_pair(traj, first, second);
    ObservableSeries out;
    out.kind = ObservableKind::concurrence;
    out.convention = convention;
    out.first = first;
    out.second = second;
    out.source = traj.method;
    out.times = traj.times;
    out.values.resize(traj.steps());
    const double a0 = std::sqrt(std::max(0.0, 1.0 - excited_amplitude * excited_amplitude));
    for (std::size_t i = 0; i < traj.steps(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        const cd cj = traj.amplitudes(row, static_cast<Eigen::Index>(first));
        const cd cl = traj.amplitudes(row, static_cast<Eigen::Index>(second));
        out.values[i] = convention == ConcurrenceConvention::product
                            ? product_concurrence(cj, cl, excited_amplitude)
                            : wootters_concurrence(pair_density_matrix(cj, cl, a0, excited_amplitude));
    }
    return out;
}

double transfer_fidelity(cd c_target) { return std::norm(1.0 + c_target) / 4.0; }

ObservableSeries fidelity(const AmplitudeTrajectory& traj, std::size_t target) {
    check_target(traj.emitters(), target);
    ObservableSeries out;
    out.kind = ObservableKind::fidelity;
    out.first = 0;
    out.second = target;
    out.source = traj.method;
    out.times = traj.times;
    out.values.resize(traj.steps());
    for (std::size_t i = 0; i < traj.steps(); ++i) {
        out.values[i] = transfer_fidelity(traj.amplitudes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(target)));
    }
    return out;
}

Extrema steady_extrema(const SteadyState& steady, ObservableKind kind, std::size_t first, std::size_t second,
                       ConcurrenceConvention convention) {
    if (kind == ObservableKind::fidelity) {
        check_target(steady.emitters, second);
    } else if (first == second || first >= steady.emitters || second >= steady.emitters) {
        throw DomainError("steady_extrema: invalid emitter pair");
    }

    // Every frequency the observable can contain: the poles and their differences.
    std::vector<double> freqs;
    for (std::size_t a = 0; a < steady.terms.size(); ++a) {
        freqs.push_back(std::abs(steady.terms[a].pole));
        for (std::size_t b = a + 1; b < steady.terms.size(); ++b) {
            freqs.push_back(std::abs(steady.terms[a].pole - steady.terms[b].pole));
        }
    }
    double f_min = std::numeric_limits<double>::infinity();
    double f_max = 0.0;
    for (double f : freqs) {
        if (f > 1e-12) {
            f_min = std::min(f_min, f);
            f_max = std::max(f_max, f);
        }
    }

    std::size_t samples = 1;
    double window = 0.0;
    if (std::isfinite(f_min)) {
        window = 50.0 * 2.0 * kPi / f_min;
        const double per_fastest = window * f_max / (2.0 * kPi);
        samples = static_cast<std::size_t>(std::clamp(20.0 * per_fastest, 1e4, 2e6));
    }
    Extrema ex{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = samples > 1 ? window * static_cast<double>(i) / static_cast<double>(samples - 1) : 0.0;
        const double v = observe(steady.at(t), kind, first, second, convention);
        ex.min = std::min(ex.min, v);
        ex.max = std::max(ex.max, v);
    }
    return ex;
}

Extrema trajectory_extrema(const AmplitudeTrajectory& traj, ObservableKind kind, std::size_t first,
                           std::size_t second, double t_from, double t_to, ConcurrenceConvention convention) {
    if (kind == ObservableKind::fidelity) {
        check_target(traj.emitters(), second);
    } else {
        check_pair(traj, first, second);
    }
    Extrema ex{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < traj.steps(); ++i) {
        if (traj.times[i] < t_from || traj.times[i] > t_to) {
            continue;
        }
        const Eigen::VectorXcd c = traj.amplitudes.row(static_cast<Eigen::Index>(i)).transpose();
        const double v = observe(c, kind, first, second, convention);
        ex.min = std::min(ex.min, v);
        ex.max = std::max(ex.max, v);
    }
    return ex;
}

Envelope steady_envelope(std::span<const double> sweep_values, const std::function<ScanPoint(double)>& point_at,
                         ObservableKind kind, std::size_t first, std::size_t second,
                         ConcurrenceConvention convention, unsigned threads) {
    Envelope env;
    env.kind = kind;
    env.convention = convention;
    env.first = kind == ObservableKind::fidelity ? 0 : first;
    env.second = second;
    env.points.resize(sweep_values.size());
    parallel_for(
        sweep_values.size(),
        [&](std::size_t i) {
            const ScanPoint p = point_at(sweep_values[i]);
            const SteadyState ss = steady_state(p.model, p.transition, excite_first(p.model.size()));
            const Extrema ex = steady_extrema(ss, kind, env.first, second, convention);
            env.points[i] = {sweep_values[i], ex.min, ex.max, ss.terms.size()};
        },
        threads);
    return env;
}

}  // namespace routersim
