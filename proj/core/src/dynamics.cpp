// dynamics.cpp: Volterra solver, Markov baseline and residue steady state

#include "routersim/dynamics.hpp"

#include "routersim/errors.hpp"
#include "routersim/spectral.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <string>

namespace routersim {

using cd = std::complex<double>;

std::string_view to_string(Method m) {
    switch (m) {
        case Method::nonmarkovian: return "nonmarkovian";
        case Method::markov: return "markov";
        case Method::steady: return "steady";
        case Method::oracle: return "oracle";
    }
    return "unknown";
}

namespace {

void check_inputs(const DimensionlessModel& model, double transition, const Eigen::VectorXcd& initial,
                  const IntegratorOptions& opts) {
    if (!(transition > 0.0)) {
        throw ValidationError("transition", "must be positive");
    }
    if (static_cast<std::size_t>(initial.size()) != model.size()) {
        throw ValidationError("initial", "length must equal the number of emitters");
    }
    for (Eigen::Index j = 0; j < initial.size(); ++j) {
        if (!(std::abs(initial(j)) <= 1.0 + 1e-12)) {
            throw ValidationError("initial", "amplitudes must satisfy |c_j| <= 1");
        }
    }
    if (!(opts.dt > 0.0) || !std::isfinite(opts.dt)) {
        throw ValidationError("dt", "must be positive");
    }
    if (!(opts.horizon >= opts.dt) || !std::isfinite(opts.horizon)) {
        throw ValidationError("horizon", "must be at least one step");
    }
}

}  // namespace

std::vector<double> time_grid(double horizon, double dt) {
    const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
    std::vector<double> t(steps + 1);
    for (std::size_t n = 0; n <= steps; ++n) {
        t[n] = static_cast<double>(n) * dt;
    }
    return t;
}

Eigen::VectorXcd excite_first(std::size_t n_emitters) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_emitters));
    c(0) = 1.0;
    return c;
}

namespace {

// Gauss–Legendre rule on [-1, 1].
struct Legendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const Legendre& legendre() {
    static const Legendre rule = [] {
        using Rule = boost::math::quadrature::gauss<double, 10>;
        Legendre r;
        const auto& x = Rule::abscissa();
        const auto& w = Rule::weights();
        for (std::size_t i = 0; i < x.size(); ++i) {
            r.nodes.push_back(x[i]);
            r.weights.push_back(w[i]);
            if (x[i] != 0.0) {
                r.nodes.push_back(-x[i]);
                r.weights.push_back(w[i]);
            }
        }
        return r;
    }();
    return rule;
}

// Hat-function moments of the integrated kernel K(u) = ∫₀^u h(s) e^{i w₀ s} ds
// for one delay: on [j dt, (j+1) dt], rising[j] = ∫ K(u)(u − j dt)/dt du and
// falling[j] = ∫ K(u)((j+1) dt − u)/dt du.
struct KernelMoments {
    std::vector<cd> rising;
    std::vector<cd> falling;
};

KernelMoments kernel_moments(const DimensionlessModel& model, double transition, double delay, double dt,
                             std::size_t intervals) {
    const Legendre& gl = legendre();
    const double alpha = model.coupling();
    const double nu = model.cutoff();
    auto k = [&](double s) { return kernel_entry(alpha, nu, delay, s) * std::polar(1.0, transition * s); };
    // ∫_a^b k by one Gauss–Legendre panel; k varies on the scale 1/ν ≫ dt.
    auto panel = [&](double a, double b) {
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        cd sum{};
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            sum += gl.weights[q] * k(mid + half * gl.nodes[q]);
        }
        return half * sum;
    };
    KernelMoments out;
    out.rising.resize(intervals);
    out.falling.resize(intervals);
    cd left{};  // K(j dt)
    for (std::size_t j = 0; j < intervals; ++j) {
        const double a = static_cast<double>(j) * dt;
        const double half = 0.5 * dt;
        cd rise{};
        cd fall{};
        for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
            const double x = 0.5 * (1.0 + gl.nodes[q]);
            const cd value = left + panel(a, a + x * dt);
            rise += gl.weights[q] * x * value;
            fall += gl.weights[q] * (1.0 - x) * value;
        }
        out.rising[j] = half * rise;
        out.falling[j] = half * fall;
        left += panel(a, a + dt);
    }
    return out;
}

// Integrated form b(t) = b(0) − ∫₀^t K(t−s) b(s) ds with b = e^{i w₀ t} c, and
// b linear between grid points (product trapezoid). Returns b time-major.
std::vector<cd> product_trapezoid(const DimensionlessModel& model, double transition, const Eigen::VectorXcd& initial,
                                  double dt, std::size_t steps) {
    const std::size_t n = model.size();
    const std::size_t nn = n * n;
    const std::size_t intervals = steps == 0 ? 0 : steps - 1;

    // One moment table per distinct delay.
    const Eigen::MatrixXd& delays = model.delays();
    std::vector<double> distinct;
    std::vector<std::size_t> slot(nn);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) {
            const double d = delays(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
            std::size_t s = 0;
            while (s < distinct.size() && std::abs(distinct[s] - d) > 1e-14 * (1.0 + d)) {
                ++s;
            }
            if (s == distinct.size()) {
                distinct.push_back(d);
            }
            slot[j * n + l] = s;
        }
    }
    std::vector<KernelMoments> moments;
    moments.reserve(distinct.size());
    for (double d : distinct) {
        moments.push_back(kernel_moments(model, transition, d, dt, intervals));
    }

    // b_n (I + A_0) = b_0 − B_{n−1} b_0 − Σ_{m=1}^{n−1} C_{n−m} b_m with
    // A_j = falling[j], B_j = rising[j], C_j = B_{j−1} + A_j. C is stored
    // lag-reversed per delay so the history sum is a contiguous dot product.
    const std::size_t last = steps == 0 ? 0 : steps - 1;
    std::vector<Eigen::VectorXcd> reversed(distinct.size(), Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(steps)));
    for (std::size_t s = 0; s < distinct.size(); ++s) {
        const KernelMoments& km = moments[s];
        for (std::size_t j = 1; j < steps; ++j) {
            reversed[s](static_cast<Eigen::Index>(last - j)) = km.rising[j - 1] + (j < intervals ? km.falling[j] : cd{});
        }
    }
    Eigen::MatrixXcd lhs = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (intervals > 0) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < n; ++l) {
                lhs(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) += moments[slot[j * n + l]].falling[0];
            }
        }
    }
    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(lhs);

    // Emitter-major history.
    Eigen::MatrixXcd history = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(steps), static_cast<Eigen::Index>(n));
    history.row(0) = initial.transpose();
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(n));
    for (std::size_t step = 1; step < steps; ++step) {
        const auto len = static_cast<Eigen::Index>(step - 1);
        const auto offset = static_cast<Eigen::Index>(last - step + 1);
        for (std::size_t j = 0; j < n; ++j) {
            cd acc = initial(static_cast<Eigen::Index>(j));
            for (std::size_t l = 0; l < n; ++l) {
                const std::size_t s = slot[j * n + l];
                const auto col = static_cast<Eigen::Index>(l);
                acc -= moments[s].rising[step - 1] * initial(col);
                if (len > 0) {
                    acc -= reversed[s].segment(offset, len).cwiseProduct(history.col(col).segment(1, len)).sum();
                }
            }
            rhs(static_cast<Eigen::Index>(j)) = acc;
        }
        const Eigen::VectorXcd next = lu.solve(rhs);
        for (std::size_t j = 0; j < n; ++j) {
            const cd value = next(static_cast<Eigen::Index>(j));
            if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
                throw NumericalError("evolve_nonmarkovian: non-finite amplitude at t = " +
                                     std::to_string(static_cast<double>(step) * dt) + "; retry with a smaller dt");
            }
        }
        history.row(static_cast<Eigen::Index>(step)) = next.transpose();
    }

    std::vector<cd> b(steps * n);
    for (std::size_t i = 0; i < steps; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            b[i * n + j] = history(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return b;
}

}  // namespace

AmplitudeTrajectory evolve_nonmarkovian(const DimensionlessModel& model, double transition,
                                        const Eigen::VectorXcd& initial, const IntegratorOptions& opts) {
    check_inputs(model, transition, initial, opts);
    const std::vector<double> times = time_grid(opts.horizon, opts.dt);
    const std::size_t steps = times.size();
    const std::size_t n = model.size();

    std::vector<cd> b = product_trapezoid(model, transition, initial, opts.dt, steps);
    if (opts.extrapolate) {
        // The product trapezoid error expands in even powers of dt.
        const std::vector<cd> fine = product_trapezoid(model, transition, initial, 0.5 * opts.dt, 2 * steps - 1);
        for (std::size_t i = 0; i < steps; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                b[i * n + j] = (4.0 * fine[2 * i * n + j] - b[i * n + j]) / 3.0;
            }
        }
    }

    AmplitudeTrajectory traj;
    traj.method = Method::nonmarkovian;
    traj.times = times;
    traj.amplitudes.resize(static_cast<Eigen::Index>(steps), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < steps; ++i) {
        const cd phase = std::polar(1.0, -transition * times[i]);
        for (std::size_t j = 0; j < n; ++j) {
            traj.amplitudes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = phase * b[i * n + j];
        }
    }
    traj.amplitudes.row(0) = initial.transpose();
    return traj;
}

Eigen::MatrixXd markov_decay(const DimensionlessModel& model, double transition) {
    return kPi * spectral_density(model, transition);
}

Eigen::MatrixXcd markov_generator(const DimensionlessModel& model, double transition) {
    const auto n = static_cast<Eigen::Index>(model.size());
    const cd i(0.0, 1.0);
    return markov_decay(model, transition).cast<cd>() + i * transition * Eigen::MatrixXcd::Identity(n, n) +
           i * lamb_shift(model, transition).cast<cd>();
}

AmplitudeTrajectory evolve_markov(const DimensionlessModel& model, double transition,
                                  const Eigen::VectorXcd& initial, const IntegratorOptions& opts) {
    check_inputs(model, transition, initial, opts);
    const Eigen::MatrixXcd generator = markov_generator(model, transition);
    AmplitudeTrajectory traj;
    traj.method = Method::markov;
    traj.times = time_grid(opts.horizon, opts.dt);
    traj.amplitudes.resize(static_cast<Eigen::Index>(traj.times.size()), initial.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const Eigen::MatrixXcd propagator = (-generator * traj.times[i]).exp();
        traj.amplitudes.row(static_cast<Eigen::Index>(i)) = (propagator * initial).transpose();
    }
    return traj;
}

Eigen::VectorXcd SteadyState::at(double t) const {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(emitters));
    for (const auto& term : terms) {
        c += term.coefficient * std::polar(1.0, -term.pole * t);
    }
    return c;
}

AmplitudeTrajectory SteadyState::sample(const std::vector<double>& times) const {
    AmplitudeTrajectory traj;
    traj.method = Method::steady;
    traj.times = times;
    traj.warnings = warnings;
    traj.amplitudes.resize(static_cast<Eigen::Index>(times.size()), static_cast<Eigen::Index>(emitters));
    for (std::size_t i = 0; i < times.size(); ++i) {
        traj.amplitudes.row(static_cast<Eigen::Index>(i)) = at(times[i]).transpose();
    }
    return traj;
}

SteadyState steady_state(const std::vector<BoundState>& states, const Eigen::VectorXcd& initial) {
    SteadyState ss;
    ss.emitters = static_cast<std::size_t>(initial.size());
    // The tabulated columns are projections of e₁; any other pattern goes through
    // the rank-one channel projector v vᵀ.
    const bool first_only = initial.size() == 0 || initial.tail(initial.size() - 1).isZero(0.0);
    for (const auto& bs : states) {
        SteadyTerm term;
        term.pole = bs.pole;
        if (first_only && bs.steady_column.size() == initial.size()) {
            term.coefficient = bs.weight * initial(0) * bs.steady_column.cast<cd>();
        } else {
            const cd overlap = bs.eigenvector.cast<cd>().dot(initial);
            term.coefficient = bs.weight * overlap * bs.eigenvector.cast<cd>();
        }
        if (bs.marginal) {
            ss.warnings.push_back("bound state at " + std::to_string(bs.pole) +
                                  " is marginal (within 1e-8 of the band edge)");
        }
        ss.terms.push_back(std::move(term));
    }
    return ss;
}

SteadyState steady_state(const DimensionlessModel& model, double transition, const Eigen::VectorXcd& initial) {
    if (static_cast<std::size_t>(initial.size()) != model.size()) {
        throw ValidationError("initial", "length must equal the number of emitters");
    }
    return steady_state(find_bound_states(model, transition), initial);
}

}  // namespace routersim
