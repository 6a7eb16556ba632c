// dynamics.hpp: single-excitation amplitude evolution
//
// Exact route: ċ(t) + i w₀ c(t) + ∫₀^t h(t−τ) c(τ) dτ = 0 with the closed-form
// kernel. Markov route: c(t) = exp[−(Γ + i w₀ + i Λ) t] c(0) with Γ = πJ(w₀) and
// Λ the principal-value shift. Steady route: the bound-state residues
// c(∞, t) = Σ_l Z_l P_l c(0) e^{−iϖ_l t}.

#pragma once

#include "routersim/params.hpp"
#include "routersim/spectrum.hpp"

#include <Eigen/Dense>

#include <string>
#include <string_view>
#include <vector>

namespace routersim {

enum class Method { nonmarkovian, markov, steady, oracle };

std::string_view to_string(Method m);

struct AmplitudeTrajectory {
    std::vector<double> times;
    Eigen::MatrixXcd amplitudes;  // row = time index, column = emitter
    Method method = Method::nonmarkovian;
    std::vector<std::string> warnings;

    std::size_t steps() const { return times.size(); }
    std::size_t emitters() const { return static_cast<std::size_t>(amplitudes.cols()); }
    // Σ_j |c_j(t_i)|²
    double population(std::size_t i) const { return amplitudes.row(static_cast<Eigen::Index>(i)).squaredNorm(); }
};

struct IntegratorOptions {
    double dt = 0.01;
    double horizon = 200.0;
    // Combine runs at dt and dt/2 so the leading O(dt²) error cancels.
    bool extrapolate = true;
};

// Unit excitation on emitter 1, the default initial pattern.
Eigen::VectorXcd excite_first(std::size_t n_emitters);

AmplitudeTrajectory evolve_nonmarkovian(const DimensionlessModel& model, double transition,
                                        const Eigen::VectorXcd& initial, const IntegratorOptions& opts = {});

// Γ = πJ(w₀) and the generator Γ + i w₀ + i Λ of the memoryless equation.
Eigen::MatrixXd markov_decay(const DimensionlessModel& model, double transition);
Eigen::MatrixXcd markov_generator(const DimensionlessModel& model, double transition);

AmplitudeTrajectory evolve_markov(const DimensionlessModel& model, double transition,
                                  const Eigen::VectorXcd& initial, const IntegratorOptions& opts = {});

struct SteadyTerm {
    double pole = 0.0;
    Eigen::VectorXcd coefficient;  // Z_l P_l c(0)
};

struct SteadyState {
    std::vector<SteadyTerm> terms;
    std::vector<std::string> warnings;
    std::size_t emitters = 0;

    Eigen::VectorXcd at(double t) const;
    AmplitudeTrajectory sample(const std::vector<double>& times) const;
};

SteadyState steady_state(const DimensionlessModel& model, double transition, const Eigen::VectorXcd& initial);
SteadyState steady_state(const std::vector<BoundState>& states, const Eigen::VectorXcd& initial);

// Uniform grid 0, dt, ..., covering [0, horizon].
std::vector<double> time_grid(double horizon, double dt);

}  // namespace routersim
