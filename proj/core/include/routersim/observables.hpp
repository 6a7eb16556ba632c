// observables.hpp: concurrence, state-transfer fidelity and steady-state envelopes
//
// Trajectories carry the amplitudes c̄_j of a unit excitation launched on
// emitter 1. The physical initial state is a₀|0⟩₁ + a₁|1⟩₁ with a₀ = a₁ = 1/√2,
// so the excited-state amplitudes of the full state are c_j = a₁ c̄_j.

#pragma once

#include "routersim/dynamics.hpp"
#include "routersim/spectrum.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace routersim {

inline constexpr double kEqualSuperposition = 0.70710678118654752440;

enum class ObservableKind { concurrence, fidelity };

// product:    C = √2 |c_j c_l*| with c = a₁ c̄ (closed form in the amplitudes).
// wootters: C = max(0, λ₁ − λ₂ − λ₃ − λ₄) of the reduced two-emitter state,
//           which for this state class equals 2 |c_j c_l*|.
enum class ConcurrenceConvention { product, wootters };

struct ObservableSeries {
    std::vector<double> times;
    std::vector<double> values;
    ObservableKind kind = ObservableKind::concurrence;
    ConcurrenceConvention convention = ConcurrenceConvention::product;
    std::size_t first = 0;   // 0-based emitter indices
    std::size_t second = 1;
    Method source = Method::nonmarkovian;

    // e.g. "concurrence_product:nonmarkovian" or "fidelity:steady".
    std::string kind_label() const;
    // 1-based, e.g. "1-2".
    std::string pair_label() const;
};

double product_concurrence(std::complex<double> cj, std::complex<double> cl, double excited_amplitude);

// ρ of emitters (j, l) in the basis |gg⟩, |ge⟩, |eg⟩, |ee⟩ (j first) for the pure
// state a₀|G⟩ + a₁(Σ_m c̄_m σ_m† + bath)|G⟩; everything outside the pair is traced out.
Eigen::Matrix4cd pair_density_matrix(std::complex<double> cj, std::complex<double> cl, double ground_amplitude,
                                      double excited_amplitude);

double wootters_concurrence(const Eigen::Matrix4cd& rho);

ObservableSeries concurrence(const AmplitudeTrajectory& traj, std::size_t first, std::size_t second,
                             ConcurrenceConvention convention, double excited_amplitude = kEqualSuperposition);

// F = |1 + c̄|²/4: overlap with the superposition relocated to the target emitter.
double transfer_fidelity(std::complex<double> c_target);

ObservableSeries fidelity(const AmplitudeTrajectory& traj, std::size_t target);

struct Extrema {
    double min = 0.0;
    double max = 0.0;
};

// Extrema of an observable along c(∞, t). `first`/`second` select the pair for
// concurrence; fidelity uses `second` as the target emitter.
Extrema steady_extrema(const SteadyState& steady, ObservableKind kind, std::size_t first, std::size_t second,
                       ConcurrenceConvention convention = ConcurrenceConvention::product);

// Extrema over the samples of a trajectory restricted to [t_from, t_to].
Extrema trajectory_extrema(const AmplitudeTrajectory& traj, ObservableKind kind, std::size_t first,
                           std::size_t second, double t_from, double t_to,
                           ConcurrenceConvention convention = ConcurrenceConvention::product);

struct EnvelopePoint {
    double sweep_value = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::size_t bound_states = 0;
};

struct Envelope {
    ObservableKind kind = ObservableKind::concurrence;
    ConcurrenceConvention convention = ConcurrenceConvention::product;
    std::size_t first = 0;
    std::size_t second = 1;
    Method source = Method::steady;
    std::vector<EnvelopePoint> points;

    // e.g. "concurrence_product_1-2", "fidelity_1-3"; non-steady sources append
    // the method, e.g. "fidelity_1-2:nonmarkovian".
    std::string label() const;
};

Envelope steady_envelope(std::span<const double> sweep_values, const std::function<ScanPoint(double)>& point_at,
                         ObservableKind kind, std::size_t first, std::size_t second,
                         ConcurrenceConvention convention = ConcurrenceConvention::product, unsigned threads = 0);

}  // namespace routersim
