// spectrum.hpp: bound-state poles below the phonon band and spectrum scans
//
// A pole ϖ < 0 of the Laplace-domain amplitude solves Y_l(ϖ) = ϖ where
// Y_l(ϖ) = w₀ − μ_l(ϖ) and μ_l are the eigenvalues of the dispersion matrix
// M(ϖ) = ∫ J(ω)/(ω − ϖ) dω. M grows with ϖ in the matrix sense, so each sorted
// μ_l is non-decreasing and Y_l(ϖ) − ϖ has at most one root per channel.

#pragma once

#include "routersim/params.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace routersim {

// ϖ used in place of the band edge 0⁻, where the order-2 integral diverges.
inline constexpr double kBandEdge = -1e-9;
// Poles closer than this to the band edge are reported as marginal.
inline constexpr double kMarginalPole = 1e-8;
// Required |Y_l(ϖ_b) − ϖ_b| for a reported pole.
inline constexpr double kRootTolerance = 1e-10;

// Eigen-split of M(ϖ): values descending, unit eigenvectors as columns.
struct ChannelDecomposition {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

ChannelDecomposition channel_decomposition(const Eigen::MatrixXd& dispersion);
ChannelDecomposition channel_decomposition(const DimensionlessModel& model, double varpi);

// Y_l(ϖ) = w₀ − μ_l(ϖ), channels ordered by descending μ_l.
std::vector<double> channel_functions(const DimensionlessModel& model, double transition, double varpi);

// Closed-form channel values and steady columns for mirror-symmetric arrays
// (N = 2, or N = 3 equally spaced). `values` are the channel eigenvalues of M in
// the order (symmetric, antisymmetric) for N = 2 and (antisymmetric, lower
// symmetric, upper symmetric) for N = 3; column l of `steady_columns` is the
// excitation-on-emitter-1 projection onto channel l. Empty outside those cases
// or where the N = 3 forms degenerate (8M₀₁² + M₀₂² ≈ 0).
struct AnalyticChannels {
    Eigen::VectorXd values;
    Eigen::MatrixXd steady_columns;
};

std::optional<AnalyticChannels> analytic_channels(const DimensionlessModel& model,
                                                  const Eigen::MatrixXd& dispersion);

struct BoundState {
    double pole = 0.0;                  // ϖ_b < 0
    std::size_t channel = 0;            // index into the descending channel list
    Eigen::VectorXd eigenvector;        // unit channel vector of M(ϖ_b)
    std::complex<double> weight;        // Z_l = [1 + v·M₂(ϖ_b)·v]^{−1}
    Eigen::VectorXd steady_column;      // P_l e₁: channel-l projection of emitter 1
    double residual = 0.0;              // |Y_l(ϖ_b) − ϖ_b|
    bool marginal = false;              // |ϖ_b| < kMarginalPole
};

// All bound states, sorted by ascending pole.
std::vector<BoundState> find_bound_states(const DimensionlessModel& model, double transition);

// μ_l(0⁻) for every channel, descending: channel l binds iff w₀ < μ_l(0⁻).
std::vector<double> bound_state_thresholds(const DimensionlessModel& model);

struct ScanPoint {
    DimensionlessModel model;
    double transition = 1.0;
};

struct SpectrumScan {
    std::vector<double> sweep_values;
    std::vector<std::vector<BoundState>> states;  // per sweep value, ascending pole
    std::vector<std::vector<int>> branches;       // branch id of each state across the sweep

    std::size_t count(std::size_t i) const { return states.at(i).size(); }
};

SpectrumScan scan_spectrum(std::span<const double> sweep_values,
                           const std::function<ScanPoint(double)>& point_at, unsigned threads = 0);

// Sweep w₀ at fixed geometry.
SpectrumScan scan_transition(const DimensionlessModel& model, std::span<const double> transitions,
                             unsigned threads = 0);

// Sweep the (dimensionless) uniform nearest-neighbour delay at fixed w₀.
SpectrumScan scan_spacing(const DimensionlessModel& model, double transition, std::span<const double> delays,
                          unsigned threads = 0);

}  // namespace routersim
