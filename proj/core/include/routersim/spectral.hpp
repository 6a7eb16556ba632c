// spectral.hpp: spectral density J(ω), memory kernel h(t) and dispersion integrals
//
// J_jl(ω) = α ω e^{−ω/ν} cos(ω φ_jl) for ω ≥ 0, all in units of Δ.

#pragma once

#include "routersim/params.hpp"

#include <Eigen/Dense>

#include <complex>

namespace routersim {

// Frequency beyond which the spectral weight is treated as zero (e^{−60} suppression).
inline double integration_limit(const DimensionlessModel& model) { return 60.0 * model.cutoff(); }

Eigen::MatrixXd spectral_density(const DimensionlessModel& model, double omega);

// Scalar kernel entry for a pair at delay φ:
//   h(t) = (α/2) [ (1/ν + i(t+φ))^{−2} + (1/ν + i(t−φ))^{−2} ].
std::complex<double> kernel_entry(double coupling, double cutoff, double delay, double t);

// h(t) = ∫₀^∞ J(ω) e^{−iωt} dω, closed form.
Eigen::MatrixXcd memory_kernel(const DimensionlessModel& model, double t);

enum class DispersionOrder { first = 1, second = 2 };

// Entries ∫₀^∞ J_jl(ω)/(ω − ϖ)^order dω for ϖ < 0. The Laplace transform of the
// kernel is recovered as h̃(−iϖ) = −i · dispersion_integral(ϖ, first).
Eigen::MatrixXd dispersion_integral(const DimensionlessModel& model, double varpi, DispersionOrder order);

// Principal value P∫₀^∞ J(ω)/(w₀ − ω) dω, the Markov frequency shift.
Eigen::MatrixXd lamb_shift(const DimensionlessModel& model, double transition);

}  // namespace routersim
