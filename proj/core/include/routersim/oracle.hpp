// oracle.hpp: brute-force discretized-bath reference
//
// The phonon continuum is replaced by M modes on a uniform grid over
// [0, Ω_max]. Each frequency bin carries a standing-wave pair (cos, sin) with
// real couplings g_j = √(J₀₀(ω_k) w_k)·{cos, sin}(ω_k φ_j), so that
// Σ_pair g_j g_l = J_jl(ω_k) w_k; w_k is the midpoint weight δω with an end
// correction at ω = 0. Emitters sharing one position need only the cos mode. The (N + modes)-dimensional single-excitation
// Hamiltonian is diagonalized densely; nothing here reuses the Laplace-domain
// machinery of the spectrum or dynamics modules.

#pragma once

#include "routersim/dynamics.hpp"
#include "routersim/params.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace routersim {

struct DiscretizedSystem {
    std::size_t emitters = 0;
    std::size_t bins = 0;
    double transition = 0.0;
    double bin_width = 0.0;
    Eigen::VectorXd bin_weights;       // quadrature weight per bin
    Eigen::VectorXd mode_frequencies;  // one entry per bath mode
    Eigen::MatrixXd couplings;         // modes × emitters
    std::vector<std::string> warnings;

    std::size_t modes() const { return static_cast<std::size_t>(mode_frequencies.size()); }
    std::size_t dimension() const { return emitters + modes(); }
    // Emitters first, then bath modes.
    Eigen::MatrixXd hamiltonian() const;
    // Σ over the modes of one bin of g_j g_l / w_bin; equals J(ω_bin).
    Eigen::MatrixXd reconstructed_density(std::size_t bin) const;
    // 2π/δω, the revival time of the finite bath.
    double recurrence_time() const;
};

inline constexpr std::size_t kDefaultOracleModes = 4000;
// Ω_max = 20ν: the truncated weight is 4e-8 and the recurrence time 2πM/(2Ω_max)
// stays well beyond tΔ = 50 at the default mode count.
inline constexpr double kDefaultCutoffMultiple = 20.0;

// `modes` is the bath dimension M; it must be even unless all emitters coincide.
DiscretizedSystem build_discretized(const DimensionlessModel& model, double transition, std::size_t modes,
                                    double omega_max);
DiscretizedSystem build_discretized(const DimensionlessModel& model, double transition,
                                    std::size_t modes = kDefaultOracleModes);

struct OracleSpectrum {
    std::size_t emitters = 0;
    Eigen::VectorXd energies;      // ascending
    Eigen::MatrixXd emitter_rows;  // first `emitters` rows of the eigenvector matrix
    Eigen::MatrixXd vectors;       // full eigenvectors (empty unless requested)

    // Eigenvalues strictly below the band edge ω = 0.
    std::vector<double> below_band(double margin = 0.0) const;
};

OracleSpectrum diagonalize(const DiscretizedSystem& sys, bool keep_vectors = false);
// Eigenvalues only.
Eigen::VectorXd oracle_energies(const DiscretizedSystem& sys);

AmplitudeTrajectory oracle_evolve(const DiscretizedSystem& sys, const OracleSpectrum& spectrum,
                                  const Eigen::VectorXcd& initial, const IntegratorOptions& opts);
AmplitudeTrajectory oracle_evolve(const DiscretizedSystem& sys, const Eigen::VectorXcd& initial,
                                  const IntegratorOptions& opts);

// Full emitter+bath state at time t; requires spectrum.vectors.
Eigen::VectorXcd oracle_state(const OracleSpectrum& spectrum, const Eigen::VectorXcd& initial, double t);

}  // namespace routersim
