// params.hpp: physical waveguide/emitter parameters and their dimensionless reduction
//
// Every downstream module works in units where the orbital splitting Δ = 1 and
// ħ = 1: frequencies are multiples of Δ, times multiples of 1/Δ.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace routersim {

inline constexpr double kHbar = 1.054571817e-34;  // J·s (CODATA 2018)
inline constexpr double kPi = 3.14159265358979323846;

// SI description of the diamond waveguide and the emitter array.
struct ModelParams {
    double density = 0.0;             // kg/m³
    double cross_section = 0.0;       // m²
    double strain_sensitivity = 0.0;  // rad/s
    double group_velocity = 0.0;      // m/s
    double cutoff = 0.0;              // ω_c, rad/s
    double orbital_splitting = 0.0;   // Δ, rad/s
    double transition = 0.0;          // ω₀, rad/s
    std::vector<double> positions;    // m, strictly increasing

    // Throws ValidationError naming the first offending field.
    void validate() const;
};

class DimensionlessModel {
public:
    DimensionlessModel() = default;

    // `offsets` are emitter positions expressed as delays Δ·x_j/v. Only their
    // differences matter; they must be strictly increasing.
    DimensionlessModel(double coupling, double cutoff, double transition, std::vector<double> offsets);

    // N emitters with equal nearest-neighbour delay `spacing`.
    static DimensionlessModel uniform(std::size_t n_emitters, double coupling, double cutoff,
                                      double transition, double spacing);

    std::size_t size() const noexcept { return offsets_.size(); }
    double coupling() const noexcept { return coupling_; }
    double cutoff() const noexcept { return cutoff_; }
    double transition() const noexcept { return transition_; }
    const std::vector<double>& offsets() const noexcept { return offsets_; }

    // φ_jl = |offset_j − offset_l|; symmetric with zero diagonal.
    const Eigen::MatrixXd& delays() const noexcept { return delays_; }

    // True when all nearest-neighbour delays agree to `tol`.
    bool equally_spaced(double tol = 1e-12) const;

    DimensionlessModel with_transition(double transition) const;
    DimensionlessModel with_coupling(double coupling) const;
    DimensionlessModel with_uniform_spacing(double spacing) const;

private:
    double coupling_ = 0.0;
    double cutoff_ = 1.0;
    double transition_ = 1.0;
    std::vector<double> offsets_{0.0};
    Eigen::MatrixXd delays_ = Eigen::MatrixXd::Zero(1, 1);
};

// α = d²ħ/(ρSv³), ν = ω_c/Δ, w₀ = ω₀/Δ, offsets Δ·(x_j − x_1)/v.
DimensionlessModel reduce(const ModelParams& params);

// Converts a physical spacing (m) into the dimensionless delay Δ·δx/v.
double spacing_to_delay(const ModelParams& params, double spacing_m);

// Diamond waveguide with SiV emitters: ρ = 3500 kg/m³, S = 100 nm², d/2π = 4 PHz,
// v = 10⁴ m/s, Δ/2π = 46 GHz, ω_c = 7Δ; N emitters spaced `spacing_m` apart.
ModelParams diamond_waveguide(std::size_t n_emitters, double spacing_m, double transition_in_splittings);

}  // namespace routersim
