// params.cpp: validation and reduction of physical parameters

#include "routersim/params.hpp"

#include "routersim/errors.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace routersim {

namespace {

void require_positive(double value, const char* field) {
    if (!std::isfinite(value) || value <= 0.0) {
        throw ValidationError(field, "must be a finite positive number, got " + std::to_string(value));
    }
}

void require_increasing(const std::vector<double>& xs, const char* field) {
    if (xs.empty()) {
        throw ValidationError(field, "at least one emitter is required");
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isfinite(xs[i])) {
            throw ValidationError(field, "entries must be finite");
        }
        if (i > 0 && !(xs[i] > xs[i - 1])) {
            throw ValidationError(field, "entries must be strictly increasing");
        }
    }
}

}  // namespace

void ModelParams::validate() const {
    require_positive(density, "density");
    require_positive(cross_section, "cross_section");
    require_positive(strain_sensitivity, "strain_sensitivity");
    require_positive(group_velocity, "group_velocity");
    require_positive(cutoff, "cutoff");
    require_positive(orbital_splitting, "orbital_splitting");
    require_positive(transition, "transition");
    require_increasing(positions, "positions");
}

DimensionlessModel::DimensionlessModel(double coupling, double cutoff, double transition,
                                       std::vector<double> offsets)
    : coupling_(coupling), cutoff_(cutoff), transition_(transition), offsets_(std::move(offsets)) {
    if (!std::isfinite(coupling_) || coupling_ < 0.0) {
        throw ValidationError("coupling", "must be finite and non-negative");
    }
    require_positive(cutoff_, "cutoff");
    require_positive(transition_, "transition");
    require_increasing(offsets_, "offsets");

    const auto n = static_cast<Eigen::Index>(offsets_.size());
    delays_.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index l = 0; l < n; ++l) {
            delays_(j, l) = std::abs(offsets_[j] - offsets_[l]);
        }
    }
}

DimensionlessModel DimensionlessModel::uniform(std::size_t n_emitters, double coupling, double cutoff,
                                               double transition, double spacing) {
    if (n_emitters == 0) {
        throw ValidationError("n_emitters", "at least one emitter is required");
    }
    if (n_emitters > 1) {
        require_positive(spacing, "spacing");
    }
    std::vector<double> offsets(n_emitters);
    for (std::size_t j = 0; j < n_emitters; ++j) {
        offsets[j] = spacing * static_cast<double>(j);
    }
    return {coupling, cutoff, transition, std::move(offsets)};
}

bool DimensionlessModel::equally_spaced(double tol) const {
    for (std::size_t j = 2; j < offsets_.size(); ++j) {
        const double first = offsets_[1] - offsets_[0];
        if (std::abs((offsets_[j] - offsets_[j - 1]) - first) > tol) {
            return false;
        }
    }
    return true;
}

DimensionlessModel DimensionlessModel::with_transition(double transition) const {
    return {coupling_, cutoff_, transition, offsets_};
}

DimensionlessModel DimensionlessModel::with_coupling(double coupling) const {
    return {coupling, cutoff_, transition_, offsets_};
}

DimensionlessModel DimensionlessModel::with_uniform_spacing(double spacing) const {
    return uniform(size(), coupling_, cutoff_, transition_, spacing);
}

DimensionlessModel reduce(const ModelParams& params) {
    params.validate();
    const double v = params.group_velocity;
    const double d = params.strain_sensitivity;
    const double alpha = d * d * kHbar / (params.density * params.cross_section * v * v * v);

    std::vector<double> offsets(params.positions.size());
    for (std::size_t j = 0; j < offsets.size(); ++j) {
        offsets[j] = params.orbital_splitting * (params.positions[j] - params.positions.front()) / v;
    }
    return {alpha, params.cutoff / params.orbital_splitting, params.transition / params.orbital_splitting,
            std::move(offsets)};
}

double spacing_to_delay(const ModelParams& params, double spacing_m) {
    return params.orbital_splitting * spacing_m / params.group_velocity;
}

ModelParams diamond_waveguide(std::size_t n_emitters, double spacing_m, double transition_in_splittings) {
    ModelParams p;
    p.density = 3500.0;
    p.cross_section = 100e-18;
    p.strain_sensitivity = 2.0 * kPi * 4e15;
    p.group_velocity = 1e4;
    p.orbital_splitting = 2.0 * kPi * 46e9;
    p.cutoff = 7.0 * p.orbital_splitting;
    p.transition = transition_in_splittings * p.orbital_splitting;
    p.positions.resize(n_emitters);
    for (std::size_t j = 0; j < n_emitters; ++j) {
        p.positions[j] = spacing_m * static_cast<double>(j);
    }
    return p;
}

}  // namespace routersim
