// oracle.cpp: discretized bath, dense eigensolve and spectral evolution

#include "routersim/oracle.hpp"

#include "routersim/errors.hpp"

#include <lapacke.h>

#include <cmath>
#include <complex>
#include <string>

namespace routersim {

using cd = std::complex<double>;

Eigen::MatrixXd DiscretizedSystem::hamiltonian() const {
    const auto n = static_cast<Eigen::Index>(emitters);
    const auto m = static_cast<Eigen::Index>(modes());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + m, n + m);
    h.topLeftCorner(n, n).diagonal().setConstant(transition);
    h.bottomRightCorner(m, m).diagonal() = mode_frequencies;
    h.bottomLeftCorner(m, n) = couplings;
    h.topRightCorner(n, m) = couplings.transpose();
    return h;
}

Eigen::MatrixXd DiscretizedSystem::reconstructed_density(std::size_t bin) const {
    const std::size_t per_bin = modes() / bins;
    const auto first = static_cast<Eigen::Index>(bin * per_bin);
    const auto block = couplings.middleRows(first, static_cast<Eigen::Index>(per_bin));
    return block.transpose() * block / bin_weights(static_cast<Eigen::Index>(bin));
}

double DiscretizedSystem::recurrence_time() const { return 2.0 * kPi / bin_width; }

DiscretizedSystem build_discretized(const DimensionlessModel& model, double transition, std::size_t modes,
                                    double omega_max) {
    if (modes < 100) {
        throw ValidationError("oracle_modes", "at least 100 bath modes are required");
    }
    if (!(omega_max > 0.0)) {
        throw ValidationError("omega_max", "must be positive");
    }
    if (!(transition > 0.0)) {
        throw ValidationError("transition", "must be positive");
    }
    // A single emitter (or all emitters at one point) never couples to the sin quadrature.
    bool needs_sin = false;
    for (double x : model.offsets()) {
        needs_sin = needs_sin || x != 0.0;
    }
    const std::size_t per_bin = needs_sin ? 2 : 1;
    if (modes % per_bin != 0) {
        throw ValidationError("oracle_modes", "must be even when emitters are spatially separated");
    }
    const std::size_t bins = modes / per_bin;

    DiscretizedSystem sys;
    sys.emitters = model.size();
    sys.bins = bins;
    sys.transition = transition;
    sys.bin_width = omega_max / static_cast<double>(bins);

    const double nu = model.cutoff();
    const double truncated = (omega_max / nu + 1.0) * std::exp(-omega_max / nu);
    if (truncated > 1e-6) {
        sys.warnings.push_back("omega_max truncates a fraction " + std::to_string(truncated) +
                               " of the spectral weight");
    }

    const auto n = static_cast<Eigen::Index>(sys.emitters);
    sys.bin_weights.resize(static_cast<Eigen::Index>(bins));
    sys.mode_frequencies.resize(static_cast<Eigen::Index>(bins * per_bin));
    sys.couplings.resize(static_cast<Eigen::Index>(bins * per_bin), n);
    for (std::size_t k = 0; k < bins; ++k) {
        const double omega = (static_cast<double>(k) + 0.5) * sys.bin_width;
        const double j00 = model.coupling() * omega * std::exp(-omega / nu);
        // Midpoint weights plus the O(δω²) end correction at ω = 0, with f'(0)
        // taken from the first three bins; all weights stay positive.
        static constexpr double kEndCorrection[3] = {1.0 + 2.0 / 24.0, 1.0 - 3.0 / 24.0, 1.0 + 1.0 / 24.0};
        const double weight = sys.bin_width * (k < 3 ? kEndCorrection[k] : 1.0);
        sys.bin_weights(static_cast<Eigen::Index>(k)) = weight;
        const double amplitude = std::sqrt(j00 * weight);
        for (std::size_t q = 0; q < per_bin; ++q) {
            const auto row = static_cast<Eigen::Index>(k * per_bin + q);
            sys.mode_frequencies(row) = omega;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double phase = omega * model.offsets()[static_cast<std::size_t>(j)];
                sys.couplings(row, j) = amplitude * (q == 0 ? std::cos(phase) : std::sin(phase));
            }
        }
    }
    return sys;
}

DiscretizedSystem build_discretized(const DimensionlessModel& model, double transition, std::size_t modes) {
    return build_discretized(model, transition, modes, kDefaultCutoffMultiple * model.cutoff());
}

std::vector<double> OracleSpectrum::below_band(double margin) const {
    std::vector<double> out;
    for (Eigen::Index i = 0; i < energies.size() && energies(i) < -margin; ++i) {
        out.push_back(energies(i));
    }
    return out;
}

namespace {

OracleSpectrum run_syevd(const DiscretizedSystem& sys, char job, bool keep_vectors) {
    Eigen::MatrixXd a = sys.hamiltonian();
    const auto dim = static_cast<lapack_int>(a.rows());
    OracleSpectrum out;
    out.emitters = sys.emitters;
    out.energies.resize(dim);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, job, 'U', dim, a.data(), dim, out.energies.data());
    if (info != 0) {
        throw NumericalError("oracle: dsyevd failed with info = " + std::to_string(info));
    }
    if (job == 'V') {
        out.emitter_rows = a.topRows(static_cast<Eigen::Index>(sys.emitters));
        if (keep_vectors) {
            out.vectors = std::move(a);
        }
    }
    return out;
}

}  // namespace

OracleSpectrum diagonalize(const DiscretizedSystem& sys, bool keep_vectors) {
    return run_syevd(sys, 'V', keep_vectors);
}

Eigen::VectorXd oracle_energies(const DiscretizedSystem& sys) { return run_syevd(sys, 'N', false).energies; }

AmplitudeTrajectory oracle_evolve(const DiscretizedSystem& sys, const OracleSpectrum& spectrum,
                                  const Eigen::VectorXcd& initial, const IntegratorOptions& opts) {
    if (static_cast<std::size_t>(initial.size()) != sys.emitters) {
        throw ValidationError("initial", "length must equal the number of emitters");
    }
    if (!(opts.dt > 0.0) || !(opts.horizon >= opts.dt)) {
        throw ValidationError("dt", "need 0 < dt <= horizon");
    }
    AmplitudeTrajectory traj;
    traj.method = Method::oracle;
    traj.warnings = sys.warnings;
    if (opts.horizon > sys.recurrence_time()) {
        traj.warnings.push_back("horizon " + std::to_string(opts.horizon) + " exceeds the bath recurrence time " +
                                std::to_string(sys.recurrence_time()));
    }
    traj.times = time_grid(opts.horizon, opts.dt);
    const Eigen::MatrixXcd rows = spectrum.emitter_rows.cast<cd>();
    const Eigen::VectorXcd weights = rows.transpose() * initial;  // overlaps with eigenstates
    const auto dim = spectrum.energies.size();
    traj.amplitudes.resize(static_cast<Eigen::Index>(traj.times.size()), initial.size());
    Eigen::VectorXcd evolved(dim);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const double t = traj.times[i];
        for (Eigen::Index n = 0; n < dim; ++n) {
            evolved(n) = weights(n) * std::polar(1.0, -spectrum.energies(n) * t);
        }
        traj.amplitudes.row(static_cast<Eigen::Index>(i)) = (rows * evolved).transpose();
    }
    return traj;
}

AmplitudeTrajectory oracle_evolve(const DiscretizedSystem& sys, const Eigen::VectorXcd& initial,
                                  const IntegratorOptions& opts) {
    return oracle_evolve(sys, diagonalize(sys), initial, opts);
}

Eigen::VectorXcd oracle_state(const OracleSpectrum& spectrum, const Eigen::VectorXcd& initial, double t) {
    if (spectrum.vectors.size() == 0) {
        throw ValidationError("spectrum", "full eigenvectors were not retained");
    }
    const Eigen::MatrixXcd u = spectrum.vectors.cast<cd>();
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(u.rows());
    full.head(initial.size()) = initial;
    Eigen::VectorXcd coeff = u.transpose() * full;
    for (Eigen::Index n = 0; n < coeff.size(); ++n) {
        coeff(n) *= std::polar(1.0, -spectrum.energies(n) * t);
    }
    return u * coeff;
}

}  // namespace routersim
