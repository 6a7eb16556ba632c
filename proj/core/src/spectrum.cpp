// spectrum.cpp: channel decomposition, pole search and sweeps

#include "routersim/spectrum.hpp"

#include "routersim/errors.hpp"
#include "routersim/parallel.hpp"
#include "routersim/spectral.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace routersim {

namespace {

// Deterministic sign: first non-negligible component positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-10) {
            if (v(i) < 0.0) {
                v = -v;
            }
            return;
        }
    }
}

Eigen::Index nearest_column(const Eigen::VectorXd& values, double target) {
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < values.size(); ++i) {
        if (std::abs(values(i) - target) < std::abs(values(best) - target)) {
            best = i;
        }
    }
    return best;
}

}  // namespace

ChannelDecomposition channel_decomposition(const Eigen::MatrixXd& dispersion) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dispersion);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("channel_decomposition: eigensolver failed");
    }
    const auto n = dispersion.rows();
    ChannelDecomposition out;
    out.values = solver.eigenvalues().reverse();
    out.vectors = solver.eigenvectors().rowwise().reverse();
    for (Eigen::Index l = 0; l < n; ++l) {
        fix_sign(out.vectors.col(l));
    }
    return out;
}

ChannelDecomposition channel_decomposition(const DimensionlessModel& model, double varpi) {
    return channel_decomposition(dispersion_integral(model, varpi, DispersionOrder::first));
}

std::vector<double> channel_functions(const DimensionlessModel& model, double transition, double varpi) {
    const ChannelDecomposition ch = channel_decomposition(model, varpi);
    std::vector<double> y(model.size());
    for (std::size_t l = 0; l < y.size(); ++l) {
        y[l] = transition - ch.values(static_cast<Eigen::Index>(l));
    }
    return y;
}

std::optional<AnalyticChannels> analytic_channels(const DimensionlessModel& model,
                                                  const Eigen::MatrixXd& m) {
    AnalyticChannels out;
    if (model.size() == 2) {
        out.values.resize(2);
        out.values << m(0, 0) + m(0, 1), m(0, 0) - m(0, 1);
        out.steady_columns.resize(2, 2);
        out.steady_columns << 0.5, 0.5, 0.5, -0.5;
        return out;
    }
    if (model.size() == 3 && model.equally_spaced()) {
        const double m0 = m(0, 0);
        const double m1 = m(0, 1);
        const double m2 = m(0, 2);
        const double f = std::sqrt(8.0 * m1 * m1 + m2 * m2);
        if (f <= 1e-12 * (1.0 + std::abs(m0))) {
            return std::nullopt;
        }
        const double r = m2 / f;
        const double s = m1 / f;
        out.values.resize(3);
        out.values << m0 - m2, m0 + 0.5 * (m2 - f), m0 + 0.5 * (m2 + f);
        out.steady_columns.resize(3, 3);
        out.steady_columns << 0.5, (1.0 - r) / 4.0, (1.0 + r) / 4.0,
                              0.0, -s, s,
                              -0.5, (1.0 - r) / 4.0, (1.0 + r) / 4.0;
        return out;
    }
    return std::nullopt;
}

std::vector<double> bound_state_thresholds(const DimensionlessModel& model) {
    const ChannelDecomposition ch = channel_decomposition(model, kBandEdge);
    return {ch.values.data(), ch.values.data() + ch.values.size()};
}

std::vector<BoundState> find_bound_states(const DimensionlessModel& model, double transition) {
    if (!(transition > 0.0)) {
        throw DomainError("find_bound_states: transition frequency must be positive");
    }
    const double w0 = transition;
    const ChannelDecomposition edge = channel_decomposition(model, kBandEdge);
    const double bracket_floor = -1e3 * (1.0 + model.coupling() * model.cutoff() * model.cutoff());

    std::vector<BoundState> states;
    for (Eigen::Index l = 0; l < edge.values.size(); ++l) {
        auto excess = [&](double varpi) {
            return w0 - channel_decomposition(model, varpi).values(l) - varpi;
        };
        const double f_hi = w0 - edge.values(l) - kBandEdge;
        if (!(f_hi < 0.0)) {
            continue;
        }
        // μ_l is non-decreasing, so Y_l(ϖ) − ϖ ≥ w₀ − μ_l(0⁻) − ϖ: the root is ≥ w₀ − μ_l(0⁻).
        double lo = std::min(w0 - edge.values(l), kBandEdge) * (1.0 + 1e-12) - 1e-12;
        double f_lo = excess(lo);
        while (!(f_lo > 0.0)) {
            if (f_lo == 0.0) {
                break;
            }
            lo = 2.0 * lo - 1.0;
            if (lo < bracket_floor) {
                throw NumericalError("find_bound_states: no root bracket for channel " + std::to_string(l));
            }
            f_lo = excess(lo);
        }

        double root = lo;
        if (f_lo != 0.0) {
            std::uintmax_t iterations = 200;
            auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(1.0, std::abs(a)); };
            const auto [a, b] =
                boost::math::tools::toms748_solve(excess, lo, kBandEdge, f_lo, f_hi, tol, iterations);
            const double fa = excess(a);
            const double fb = excess(b);
            root = std::abs(fa) <= std::abs(fb) ? a : b;
        }

        const Eigen::MatrixXd m1 = dispersion_integral(model, root, DispersionOrder::first);
        const Eigen::MatrixXd m2 = dispersion_integral(model, root, DispersionOrder::second);
        const ChannelDecomposition ch = channel_decomposition(m1);

        BoundState bs;
        bs.pole = root;
        bs.channel = static_cast<std::size_t>(l);
        bs.eigenvector = ch.vectors.col(l);
        bs.residual = std::abs(w0 - ch.values(l) - root);
        bs.weight = 1.0 / (1.0 + bs.eigenvector.dot(m2 * bs.eigenvector));
        bs.marginal = std::abs(root) < kMarginalPole;
        if (auto analytic = analytic_channels(model, m1)) {
            bs.steady_column = analytic->steady_columns.col(nearest_column(analytic->values, ch.values(l)));
        } else {
            bs.steady_column = bs.eigenvector * bs.eigenvector(0);
        }
        states.push_back(std::move(bs));
    }
    std::sort(states.begin(), states.end(), [](const BoundState& a, const BoundState& b) { return a.pole < b.pole; });
    return states;
}

SpectrumScan scan_spectrum(std::span<const double> sweep_values,
                           const std::function<ScanPoint(double)>& point_at, unsigned threads) {
    SpectrumScan scan;
    scan.sweep_values.assign(sweep_values.begin(), sweep_values.end());
    scan.states.resize(sweep_values.size());
    parallel_for(
        sweep_values.size(),
        [&](std::size_t i) {
            const ScanPoint p = point_at(sweep_values[i]);
            scan.states[i] = find_bound_states(p.model, p.transition);
        },
        threads);

    // Sequential branch continuation by nearest-pole matching.
    scan.branches.resize(scan.states.size());
    int next_branch = 0;
    for (std::size_t i = 0; i < scan.states.size(); ++i) {
        const auto& cur = scan.states[i];
        auto& ids = scan.branches[i];
        ids.assign(cur.size(), -1);
        if (i > 0) {
            const auto& prev = scan.states[i - 1];
            const auto& prev_ids = scan.branches[i - 1];
            std::vector<bool> taken(prev.size(), false);
            struct Candidate {
                double distance;
                std::size_t cur, prev;
            };
            std::vector<Candidate> pairs;
            for (std::size_t a = 0; a < cur.size(); ++a) {
                for (std::size_t b = 0; b < prev.size(); ++b) {
                    pairs.push_back({std::abs(cur[a].pole - prev[b].pole), a, b});
                }
            }
            std::stable_sort(pairs.begin(), pairs.end(),
                             [](const Candidate& x, const Candidate& y) { return x.distance < y.distance; });
            for (const auto& c : pairs) {
                if (ids[c.cur] < 0 && !taken[c.prev]) {
                    ids[c.cur] = prev_ids[c.prev];
                    taken[c.prev] = true;
                }
            }
        }
        for (auto& id : ids) {
            if (id < 0) {
                id = next_branch++;
            }
        }
    }
    return scan;
}

SpectrumScan scan_transition(const DimensionlessModel& model, std::span<const double> transitions, unsigned threads) {
    return scan_spectrum(
        transitions, [&](double w0) { return ScanPoint{model, w0}; }, threads);
}

SpectrumScan scan_spacing(const DimensionlessModel& model, double transition, std::span<const double> delays,
                          unsigned threads) {
    return scan_spectrum(
        delays, [&](double delay) { return ScanPoint{model.with_uniform_spacing(delay), transition}; }, threads);
}

}  // namespace routersim
