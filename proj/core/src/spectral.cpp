// spectral.cpp: spectral density, closed-form kernel and dispersion quadratures

#include "routersim/spectral.hpp"

#include "routersim/errors.hpp"
#include "routersim/quadrature.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace routersim {

namespace {

// Fills a symmetric matrix from a function of the pair delay, evaluating each
// distinct delay once (equally spaced arrays repeat delays along diagonals).
template <typename Matrix, typename Entry>
Matrix fill_by_delay(const DimensionlessModel& model, Entry&& entry) {
    const auto n = static_cast<Eigen::Index>(model.size());
    const Eigen::MatrixXd& phi = model.delays();
    Matrix out(n, n);
    std::vector<std::pair<double, typename Matrix::Scalar>> cache;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index l = j; l < n; ++l) {
            const double delay = phi(j, l);
            typename Matrix::Scalar value{};
            bool found = false;
            for (const auto& [d, v] : cache) {
                if (std::abs(d - delay) <= 1e-13 * (1.0 + delay)) {
                    value = v;
                    found = true;
                    break;
                }
            }
            if (!found) {
                value = entry(delay);
                cache.emplace_back(delay, value);
            }
            out(j, l) = value;
            out(l, j) = value;
        }
    }
    return out;
}

double density_entry(const DimensionlessModel& model, double delay, double omega) {
    return model.coupling() * omega * std::exp(-omega / model.cutoff()) * std::cos(omega * delay);
}

}  // namespace

Eigen::MatrixXd spectral_density(const DimensionlessModel& model, double omega) {
    if (!(omega >= 0.0)) {
        throw DomainError("spectral_density: frequency must be non-negative, got " + std::to_string(omega));
    }
    return fill_by_delay<Eigen::MatrixXd>(model, [&](double delay) { return density_entry(model, delay, omega); });
}

std::complex<double> kernel_entry(double coupling, double cutoff, double delay, double t) {
    const std::complex<double> plus(1.0 / cutoff, t + delay);
    const std::complex<double> minus(1.0 / cutoff, t - delay);
    return 0.5 * coupling * (1.0 / (plus * plus) + 1.0 / (minus * minus));
}

Eigen::MatrixXcd memory_kernel(const DimensionlessModel& model, double t) {
    if (!(t >= 0.0)) {
        throw DomainError("memory_kernel: time must be non-negative, got " + std::to_string(t));
    }
    return fill_by_delay<Eigen::MatrixXcd>(
        model, [&](double delay) { return kernel_entry(model.coupling(), model.cutoff(), delay, t); });
}

Eigen::MatrixXd dispersion_integral(const DimensionlessModel& model, double varpi, DispersionOrder order) {
    if (!(varpi < 0.0)) {
        throw DomainError("dispersion_integral: requires varpi < 0 (below the band edge), got " +
                          std::to_string(varpi));
    }
    const double gap = -varpi;
    const double nu = model.cutoff();
    const int power = static_cast<int>(order);
    // Geometric panels resolve the 1/(ω+|ϖ|)^k structure near the band edge.
    const std::vector<double> pts = quad::geometric_then_uniform(gap, nu, nu, integration_limit(model));

    return fill_by_delay<Eigen::MatrixXd>(model, [&](double delay) {
        auto integrand = [&](double omega) {
            const double denom = omega + gap;
            const double base = density_entry(model, delay, omega) / denom;
            return power == 1 ? base : base / denom;
        };
        double error = 0.0;
        const double value = quad::integrate_panels<double>(integrand, pts, {}, &error);
        if (!std::isfinite(value)) {
            throw NumericalError("dispersion_integral: non-finite quadrature result");
        }
        return value;
    });
}

Eigen::MatrixXd lamb_shift(const DimensionlessModel& model, double transition) {
    if (!(transition > 0.0)) {
        throw DomainError("lamb_shift: transition frequency must be positive");
    }
    const double w0 = transition;
    const double upper = integration_limit(model);
    const double nu = model.cutoff();
    return fill_by_delay<Eigen::MatrixXd>(model, [&](double delay) {
        const double at_pole = density_entry(model, delay, w0);
        // Subtracting J(w₀) over the interval symmetric about w₀ removes the pole.
        auto subtracted = [&](double omega) { return (density_entry(model, delay, omega) - at_pole) / (w0 - omega); };
        auto plain = [&](double omega) { return density_entry(model, delay, omega) / (w0 - omega); };
        double value = quad::integrate<double>(subtracted, 0.0, w0) + quad::integrate<double>(subtracted, w0, 2.0 * w0);
        if (2.0 * w0 < upper) {
            const std::vector<double> pts = quad::geometric_then_uniform(0.0, 2.0 * w0, nu, upper);
            std::vector<double> tail;
            for (double p : pts) {
                if (p >= 2.0 * w0) {
                    tail.push_back(p);
                }
            }
            value += quad::integrate_panels<double>(plain, tail);
        }
        return value;
    });
}

}  // namespace routersim
