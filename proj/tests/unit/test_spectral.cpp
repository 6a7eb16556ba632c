#include "routersim/errors.hpp"
#include "routersim/quadrature.hpp"
#include "routersim/spectral.hpp"

#include "generators.hpp"
#include "reference.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <vector>

using namespace routersim;

namespace {

const DimensionlessModel kPair = reduce(diamond_waveguide(2, 10e-9, 1.05));

}  // namespace

TEST_CASE("spectral density values") {
    const DimensionlessModel single(0.190, 7.0, 1.0, {0.0});
    CHECK(std::abs(spectral_density(single, 1.0)(0, 0) - 0.1647) <= 1e-4);
    CHECK(spectral_density(single, 1.0)(0, 0) == doctest::Approx(0.190 * std::exp(-1.0 / 7.0)).epsilon(1e-14));
    CHECK(spectral_density(kPair, 0.0).isZero(0.0));
}

TEST_CASE("spectral density with zero delay has identical entries") {
    // Coincident emitters cannot be expressed with strictly increasing offsets;
    // the φ → 0 limit is checked with a vanishing spacing instead.
    const DimensionlessModel close(0.19, 7.0, 1.0, {0.0, 1e-15});
    const Eigen::MatrixXd j = spectral_density(close, 1.3);
    CHECK(j(0, 1) == doctest::Approx(j(0, 0)).epsilon(1e-14));
    CHECK(j(1, 1) == doctest::Approx(j(0, 0)).epsilon(1e-14));
}

TEST_CASE("spectral density rejects negative frequency") {
    CHECK_THROWS_AS(spectral_density(kPair, -1e-3), DomainError);
}

TEST_CASE("spectral density is symmetric positive semidefinite") {
    testgen::ModelGenerator gen(20240611);
    for (int trial = 0; trial < 1000; ++trial) {
        const DimensionlessModel m = gen.model();
        const double omega = gen.uniform(0.0, 8.0 * m.cutoff());
        const Eigen::MatrixXd j = spectral_density(m, omega);
        REQUIRE((j - j.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (Eigen::Index k = 1; k < j.rows(); ++k) {
            REQUIRE(j(k, k) == j(0, 0));
        }
        const double trace = j.trace();
        const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(j).eigenvalues().minCoeff();
        REQUIRE(lowest >= -1e-12 * std::abs(trace));
    }
}

TEST_CASE("kernel closed form agrees with quadrature of its defining integral") {
    for (double t : {0.0, 0.05, 0.289, 0.7, 2.0, 5.0, 12.5, 30.0, 50.0}) {
        const Eigen::MatrixXcd h = memory_kernel(kPair, t);
        for (Eigen::Index j = 0; j < 2; ++j) {
            for (Eigen::Index l = 0; l < 2; ++l) {
                const auto ref =
                    testref::kernel_by_quadrature(kPair.coupling(), kPair.cutoff(), kPair.delays()(j, l), t);
                const std::complex<double> expected(static_cast<double>(ref.real()), static_cast<double>(ref.imag()));
                CAPTURE(t);
                CAPTURE(j);
                CAPTURE(l);
                CHECK(std::abs(h(j, l) - expected) <= 1e-9 * std::abs(expected));
            }
        }
    }
}

TEST_CASE("kernel matches a double-precision Fourier integral of the density") {
    const DimensionlessModel m = DimensionlessModel::uniform(3, 0.19, 7.0, 1.0, 0.3035);
    const double upper = integration_limit(m);
    std::vector<double> pts;
    for (double x = 0.0; x < upper; x += 0.1) {
        pts.push_back(x);
    }
    pts.push_back(upper);
    for (double t : {0.0, 0.6, 3.0, 20.0}) {
        const Eigen::MatrixXcd h = memory_kernel(m, t);
        for (Eigen::Index l = 0; l < 3; ++l) {
            auto re = [&](double w) { return spectral_density(m, w)(0, l) * std::cos(w * t); };
            auto im = [&](double w) { return -spectral_density(m, w)(0, l) * std::sin(w * t); };
            const std::complex<double> value(quad::integrate_panels<double>(re, pts),
                                             quad::integrate_panels<double>(im, pts));
            CHECK(std::abs(value - h(0, l)) <= 1e-6);
        }
    }
}

TEST_CASE("kernel special values") {
    const double a = kPair.coupling();
    const double nu = kPair.cutoff();
    const double x = nu * kPair.delays()(0, 1);
    const Eigen::MatrixXcd h0 = memory_kernel(kPair, 0.0);
    CHECK(h0(0, 0).real() == doctest::Approx(a * nu * nu).epsilon(1e-13));
    CHECK(std::abs(h0(0, 0).imag()) <= 1e-14);
    CHECK(h0(0, 1).real() == doctest::Approx(a * nu * nu * (1 - x * x) / ((1 + x * x) * (1 + x * x))).epsilon(1e-12));
    CHECK(h0(0, 0).real() > 0.0);
    CHECK(memory_kernel(kPair.with_coupling(0.0), 3.0).isZero(0.0));
    CHECK(std::abs(memory_kernel(kPair, 1e4)(0, 0)) < 1e-8);
    CHECK_THROWS_AS(memory_kernel(kPair, -0.1), DomainError);
}

TEST_CASE("dispersion integral near the band edge") {
    const DimensionlessModel single(0.19, 7.0, 1.0, {0.0});
    CHECK(dispersion_integral(single, -1e-8, DispersionOrder::first)(0, 0) ==
          doctest::Approx(0.19 * 7.0).epsilon(1e-6));

    const Eigen::MatrixXd m0 = dispersion_integral(kPair, -1e-9, DispersionOrder::first);
    Eigen::VectorXd mu = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m0).eigenvalues();
    const double a = kPair.coupling();
    const double nu = kPair.cutoff();
    const double x = nu * kPair.delays()(0, 1);
    CHECK(mu(1) == doctest::Approx(a * nu * (1 + 1 / (1 + x * x))).epsilon(1e-6));
    CHECK(mu(0) == doctest::Approx(a * nu * (1 - 1 / (1 + x * x))).epsilon(1e-6));
}

TEST_CASE("dispersion integral matches tanh-sinh quadrature") {
    boost::math::quadrature::tanh_sinh<long double> ts;
    const DimensionlessModel m = DimensionlessModel::uniform(3, 0.23, 5.0, 1.0, 0.41);
    for (double varpi : {-0.003, -0.2, -1.5, -20.0}) {
        for (auto order : {DispersionOrder::first, DispersionOrder::second}) {
            const Eigen::MatrixXd got = dispersion_integral(m, varpi, order);
            for (Eigen::Index l = 0; l < 3; ++l) {
                const long double phi = m.delays()(0, l);
                const int p = static_cast<int>(order);
                auto f = [&](long double w) {
                    return 0.23L * w * std::exp(-w / 5.0L) * std::cos(w * phi) / std::pow(w - varpi, p);
                };
                const long double expected = ts.integrate(f, 0.0L, 300.0L);
                CAPTURE(varpi);
                CHECK(got(0, l) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("order-two integral is the derivative of the order-one integral") {
    testgen::ModelGenerator gen(7);
    for (int trial = 0; trial < 20; ++trial) {
        const DimensionlessModel m = gen.model(3);
        const double varpi = -gen.uniform(0.05, 3.0);
        const double step = 1e-4;
        const Eigen::MatrixXd up = dispersion_integral(m, varpi + step, DispersionOrder::first);
        const Eigen::MatrixXd down = dispersion_integral(m, varpi - step, DispersionOrder::first);
        const Eigen::MatrixXd derivative = (up - down) / (2 * step);
        const Eigen::MatrixXd second = dispersion_integral(m, varpi, DispersionOrder::second);
        CHECK((derivative - second).cwiseAbs().maxCoeff() <= 1e-6);
    }
}

TEST_CASE("dispersion integral diagonal increases with the evaluation point") {
    testgen::ModelGenerator gen(99);
    for (int trial = 0; trial < 50; ++trial) {
        const DimensionlessModel m = gen.model();
        const double a = -gen.uniform(0.01, 5.0);
        const double b = a * gen.uniform(0.1, 0.9);
        const Eigen::MatrixXd ma = dispersion_integral(m, a, DispersionOrder::first);
        const Eigen::MatrixXd mb = dispersion_integral(m, b, DispersionOrder::first);
        for (Eigen::Index j = 0; j < ma.rows(); ++j) {
            CHECK(ma(j, j) < mb(j, j));
        }
    }
}

TEST_CASE("dispersion integral rejects points on the band") {
    CHECK_THROWS_AS(dispersion_integral(kPair, 0.0, DispersionOrder::first), DomainError);
    CHECK_THROWS_AS(dispersion_integral(kPair, 0.3, DispersionOrder::second), DomainError);
}

TEST_CASE("Lamb shift of a single emitter matches the exponential-integral form") {
    for (double w0 : {0.3, 1.0, 1.8, 4.0}) {
        const DimensionlessModel m(0.19, 7.0, w0, {0.0});
        const double nu = 7.0;
        const double expected = -0.19 * nu + 0.19 * w0 * std::exp(-w0 / nu) * boost::math::expint(w0 / nu);
        CHECK(lamb_shift(m, w0)(0, 0) == doctest::Approx(expected).epsilon(1e-8));
    }
    const Eigen::MatrixXd shift = lamb_shift(kPair, 1.05);
    CHECK(shift(0, 1) == doctest::Approx(shift(1, 0)));
}
