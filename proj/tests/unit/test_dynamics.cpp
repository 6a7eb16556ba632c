#include "routersim/dynamics.hpp"
#include "routersim/errors.hpp"
#include "routersim/spectral.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>

using namespace routersim;
using cd = std::complex<double>;

namespace {

DimensionlessModel pair_model() { return reduce(diamond_waveguide(2, 10e-9, 1.0)); }

double max_modulus_change(const AmplitudeTrajectory& coarse, const AmplitudeTrajectory& fine) {
    double worst = 0.0;
    for (std::size_t i = 0; i < coarse.steps(); ++i) {
        for (Eigen::Index j = 0; j < coarse.amplitudes.cols(); ++j) {
            const auto row = static_cast<Eigen::Index>(i);
            const double d = std::abs(std::abs(coarse.amplitudes(row, j)) - std::abs(fine.amplitudes(2 * row, j)));
            worst = std::max(worst, d);
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("uncoupled emitters only pick up the bare phase") {
    const DimensionlessModel m = pair_model().with_coupling(0.0);
    Eigen::VectorXcd c0(2);
    c0 << cd(0.6, 0.1), cd(-0.2, 0.5);
    const AmplitudeTrajectory traj = evolve_nonmarkovian(m, 1.3, c0, {0.01, 20.0});
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.steps(); ++i) {
        const Eigen::VectorXcd expected = std::polar(1.0, -1.3 * traj.times[i]) * c0;
        worst = std::max(worst, (traj.amplitudes.row(static_cast<Eigen::Index>(i)).transpose() - expected).norm());
    }
    CHECK(worst <= 1e-10);

    const AmplitudeTrajectory markov = evolve_markov(m, 1.3, c0, {0.01, 20.0});
    for (std::size_t i = 0; i < markov.steps(); i += 100) {
        const Eigen::VectorXcd expected = std::polar(1.0, -1.3 * markov.times[i]) * c0;
        CHECK((markov.amplitudes.row(static_cast<Eigen::Index>(i)).transpose() - expected).norm() <= 1e-10);
    }
}

TEST_CASE("trajectory starts at the configured amplitudes") {
    const DimensionlessModel m = pair_model();
    Eigen::VectorXcd c0(2);
    c0 << cd(0.3, -0.4), cd(0.1, 0.2);
    const AmplitudeTrajectory traj = evolve_nonmarkovian(m, 1.05, c0, {0.01, 1.0});
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0));
    CHECK(traj.steps() == 101);
    CHECK((traj.amplitudes.row(0).transpose() - c0).norm() == 0.0);
    CHECK(traj.method == Method::nonmarkovian);
}

TEST_CASE("halving the step changes amplitudes by at most 1e-5") {
    const DimensionlessModel m = pair_model();
    const Eigen::VectorXcd c0 = excite_first(2);
    for (double w0 : {1.05, 1.525, 1.8}) {
        const AmplitudeTrajectory coarse = evolve_nonmarkovian(m, w0, c0, {0.01, 60.0});
        const AmplitudeTrajectory fine = evolve_nonmarkovian(m, w0, c0, {0.005, 60.0});
        CAPTURE(w0);
        CHECK(max_modulus_change(coarse, fine) <= 1e-5);
    }
}

TEST_CASE("excitation never exceeds its initial value") {
    testgen::ModelGenerator gen(515);
    for (int trial = 0; trial < 30; ++trial) {
        const DimensionlessModel m = gen.model(3);
        Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m.size()));
        for (Eigen::Index j = 0; j < c0.size(); ++j) {
            c0(j) = cd(gen.uniform(-1, 1), gen.uniform(-1, 1));
        }
        c0 /= c0.norm();
        const AmplitudeTrajectory traj = evolve_nonmarkovian(m, m.transition(), c0, {0.02, 20.0});
        for (std::size_t i = 0; i < traj.steps(); ++i) {
            REQUIRE(traj.population(i) <= c0.squaredNorm() + 1e-8);
        }
    }
}

TEST_CASE("no bound states: the excitation leaks away") {
    const DimensionlessModel m = DimensionlessModel(0.19, 7.0, 1.0, {0.0});
    const AmplitudeTrajectory traj = evolve_nonmarkovian(m, 3.0, excite_first(1), {0.02, 200.0});
    CHECK(find_bound_states(m, 3.0).empty());
    CHECK(std::abs(traj.amplitudes(static_cast<Eigen::Index>(traj.steps() - 1), 0)) <= 1e-2);
}

TEST_CASE("long-time amplitudes follow the bound-state residues") {
    const DimensionlessModel m = pair_model();
    const Eigen::VectorXcd c0 = excite_first(2);
    const AmplitudeTrajectory traj = evolve_nonmarkovian(m, 1.05, c0, {0.01, 200.0});
    const SteadyState ss = steady_state(m, 1.05, c0);
    REQUIRE(ss.terms.size() == 2);
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.steps(); ++i) {
        if (traj.times[i] < 150.0) {
            continue;
        }
        const Eigen::VectorXcd c = traj.amplitudes.row(static_cast<Eigen::Index>(i)).transpose();
        worst = std::max(worst, (c - ss.at(traj.times[i])).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 5e-3);
}

TEST_CASE("integrator input validation") {
    const DimensionlessModel m = pair_model();
    const Eigen::VectorXcd c0 = excite_first(2);
    CHECK_THROWS_AS(evolve_nonmarkovian(m, 1.0, c0, {0.0, 10.0}), ValidationError);
    CHECK_THROWS_AS(evolve_nonmarkovian(m, 1.0, c0, {0.1, 0.05}), ValidationError);
    CHECK_THROWS_AS(evolve_nonmarkovian(m, 1.0, excite_first(3), {0.1, 1.0}), ValidationError);
    CHECK_THROWS_AS(evolve_nonmarkovian(m, -1.0, c0, {0.1, 1.0}), ValidationError);
    Eigen::VectorXcd big = c0;
    big(0) = 1.5;
    CHECK_THROWS_AS(evolve_nonmarkovian(m, 1.0, big, {0.1, 1.0}), ValidationError);
    try {
        evolve_nonmarkovian(m, 1.0, c0, {-1.0, 1.0});
    } catch (const ValidationError& e) {
        CHECK(e.field() == "dt");
    }
}

TEST_CASE("Markov decay matrix is symmetric positive semidefinite") {
    testgen::ModelGenerator gen(88);
    for (int trial = 0; trial < 200; ++trial) {
        const DimensionlessModel m = gen.model();
        const Eigen::MatrixXd gamma = markov_decay(m, m.transition());
        REQUIRE((gamma - gamma.transpose()).cwiseAbs().maxCoeff() == 0.0);
        const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gamma).eigenvalues().minCoeff();
        REQUIRE(lowest >= -1e-12 * gamma.trace());
    }
    const DimensionlessModel m = pair_model();
    CHECK(markov_decay(m, 1.05)(0, 0) == doctest::Approx(kPi * spectral_density(m, 1.05)(0, 0)));
}

TEST_CASE("Markov evolution decays monotonically to zero") {
    const DimensionlessModel m = pair_model();
    const AmplitudeTrajectory traj = evolve_markov(m, 1.05, excite_first(2), {0.5, 500.0});
    for (std::size_t i = 1; i < traj.steps(); ++i) {
        REQUIRE(traj.population(i) <= traj.population(i - 1) + 1e-14);
    }
    CHECK(traj.population(traj.steps() - 1) <= 1e-6);
    CHECK(traj.method == Method::markov);
}

TEST_CASE("steady state term structure") {
    const DimensionlessModel m = pair_model();
    const Eigen::VectorXcd c0 = excite_first(2);

    const SteadyState none = steady_state(m, 1.8, c0);
    CHECK(none.terms.empty());
    CHECK(none.at(37.0).isZero(0.0));

    const SteadyState one = steady_state(m, 1.525, c0);
    REQUIRE(one.terms.size() == 1);
    for (double t : {0.0, 13.0, 170.0}) {
        CHECK(std::abs(one.at(t)(0)) == doctest::Approx(std::abs(one.at(0.0)(0))).epsilon(1e-12));
        CHECK(std::abs(one.at(t)(1)) == doctest::Approx(std::abs(one.at(0.0)(1))).epsilon(1e-12));
    }

    const SteadyState two = steady_state(m, 1.05, c0);
    REQUIRE(two.terms.size() == 2);
    const double period = 2 * kPi / std::abs(two.terms[0].pole - two.terms[1].pole);
    for (double t : {0.0, 7.0, 50.0}) {
        CHECK(std::norm(two.at(t + period)(0)) == doctest::Approx(std::norm(two.at(t)(0))).epsilon(1e-10));
    }
    CHECK(std::abs(std::norm(two.at(0.25 * period)(0)) - std::norm(two.at(0.0)(0))) > 1e-3);
}

TEST_CASE("tabulated steady columns match the channel projector") {
    const DimensionlessModel m = DimensionlessModel::uniform(3, 0.19, 7.0, 1.0, 0.3035);
    const auto states = find_bound_states(m, 1.0);
    REQUIRE(states.size() == 3);
    const SteadyState ss = steady_state(states, excite_first(3));
    for (std::size_t l = 0; l < states.size(); ++l) {
        const Eigen::VectorXd v = states[l].eigenvector;
        const Eigen::VectorXcd expected = states[l].weight * v(0) * v.cast<cd>();
        CHECK((ss.terms[l].coefficient - expected).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("steady state is linear in the initial amplitudes") {
    const DimensionlessModel m = pair_model();
    Eigen::VectorXcd a(2);
    a << 0.6, 0.0;
    Eigen::VectorXcd b(2);
    b << 0.0, cd(0.0, 0.7);
    const Eigen::VectorXcd sum = steady_state(m, 1.05, a).at(11.0) + steady_state(m, 1.05, b).at(11.0);
    CHECK((steady_state(m, 1.05, a + b).at(11.0) - sum).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("time grid covers the horizon") {
    const auto t = time_grid(1.0, 0.1);
    REQUIRE(t.size() == 11);
    CHECK(t.back() == doctest::Approx(1.0));
}
