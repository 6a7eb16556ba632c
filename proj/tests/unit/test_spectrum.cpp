#include "routersim/errors.hpp"
#include "routersim/spectral.hpp"
#include "routersim/spectrum.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace routersim;

namespace {

DimensionlessModel pair_model() { return reduce(diamond_waveguide(2, 10e-9, 1.0)); }
DimensionlessModel triple_model() { return reduce(diamond_waveguide(3, 10.5e-9, 1.0)); }

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

}  // namespace

TEST_CASE("bound-state counts for the two-emitter waveguide") {
    const DimensionlessModel m = pair_model();
    CHECK(find_bound_states(m, 1.8).empty());
    CHECK(find_bound_states(m, 1.525).size() == 1);
    CHECK(find_bound_states(m, 1.05).size() == 2);
}

TEST_CASE("three emitters at 10.5 nm host three bound states at w0 = 1") {
    const auto states = find_bound_states(triple_model(), 1.0);
    REQUIRE(states.size() == 3);
    CHECK(states[0].pole < states[1].pole);
    CHECK(states[1].pole < states[2].pole);
}

TEST_CASE("thresholds match the band-edge closed form") {
    const DimensionlessModel m = pair_model();
    const std::vector<double> th = bound_state_thresholds(m);
    REQUIRE(th.size() == 2);
    const double a = m.coupling();
    const double nu = m.cutoff();
    const double x = nu * m.delays()(0, 1);
    CHECK(th[0] == doctest::Approx(a * nu * (1 + 1 / (1 + x * x))).epsilon(1e-6));
    CHECK(th[1] == doctest::Approx(a * nu * (1 - 1 / (1 + x * x))).epsilon(1e-6));
    CHECK(std::abs(th[0] - 1.58) <= 0.02);
    CHECK(std::abs(th[1] - 1.07) <= 0.02);
}

TEST_CASE("coincident emitters leave the dark channel unbound") {
    const DimensionlessModel m(0.19, 7.0, 1.0, {0.0, 1e-12});
    const std::vector<double> th = bound_state_thresholds(m);
    CHECK(th[0] == doctest::Approx(2 * 0.19 * 7.0).epsilon(1e-6));
    CHECK(std::abs(th[1]) <= 1e-8);
}

TEST_CASE("channel functions") {
    const DimensionlessModel m = pair_model();
    const std::vector<double> y0 = channel_functions(m.with_coupling(0.0), 1.3, -0.4);
    for (double y : y0) {
        CHECK(y == 1.3);
    }
    const std::vector<double> edge = channel_functions(m, 1.2, kBandEdge);
    const std::vector<double> th = bound_state_thresholds(m);
    CHECK(edge[0] == doctest::Approx(1.2 - th[0]).epsilon(1e-12));
    CHECK(edge[1] == doctest::Approx(1.2 - th[1]).epsilon(1e-12));
    CHECK_THROWS_AS(channel_functions(m, 1.2, 0.0), DomainError);
}

TEST_CASE("channel functions decrease along the gap") {
    testgen::ModelGenerator gen(31337);
    for (int trial = 0; trial < 1000; ++trial) {
        const DimensionlessModel m = gen.model();
        const std::vector<double> deep = channel_functions(m, m.transition(), -2.0);
        const std::vector<double> shallow = channel_functions(m, m.transition(), -1.0);
        for (std::size_t l = 0; l < deep.size(); ++l) {
            REQUIRE(deep[l] > shallow[l]);
        }
    }
}

TEST_CASE("reported poles solve the channel equation") {
    testgen::ModelGenerator gen(4242);
    for (int trial = 0; trial < 100; ++trial) {
        const DimensionlessModel m = gen.model();
        for (const BoundState& bs : find_bound_states(m, m.transition())) {
            CHECK(bs.pole < 0.0);
            CHECK(bs.residual <= kRootTolerance);
            const std::vector<double> y = channel_functions(m, m.transition(), bs.pole);
            CHECK(std::abs(y[bs.channel] - bs.pole) <= kRootTolerance);
            CHECK(bs.eigenvector.norm() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(bs.weight.real() > 0.0);
            CHECK(bs.weight.real() <= 1.0);
            CHECK(std::abs(bs.weight.imag()) <= 1e-8);
        }
    }
}

TEST_CASE("residue weight is the channel projection of the order-two integral") {
    const DimensionlessModel m = triple_model();
    for (const BoundState& bs : find_bound_states(m, 1.0)) {
        const Eigen::MatrixXd m2 = dispersion_integral(m, bs.pole, DispersionOrder::second);
        const double z = 1.0 / (1.0 + bs.eigenvector.dot(m2 * bs.eigenvector));
        CHECK(bs.weight.real() == doctest::Approx(z).epsilon(1e-12));
    }
}

TEST_CASE("weak coupling sends Z to one and the pole to the bare level") {
    const DimensionlessModel m = DimensionlessModel(0.19, 7.0, 1.0, {0.0});
    double previous = 0.0;
    for (double alpha : {1e-1, 1e-2, 1e-3, 1e-4}) {
        // Keep the level just below the shifted edge so one bound state survives.
        const double w0 = 0.5 * alpha * 7.0;
        const auto states = find_bound_states(m.with_coupling(alpha), w0);
        REQUIRE(states.size() == 1);
        const double z = states[0].weight.real();
        CHECK(z > previous);
        CHECK(std::abs(states[0].pole - w0) <= 7.0 * alpha);
        previous = z;
    }
    CHECK(previous > 0.99);

    const auto far = find_bound_states(m.with_coupling(1e-6), 1.0);
    CHECK(far.empty());
}

TEST_CASE("three-emitter closed forms agree with the numerical eigen-split") {
    testgen::ModelGenerator gen(2718);
    for (int trial = 0; trial < 30; ++trial) {
        const DimensionlessModel m =
            DimensionlessModel::uniform(3, gen.uniform(0.05, 0.3), gen.uniform(3.0, 10.0), 1.0, gen.uniform(0.05, 1.0));
        const double varpi = -gen.uniform(0.01, 2.0);
        const Eigen::MatrixXd disp = dispersion_integral(m, varpi, DispersionOrder::first);
        const auto analytic = analytic_channels(m, disp);
        REQUIRE(analytic.has_value());
        const ChannelDecomposition numeric = channel_decomposition(disp);

        std::vector<double> a(analytic->values.data(), analytic->values.data() + 3);
        std::vector<double> b(numeric.values.data(), numeric.values.data() + 3);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        for (int l = 0; l < 3; ++l) {
            CHECK(std::abs(a[l] - b[l]) <= 1e-9);
        }
        // Each closed-form column equals the numerical projector applied to e₁.
        for (int l = 0; l < 3; ++l) {
            const double value = analytic->values(l);
            Eigen::Index k = 0;
            (numeric.values.array() - value).abs().minCoeff(&k);
            const Eigen::VectorXd v = numeric.vectors.col(k);
            const Eigen::VectorXd projected = v * v(0);
            CHECK((projected - analytic->steady_columns.col(l)).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("two-emitter closed form splits into symmetric and antisymmetric channels") {
    const DimensionlessModel m = pair_model();
    const Eigen::MatrixXd disp = dispersion_integral(m, -0.3, DispersionOrder::first);
    const auto analytic = analytic_channels(m, disp);
    REQUIRE(analytic.has_value());
    CHECK(analytic->values(0) == doctest::Approx(disp(0, 0) + disp(0, 1)));
    CHECK(analytic->values(1) == doctest::Approx(disp(0, 0) - disp(0, 1)));
    Eigen::MatrixXd q(2, 2);
    q << 0.5, 0.5, 0.5, -0.5;
    CHECK((analytic->steady_columns - q).cwiseAbs().maxCoeff() <= 1e-15);

    const DimensionlessModel uneven(0.19, 7.0, 1.0, {0.0, 0.2, 0.7});
    CHECK_FALSE(analytic_channels(uneven, dispersion_integral(uneven, -0.3, DispersionOrder::first)).has_value());
}

TEST_CASE("transition sweep steps from two to one to zero bound states") {
    const DimensionlessModel m = pair_model();
    const std::vector<double> grid = linspace(0.8, 2.0, 121);
    const SpectrumScan scan = scan_transition(m, grid, 2);
    const std::vector<double> th = bound_state_thresholds(m);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::size_t expected = grid[i] < th[1] ? 2 : (grid[i] < th[0] ? 1 : 0);
        CHECK(scan.count(i) == expected);
        if (i > 0) {
            CHECK(scan.count(i) <= scan.count(i - 1));
        }
    }
}

TEST_CASE("spacing sweep gains a second bound state near 9 nm") {
    const ModelParams p = diamond_waveguide(2, 10e-9, 1.0);
    const DimensionlessModel m = reduce(p);
    const std::vector<double> nm = linspace(5.0, 15.0, 101);
    std::vector<double> delays;
    for (double x : nm) {
        delays.push_back(spacing_to_delay(p, x * 1e-9));
    }
    const SpectrumScan scan = scan_spacing(m, 1.0, delays, 2);
    double crossing = -1.0;
    for (std::size_t i = 1; i < nm.size(); ++i) {
        CHECK(scan.count(i) >= scan.count(i - 1));
        if (scan.count(i - 1) == 1 && scan.count(i) == 2) {
            crossing = nm[i];
        }
    }
    CHECK(scan.count(0) == 1);
    CHECK(std::abs(crossing - 9.0) <= 0.5);
}

TEST_CASE("branches continue smoothly across a sweep") {
    const DimensionlessModel m = pair_model();
    const std::vector<double> grid = linspace(0.8, 1.5, 71);
    const SpectrumScan scan = scan_transition(m, grid, 1);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        for (std::size_t k = 0; k < scan.count(i); ++k) {
            for (std::size_t q = 0; q < scan.count(i - 1); ++q) {
                if (scan.branches[i][k] == scan.branches[i - 1][q]) {
                    CHECK(std::abs(scan.states[i][k].pole - scan.states[i - 1][q].pole) < 0.05);
                }
            }
        }
    }
}

TEST_CASE("one-point scan reproduces a direct pole search") {
    const DimensionlessModel m = triple_model();
    const std::vector<double> grid{1.0};
    const SpectrumScan scan = scan_transition(m, grid, 1);
    const auto direct = find_bound_states(m, 1.0);
    REQUIRE(scan.count(0) == direct.size());
    for (std::size_t k = 0; k < direct.size(); ++k) {
        CHECK(scan.states[0][k].pole == direct[k].pole);
        CHECK(scan.states[0][k].weight == direct[k].weight);
    }
}
