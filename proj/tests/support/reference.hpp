// reference.hpp: independent reference evaluations shared by the test suites

#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

namespace testref {

// Fixed 21-point Gauss–Kronrod panels of width 0.05 in long double over
// [0, 60ν]: an independent evaluation of ∫ J(ω) e^{−iωt} dω.
inline std::complex<long double> kernel_by_quadrature(double alpha, double nu, double delay, double t) {
    using Rule = boost::math::quadrature::gauss_kronrod<long double, 21>;
    const long double a = alpha;
    const long double n = nu;
    const long double p = delay;
    const long double tt = t;
    long double re = 0;
    long double im = 0;
    const long double width = 0.05L;
    const long double upper = 60.0L * n;
    for (long double lo = 0; lo < upper; lo += width) {
        const long double hi = std::min(upper, lo + width);
        auto j = [&](long double w) { return a * w * std::exp(-w / n) * std::cos(w * p); };
        re += Rule::integrate([&](long double w) { return j(w) * std::cos(w * tt); }, lo, hi, 0, 0);
        im -= Rule::integrate([&](long double w) { return j(w) * std::sin(w * tt); }, lo, hi, 0, 0);
    }
    return {re, im};
}

}  // namespace testref
