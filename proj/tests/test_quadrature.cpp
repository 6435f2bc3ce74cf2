#include <doctest.h>

#include <cmath>

#include "mbwave/quadrature.hpp"

using mbwave::integrate;

TEST_CASE("polynomials are exact") {
    auto cubic = [](double x) { return x * x * x - 2.0 * x + 1.0; };
    CHECK(integrate(cubic, -1.0, 2.0) == doctest::Approx(15.0 / 4.0 - 3.0 + 3.0).epsilon(1e-14));
    auto quad = [](double x) { return 3.0 * x * x; };
    CHECK(integrate(quad, 0.0, 2.0) == doctest::Approx(8.0).epsilon(1e-14));
}

TEST_CASE("smooth integrand to tight tolerance") {
    mbwave::QuadratureOptions opt;
    opt.abs_tol = 1e-12;
    const double v = integrate([](double x) { return std::exp(-x * x); }, 0.0, 3.0, opt);
    CHECK(v == doctest::Approx(0.8862073482595214).epsilon(1e-11)); // sqrt(pi)/2 erf(3)
}

TEST_CASE("orientation and empty range") {
    auto f = [](double x) { return x; };
    CHECK(integrate(f, 2.0, 2.0) == 0.0);
    CHECK(integrate(f, 2.0, 0.0) == doctest::Approx(-2.0));
}

TEST_CASE("kinked integrand with breakpoints is exact") {
    auto f = [](double x) { return std::abs(x - 0.3); };
    const std::vector<double> bp{0.3};
    const double exact = 0.5 * (0.3 * 0.3 + 0.7 * 0.7);
    CHECK(integrate(f, 0.0, 1.0, bp) == doctest::Approx(exact).epsilon(1e-14));
}

TEST_CASE("jump discontinuity still converges") {
    auto f = [](double x) { return x < 0.37 ? 1.0 : 2.0; };
    const double exact = 0.37 + 2.0 * 0.63;
    CHECK(integrate(f, 0.0, 1.0) == doctest::Approx(exact).epsilon(1e-8));
}
