#include <doctest.h>

#include <cmath>
#include <random>

#include "mbwave/geometry.hpp"

using mbwave::DomainGeometry;

TEST_CASE("construction validates the expansion rate") {
    CHECK_THROWS_AS(DomainGeometry(0.0), mbwave::ValidationError);
    CHECK_THROWS_AS(DomainGeometry(1.0), mbwave::ValidationError);
    CHECK_THROWS_AS(DomainGeometry(-0.3), mbwave::ValidationError);
    CHECK_THROWS_AS(DomainGeometry(1.7), mbwave::ValidationError);

    const DomainGeometry g(0.5);
    CHECK(g.reflection_ratio() == doctest::Approx(3.0));
    CHECK(g.fixed_point() == doctest::Approx(-2.0));
    CHECK(g.reflection_ratio() > 1.0);
}

TEST_CASE("boundary position") {
    const DomainGeometry g(0.5);
    CHECK(g.boundary_position(0.0) == 1.0);
    CHECK(g.boundary_position(2.0) == 2.0);
    CHECK(DomainGeometry(0.25).boundary_position(4.0) == 2.0);
    CHECK_THROWS_AS(g.boundary_position(-0.1), mbwave::ValidationError);
}

TEST_CASE("reflection map basics") {
    const DomainGeometry g(0.5);
    CHECK(g.reflect(-1.0, 1) == doctest::Approx(1.0));
    // F(y) = ((1+k) y + 2)/(1-k) = 3 y + 4 at k = 1/2
    CHECK(g.reflect(1.0, 1) == doctest::Approx(7.0));
    // inverse map, F^{-1}(z) = ((1-k) z - 2)/(1+k)
    const double z = 7.0;
    CHECK(((1.0 - 0.5) * z - 2.0) / (1.0 + 0.5) == doctest::Approx(1.0));
    CHECK(g.reflect(7.0, -1) == doctest::Approx(1.0));
    // the fixed point stays put under any power
    CHECK(g.reflect(-2.0, 5) == doctest::Approx(-2.0));
    CHECK(std::abs(g.reflect(g.fixed_point(), 1) - g.fixed_point()) <=
          4.0 * std::numeric_limits<double>::epsilon() * std::abs(g.fixed_point()));
}

TEST_CASE("closed form agrees with iterated composition") {
    for (double k : {0.25, 0.5, 0.75}) {
        const DomainGeometry g(k);
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> ys(-3.0, 3.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double y = ys(rng);
            for (long n = -20; n <= 20; ++n) {
                double iterated = y;
                for (long i = 0; i < std::labs(n); ++i)
                    iterated = g.reflect(iterated, n > 0 ? 1 : -1);
                const double closed = g.reflect(y, n);
                CHECK(closed ==
                      doctest::Approx(iterated).epsilon(1e-12).scale(std::abs(iterated) + 1));
            }
        }
    }
}

TEST_CASE("conjugacy identity") {
    const DomainGeometry g(0.4);
    for (long n : {-3L, -1L, 0L, 1L, 2L, 7L})
        for (double y : {-0.9, 0.0, 1.5, 20.0}) {
            const double lhs = g.reflect(y, n) + 1.0 / 0.4;
            const double rhs = std::pow(g.reflection_ratio(), double(n)) * (y + 1.0 / 0.4);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
        }
}

TEST_CASE("interval index") {
    const DomainGeometry g(0.5);
    CHECK(g.interval_index(0.0) == 0);
    CHECK(g.interval_index(-1.0) == 0);
    CHECK(g.interval_index(5.0) == 1);
    // right endpoints belong to the next interval: I_2 = [7, 25)
    CHECK(g.interval_index(7.0) == 2);
    CHECK(g.interval_index(24.999) == 2);
    CHECK(g.interval_index(25.0) == 3);
    CHECK_THROWS_AS(g.interval_index(-1.0001), mbwave::OutOfDomainError);
}

TEST_CASE("intervals tile [-1, 1e6) without gaps") {
    for (double k : {0.25, 0.5, 0.75}) {
        const DomainGeometry g(k);
        std::mt19937 rng(7);
        // log-spread offsets above -1 reach from the left endpoint out to 1e6
        std::uniform_real_distribution<double> exps(-6.0, 6.0);
        for (int trial = 0; trial < 10000; ++trial) {
            const double y = -1.0 + std::pow(10.0, exps(rng));
            const long n = g.interval_index(y);
            CHECK(g.interval_left(n) <= y);
            CHECK(y < g.interval_right(n));
        }
        CHECK(g.interval_index(-1.0) == 0);
    }
}
