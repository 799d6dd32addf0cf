#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "agd/alpha.hpp"
#include "agd/rng.hpp"

using namespace agd;

TEST_CASE("f_alpha closed-form values") {
    CHECK(f_alpha(1.0, AlphaParam{0.5}) == doctest::Approx(0.0));
    CHECK(f_alpha(2.0, AlphaParam{2.0}) == doctest::Approx(0.5));
    CHECK(f_alpha(2.0, AlphaParam{0.0}) ==
          doctest::Approx(1.0 - std::log(2.0)));
    CHECK(f_alpha(0.5, AlphaParam{1.0}) ==
          doctest::Approx(1.0 - 0.5 + 0.5 * std::log(0.5)));
}

TEST_CASE("f_alpha rejects non-positive arguments") {
    CHECK_THROWS_AS(f_alpha(0.0, AlphaParam{0.5}), std::domain_error);
    CHECK_THROWS_AS(f_alpha(-1.0, AlphaParam{2.0}), std::domain_error);
    CHECK_THROWS_AS(f_alpha_prime(0.0, AlphaParam{1.0}), std::domain_error);
}

TEST_CASE("f_alpha is continuous across the limit orders") {
    for (double u = 0.1; u <= 10.0; u += 0.1) {
        CHECK(std::fabs(f_alpha(u, AlphaParam{1e-8}) -
                        f_alpha(u, AlphaParam{0.0})) <= 1e-4);
        CHECK(std::fabs(f_alpha(u, AlphaParam{1.0 + 1e-8}) -
                        f_alpha(u, AlphaParam{1.0})) <= 1e-4);
        CHECK(std::fabs(f_alpha(u, AlphaParam{1.0 - 1e-8}) -
                        f_alpha(u, AlphaParam{1.0})) <= 1e-4);
    }
    // spot value away from the limits stays on the generic branch
    const double v = f_alpha(3.0, AlphaParam{0.5});
    CHECK(v == doctest::Approx((std::pow(3.0, 0.5) - 1.0 - 0.5 * 2.0) /
                               (0.5 * (0.5 - 1.0))));
}

TEST_CASE("f_alpha nonnegative, zero only at u = 1") {
    Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double u = std::exp(3.0 * rng.normal());
        const double a = 4.0 * rng.normal();
        const double v = f_alpha(u, AlphaParam{a});
        CHECK(v >= 0.0);
        if (std::fabs(u - 1.0) > 1e-4) CHECK(v > 0.0);
    }
    for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        CHECK(f_alpha(1.0, AlphaParam{a}) == 0.0);
    }
}

TEST_CASE("f_alpha convexity probe") {
    Rng rng(12);
    for (int i = 0; i < 2000; ++i) {
        const double u = std::exp(2.0 * rng.normal());
        const double v = std::exp(2.0 * rng.normal());
        const double t = rng.uniform01();
        const double a = 3.0 * rng.normal();
        const AlphaParam alpha{a};
        const double lhs = f_alpha(t * u + (1.0 - t) * v, alpha);
        const double rhs =
            t * f_alpha(u, alpha) + (1.0 - t) * f_alpha(v, alpha);
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("f_alpha_prime closed-form values") {
    CHECK(f_alpha_prime(1.0, AlphaParam{1.0}) == doctest::Approx(0.0));
    CHECK(f_alpha_prime(2.0, AlphaParam{0.0}) == doctest::Approx(0.5));
    CHECK(f_alpha_prime(4.0, AlphaParam{0.5}) == doctest::Approx(1.0));
    for (double a : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        CHECK(f_alpha_prime(1.0, AlphaParam{a}) == doctest::Approx(0.0));
    }
}

TEST_CASE("f_alpha_prime matches central finite differences") {
    Rng rng(13);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const double u = std::exp(2.0 * rng.normal());
        const double a = 3.0 * rng.normal();
        const AlphaParam alpha{a};
        const double h = 1e-6 * u;
        const double fd =
            (f_alpha(u + h, alpha) - f_alpha(u - h, alpha)) / (2.0 * h);
        const double an = f_alpha_prime(u, alpha);
        const double denom = std::max(1e-12, std::fabs(an));
        if (std::fabs(an) > 1e-8) {
            CHECK(std::fabs(fd - an) / denom <= 1e-6);
            ++checked;
        }
    }
    CHECK(checked > 800);
}

TEST_CASE("f_alpha_tilde") {
    // u f(1/u) at alpha = 1 equals the reverse form u(1 - 1/u + (1/u)log(1/u))
    const double u = 3.0;
    CHECK(f_alpha_tilde(u, AlphaParam{1.0}) ==
          doctest::Approx(u * f_alpha(1.0 / u, AlphaParam{1.0})));
}
