#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "d2ps/chi2.hpp"

using namespace d2ps;

TEST_CASE("cdf matches closed forms for small dof") {
    // dof 2: F(x) = 1 - exp(-x/2)
    for (double x : {0.1, 1.0, 3.0, 10.0})
        CHECK(chi2_cdf(x, 2) == doctest::Approx(1.0 - std::exp(-0.5 * x)).epsilon(1e-12));
    // dof 1: F(x) = erf(sqrt(x/2))
    for (double x : {0.2, 1.5, 6.0})
        CHECK(chi2_cdf(x, 1) == doctest::Approx(std::erf(std::sqrt(0.5 * x))).epsilon(1e-12));
    CHECK(chi2_cdf(0.0, 5) == 0.0);
}

TEST_CASE("reference quantiles") {
    CHECK(chi2_inv(0.95, 1) == doctest::Approx(3.841458820694124).epsilon(1e-10));
    CHECK(chi2_inv(0.95, 10) == doctest::Approx(18.307038053275146).epsilon(1e-10));
    CHECK(chi2_inv(0.05, 10) == doctest::Approx(3.9402991361190605).epsilon(1e-10));
    CHECK(chi2_inv(0.5, 2) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-10));
}

TEST_CASE("cdf and quantile are monotone and inverse to each other") {
    for (int m : {1, 3, 20, 120}) {
        double prev = -1.0;
        for (double p : {1e-4, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-4}) {
            const double x = chi2_inv(p, m);
            CHECK(x > prev);
            prev = x;
            CHECK(chi2_cdf(x, m) == doctest::Approx(p).epsilon(1e-9));
        }
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS(chi2_cdf(-1.0, 3));
    CHECK_THROWS(chi2_cdf(1.0, 0));
    CHECK_THROWS(chi2_inv(0.0, 3));
    CHECK_THROWS(chi2_inv(1.0, 3));
}
