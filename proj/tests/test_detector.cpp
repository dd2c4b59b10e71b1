#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "d2ps/detector.hpp"

using namespace d2ps;

TEST_CASE("zero-mean sample variance") {
    D2psSampleSet set;
    set.samples = {1.0, -1.0, 2.0, -2.0};
    set.m = 4;
    CHECK(sample_variance(set) == doctest::Approx(10.0 / 3.0));
    set.samples = {0.0, 0.0, 0.0};
    CHECK(sample_variance(set) == 0.0);
    set.samples = {1.0};
    CHECK_THROWS(sample_variance(set));
}

TEST_CASE("thresholds use the chi-squared quantiles scaled by sigma2/M") {
    const double s2 = 400.0;
    const std::size_t m = 20;
    const double eps = 0.02;
    const Thresholds th = thresholds(s2, m, eps);
    CHECK(th.gamma1 == doctest::Approx(s2 / 20.0 * chi2_inv(0.01, 20)).epsilon(1e-12));
    CHECK(th.gamma2 == doctest::Approx(s2 / 20.0 * chi2_inv(0.99, 20)).epsilon(1e-12));
    CHECK(th.gamma1 < s2);
    CHECK(th.gamma2 > s2);
    CHECK_THROWS(thresholds(0.0, m, eps));
    CHECK_THROWS(thresholds(s2, 1, eps));
    CHECK_THROWS(thresholds(s2, m, 1.5));
}

TEST_CASE("tri-level decision rule") {
    const Thresholds th = thresholds(400.0, 20, 0.02);
    CHECK(decide(0.5 * th.gamma1, th) == Decision::H1FullySpoofed);
    CHECK(decide(0.5 * (th.gamma1 + th.gamma2), th) == Decision::H0SpoofingFree);
    CHECK(decide(2.0 * th.gamma2, th) == Decision::H2PartiallySpoofed);
    // boundaries belong to H0 (strict inequalities on both sides)
    CHECK(decide(th.gamma1, th) == Decision::H0SpoofingFree);
    CHECK(decide(th.gamma2, th) == Decision::H0SpoofingFree);
}

TEST_CASE("predicted detection probabilities") {
    const Thresholds th = thresholds(400.0, 20, 0.02);
    // spoofed variance far below gamma1: certain detection
    auto pd = predicted_pd(th, 1.0, 1e9);
    CHECK(pd.pd_h1 > 0.999);
    // H2 variance far above gamma2: certain detection
    CHECK(pd.pd_h2 > 0.999);
    // matched variance: H1 probability collapses to the epsilon/2 tail
    pd = predicted_pd(th, 400.0, 400.0);
    CHECK(pd.pd_h1 == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(pd.pd_h2 == doctest::Approx(0.01).epsilon(1e-9));
    CHECK_THROWS(predicted_pd(th, 0.0, 1.0));
}

TEST_CASE("detect ties the pieces together") {
    D2psSampleSet set;
    set.m = 20;
    set.j = 12;
    set.samples.assign(380, 0.0);  // degenerate noise-free fully-spoofed case
    const DetectionReport rep = detect(set, 400.0, 0.02, 3);
    CHECK(rep.region_id == 3);
    CHECK(rep.sample_variance == 0.0);
    CHECK(rep.decision == Decision::H1FullySpoofed);
}
