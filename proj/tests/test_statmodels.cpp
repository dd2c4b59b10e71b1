#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "d2ps/criteria_util.hpp"
#include "d2ps/statmodels.hpp"

using namespace d2ps;

namespace {
SkyView fixture() { return load_sky(std::string(D2PS_DATA_DIR) + "/sky12.txt"); }
}  // namespace

TEST_CASE("triangle pdf basics") {
    CHECK(triangle_pdf(0.0, 10.0) == doctest::Approx(0.1));
    CHECK(triangle_pdf(10.0, 10.0) == 0.0);
    CHECK(triangle_pdf(-5.0, 10.0) == doctest::Approx(0.05));
    CHECK_THROWS(triangle_pdf(0.0, 0.0));
}

TEST_CASE("sum pdf equals the quadrature oracle in both width layouts") {
    for (auto [dex, dey] : {std::pair{30.0, 20.0}, {20.0, 30.0}, {100.0, 70.0}, {55.0, 54.0}}) {
        const double span = dex + dey;
        for (int i = 0; i <= 400; ++i) {
            const double h = -span * 1.05 + 2.1 * span * double(i) / 400.0;
            CHECK(sum_pdf(h, dex, dey) ==
                  doctest::Approx(criteria::sum_pdf_quadrature(h, dex, dey)).epsilon(1e-9));
        }
    }
}

TEST_CASE("sum pdf falls back to exact convolution outside the closed-form layout") {
    const double dex = 100.0, dey = 20.0;  // dex >= 2*dey
    for (int i = 0; i <= 200; ++i) {
        const double h = -130.0 + 260.0 * double(i) / 200.0;
        CHECK(sum_pdf(h, dex, dey) ==
              doctest::Approx(criteria::sum_pdf_quadrature(h, dex, dey)).epsilon(1e-9));
    }
}

TEST_CASE("sum pdf normalizes and has variance (dex^2 + dey^2)/6") {
    for (auto [dex, dey] : {std::pair{40.0, 25.0}, {300.0, 120.0}}) {
        const auto [integral, second] = criteria::sum_pdf_moments(dex, dey);
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(second == doctest::Approx((dex * dex + dey * dey) / 6.0).epsilon(1e-8));
    }
}

TEST_CASE("spoofing-free variance matches a direct evaluation") {
    const SkyView sky = fixture();
    const GeometryCoefficients g = geometry_coefficients(sky);
    const double dx = 120.0, dy = 80.0;
    const double expected = (dx * dx * g.sum_ex2 + dy * dy * g.sum_ey2) / (6.0 * 66.0);
    CHECK(variance_h0(dx, dy, sky).sigma2 == doctest::Approx(expected).epsilon(1e-12));
    CHECK(variance_h0(dx, dy, sky).hypothesis == Hypothesis::H0);
}

TEST_CASE("fully-spoofed variance and K-epoch averaging") {
    CHECK(variance_h1(5.0).sigma2 == doctest::Approx(100.0));
    CHECK(variance_h1(5.0, 5).sigma2 == doctest::Approx(20.0));
    CHECK(variance_h1(0.0).sigma2 == 0.0);
    CHECK_THROWS(variance_h1(-1.0));
}

TEST_CASE("cross moment equals the quadrature second moment of x_f - U(a1,a2)") {
    const RoiBounds roi{-250.0, 250.0, -100.0, 300.0};
    for (double xf : {0.0, 750.0, -120.0}) {
        const double q = criteria::simpson(
            [&](double x) { return (xf - x) * (xf - x) / roi.dx(); }, roi.a1, roi.a2, 2000);
        CHECK(cross_moment_x(xf, roi) == doctest::Approx(q).epsilon(1e-9));
    }
    for (double yf : {50.0, 900.0}) {
        const double q = criteria::simpson(
            [&](double y) { return (yf - y) * (yf - y) / roi.dy(); }, roi.b1, roi.b2, 2000);
        CHECK(cross_moment_y(yf, roi) == doctest::Approx(q).epsilon(1e-9));
    }
}

TEST_CASE("partially-spoofed variance: endpoints and continuity") {
    const SkyView sky = fixture();
    const RoiBounds roi = RoiBounds::centered(500.0, 500.0);
    const Vec2 pf{0.0, 750.0};
    const double sr = 5.0;

    CHECK(variance_h2(0.0, roi, pf, sky, sr).sigma2 ==
          doctest::Approx(variance_h0(roi.dx(), roi.dy(), sky).sigma2).epsilon(1e-12));
    CHECK(variance_h2(1.0, roi, pf, sky, sr).sigma2 == doctest::Approx(4.0 * sr * sr));

    // continuity: the largest step on an alpha grid shrinks roughly linearly with
    // the grid spacing (a jump would leave it constant)
    auto max_step = [&](double h) {
        double worst = 0.0, prev = variance_h2(0.0, roi, pf, sky, sr).sigma2;
        for (double a = h; a <= 1.0 + 1e-12; a += h) {
            const double cur = variance_h2(std::min(a, 1.0), roi, pf, sky, sr).sigma2;
            worst = std::max(worst, std::abs(cur - prev));
            prev = cur;
        }
        return worst;
    };
    CHECK(max_step(0.005) < 0.7 * max_step(0.01));
    CHECK_THROWS(variance_h2(-0.1, roi, pf, sky, sr));

    // both cross-term readings exist and only differ for interior alpha
    const double std_read = variance_h2(0.5, roi, pf, sky, sr, CrossTermReading::StdProducts).sigma2;
    const double var_read =
        variance_h2(0.5, roi, pf, sky, sr, CrossTermReading::VarianceProducts).sigma2;
    CHECK(std_read != var_read);
    CHECK(variance_h2(0.0, roi, pf, sky, sr, CrossTermReading::VarianceProducts).sigma2 ==
          doctest::Approx(variance_h2(0.0, roi, pf, sky, sr).sigma2));
}

TEST_CASE("partial-satellite variance endpoints") {
    const double auth = 5000.0, sr = 5.0;
    CHECK(variance_partial_sats(0, 12, auth, sr).sigma2 == doctest::Approx(auth));
    CHECK(variance_partial_sats(1, 12, auth, sr).sigma2 == doctest::Approx(auth));
    CHECK(variance_partial_sats(12, 12, auth, sr).sigma2 == doctest::Approx(4.0 * sr * sr));
    // monotone decreasing toward the fully-spoofed noise floor for auth >> noise
    double prev = variance_partial_sats(1, 12, auth, sr).sigma2;
    for (std::size_t s = 2; s <= 12; ++s) {
        const double cur = variance_partial_sats(s, 12, auth, sr).sigma2;
        CHECK(cur <= prev);
        prev = cur;
    }
    CHECK_THROWS(variance_partial_sats(13, 12, auth, sr));
}
