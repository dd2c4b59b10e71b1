#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "d2ps/d2ps.hpp"
#include "d2ps/scenario.hpp"

using namespace d2ps;

namespace {
SkyView fixture() { return load_sky(std::string(D2PS_DATA_DIR) + "/sky12.txt"); }
}  // namespace

TEST_CASE("link-budget spoofed ranges reproduce the published example") {
    // omnidirectional spoofer, P_T^S = 0 dBm, SAPR thresholds 35/5 dB
    SpooferConfig cfg;  // defaults carry the published constants
    const SpoofedRanges r = spoofed_ranges(cfg);
    CHECK(r.l_tov == doctest::Approx(120.0).epsilon(0.01));   // ~120 m
    CHECK(r.l_tri == doctest::Approx(3800.0).epsilon(0.01));  // ~3800 m
    CHECK(r.l_tri > r.l_tov);
}

TEST_CASE("receiver placement is uniform inside the ROI") {
    Rng rng(3);
    const RoiBounds roi{-50.0, 50.0, 10.0, 110.0};
    const auto recs = place_receivers(roi, 2000, rng);
    double mx = 0.0, my = 0.0;
    for (const auto& r : recs) {
        CHECK(r.true_position.x >= roi.a1);
        CHECK(r.true_position.x <= roi.a2);
        CHECK(r.true_position.y >= roi.b1);
        CHECK(r.true_position.y <= roi.b2);
        mx += r.true_position.x;
        my += r.true_position.y;
    }
    CHECK(std::abs(mx / 2000.0 - roi.cx()) < 3.0);  // ~4.6 sigma of the sample mean
    CHECK(std::abs(my / 2000.0 - roi.cy()) < 3.0);
    CHECK_THROWS(place_receivers(roi, 1, rng));
}

TEST_CASE("direct-fraction assignment spoofs round(alpha*M) receivers") {
    Rng rng(5);
    const RoiBounds roi = RoiBounds::centered(100.0, 100.0);
    auto recs = place_receivers(roi, 40, rng);
    SpooferConfig cfg;
    cfg.mode = SpoofMode::DirectFraction;
    cfg.spoofed_fraction = 0.3;
    assign_spoofed(recs, cfg, rng);
    std::size_t n = 0;
    for (const auto& r : recs) n += r.is_spoofed ? 1 : 0;
    CHECK(n == 12);
}

TEST_CASE("high-power zone rules: inside L_TOV always spoofed, outside L_TRI never") {
    Rng rng(6);
    SpooferConfig cfg;
    cfg.mode = SpoofMode::HighPowerDominant;
    cfg.spoofer_position = {0.0, 0.0};
    std::vector<ReceiverTruth> recs(3);
    recs[0].true_position = {50.0, 0.0};     // inside L_TOV (~120 m)
    recs[1].true_position = {5000.0, 0.0};   // outside L_TRI (~3800 m)
    recs[2].true_position = {1000.0, 0.0};   // risky zone
    bool risky_ever_spoofed = false, risky_ever_clean = false;
    for (int t = 0; t < 200; ++t) {
        assign_spoofed(recs, cfg, rng);
        CHECK(recs[0].is_spoofed);
        CHECK_FALSE(recs[1].is_spoofed);
        (recs[2].is_spoofed ? risky_ever_spoofed : risky_ever_clean) = true;
    }
    CHECK(risky_ever_spoofed);
    CHECK(risky_ever_clean);
}

TEST_CASE("MOPS multipath variance decays with elevation") {
    CHECK(multipath_variance(0.0, 1.0) == doctest::Approx(0.66));
    CHECK(multipath_variance(10.0, 1.0) == doctest::Approx(0.13 + 0.53 / std::exp(1.0)));
    CHECK(multipath_variance(90.0, 2.0) > multipath_variance(90.0, 1.0));
    CHECK(multipath_variance(5.0, 1.0) > multipath_variance(60.0, 1.0));
}

TEST_CASE("Gauss-Markov series has the stationary variance and autocorrelation") {
    NoiseConfig noise;
    noise.delta_sigma = 3.0;
    Rng rng(8);
    const double s2 = multipath_variance(30.0, noise.delta_sigma);
    const double phi = std::exp(-noise.epoch_interval_s / noise.tau_corr_s);
    double acc = 0.0, lag = 0.0;
    const int n = 20000;
    const auto series = multipath_series(30.0, noise, n, rng);
    for (int i = 0; i < n; ++i) acc += series[i] * series[i];
    for (int i = 1; i < n; ++i) lag += series[i] * series[i - 1];
    CHECK(acc / n == doctest::Approx(s2).epsilon(0.05));
    CHECK(lag / (n - 1) / (acc / n) == doctest::Approx(phi).epsilon(0.05));
}

TEST_CASE("spatial correlation factor reproduces C") {
    std::vector<Vec2> pos{{0.0, 0.0}, {10.0, 0.0}, {0.0, 30.0}, {40.0, 40.0}};
    const auto sc = spatial_correlation(pos, 25.0);
    const Eigen::MatrixXd resid = sc.r.transpose() * sc.r - sc.c;
    CHECK(resid.cwiseAbs().maxCoeff() < 1e-10);
    CHECK(sc.c(0, 1) == doctest::Approx(std::exp(-10.0 / 25.0)));
    // duplicate positions: semi-definite fallback still factors
    pos.push_back(pos[0]);
    const auto sc2 = spatial_correlation(pos, 25.0);
    const Eigen::MatrixXd resid2 = sc2.r.transpose() * sc2.r - sc2.c;
    CHECK(resid2.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("multipath field preserves unit marginal variance under mixing") {
    Rng rng(12);
    const RoiBounds roi = RoiBounds::centered(100.0, 100.0);
    auto recs = place_receivers(roi, 6, rng);
    NoiseConfig noise;
    noise.delta_sigma = 1.0;
    MultipathField field(recs, 4, noise);
    double acc = 0.0;
    const int steps = 4000;
    for (int t = 0; t < steps; ++t) {
        field.step(rng);
        if (t < 100) continue;  // let the chain mix
        for (std::size_t n = 0; n < 6; ++n)
            for (std::size_t i = 0; i < 4; ++i) acc += field.value(n, i) * field.value(n, i);
    }
    CHECK(acc / double((steps - 100) * 24) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("clock biases and satellite constants cancel exactly in every DDP") {
    const SkyView sky = fixture();
    Rng rng(14);
    const RoiBounds roi = RoiBounds::centered(100.0, 100.0);
    auto recs = place_receivers(roi, 5, rng);
    SpooferConfig sp;
    NoiseConfig noise;
    noise.sigma_rho = 0.0;  // isolate the deterministic terms
    const auto epochs = synthesize_epochs(recs, sky, sp, noise, 1, rng);
    const auto& ep = epochs[0];
    // DDP must equal the pure geometric double difference, bit-for-bit cancellation
    // of the receiver clock and satellite constant is not required, but agreement
    // to far below a millimeter is
    for (std::size_t n = 0; n < 5; ++n)
        for (std::size_t m = n + 1; m < 5; ++m)
            for (const auto& [i, j] : sky.pairs()) {
                const double ddp_val = (ep.rho(n, i) - ep.rho(m, i)) -
                                       (ep.rho(n, j) - ep.rho(m, j));
                const LosVector ei = los_unit_vector(sky.satellites[i]);
                const LosVector ej = los_unit_vector(sky.satellites[j]);
                const double dx = recs[m].true_position.x - recs[n].true_position.x;
                const double dy = recs[m].true_position.y - recs[n].true_position.y;
                const double geo = (ei.ex - ej.ex) * dx + (ei.ey - ej.ey) * dy;
                CHECK(ddp_val == doctest::Approx(geo).scale(1.0).epsilon(1e-6));
            }
}

TEST_CASE("fully spoofed, noise-free: all DDPs are zero") {
    const SkyView sky = fixture();
    Rng rng(15);
    auto recs = place_receivers(RoiBounds::centered(100.0, 100.0), 6, rng);
    SpooferConfig sp;
    sp.mode = SpoofMode::DirectFraction;
    sp.spoofed_fraction = 1.0;
    sp.counterfeit_position = {30.0, -40.0};
    sp.spoofer_position = {500.0, 500.0};
    assign_spoofed(recs, sp, rng);
    NoiseConfig noise;
    noise.sigma_rho = 0.0;
    const auto epochs = synthesize_epochs(recs, sky, sp, noise, 1, rng);
    const auto& ep = epochs[0];
    for (std::size_t n = 0; n < 6; ++n)
        for (std::size_t m = n + 1; m < 6; ++m)
            for (const auto& [i, j] : sky.pairs()) {
                const double ddp_val = (ep.rho(n, i) - ep.rho(m, i)) -
                                       (ep.rho(n, j) - ep.rho(m, j));
                CHECK(std::abs(ddp_val) < 1e-6);
            }
}

TEST_CASE("reported positions follow the spoofed flag") {
    Rng rng(16);
    auto recs = place_receivers(RoiBounds::centered(100.0, 100.0), 10, rng);
    SpooferConfig sp;
    sp.counterfeit_position = {900.0, 900.0};
    recs[3].is_spoofed = true;
    scatter_reported_positions(recs, sp, 2.0, rng);
    CHECK(std::hypot(recs[3].reported_position.x - 900.0, recs[3].reported_position.y - 900.0) <
          20.0);
    CHECK(std::hypot(recs[0].reported_position.x - recs[0].true_position.x,
                     recs[0].reported_position.y - recs[0].true_position.y) < 20.0);
}
