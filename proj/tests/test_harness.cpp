#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "d2ps/criteria_util.hpp"
#include "d2ps/harness.hpp"

using namespace d2ps;

namespace {
SkyView fixture() { return load_sky(std::string(D2PS_DATA_DIR) + "/sky12.txt"); }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("config JSON round trip and hashing") {
    ScenarioConfig cfg;
    cfg.roi = RoiBounds::centered(250.0, 400.0);
    cfg.spoofer.mode = SpoofMode::HighPowerDominant;
    cfg.spoofer.spoofer_position = {12.0, -7.0};
    cfg.noise.multipath_enabled = true;
    cfg.noise.delta_sigma = 5.0;
    cfg.n_receivers = 33;
    cfg.k_epochs = 4;
    cfg.epsilon = 0.003;
    const ScenarioConfig back = scenario_from_json(to_json(cfg));
    CHECK(config_hash(back) == config_hash(cfg));
    CHECK(back.spoofer.mode == SpoofMode::HighPowerDominant);
    CHECK(back.roi.dy() == doctest::Approx(400.0));

    ScenarioConfig other = cfg;
    other.epsilon = 0.004;
    CHECK(config_hash(other) != config_hash(cfg));

    const std::string path = "harness_cfg_roundtrip.json";
    {
        std::ofstream out(path);
        out << to_json(cfg).dump(2);
    }
    CHECK(config_hash(load_scenario(path)) == config_hash(cfg));
    std::remove(path.c_str());
}

TEST_CASE("degenerate noise-free fully-spoofed trial decides H1 with zero variance") {
    const SkyView sky = fixture();
    ScenarioConfig cfg;
    cfg.n_receivers = 10;
    cfg.noise.sigma_rho = 0.0;
    cfg.spoofer.mode = SpoofMode::DirectFraction;
    cfg.spoofer.spoofed_fraction = 1.0;
    cfg.spoofer.counterfeit_position = {40.0, 10.0};
    const DetectionReport rep = run_d2ps_trial(cfg, sky, 1);
    CHECK(rep.decision == Decision::H1FullySpoofed);
    CHECK(rep.sample_variance < 1e-9);
}

TEST_CASE("experiments are deterministic: identical CSV bytes, serial == parallel") {
    const SkyView sky = fixture();
    ExperimentSpec spec;
    spec.scenario.n_receivers = 12;
    spec.scenario.noise.sigma_rho = 5.0;
    spec.method = Method::Both;
    spec.grid = {{{"alpha", 1.0}}, {{"alpha", 0.5}}};
    spec.trials = 25;
    spec.master_seed = 77;

    spec.threads = 1;
    const auto serial = run_experiment(spec, sky);
    spec.threads = 4;
    const auto parallel = run_experiment(spec, sky);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].n_h0 == parallel[i].n_h0);
        CHECK(serial[i].n_h1 == parallel[i].n_h1);
        CHECK(serial[i].n_h2 == parallel[i].n_h2);
        CHECK(serial[i].n_h0 + serial[i].n_h1 + serial[i].n_h2 == spec.trials);
    }

    write_sweep_csv("sweep_a.csv", serial);
    write_sweep_csv("sweep_b.csv", parallel);
    auto a = slurp("sweep_a.csv"), b = slurp("sweep_b.csv");
    // wall time differs between runs; blank it out before comparing
    auto strip_timing = [](std::string s) {
        std::istringstream in(s);
        std::string line, out;
        while (std::getline(in, line)) {
            const auto last = line.rfind(',');
            const auto prev = line.rfind(',', last - 1);
            out += line.substr(0, prev) + line.substr(last) + '\n';
        }
        return out;
    };
    CHECK(strip_timing(a) == strip_timing(b));
    std::remove("sweep_a.csv");
    std::remove("sweep_b.csv");
}

TEST_CASE("infeasible grid points are reported as skipped rows") {
    const SkyView sky = fixture();
    ExperimentSpec spec;
    spec.trials = 3;
    spec.grid = {{{"m", 1.0}}, {{"m", 5.0}}};
    const auto rows = run_experiment(spec, sky);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].skipped);
    CHECK(rows[0].trials == 0);
    CHECK_FALSE(rows[1].skipped);
    CHECK(rows[1].n_h0 + rows[1].n_h1 + rows[1].n_h2 == 3);
}

TEST_CASE("roc sweep collapses to certain detection as FA -> 1") {
    const SkyView sky = fixture();
    ExperimentSpec spec;
    spec.scenario.n_receivers = 10;
    spec.scenario.noise.sigma_rho = 5.0;
    spec.scenario.spoofer.mode = SpoofMode::DirectFraction;
    spec.scenario.spoofer.spoofed_fraction = 1.0;
    spec.scenario.spoofer.counterfeit_position = {30.0, 30.0};
    spec.trials = 20;
    const auto rows = roc_sweep(spec, {0.999999}, sky);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].pd_h1() == doctest::Approx(1.0));
}

TEST_CASE("timing benchmark: trials=0 gives an empty table") {
    const SkyView sky = fixture();
    CHECK(timing_benchmark({10}, sky, 1, 0, ScenarioConfig{}, 1).empty());
}

TEST_CASE("histogram report") {
    D2psSampleSet set;
    set.m = 5;
    SUBCASE("all-zero set occupies a single bin") {
        set.samples.assign(20, 0.0);
        const auto bins = histogram_report(set, {1.0, Hypothesis::H0}, 10);
        std::size_t occupied = 0, total = 0;
        for (const auto& b : bins) {
            occupied += b.count > 0 ? 1 : 0;
            total += b.count;
        }
        CHECK(occupied == 1);
        CHECK(total == 20);
    }
    SUBCASE("counts cover all samples and densities follow the prediction") {
        Rng rng(9);
        set.samples.resize(5000);
        for (auto& s : set.samples) s = rng.normal(0.0, 2.0);
        const auto bins = histogram_report(set, {4.0, Hypothesis::H0}, 40);
        std::size_t total = 0;
        double peak = 0.0;
        for (const auto& b : bins) {
            total += b.count;
            peak = std::max(peak, b.predicted_density);
        }
        CHECK(total == set.samples.size());
        CHECK(peak == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0 * kPi))).epsilon(0.01));
    }
}

TEST_CASE("KS distance separates matched and mismatched variances") {
    Rng rng(10);
    std::vector<double> samples(3000);
    for (auto& s : samples) s = rng.normal(0.0, 3.0);
    CHECK(ks_distance_normal(samples, 9.0) < ks_critical(0.01, samples.size()));
    CHECK(ks_distance_normal(samples, 36.0) > ks_critical(0.01, samples.size()));
}
