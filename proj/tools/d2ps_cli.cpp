// Command-line front end: scenario simulation, detection (optionally with ROI
// resizing), variance predictions, ROC / partial-spoofing sweeps, timing
// benchmarks, histogram dumps, and the full acceptance reproduction.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "d2ps/criteria.hpp"
#include "d2ps/harness.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string sky_path = std::string(D2PS_DATA_DIR) + "/sky12.txt";
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::string method = "d2ps";
};

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("--config", a.config_path, "scenario config JSON");
    cmd->add_option("--sky", a.sky_path, "sky-view file (id elevation_deg azimuth_deg)");
    cmd->add_option("--out", a.out_dir, "output directory");
    cmd->add_option("--seed", a.seed, "master seed");
    cmd->add_option("--trials", a.trials, "Monte Carlo trials");
    cmd->add_option("--method", a.method, "d2ps|glrt|both");
}

d2ps::ScenarioConfig load_cfg(const CommonArgs& a) {
    return a.config_path.empty() ? d2ps::ScenarioConfig{} : d2ps::load_scenario(a.config_path);
}

std::string out_path(const CommonArgs& a, const std::string& name) {
    std::filesystem::create_directories(a.out_dir);
    return (std::filesystem::path(a.out_dir) / name).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crowdsourced double-differential pseudorange spoofing detection"};
    app.require_subcommand(1);

    CommonArgs a;
    bool resize = false;
    std::size_t grid_div = 5, cell_threshold = 4;
    std::vector<double> fa_list{0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1};
    std::vector<double> alpha_list{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    std::vector<std::size_t> sats_list;
    std::vector<std::size_t> m_list{10, 25, 50, 100};
    std::size_t bench_k = 5;

    auto* simulate = app.add_subcommand("simulate", "synthesize one world, dump measurements");
    add_common(simulate, a);
    auto* detect_cmd = app.add_subcommand("detect", "measurements -> decisions");
    add_common(detect_cmd, a);
    detect_cmd->add_flag("--resize", resize, "partition the ROI and detect per enclosed region");
    detect_cmd->add_option("--grid-divisions", grid_div, "cells per axis");
    detect_cmd->add_option("--cell-threshold", cell_threshold, "min receivers above which a cell is active");
    auto* variance = app.add_subcommand("variance", "print variance predictions");
    add_common(variance, a);
    auto* roc = app.add_subcommand("roc", "detection probability vs false-alarm");
    add_common(roc, a);
    roc->add_option("--fa", fa_list, "false-alarm grid")->delimiter(',');
    auto* partial = app.add_subcommand("partial-sweep", "sweep spoofed fraction / satellites");
    add_common(partial, a);
    partial->add_option("--alphas", alpha_list, "spoofed receiver fractions")->delimiter(',');
    partial->add_option("--sats", sats_list, "spoofed satellite counts")->delimiter(',');
    auto* bench = app.add_subcommand("bench", "runtime comparison of both methods");
    add_common(bench, a);
    bench->add_option("--m", m_list, "receiver counts")->delimiter(',');
    bench->add_option("--k", bench_k, "epochs");
    auto* reproduce = app.add_subcommand("reproduce", "run every acceptance criterion");
    add_common(reproduce, a);
    auto* histogram = app.add_subcommand("histogram", "sample histogram vs predicted density");
    add_common(histogram, a);

    CLI11_PARSE(app, argc, argv);

    try {
        const d2ps::SkyView sky = d2ps::load_sky(a.sky_path);
        const d2ps::ScenarioConfig cfg = load_cfg(a);

        if (simulate->parsed()) {
            const auto world = d2ps::synthesize_trial(cfg, sky, a.seed);
            d2ps::write_measurements_csv(out_path(a, "measurements.csv"), world.epochs, sky);
            d2ps::write_manifest(out_path(a, "manifest.json"), cfg, a.seed, 1, "simulate");
            std::printf("wrote %s\n", out_path(a, "measurements.csv").c_str());
        } else if (detect_cmd->parsed()) {
            const auto world = d2ps::synthesize_trial(cfg, sky, a.seed);
            std::vector<d2ps::DetectionReport> reports;
            if (resize) {
                auto grid = d2ps::map_and_tag(d2ps::partition(cfg.roi, grid_div, grid_div),
                                              world.receivers, cell_threshold);
                const auto regions = d2ps::enclose(grid);
                const auto inputs = d2ps::per_region_detection_inputs(regions, world.epochs);
                std::vector<d2ps::EnclosedRegion> kept;
                std::vector<d2ps::Decision> decisions;
                int rid = 0;
                for (const auto& in : inputs) {
                    const auto set = d2ps::build_d2ps(in.epochs, sky, world.run_seed);
                    const double s2 = d2ps::variance_h0(in.region.bounds.dx(),
                                                        in.region.bounds.dy(), sky)
                                          .sigma2;
                    reports.push_back(d2ps::detect(set, s2, cfg.epsilon, rid++));
                    kept.push_back(in.region);
                    decisions.push_back(reports.back().decision);
                }
                if (inputs.empty())
                    std::fprintf(stderr,
                                 "no grid cell exceeded the receiver threshold; nothing to test\n");
                d2ps::write_resize_csv(out_path(a, "resize_report.csv"), kept, decisions);
            } else {
                const auto set = d2ps::build_d2ps(world.epochs, sky, world.run_seed);
                reports.push_back(
                    d2ps::detect(set, d2ps::d2ps_h0_variance(cfg, sky), cfg.epsilon, 0));
            }
            d2ps::write_detection_csv(out_path(a, "detection.csv"), reports);
            d2ps::write_manifest(out_path(a, "manifest.json"), cfg, a.seed, 1, "detect");
            for (const auto& r : reports)
                std::printf("region %d: %s (variance %.3f m², gamma [%.3f, %.3f])\n", r.region_id,
                            d2ps::to_string(r.decision), r.sample_variance, r.thresholds.gamma1,
                            r.thresholds.gamma2);
        } else if (variance->parsed()) {
            const double h0 = d2ps::d2ps_h0_variance(cfg, sky);
            const double h1 = d2ps::variance_h1(cfg.noise.sigma_rho, cfg.k_epochs).sigma2;
            std::printf("spoofing-free sigma^2: %.6f m²\n", h0);
            std::printf("fully-spoofed sigma^2: %.6f m²\n", h1);
            const double alpha = cfg.spoofer.spoofed_fraction;
            const double h2 = d2ps::variance_h2(alpha, cfg.roi, cfg.spoofer.counterfeit_position,
                                                sky, cfg.noise.sigma_rho)
                                  .sigma2;
            std::printf("partially-spoofed sigma^2 (alpha=%.3f): %.6f m²\n", alpha, h2);
            if (cfg.spoofer.spoofed_satellite_count >= 0) {
                const double hp =
                    d2ps::variance_partial_sats(
                        std::size_t(cfg.spoofer.spoofed_satellite_count), sky.size(), h0,
                        cfg.noise.sigma_rho)
                        .sigma2;
                std::printf("partial-satellite sigma^2 (%d of %zu): %.6f m²\n",
                            cfg.spoofer.spoofed_satellite_count, sky.size(), hp);
            }
        } else if (roc->parsed()) {
            d2ps::ExperimentSpec spec;
            spec.scenario = cfg;
            spec.method = d2ps::method_from_string(a.method);
            spec.trials = a.trials;
            spec.master_seed = a.seed;
            const auto rows = d2ps::roc_sweep(spec, fa_list, sky);
            d2ps::write_roc_csv(out_path(a, "roc.csv"), rows);
            d2ps::write_manifest(out_path(a, "manifest.json"), cfg, a.seed, a.trials, a.method);
            std::printf("wrote %s\n", out_path(a, "roc.csv").c_str());
        } else if (partial->parsed()) {
            d2ps::ExperimentSpec spec;
            spec.scenario = cfg;
            spec.method = d2ps::method_from_string(a.method);
            spec.trials = a.trials;
            spec.master_seed = a.seed;
            spec.grid.clear();
            if (!sats_list.empty())
                for (const std::size_t s : sats_list)
                    spec.grid.push_back({{"spoofed_sats", double(s)}, {"alpha", 1.0}});
            else
                for (const double al : alpha_list) spec.grid.push_back({{"alpha", al}});
            const auto rows = d2ps::run_experiment(spec, sky);
            d2ps::write_sweep_csv(out_path(a, "sweep.csv"), rows);
            d2ps::write_manifest(out_path(a, "manifest.json"), cfg, a.seed, a.trials, a.method);
            std::printf("wrote %s\n", out_path(a, "sweep.csv").c_str());
        } else if (bench->parsed()) {
            const auto rows = d2ps::timing_benchmark(m_list, sky, bench_k, a.trials, cfg, a.seed);
            d2ps::write_timing_csv(out_path(a, "timing.csv"), rows);
            std::printf("wrote %s\n", out_path(a, "timing.csv").c_str());
        } else if (reproduce->parsed()) {
            const auto results = d2ps::criteria::run_all();
            return d2ps::criteria::report(results, stdout) ? 0 : 1;
        } else if (histogram->parsed()) {
            const auto world = d2ps::synthesize_trial(cfg, sky, a.seed);
            const auto set = d2ps::build_d2ps(world.epochs, sky, world.run_seed);
            d2ps::VariancePrediction pred;
            pred.sigma2 = d2ps::d2ps_h0_variance(cfg, sky);
            const auto bins = d2ps::histogram_report(set, pred);
            d2ps::write_histogram_csv(out_path(a, "histogram.csv"), bins);
            std::printf("wrote %s\n", out_path(a, "histogram.csv").c_str());
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
    return 0;
}
