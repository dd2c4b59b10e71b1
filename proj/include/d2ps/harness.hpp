#pragma once
// Experiment machinery: scenario config ingestion, seeded Monte Carlo trials,
// ROC / partial-spoofing sweeps, timing benchmarks, and CSV/manifest emission.
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "d2ps/d2ps.hpp"
#include "d2ps/detector.hpp"
#include "d2ps/glrt.hpp"
#include "d2ps/resize.hpp"
#include "d2ps/scenario.hpp"
#include "d2ps/statmodels.hpp"

namespace d2ps {

// ---------------------------------------------------------------------------
// Scenario configuration
// ---------------------------------------------------------------------------

struct ScenarioConfig {
    RoiBounds roi = RoiBounds::centered(100.0, 100.0);
    SpooferConfig spoofer{};
    NoiseConfig noise{};
    std::size_t n_receivers = 20;
    std::size_t k_epochs = 1;
    double epsilon = 0.01;      // detector false-alarm budget
    double sigma_pos = 5.0;     // reported-position scatter std, meters

    void validate() const {
        roi.validate();
        spoofer.validate();
        noise.validate();
        if (n_receivers < 2) throw std::invalid_argument("scenario: M >= 2");
        if (k_epochs < 1) throw std::invalid_argument("scenario: K >= 1");
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("scenario: epsilon");
        if (sigma_pos < 0.0) throw std::invalid_argument("scenario: sigma_pos");
    }
};

inline const char* to_string(SpoofMode m) {
    switch (m) {
        case SpoofMode::HighPowerDominant: return "high_power_dominant";
        case SpoofMode::ApproachDragOff: return "approach_drag_off";
        default: return "direct_fraction";
    }
}

inline SpoofMode spoof_mode_from_string(const std::string& s) {
    if (s == "high_power_dominant") return SpoofMode::HighPowerDominant;
    if (s == "approach_drag_off") return SpoofMode::ApproachDragOff;
    if (s == "direct_fraction") return SpoofMode::DirectFraction;
    throw std::invalid_argument("unknown spoof mode: " + s);
}

inline nlohmann::json to_json(const ScenarioConfig& c) {
    nlohmann::json j;
    j["roi"] = {{"a1", c.roi.a1}, {"a2", c.roi.a2}, {"b1", c.roi.b1}, {"b2", c.roi.b2}};
    j["spoofer"] = {{"mode", to_string(c.spoofer.mode)},
                    {"spoofer_position", {c.spoofer.spoofer_position.x, c.spoofer.spoofer_position.y}},
                    {"counterfeit_position",
                     {c.spoofer.counterfeit_position.x, c.spoofer.counterfeit_position.y}},
                    {"tx_power_dbm", c.spoofer.tx_power_dbm},
                    {"tx_gain_db", c.spoofer.tx_gain_db},
                    {"rx_gain_spoof_db", c.spoofer.rx_gain_spoof_db},
                    {"rx_gain_auth_db", c.spoofer.rx_gain_auth_db},
                    {"auth_power_dbm", c.spoofer.auth_power_dbm},
                    {"env_loss_db", c.spoofer.env_loss_db},
                    {"sapr_tov_db", c.spoofer.sapr_tov_db},
                    {"sapr_risk_db", c.spoofer.sapr_risk_db},
                    {"wavelength_m", c.spoofer.wavelength_m},
                    {"hardware_delay_s", c.spoofer.hardware_delay_s},
                    {"spoofed_fraction", c.spoofer.spoofed_fraction},
                    {"spoofed_satellite_count", c.spoofer.spoofed_satellite_count}};
    j["noise"] = {{"sigma_rho", c.noise.sigma_rho},
                  {"multipath_enabled", c.noise.multipath_enabled},
                  {"delta_sigma", c.noise.delta_sigma},
                  {"tau_corr_s", c.noise.tau_corr_s},
                  {"tau_d_m", c.noise.tau_d_m},
                  {"theta_spoof_deg", c.noise.theta_spoof_deg},
                  {"epoch_interval_s", c.noise.epoch_interval_s}};
    j["run"] = {{"n_receivers", c.n_receivers},
                {"k_epochs", c.k_epochs},
                {"epsilon", c.epsilon},
                {"sigma_pos", c.sigma_pos}};
    return j;
}

inline ScenarioConfig scenario_from_json(const nlohmann::json& j) {
    ScenarioConfig c;
    if (j.contains("roi")) {
        const auto& r = j.at("roi");
        c.roi.a1 = r.value("a1", c.roi.a1);
        c.roi.a2 = r.value("a2", c.roi.a2);
        c.roi.b1 = r.value("b1", c.roi.b1);
        c.roi.b2 = r.value("b2", c.roi.b2);
    }
    if (j.contains("spoofer")) {
        const auto& s = j.at("spoofer");
        auto& sp = c.spoofer;
        if (s.contains("mode")) sp.mode = spoof_mode_from_string(s.at("mode").get<std::string>());
        if (s.contains("spoofer_position"))
            sp.spoofer_position = {s.at("spoofer_position").at(0).get<double>(),
                                   s.at("spoofer_position").at(1).get<double>()};
        if (s.contains("counterfeit_position"))
            sp.counterfeit_position = {s.at("counterfeit_position").at(0).get<double>(),
                                       s.at("counterfeit_position").at(1).get<double>()};
        sp.tx_power_dbm = s.value("tx_power_dbm", sp.tx_power_dbm);
        sp.tx_gain_db = s.value("tx_gain_db", sp.tx_gain_db);
        sp.rx_gain_spoof_db = s.value("rx_gain_spoof_db", sp.rx_gain_spoof_db);
        sp.rx_gain_auth_db = s.value("rx_gain_auth_db", sp.rx_gain_auth_db);
        sp.auth_power_dbm = s.value("auth_power_dbm", sp.auth_power_dbm);
        sp.env_loss_db = s.value("env_loss_db", sp.env_loss_db);
        sp.sapr_tov_db = s.value("sapr_tov_db", sp.sapr_tov_db);
        sp.sapr_risk_db = s.value("sapr_risk_db", sp.sapr_risk_db);
        sp.wavelength_m = s.value("wavelength_m", sp.wavelength_m);
        sp.hardware_delay_s = s.value("hardware_delay_s", sp.hardware_delay_s);
        sp.spoofed_fraction = s.value("spoofed_fraction", sp.spoofed_fraction);
        sp.spoofed_satellite_count =
            s.value("spoofed_satellite_count", sp.spoofed_satellite_count);
    }
    if (j.contains("noise")) {
        const auto& n = j.at("noise");
        auto& nc = c.noise;
        nc.sigma_rho = n.value("sigma_rho", nc.sigma_rho);
        nc.multipath_enabled = n.value("multipath_enabled", nc.multipath_enabled);
        nc.delta_sigma = n.value("delta_sigma", nc.delta_sigma);
        nc.tau_corr_s = n.value("tau_corr_s", nc.tau_corr_s);
        nc.tau_d_m = n.value("tau_d_m", nc.tau_d_m);
        nc.theta_spoof_deg = n.value("theta_spoof_deg", nc.theta_spoof_deg);
        nc.epoch_interval_s = n.value("epoch_interval_s", nc.epoch_interval_s);
    }
    if (j.contains("run")) {
        const auto& r = j.at("run");
        c.n_receivers = r.value("n_receivers", c.n_receivers);
        c.k_epochs = r.value("k_epochs", c.k_epochs);
        c.epsilon = r.value("epsilon", c.epsilon);
        c.sigma_pos = r.value("sigma_pos", c.sigma_pos);
    }
    c.validate();
    return c;
}

inline ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j;
    in >> j;
    return scenario_from_json(j);
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t config_hash(const ScenarioConfig& c) { return fnv1a64(to_json(c).dump()); }

// ---------------------------------------------------------------------------
// Single-trial pipelines
// ---------------------------------------------------------------------------

struct TrialWorld {
    std::vector<ReceiverTruth> receivers;
    std::vector<EpochMeasurements> epochs;
    std::uint64_t run_seed = 0;  // permutation stream seed for this trial
};

// World synthesis and permutation streams are split so the same world can be
// re-processed (e.g. both methods on identical measurements).
inline TrialWorld synthesize_trial(const ScenarioConfig& cfg, const SkyView& sky,
                                   std::uint64_t trial_seed) {
    cfg.validate();
    TrialWorld w;
    Rng rng(derive_seed(trial_seed, 0x01));
    w.receivers = place_receivers(cfg.roi, cfg.n_receivers, rng);
    assign_spoofed(w.receivers, cfg.spoofer, rng);
    scatter_reported_positions(w.receivers, cfg.spoofer, cfg.sigma_pos, rng);
    w.epochs = synthesize_epochs(w.receivers, sky, cfg.spoofer, cfg.noise, cfg.k_epochs, rng);
    w.run_seed = derive_seed(trial_seed, 0x02);
    return w;
}

inline double d2ps_h0_variance(const ScenarioConfig& cfg, const SkyView& sky) {
    return variance_h0(cfg.roi.dx(), cfg.roi.dy(), sky).sigma2;
}

inline DetectionReport run_d2ps_trial(const ScenarioConfig& cfg, const SkyView& sky,
                                      std::uint64_t trial_seed) {
    const TrialWorld w = synthesize_trial(cfg, sky, trial_seed);
    const D2psSampleSet set = build_d2ps(w.epochs, sky, w.run_seed);
    return detect(set, d2ps_h0_variance(cfg, sky), cfg.epsilon, 0);
}

inline GlrtOutcome run_glrt_trial(const ScenarioConfig& cfg, const SkyView& sky,
                                  std::uint64_t trial_seed, const GlrtConfig& glrt_cfg) {
    const TrialWorld w = synthesize_trial(cfg, sky, trial_seed);
    return glrt_detect(w.epochs, sky, glrt_cfg);
}

// ---------------------------------------------------------------------------
// Monte Carlo runner
// ---------------------------------------------------------------------------

enum class Method { D2ps, Glrt, Both };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::D2ps: return "d2ps";
        case Method::Glrt: return "glrt";
        default: return "both";
    }
}

inline Method method_from_string(const std::string& s) {
    if (s == "d2ps") return Method::D2ps;
    if (s == "glrt") return Method::Glrt;
    if (s == "both") return Method::Both;
    throw std::invalid_argument("unknown method: " + s);
}

// One grid point of a sweep: named overrides applied to the base scenario.
// Supported keys: fa (epsilon), alpha, d (square ROI side), m, k, sigma_rho,
// delta_sigma, spoofed_sats, pf_ratio (|p_f| = ratio * d along +x).
using GridPoint = std::map<std::string, double>;

inline ScenarioConfig apply_grid_point(ScenarioConfig cfg, const GridPoint& p) {
    for (const auto& [key, v] : p) {
        if (key == "fa") {
            cfg.epsilon = v;
        } else if (key == "alpha") {
            cfg.spoofer.mode = SpoofMode::DirectFraction;
            cfg.spoofer.spoofed_fraction = v;
        } else if (key == "d") {
            cfg.roi = RoiBounds::centered(v, v);
        } else if (key == "m") {
            cfg.n_receivers = static_cast<std::size_t>(v);
        } else if (key == "k") {
            cfg.k_epochs = static_cast<std::size_t>(v);
        } else if (key == "sigma_rho") {
            cfg.noise.sigma_rho = v;
        } else if (key == "delta_sigma") {
            cfg.noise.multipath_enabled = v > 0.0;
            cfg.noise.delta_sigma = v;
        } else if (key == "spoofed_sats") {
            cfg.spoofer.spoofed_satellite_count = static_cast<int>(v);
        } else if (key == "pf_ratio") {
            const double d = cfg.roi.dx();
            cfg.spoofer.counterfeit_position = {v * d, 0.0};
        } else {
            throw std::invalid_argument("unknown grid key: " + key);
        }
    }
    return cfg;
}

struct ExperimentSpec {
    ScenarioConfig scenario{};
    Method method = Method::D2ps;
    std::vector<GridPoint> grid{GridPoint{}};  // default: single point, no overrides
    std::size_t trials = 1000;
    std::uint64_t master_seed = 0;
    GlrtConfig glrt{};
    std::size_t threads = 0;  // 0: hardware concurrency

    void validate() const {
        if (grid.empty()) throw std::invalid_argument("experiment: empty grid");
        if (trials < 1) throw std::invalid_argument("experiment: trials >= 1");
    }
};

struct ResultRow {
    GridPoint point;
    std::string method;
    std::size_t trials = 0;
    std::size_t n_h0 = 0, n_h1 = 0, n_h2 = 0;
    bool skipped = false;
    std::string skip_reason;
    double mean_seconds = 0.0;

    double pd_h1() const { return trials ? double(n_h1) / double(trials) : 0.0; }
    double pd_h2() const { return trials ? double(n_h2) / double(trials) : 0.0; }
    double pd_non_h0() const { return trials ? double(n_h1 + n_h2) / double(trials) : 0.0; }
};

// Deterministic trial loop: results land in a per-trial slot regardless of the
// thread that computed them, so parallel and serial runs agree exactly.
inline void for_each_trial(std::size_t trials, std::size_t threads,
                           const std::function<void(std::size_t)>& body) {
    std::size_t n_threads = threads ? threads : std::thread::hardware_concurrency();
    if (n_threads < 1) n_threads = 1;
    if (n_threads == 1 || trials < 2) {
        for (std::size_t t = 0; t < trials; ++t) body(t);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n_threads);
    pool.reserve(n_threads);
    for (std::size_t w = 0; w < n_threads; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) body(t);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const SkyView& sky) {
    spec.validate();
    std::vector<ResultRow> rows;
    for (std::size_t g = 0; g < spec.grid.size(); ++g) {
        const GridPoint& point = spec.grid[g];
        std::vector<Method> methods;
        if (spec.method == Method::Both)
            methods = {Method::D2ps, Method::Glrt};
        else
            methods = {spec.method};
        for (Method method : methods) {
            ResultRow row;
            row.point = point;
            row.method = to_string(method);
            row.trials = spec.trials;
            ScenarioConfig cfg;
            try {
                cfg = apply_grid_point(spec.scenario, point);
                cfg.validate();
            } catch (const std::exception& ex) {
                row.skipped = true;
                row.skip_reason = ex.what();
                row.trials = 0;
                rows.push_back(std::move(row));
                continue;
            }
            GlrtConfig gcfg = spec.glrt;
            gcfg.sigma_rho = cfg.noise.sigma_rho > 0.0 ? cfg.noise.sigma_rho : gcfg.sigma_rho;
            gcfg.k = cfg.k_epochs;
            std::vector<Decision> decisions(spec.trials);
            const auto t0 = std::chrono::steady_clock::now();
            for_each_trial(spec.trials, spec.threads, [&](std::size_t t) {
                const std::uint64_t seed = derive_seed(spec.master_seed, g, t);
                decisions[t] = method == Method::D2ps
                                   ? run_d2ps_trial(cfg, sky, seed).decision
                                   : run_glrt_trial(cfg, sky, seed, gcfg).decision;
            });
            const auto t1 = std::chrono::steady_clock::now();
            row.mean_seconds =
                std::chrono::duration<double>(t1 - t0).count() / double(spec.trials);
            for (Decision d : decisions) {
                if (d == Decision::H0SpoofingFree)
                    ++row.n_h0;
                else if (d == Decision::H1FullySpoofed)
                    ++row.n_h1;
                else
                    ++row.n_h2;
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

// ROC sweep with the fully-spoofed detection probability per FA value.
inline std::vector<ResultRow> roc_sweep(ExperimentSpec spec, const std::vector<double>& fa_list,
                                        const SkyView& sky) {
    spec.grid.clear();
    for (double fa : fa_list) spec.grid.push_back({{"fa", fa}});
    return run_experiment(spec, sky);
}

// ---------------------------------------------------------------------------
// Timing benchmark
// ---------------------------------------------------------------------------

struct TimingRow {
    std::string method;
    std::size_t m = 0;
    double mean_seconds = 0.0;
};

// Median of 5 repetitions of the per-trial mean, per method and M.
inline std::vector<TimingRow> timing_benchmark(const std::vector<std::size_t>& m_list,
                                               const SkyView& sky, std::size_t k,
                                               std::size_t trials, const ScenarioConfig& base,
                                               std::uint64_t master_seed,
                                               const GlrtConfig& glrt_cfg = {}) {
    std::vector<TimingRow> rows;
    if (trials == 0) return rows;
    constexpr int kReps = 5;
    for (std::size_t m : m_list) {
        ScenarioConfig cfg = base;
        cfg.n_receivers = m;
        cfg.k_epochs = k;
        GlrtConfig gcfg = glrt_cfg;
        gcfg.sigma_rho = cfg.noise.sigma_rho > 0.0 ? cfg.noise.sigma_rho : gcfg.sigma_rho;
        gcfg.k = k;
        for (Method method : {Method::D2ps, Method::Glrt}) {
            std::vector<double> reps(kReps);
            for (int r = 0; r < kReps; ++r) {
                const auto t0 = std::chrono::steady_clock::now();
                for (std::size_t t = 0; t < trials; ++t) {
                    const std::uint64_t seed = derive_seed(master_seed, m, std::size_t(r), t);
                    if (method == Method::D2ps)
                        (void)run_d2ps_trial(cfg, sky, seed);
                    else
                        (void)run_glrt_trial(cfg, sky, seed, gcfg);
                }
                const auto t1 = std::chrono::steady_clock::now();
                reps[r] = std::chrono::duration<double>(t1 - t0).count() / double(trials);
            }
            std::nth_element(reps.begin(), reps.begin() + kReps / 2, reps.end());
            rows.push_back({to_string(method), m, reps[kReps / 2]});
        }
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Histogram report
// ---------------------------------------------------------------------------

struct HistogramBin {
    double lo = 0.0, hi = 0.0;
    std::size_t count = 0;
    double predicted_density = 0.0;  // N(0, sigma2) at the bin center
};

inline std::vector<HistogramBin> histogram_report(const D2psSampleSet& set,
                                                  const VariancePrediction& prediction,
                                                  std::size_t n_bins = 50) {
    if (set.samples.empty()) throw std::invalid_argument("histogram: empty sample set");
    if (n_bins < 1) throw std::invalid_argument("histogram: n_bins >= 1");
    double lo = set.samples[0], hi = set.samples[0];
    for (double s : set.samples) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (hi <= lo) hi = lo + 1.0;  // degenerate all-equal set: one occupied bin
    const double w = (hi - lo) / double(n_bins);
    std::vector<HistogramBin> bins(n_bins);
    const double sigma = std::sqrt(prediction.sigma2);
    for (std::size_t b = 0; b < n_bins; ++b) {
        bins[b].lo = lo + double(b) * w;
        bins[b].hi = lo + double(b + 1) * w;
        const double c = 0.5 * (bins[b].lo + bins[b].hi);
        bins[b].predicted_density =
            sigma > 0.0
                ? std::exp(-0.5 * c * c / prediction.sigma2) / (sigma * std::sqrt(2.0 * kPi))
                : 0.0;
    }
    for (double s : set.samples) {
        auto b = static_cast<std::size_t>((s - lo) / w);
        if (b >= n_bins) b = n_bins - 1;
        ++bins[b].count;
    }
    return bins;
}

// Kolmogorov-Smirnov distance of samples against N(0, sigma2).
inline double ks_distance_normal(std::vector<double> samples, double sigma2) {
    if (samples.empty()) throw std::invalid_argument("ks: empty sample set");
    if (!(sigma2 > 0.0)) throw std::invalid_argument("ks: sigma2 > 0");
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    const double s = std::sqrt(sigma2);
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double cdf = 0.5 * std::erfc(-samples[i] / (s * std::sqrt(2.0)));
        d = std::max(d, std::abs(cdf - double(i) / n));
        d = std::max(d, std::abs(cdf - double(i + 1) / n));
    }
    return d;
}

// Asymptotic KS critical value: c(alpha) / sqrt(n), c(0.01) = 1.628.
inline double ks_critical(double alpha, std::size_t n) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    return c / std::sqrt(double(n));
}

// ---------------------------------------------------------------------------
// CSV / manifest emission
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

inline void write_roc_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "method,fa,pd\n";
    for (const auto& r : rows) {
        if (r.skipped) continue;
        const auto it = r.point.find("fa");
        const double fa = it == r.point.end() ? 0.0 : it->second;
        out << r.method << ',' << format_double(fa) << ',' << format_double(r.pd_h1()) << '\n';
    }
}

inline void write_sweep_csv(const std::string& path, const std::vector<ResultRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    // union of grid keys, in sorted order, for a stable header
    std::map<std::string, bool> keys;
    for (const auto& r : rows)
        for (const auto& [k, v] : r.point) keys[k] = true;
    out << "method";
    for (const auto& [k, _] : keys) out << ',' << k;
    out << ",trials,n_h0,n_h1,n_h2,pd_h1,pd_h2,pd_non_h0,mean_seconds,skipped\n";
    for (const auto& r : rows) {
        out << r.method;
        for (const auto& [k, _] : keys) {
            const auto it = r.point.find(k);
            out << ',' << (it == r.point.end() ? "" : format_double(it->second));
        }
        out << ',' << r.trials << ',' << r.n_h0 << ',' << r.n_h1 << ',' << r.n_h2 << ','
            << format_double(r.pd_h1()) << ',' << format_double(r.pd_h2()) << ','
            << format_double(r.pd_non_h0()) << ',' << format_double(r.mean_seconds) << ','
            << (r.skipped ? r.skip_reason : "") << '\n';
    }
}

inline void write_timing_csv(const std::string& path, const std::vector<TimingRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "method,M,mean_seconds\n";
    for (const auto& r : rows)
        out << r.method << ',' << r.m << ',' << format_double(r.mean_seconds) << '\n';
}

inline void write_histogram_csv(const std::string& path, const std::vector<HistogramBin>& bins) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "bin_lo,bin_hi,count,predicted_density\n";
    for (const auto& b : bins)
        out << format_double(b.lo) << ',' << format_double(b.hi) << ',' << b.count << ','
            << format_double(b.predicted_density) << '\n';
}

inline void write_measurements_csv(const std::string& path,
                                   const std::vector<EpochMeasurements>& epochs,
                                   const SkyView& sky) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "epoch,receiver_id,satellite_id,pseudorange_m\n";
    for (const auto& ep : epochs)
        for (std::size_t n = 0; n < ep.n_receivers; ++n)
            for (std::size_t i = 0; i < ep.n_satellites; ++i)
                out << ep.epoch_index << ',' << n << ',' << sky.satellites[i].id << ','
                    << format_double(ep.rho(n, i)) << '\n';
}

inline void write_resize_csv(const std::string& path, const std::vector<EnclosedRegion>& regions,
                             const std::vector<Decision>& decisions) {
    if (regions.size() != decisions.size())
        throw std::invalid_argument("resize csv: regions/decisions size mismatch");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "region_id,x_lo,x_hi,y_lo,y_hi,n_receivers,decision\n";
    for (std::size_t r = 0; r < regions.size(); ++r)
        out << r << ',' << format_double(regions[r].bounds.a1) << ','
            << format_double(regions[r].bounds.a2) << ',' << format_double(regions[r].bounds.b1)
            << ',' << format_double(regions[r].bounds.b2) << ',' << regions[r].receiver_ids.size()
            << ',' << to_string(decisions[r]) << '\n';
}

inline void write_detection_csv(const std::string& path,
                                const std::vector<DetectionReport>& reports) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "region_id,variance_m2,gamma1,gamma2,decision,pd_h1_pred,pd_h2_pred\n";
    for (const auto& r : reports)
        out << r.region_id << ',' << format_double(r.sample_variance) << ','
            << format_double(r.thresholds.gamma1) << ',' << format_double(r.thresholds.gamma2)
            << ',' << to_string(r.decision) << ',' << format_double(r.predicted_pd_h1) << ','
            << format_double(r.predicted_pd_h2) << '\n';
}

inline void write_manifest(const std::string& path, const ScenarioConfig& cfg,
                           std::uint64_t master_seed, std::size_t trials,
                           const std::string& method) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    nlohmann::json j;
    j["config_hash"] = config_hash(cfg);
    j["master_seed"] = master_seed;
    j["trials"] = trials;
    j["method"] = method;
    j["config"] = to_json(cfg);
    out << j.dump(2) << '\n';
}

}  // namespace d2ps
