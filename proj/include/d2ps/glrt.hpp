#pragma once
// Differential-pseudorange GLRT baseline: per (receiver pair, satellite pair)
// chi-squared tests over K epochs and a 90% voting aggregation.
#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "d2ps/chi2.hpp"
#include "d2ps/detector.hpp"
#include "d2ps/scenario.hpp"

namespace d2ps {

struct GlrtConfig {
    double sigma_rho = 5.0;
    double fa_pair = 0.01;   // per-pair false alarm
    double vote_high = 0.9;  // H1 fraction needed for global H1
    double vote_low = 0.9;   // H0 fraction needed for global H0
    std::size_t k = 1;

    void validate() const {
        if (!(sigma_rho > 0.0)) throw std::invalid_argument("glrt: sigma_rho must be > 0");
        if (!(fa_pair > 0.0 && fa_pair < 1.0)) throw std::invalid_argument("glrt: fa_pair");
        if (!(vote_high > 0.5 && vote_high <= 1.0) || !(vote_low > 0.5 && vote_low <= 1.0))
            throw std::invalid_argument("glrt: vote fractions in (0.5, 1]");
    }
};

// H1 vote: the K-epoch DDP sum is consistent with pure noise.
// T = (Σ_k ddp_k)² / (K·4σ_ρ²) ~ χ²₁ when both receivers are spoofed.
// Computed the way the baseline does: the satellite pair's two SDP streams are
// correlated over all epoch pairs, i.e. four K×K quadratic forms per test
// (~4K(K+2) additions and multiplications, the baseline's published cost).
inline bool glrt_pair_test(const std::vector<double>& sdp_i, const std::vector<double>& sdp_j,
                           const GlrtConfig& cfg, double threshold) {
    const std::size_t k = sdp_i.size();
    if (k == 0) throw std::invalid_argument("glrt_pair_test: K >= 1");
    if (sdp_j.size() != k) throw std::invalid_argument("glrt_pair_test: series length mismatch");
    double qii = 0.0, qij = 0.0, qji = 0.0, qjj = 0.0;
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            qii += sdp_i[a] * sdp_i[b];
            qij += sdp_i[a] * sdp_j[b];
            qji += sdp_j[a] * sdp_i[b];
            qjj += sdp_j[a] * sdp_j[b];
        }
    const double t = (qii - qij - qji + qjj) /
                     (static_cast<double>(k) * 4.0 * cfg.sigma_rho * cfg.sigma_rho);
    return t <= threshold;
}

// Convenience form on an already-differenced DDP series.
inline bool glrt_pair_test(const std::vector<double>& ddp_series, const GlrtConfig& cfg,
                           double threshold) {
    return glrt_pair_test(ddp_series, std::vector<double>(ddp_series.size(), 0.0), cfg, threshold);
}

inline double glrt_pair_threshold(const GlrtConfig& cfg) {
    cfg.validate();
    return chi2_inv(1.0 - cfg.fa_pair, 1);
}

struct GlrtOutcome {
    std::size_t n_tests = 0;
    std::size_t n_h1_votes = 0;
    Decision decision = Decision::H0SpoofingFree;

    double h1_fraction() const {
        return n_tests ? static_cast<double>(n_h1_votes) / static_cast<double>(n_tests) : 0.0;
    }
};

inline Decision glrt_aggregate_decision(std::size_t h1_votes, std::size_t n_tests,
                                        const GlrtConfig& cfg) {
    if (n_tests == 0) throw std::invalid_argument("glrt_aggregate: no votes");
    const double f1 = static_cast<double>(h1_votes) / static_cast<double>(n_tests);
    if (f1 >= cfg.vote_high) return Decision::H1FullySpoofed;
    if (1.0 - f1 >= cfg.vote_low) return Decision::H0SpoofingFree;
    return Decision::H2PartiallySpoofed;
}

// Full baseline over K epochs of measurements.
inline GlrtOutcome glrt_detect(const std::vector<EpochMeasurements>& epochs, const SkyView& sky,
                               const GlrtConfig& cfg) {
    cfg.validate();
    if (epochs.empty()) throw std::invalid_argument("glrt_detect: no epochs");
    const std::size_t m = epochs.front().n_receivers;
    const std::size_t j = epochs.front().n_satellites;
    if (sky.size() != j) throw std::invalid_argument("glrt_detect: sky mismatch");
    const double th = glrt_pair_threshold(cfg);
    const auto sat_pairs = sky.pairs();

    GlrtOutcome out;
    std::vector<double> series_i(epochs.size()), series_j(epochs.size());
    for (std::size_t n = 0; n < m; ++n)
        for (std::size_t mm = n + 1; mm < m; ++mm)
            for (const auto& [si, sj] : sat_pairs) {
                for (std::size_t e = 0; e < epochs.size(); ++e) {
                    const auto& ep = epochs[e];
                    series_i[e] = ep.rho(n, si) - ep.rho(mm, si);
                    series_j[e] = ep.rho(n, sj) - ep.rho(mm, sj);
                }
                ++out.n_tests;
                if (glrt_pair_test(series_i, series_j, cfg, th)) ++out.n_h1_votes;
            }
    out.decision = glrt_aggregate_decision(out.n_h1_votes, out.n_tests, cfg);
    return out;
}

// Predicted H1 vote fraction: T = α(α − 1/M)/(1 − 1/M), clipped to [0,1].
inline double glrt_predicted_fraction(double alpha, std::size_t m) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha in [0,1]");
    if (m < 2) throw std::invalid_argument("M >= 2");
    const double inv_m = 1.0 / static_cast<double>(m);
    const double t = alpha * (alpha - inv_m) / (1.0 - inv_m);
    return std::clamp(t, 0.0, 1.0);
}

}  // namespace d2ps
