#pragma once
// Tri-level variance detector: sample variance, chi-squared thresholds, decision
// rule, and predicted detection probabilities.
#include <cmath>
#include <stdexcept>
#include <string>

#include "d2ps/chi2.hpp"
#include "d2ps/d2ps.hpp"

namespace d2ps {

enum class Decision { H0SpoofingFree, H1FullySpoofed, H2PartiallySpoofed };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::H0SpoofingFree: return "H0";
        case Decision::H1FullySpoofed: return "H1";
        case Decision::H2PartiallySpoofed: return "H2";
    }
    return "?";
}

struct Thresholds {
    double gamma1 = 0.0;  // m²
    double gamma2 = 0.0;  // m²
    double epsilon = 0.0;
    std::size_t m = 0;
    double sigma2_h0 = 0.0;
};

// zero-mean estimator: (1/(N−1))·Σ d², no mean subtraction
inline double sample_variance(const D2psSampleSet& set) {
    const std::size_t n = set.samples.size();
    if (n < 2) throw std::invalid_argument("sample_variance: need N >= 2");
    double acc = 0.0;
    for (const double d : set.samples) acc += d * d;
    return acc / static_cast<double>(n - 1);
}

// γ₁ = (σ²/M)·chi2_inv(ε/2, M), γ₂ = (σ²/M)·chi2_inv(1−ε/2, M)
// dof is M: the set is formed by M independent receivers.
inline Thresholds thresholds(double sigma2_h0, std::size_t m, double epsilon) {
    if (!(sigma2_h0 > 0.0)) throw std::invalid_argument("thresholds: sigma2_h0 must be > 0");
    if (m < 2) throw std::invalid_argument("thresholds: M >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("thresholds: eps in (0,1)");
    const int dof = static_cast<int>(m);
    Thresholds th;
    th.gamma1 = sigma2_h0 / static_cast<double>(m) * chi2_inv(0.5 * epsilon, dof);
    th.gamma2 = sigma2_h0 / static_cast<double>(m) * chi2_inv(1.0 - 0.5 * epsilon, dof);
    th.epsilon = epsilon;
    th.m = m;
    th.sigma2_h0 = sigma2_h0;
    return th;
}

inline Decision decide(double sigma2_hat, const Thresholds& th) {
    if (sigma2_hat < th.gamma1) return Decision::H1FullySpoofed;
    if (sigma2_hat > th.gamma2) return Decision::H2PartiallySpoofed;
    return Decision::H0SpoofingFree;
}

struct PredictedPd {
    double pd_h1 = 0.0;
    double pd_h2 = 0.0;
};

// pd_h1 = F(M·γ₁/σ²_h1, M); pd_h2 = 1 − F(M·γ₂/σ²_h2, M)
inline PredictedPd predicted_pd(const Thresholds& th, double sigma2_h1, double sigma2_h2) {
    if (!(sigma2_h1 > 0.0 && sigma2_h2 > 0.0))
        throw std::invalid_argument("predicted_pd: variances must be > 0");
    const double md = static_cast<double>(th.m);
    const int dof = static_cast<int>(th.m);
    return {chi2_cdf(md * th.gamma1 / sigma2_h1, dof),
            1.0 - chi2_cdf(md * th.gamma2 / sigma2_h2, dof)};
}

struct DetectionReport {
    int region_id = 0;
    double sample_variance = 0.0;
    Thresholds thresholds;
    Decision decision = Decision::H0SpoofingFree;
    double predicted_pd_h1 = -1.0;  // <0 when not supplied
    double predicted_pd_h2 = -1.0;
};

inline DetectionReport detect(const D2psSampleSet& set, double sigma2_h0, double epsilon,
                              int region_id = 0) {
    DetectionReport rep;
    rep.region_id = region_id;
    rep.sample_variance = sample_variance(set);
    rep.thresholds = thresholds(sigma2_h0, set.m, epsilon);
    rep.decision = decide(rep.sample_variance, rep.thresholds);
    return rep;
}

}  // namespace d2ps
