#pragma once
// Independent oracles and Monte Carlo helpers backing the acceptance criteria.
// The oracles deliberately avoid the production formulas: plain quadrature and
// exhaustive enumeration only.
#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "d2ps/harness.hpp"

namespace d2ps::criteria {

inline double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (const double x : v) acc += x;
    return acc / double(v.size());
}

// Sample variance of one synthesized world per trial, deterministic in seed.
inline std::vector<double> trial_variances(const ScenarioConfig& cfg, const SkyView& sky,
                                           std::size_t trials, std::uint64_t seed,
                                           std::size_t threads = 0) {
    std::vector<double> out(trials);
    for_each_trial(trials, threads, [&](std::size_t t) {
        const TrialWorld w = synthesize_trial(cfg, sky, derive_seed(seed, t));
        out[t] = sample_variance(build_d2ps(w.epochs, sky, w.run_seed));
    });
    return out;
}

inline std::vector<GlrtOutcome> glrt_trials(const ScenarioConfig& cfg, const SkyView& sky,
                                            const GlrtConfig& gc, std::size_t trials,
                                            std::uint64_t seed, std::size_t threads = 0) {
    std::vector<GlrtOutcome> out(trials);
    for_each_trial(trials, threads, [&](std::size_t t) {
        out[t] = run_glrt_trial(cfg, sky, derive_seed(seed, t), gc);
    });
    return out;
}

// ---------------------------------------------------------------------------
// Quadrature oracle for the triangle-sum density
// ---------------------------------------------------------------------------

// Simpson integration of f over [a, b] with a fixed panel count.
template <class F>
inline double simpson(const F& f, double a, double b, int panels) {
    if (b <= a) return 0.0;
    const double h = (b - a) / double(panels);
    double acc = f(a) + f(b);
    for (int i = 1; i < panels; ++i) acc += f(a + h * double(i)) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// Direct convolution integral of the two centered triangle densities, split at
// every kink so the quadrature is exact for the piecewise-quadratic integrand.
inline double sum_pdf_quadrature(double h, double dex, double dey) {
    auto tri = [](double x, double d) {
        const double a = std::abs(x);
        return a >= d ? 0.0 : (d - a) / (d * d);
    };
    const double lo = std::max(-dex, h - dey);
    const double hi = std::min(dex, h + dey);
    if (hi <= lo) return 0.0;
    std::vector<double> cuts{lo, hi};
    for (const double c : {0.0, h})
        if (c > lo && c < hi) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        acc += simpson([&](double x) { return tri(x, dex) * tri(h - x, dey); }, cuts[i],
                       cuts[i + 1], 2);
    return acc;
}

// Integral and second moment of the production density, split at its kinks.
inline std::pair<double, double> sum_pdf_moments(double dex, double dey) {
    std::set<double> cut_set{0.0};
    for (const double c : {dex, dey, std::abs(dex - dey), dex + dey}) {
        cut_set.insert(c);
        cut_set.insert(-c);
    }
    const std::vector<double> cuts(cut_set.begin(), cut_set.end());
    double integral = 0.0, second = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        integral += simpson([&](double h) { return sum_pdf(h, dex, dey); }, cuts[i], cuts[i + 1],
                            256);
        second += simpson([&](double h) { return h * h * sum_pdf(h, dex, dey); }, cuts[i],
                          cuts[i + 1], 256);
    }
    return {integral, second};
}

// ---------------------------------------------------------------------------
// Quadrature oracle for the chi-squared quantile
// ---------------------------------------------------------------------------

inline double chi2_pdf_direct(double x, int m) {
    if (x <= 0.0) return 0.0;
    const double k2 = 0.5 * double(m);
    return std::exp((k2 - 1.0) * std::log(x) - 0.5 * x - k2 * std::log(2.0) - std::lgamma(k2));
}

inline double chi2_inv_quadrature(double p, int m) {
    auto cdf = [&](double x) {
        return simpson([&](double t) { return chi2_pdf_direct(t, m); }, 0.0, x, 1 << 14);
    };
    double lo = 0.0, hi = 10.0 * double(m) + 100.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Exhaustive maximal-rectangle oracle
// ---------------------------------------------------------------------------

using RectKey = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;

// All all-active rectangles not strictly contained in another all-active one.
inline std::set<RectKey> oracle_maximal_rectangles(const GridPartition& grid) {
    std::vector<RectKey> active_rects;
    auto all_active = [&](std::size_t x0, std::size_t x1, std::size_t y0, std::size_t y1) {
        for (std::size_t iy = y0; iy <= y1; ++iy)
            for (std::size_t ix = x0; ix <= x1; ++ix)
                if (!grid.cell(ix, iy).active) return false;
        return true;
    };
    for (std::size_t x0 = 0; x0 < grid.nx; ++x0)
        for (std::size_t x1 = x0; x1 < grid.nx; ++x1)
            for (std::size_t y0 = 0; y0 < grid.ny; ++y0)
                for (std::size_t y1 = y0; y1 < grid.ny; ++y1)
                    if (all_active(x0, x1, y0, y1)) active_rects.emplace_back(x0, x1, y0, y1);
    std::set<RectKey> maximal;
    for (const auto& a : active_rects) {
        bool contained = false;
        for (const auto& b : active_rects) {
            if (a == b) continue;
            if (std::get<0>(b) <= std::get<0>(a) && std::get<1>(b) >= std::get<1>(a) &&
                std::get<2>(b) <= std::get<2>(a) && std::get<3>(b) >= std::get<3>(a)) {
                contained = true;
                break;
            }
        }
        if (!contained) maximal.insert(a);
    }
    return maximal;
}

inline bool same_regions(const std::vector<EnclosedRegion>& regions,
                         const std::set<RectKey>& oracle) {
    std::set<RectKey> got;
    for (const auto& r : regions) got.emplace(r.x0, r.x1, r.y0, r.y1);
    return got == oracle;
}

}  // namespace d2ps::criteria
