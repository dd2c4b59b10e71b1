#pragma once
// Closed-form statistics: triangle / sum-of-triangles densities, the H0/H1/H2 and
// partial-satellite variance predictions, and their supporting geometry sums.
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "d2ps/chi2.hpp"
#include "d2ps/geometry.hpp"
#include "d2ps/scenario.hpp"

namespace d2ps {

// triangle density on [−D, D], peak 1/D at 0
inline double triangle_pdf(double x, double d) {
    if (!(d > 0.0)) throw std::invalid_argument("triangle_pdf: D must be > 0");
    const double a = std::fabs(x);
    return a >= d ? 0.0 : (d - a) / (d * d);
}

namespace detail {

// Exact convolution of triangle_pdf(·, dex) and triangle_pdf(·, dey): the integrand
// is piecewise quadratic in t, so Simpson's rule on each kink-free subinterval is exact.
inline double triangle_convolution(double h, double dex, double dey) {
    const double lo = std::max(-dex, h - dey);
    const double hi = std::min(dex, h + dey);
    if (lo >= hi) return 0.0;
    double cuts[5] = {lo, hi, 0.0, h, hi};
    std::size_t n = 2;
    if (0.0 > lo && 0.0 < hi) cuts[n++] = 0.0;
    if (h > lo && h < hi) cuts[n++] = h;
    std::sort(cuts, cuts + n);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        if (b - a <= 0.0) continue;
        const double m = 0.5 * (a + b);
        const double fa = triangle_pdf(a, dex) * triangle_pdf(h - a, dey);
        const double fm = triangle_pdf(m, dex) * triangle_pdf(h - m, dey);
        const double fb = triangle_pdf(b, dex) * triangle_pdf(h - b, dey);
        total += (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    }
    return total;
}

}  // namespace detail

// Density of e_x·Δx + e_y·Δy (sum of two scaled triangles), widths dex, dey.
// The four-branch closed form is derived under dey < dex < 2·dey (after
// canonicalizing dex >= dey); outside that layout the exact convolution is used.
inline double sum_pdf(double h, double dex, double dey) {
    if (!(dex > 0.0) || !(dey > 0.0)) throw std::invalid_argument("sum_pdf: widths must be > 0");
    if (dex < dey) std::swap(dex, dey);  // density of a sum is symmetric in its addends
    const double a = std::fabs(h);
    if (a >= dex + dey) return 0.0;
    if (dex >= 2.0 * dey) return detail::triangle_convolution(a, dex, dey);

    const double k = 1.0 / (dex * dex * dey * dey);
    const double a2 = a * a, a3 = a2 * a;
    double p;
    if (a < dex - dey) {
        // cubic growth branch (printed with a stray factor 3 on the |h|² term;
        // the convolution-consistent coefficient is D_ey)
        p = a3 / 3.0 - dey * a2 + (3.0 * dex - dey) * dey * dey / 3.0;
    } else if (a < dey) {
        p = a3 / 2.0 - 0.5 * (dex + dey) * a2 + 0.5 * (dex - dey) * (dex - dey) * a +
            (3.0 * dey - dex) * dex * dex / 6.0 + (3.0 * dex - dey) * dey * dey / 6.0;
    } else if (a < dex) {
        p = a3 / 6.0 + 0.5 * (dey - dex) * a2 +
            0.5 * (dex * dex - dey * dey - 2.0 * dex * dey) * a +
            (3.0 * dey - dex) * dex * dex / 6.0 + (3.0 * dex + dey) * dey * dey / 6.0;
    } else {
        const double s = dex + dey;
        p = -a3 / 6.0 + 0.5 * s * a2 - 0.5 * s * s * a + s * s * s / 6.0;
    }
    return k * p;
}

enum class Hypothesis { H0, H1, H2, H2PartialSats };

struct VariancePrediction {
    double sigma2 = 0.0;
    Hypothesis hypothesis = Hypothesis::H0;
};

// Spoofing-free model: σ² = (D_x²/6C)·Σ(e_x^ij)² + (D_y²/6C)·Σ(e_y^ij)²
inline VariancePrediction variance_h0(double dx, double dy, const SkyView& sky) {
    if (dx < 0.0 || dy < 0.0) throw std::invalid_argument("variance_h0: negative dims");
    const GeometryCoefficients g = geometry_coefficients(sky);
    const double c = static_cast<double>(g.n_pairs);
    return {(dx * dx * g.sum_ex2 + dy * dy * g.sum_ey2) / (6.0 * c), Hypothesis::H0};
}

// Fully-spoofed model: 4σ_ρ² (K-epoch averaging shrinks the pure-noise variance by 1/K)
inline VariancePrediction variance_h1(double sigma_rho, std::size_t k = 1) {
    if (sigma_rho < 0.0) throw std::invalid_argument("variance_h1: negative sigma");
    if (k < 1) throw std::invalid_argument("variance_h1: K >= 1");
    return {4.0 * sigma_rho * sigma_rho / static_cast<double>(k), Hypothesis::H1};
}

// Second moments of the spoofed-to-authentic position differences over a uniform ROI
inline double cross_moment_x(double x_f, const RoiBounds& auth) {
    const double u = x_f - auth.a1, v = x_f - auth.a2;
    return (u * u + v * v + u * v) / 3.0;
}
inline double cross_moment_y(double y_f, const RoiBounds& auth) {
    const double u = y_f - auth.b1, v = y_f - auth.b2;
    return (u * u + v * v + u * v) / 3.0;
}

// Spoofed-to-authentic DDP variance: σ² = (σ²_Δx·Σ(e_x^ij)² + σ²_Δy·Σ(e_y^ij)²)/C
inline double variance_spoof_auth(const Vec2& p_f, const RoiBounds& auth, const SkyView& sky) {
    const GeometryCoefficients g = geometry_coefficients(sky);
    return (cross_moment_x(p_f.x, auth) * g.sum_ex2 + cross_moment_y(p_f.y, auth) * g.sum_ey2) /
           static_cast<double>(g.n_pairs);
}

// The partially-spoofed cross term admits two readings (product of standard
// deviations vs product of variances; the latter has a units clash). Both are
// available; StdProducts is the default, which Monte Carlo agrees with.
enum class CrossTermReading { StdProducts, VarianceProducts };

inline VariancePrediction variance_h2(double alpha, const RoiBounds& auth_region, const Vec2& p_f,
                                      const SkyView& sky, double sigma_rho,
                                      CrossTermReading reading = CrossTermReading::StdProducts) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("variance_h2: alpha in [0,1]");
    const double s2_a = variance_h0(auth_region.dx(), auth_region.dy(), sky).sigma2;
    const double s2_s = variance_spoof_auth(p_f, auth_region, sky);
    const double sr2 = sigma_rho * sigma_rho;
    const double b = 1.0 - alpha;
    double v = b * b * b * b * s2_a + 4.0 * alpha * alpha * alpha * alpha * sr2 +
               4.0 * alpha * alpha * b * b * s2_s;
    if (reading == CrossTermReading::StdProducts)
        v += 2.0 * alpha * b * (std::sqrt(s2_a) + 2.0 * sigma_rho) * std::sqrt(s2_s);
    else
        v += 2.0 * alpha * b * (s2_a + 2.0 * sr2) * s2_s;
    return {v, Hypothesis::H2};
}

// Partial-satellite spoofing: σ² = (1 − r)²σ²_a + 4r²σ_ρ², r = C(s,2)/C(J,2)
inline VariancePrediction variance_partial_sats(std::size_t n_spoofed, std::size_t j,
                                                double auth_variance, double sigma_rho) {
    if (n_spoofed > j) throw std::invalid_argument("variance_partial_sats: n_spoofed > J");
    if (j < 2) throw std::invalid_argument("variance_partial_sats: J >= 2");
    const double cs = n_spoofed < 2 ? 0.0 : 0.5 * static_cast<double>(n_spoofed * (n_spoofed - 1));
    const double cj = 0.5 * static_cast<double>(j * (j - 1));
    const double r = cs / cj;
    const double v = (1.0 - r) * (1.0 - r) * auth_variance + 4.0 * r * r * sigma_rho * sigma_rho;
    return {v, Hypothesis::H2PartialSats};
}

}  // namespace d2ps
