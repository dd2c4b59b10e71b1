#pragma once
// Chi-squared CDF and quantile via the regularized incomplete gamma function.
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace d2ps {

namespace detail {

// Regularized lower incomplete gamma P(a, x).
// Series for x < a + 1, continued fraction otherwise.
inline double gamma_p(double a, double x) {
    constexpr double tol = 1e-12;
    constexpr int max_iter = 10000;
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p domain");
    if (x == 0.0) return 0.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series: P(a,x) = x^a e^-x / Γ(a) · Σ x^n Γ(a)/Γ(a+1+n)
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int n = 0; n < max_iter; ++n) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::fabs(term) < std::fabs(sum) * tol)
                return sum * std::exp(-x + a * std::log(x) - lg);
        }
        throw std::runtime_error("gamma_p series did not converge");
    }
    // Lentz continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < tol) {
            const double q = std::exp(-x + a * std::log(x) - lg) * h;
            return 1.0 - q;
        }
    }
    throw std::runtime_error("gamma_p continued fraction did not converge");
}

// Standard normal quantile (Acklam's rational approximation), used only to
// seed the chi-squared quantile Newton iteration.
inline double normal_inv(double p) {
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1.0 - plow;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > phigh) return -normal_inv(1.0 - p);
    const double q = p - 0.5, r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

// CDF of the chi-squared distribution with m degrees of freedom.
inline double chi2_cdf(double x, int m) {
    if (m < 1) throw std::invalid_argument("chi2_cdf: dof must be >= 1");
    if (x < 0.0) throw std::invalid_argument("chi2_cdf: negative x");
    if (x == 0.0) return 0.0;
    return detail::gamma_p(0.5 * m, 0.5 * x);
}

// PDF of the chi-squared distribution with m degrees of freedom.
inline double chi2_pdf(double x, int m) {
    if (m < 1) throw std::invalid_argument("chi2_pdf: dof must be >= 1");
    if (x < 0.0) return 0.0;
    const double a = 0.5 * m;
    if (x == 0.0) return m == 2 ? 0.5 : (m == 1 ? std::numeric_limits<double>::infinity() : 0.0);
    return std::exp((a - 1.0) * std::log(x) - 0.5 * x - std::lgamma(a) - a * 0.6931471805599453);
}

// Quantile by safeguarded Newton from a Wilson-Hilferty start; the CDF is
// smooth and monotone, so a shrinking bracket guarantees convergence.
inline double chi2_inv(double p, int m) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("chi2_inv: p must be in (0,1)");
    if (m < 1) throw std::invalid_argument("chi2_inv: dof must be >= 1");
    const double z = detail::normal_inv(p);
    const double t = 1.0 - 2.0 / (9.0 * m) + z * std::sqrt(2.0 / (9.0 * m));
    double x = t > 0.0 ? m * t * t * t : 0.5 * m;
    double lo = 0.0, hi = std::max({16.0, 2.0 * m, 2.0 * x});
    while (chi2_cdf(hi, m) < p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e9) throw std::runtime_error("chi2_inv: bracket failure");
    }
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = chi2_cdf(x, m) - p;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        const double df = chi2_pdf(x, m);
        double step = df > 0.0 ? f / df : 0.0;
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection fallback
        if (std::fabs(next - x) < 1e-14 * (1.0 + next)) return next;
        x = next;
        if (hi - lo < 1e-14 * (1.0 + hi)) break;
    }
    return x;
}

}  // namespace d2ps
