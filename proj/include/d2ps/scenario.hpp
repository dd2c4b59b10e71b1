#pragma once
// World synthesis: receiver placement, spoofer influence, and K epochs of
// pseudorange measurements with UERE noise and optional spatially correlated
// Gauss-Markov multipath.
#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "d2ps/geometry.hpp"
#include "d2ps/rng.hpp"

namespace d2ps {

constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct RoiBounds {
    double a1 = 0.0, a2 = 0.0;  // East span [a1, a2]
    double b1 = 0.0, b2 = 0.0;  // North span [b1, b2]

    double dx() const { return a2 - a1; }
    double dy() const { return b2 - b1; }
    double cx() const { return 0.5 * (a1 + a2); }
    double cy() const { return 0.5 * (b1 + b2); }

    void validate() const {
        if (!(a1 < a2 && b1 < b2)) throw std::invalid_argument("RoiBounds: need a1<a2, b1<b2");
    }
    static RoiBounds centered(double dx, double dy) {
        return {-0.5 * dx, 0.5 * dx, -0.5 * dy, 0.5 * dy};
    }
};

enum class SpoofMode { HighPowerDominant, ApproachDragOff, DirectFraction };

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct SpooferConfig {
    SpoofMode mode = SpoofMode::DirectFraction;
    Vec2 spoofer_position{};      // ENU, meters
    Vec2 counterfeit_position{};  // p_f horizontal components
    double tx_power_dbm = 0.0;    // P_T^S
    double tx_gain_db = 0.0;      // G_T^S
    double rx_gain_spoof_db = -10.0;  // G_R^S
    double rx_gain_auth_db = 0.0;     // G_R^a
    double auth_power_dbm = -128.0;   // P^a
    double env_loss_db = 5.0;         // L_senv
    double sapr_tov_db = 35.0;
    double sapr_risk_db = 5.0;
    double wavelength_m = 0.1903;
    double hardware_delay_s = 500e-9;
    double spoofed_fraction = 0.0;  // alpha, DirectFraction mode
    int spoofed_satellite_count = -1;  // <0 means "all J"

    void validate() const {
        if (spoofed_fraction < 0.0 || spoofed_fraction > 1.0)
            throw std::invalid_argument("spoofed_fraction outside [0,1]");
        if (!(sapr_tov_db > sapr_risk_db))
            throw std::invalid_argument("need sapr_tov > sapr_risk");
        if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be > 0");
    }
};

struct NoiseConfig {
    double sigma_rho = 5.0;       // UERE std, meters
    bool multipath_enabled = false;
    double delta_sigma = 0.0;     // multipath inflation
    double tau_corr_s = 25.0;     // Gauss-Markov correlation time
    double tau_d_m = 25.0;        // spatial correlation decay
    double theta_spoof_deg = 5.0; // elevation used for spoofed-signal multipath
    double epoch_interval_s = 1.0;

    void validate() const {
        if (sigma_rho < 0.0 || delta_sigma < 0.0) throw std::invalid_argument("negative noise");
        if (!(tau_corr_s > 0.0 && tau_d_m > 0.0)) throw std::invalid_argument("tau must be > 0");
    }
};

struct ReceiverTruth {
    int id = 0;
    Vec2 true_position{};
    bool is_spoofed = false;
    Vec2 reported_position{};
};

struct EpochMeasurements {
    int epoch_index = 0;
    // pseudoranges[n*J + i], row-major M x J
    std::vector<double> pseudoranges;
    std::size_t n_receivers = 0;
    std::size_t n_satellites = 0;

    double rho(std::size_t n, std::size_t i) const { return pseudoranges[n * n_satellites + i]; }
    double& rho(std::size_t n, std::size_t i) { return pseudoranges[n * n_satellites + i]; }
};

inline std::vector<ReceiverTruth> place_receivers(const RoiBounds& roi, std::size_t m, Rng& rng) {
    roi.validate();
    if (m < 2) throw std::invalid_argument("place_receivers: need M >= 2");
    std::vector<ReceiverTruth> out(m);
    for (std::size_t n = 0; n < m; ++n) {
        out[n].id = static_cast<int>(n);
        out[n].true_position = {rng.uniform(roi.a1, roi.a2), rng.uniform(roi.b1, roi.b2)};
        out[n].reported_position = out[n].true_position;
    }
    return out;
}

struct SpoofedRanges {
    double l_tov = 0.0;  // overwhelming range, meters
    double l_tri = 0.0;  // risky range, meters
};

// L = (λ/4π) · 10^((P_T^S + G_T^S + G_R^S − P^a − G_R^a − L_senv − SAPR)/20)
inline SpoofedRanges spoofed_ranges(const SpooferConfig& cfg) {
    cfg.validate();
    const double head = cfg.tx_power_dbm + cfg.tx_gain_db + cfg.rx_gain_spoof_db -
                        cfg.auth_power_dbm - cfg.rx_gain_auth_db - cfg.env_loss_db;
    const double scale = cfg.wavelength_m / (4.0 * kPi);
    return {scale * std::pow(10.0, (head - cfg.sapr_tov_db) / 20.0),
            scale * std::pow(10.0, (head - cfg.sapr_risk_db) / 20.0)};
}

inline double dist(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

inline void assign_spoofed(std::vector<ReceiverTruth>& receivers, const SpooferConfig& cfg,
                           Rng& rng) {
    cfg.validate();
    if (cfg.mode == SpoofMode::DirectFraction) {
        const std::size_t m = receivers.size();
        const std::size_t n_spoof =
            static_cast<std::size_t>(std::llround(cfg.spoofed_fraction * static_cast<double>(m)));
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        rng.shuffle(idx);
        for (std::size_t i = 0; i < m; ++i) receivers[idx[i]].is_spoofed = i < n_spoof;
        return;
    }
    const SpoofedRanges r = spoofed_ranges(cfg);
    for (auto& rec : receivers) {
        const double d = dist(rec.true_position, cfg.spoofer_position);
        if (cfg.mode == SpoofMode::HighPowerDominant && d <= r.l_tov) {
            rec.is_spoofed = true;
        } else if (d < r.l_tri) {
            // risky zone: linear distance-decaying probability
            const double lo = cfg.mode == SpoofMode::HighPowerDominant ? r.l_tov : 0.0;
            const double p = (r.l_tri - d) / (r.l_tri - lo);
            rec.is_spoofed = rng.uniform() < p;
        } else {
            rec.is_spoofed = false;
        }
    }
}

// Reported positions: truth (authentic) or p_f (spoofed), plus GPS-fix scatter.
inline void scatter_reported_positions(std::vector<ReceiverTruth>& receivers,
                                       const SpooferConfig& cfg, double sigma_pos, Rng& rng) {
    for (auto& rec : receivers) {
        const Vec2 base = rec.is_spoofed ? cfg.counterfeit_position : rec.true_position;
        rec.reported_position = {base.x + rng.normal(0.0, sigma_pos),
                                 base.y + rng.normal(0.0, sigma_pos)};
    }
}

// σ_mp² = δ_σ²(0.13 + 0.53·e^(−θ/10)), θ in degrees
inline double multipath_variance(double elevation_deg, double delta_sigma) {
    return delta_sigma * delta_sigma * (0.13 + 0.53 * std::exp(-elevation_deg / 10.0));
}

// First-order Gauss-Markov series with stationary variance σ_mp².
inline std::vector<double> multipath_series(double elevation_deg, const NoiseConfig& noise,
                                            std::size_t k, Rng& rng) {
    noise.validate();
    if (k < 1) throw std::invalid_argument("multipath_series: K >= 1");
    const double s2 = multipath_variance(elevation_deg, noise.delta_sigma);
    const double s = std::sqrt(s2);
    const double phi = std::exp(-noise.epoch_interval_s / noise.tau_corr_s);
    const double innov = std::sqrt(s2 * (1.0 - phi * phi));
    std::vector<double> out(k);
    out[0] = rng.normal(0.0, s);
    for (std::size_t i = 1; i < k; ++i) out[i] = phi * out[i - 1] + rng.normal(0.0, innov);
    return out;
}

struct SpatialCorrelation {
    Eigen::MatrixXd c;  // c_nm = exp(−d_nm/τ_d)
    Eigen::MatrixXd r;  // upper triangular (or general fallback) with RᵀR = C
};

inline SpatialCorrelation spatial_correlation(const std::vector<Vec2>& positions, double tau_d) {
    if (!(tau_d > 0.0)) throw std::invalid_argument("tau_d must be > 0");
    const Eigen::Index m = static_cast<Eigen::Index>(positions.size());
    Eigen::MatrixXd c(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j)
            c(i, j) = std::exp(-dist(positions[static_cast<std::size_t>(i)],
                                     positions[static_cast<std::size_t>(j)]) /
                               tau_d);
    Eigen::LLT<Eigen::MatrixXd> llt(c);
    if (llt.info() == Eigen::Success)
        return {c, Eigen::MatrixXd(llt.matrixU())};
    // near-singular (e.g. duplicate coordinates): clip eigenvalues at 0 and refactor
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
    Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    Eigen::MatrixXd r = ev.asDiagonal() * es.eigenvectors().transpose();
    return {c, r};
}

// Unit-variance multipath field: one Gauss-Markov state per (receiver, satellite),
// innovations mixed across receivers through Rᵀ each epoch. Callers scale each
// entry by its own stationary multipath std.
class MultipathField {
  public:
    MultipathField(const std::vector<ReceiverTruth>& receivers, std::size_t j,
                   const NoiseConfig& noise)
        : m_(receivers.size()), j_(j) {
        std::vector<Vec2> pos(m_);
        for (std::size_t n = 0; n < m_; ++n) pos[n] = receivers[n].true_position;
        rt_ = spatial_correlation(pos, noise.tau_d_m).r.transpose();
        state_.resize(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(j_));
        phi_ = std::exp(-noise.epoch_interval_s / noise.tau_corr_s);
    }

    void step(Rng& rng) {
        Eigen::MatrixXd w(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(j_));
        for (std::size_t n = 0; n < m_; ++n)
            for (std::size_t i = 0; i < j_; ++i)
                w(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i)) = rng.normal();
        w = rt_ * w;  // spatially correlated, unit marginal variance
        if (!started_) {
            state_ = w;
            started_ = true;
        } else {
            state_ = phi_ * state_ + std::sqrt(1.0 - phi_ * phi_) * w;
        }
    }

    double value(std::size_t n, std::size_t i) const {
        return state_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
    }

  private:
    std::size_t m_, j_;
    Eigen::MatrixXd rt_;
    Eigen::MatrixXd state_;
    double phi_ = 0.0;
    bool started_ = false;
};

// K epochs of pseudoranges. Far-field model: the authentic geometric term is
// −(e^i)ᵀ p_n plus a per-satellite constant; spoofed entries carry the common
// counterfeit term −(e^i)ᵀ p_f plus the spoofer time-of-flight |q − p_n| and
// the hardware delay. Clock biases and per-satellite constants cancel in DDP.
inline std::vector<EpochMeasurements> synthesize_epochs(
    const std::vector<ReceiverTruth>& receivers, const SkyView& sky, const SpooferConfig& cfg,
    const NoiseConfig& noise, std::size_t k, Rng& rng) {
    cfg.validate();
    noise.validate();
    if (k < 1) throw std::invalid_argument("synthesize_epochs: K >= 1");
    const std::size_t m = receivers.size();
    const std::size_t j = sky.size();
    if (m < 2 || j < 2) throw std::invalid_argument("need M >= 2 and J >= 2");

    std::vector<LosVector> los(j);
    for (std::size_t i = 0; i < j; ++i) los[i] = los_unit_vector(sky.satellites[i]);

    const std::size_t n_spoof_sats =
        cfg.spoofed_satellite_count < 0 ? j
                                        : static_cast<std::size_t>(cfg.spoofed_satellite_count);
    if (n_spoof_sats > j) throw std::invalid_argument("spoofed_satellite_count > J");

    // per-satellite clock/atmosphere constants and per-receiver clock biases;
    // both cancel in every DDP but keep the cancellation property testable
    std::vector<double> sat_const(j);
    for (auto& s : sat_const) s = rng.uniform(0.0, 1e5);
    std::vector<double> clock_bias(m);
    for (auto& b : clock_bias) b = rng.uniform(0.0, 1e-3) * kSpeedOfLight;

    std::unique_ptr<MultipathField> mp;
    std::vector<double> mp_sigmas(j, 0.0);
    if (noise.multipath_enabled && noise.delta_sigma > 0.0) {
        mp = std::make_unique<MultipathField>(receivers, j, noise);
        for (std::size_t i = 0; i < j; ++i)
            mp_sigmas[i] = std::sqrt(multipath_variance(sky.satellites[i].elevation_deg,
                                                        noise.delta_sigma));
    }
    const double mp_sigma_spoof =
        std::sqrt(multipath_variance(noise.theta_spoof_deg, noise.delta_sigma));

    std::vector<EpochMeasurements> epochs(k);
    for (std::size_t e = 0; e < k; ++e) {
        EpochMeasurements em;
        em.epoch_index = static_cast<int>(e);
        em.n_receivers = m;
        em.n_satellites = j;
        em.pseudoranges.resize(m * j);
        if (mp) mp->step(rng);
        for (std::size_t n = 0; n < m; ++n) {
            const bool rec_spoofed = receivers[n].is_spoofed;
            const Vec2 p = receivers[n].true_position;
            const double tof = dist(cfg.spoofer_position, p);
            for (std::size_t i = 0; i < j; ++i) {
                const bool entry_spoofed = rec_spoofed && i < n_spoof_sats;
                double rho;
                if (entry_spoofed) {
                    rho = -(los[i].ex * cfg.counterfeit_position.x +
                            los[i].ey * cfg.counterfeit_position.y) +
                          sat_const[i] + tof + kSpeedOfLight * cfg.hardware_delay_s;
                } else {
                    rho = -(los[i].ex * p.x + los[i].ey * p.y) + sat_const[i];
                }
                rho += clock_bias[n];
                if (noise.sigma_rho > 0.0) rho += rng.normal(0.0, noise.sigma_rho);
                if (mp) rho += (entry_spoofed ? mp_sigma_spoof : mp_sigmas[i]) * mp->value(n, i);
                if (!std::isfinite(rho)) throw std::runtime_error("non-finite pseudorange");
                em.rho(n, i) = rho;
            }
        }
        epochs[e] = std::move(em);
    }
    return epochs;
}

}  // namespace d2ps
