#pragma once
// D²PS sample-set construction: SDP/DDP differencing, per-satellite-pair subsets,
// per-subset random permutation, scaled merge, and K-epoch index-aligned averaging.
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "d2ps/geometry.hpp"
#include "d2ps/rng.hpp"
#include "d2ps/scenario.hpp"

namespace d2ps {

inline double sdp(double rho_n, double rho_m) { return rho_n - rho_m; }
inline double ddp(double sdp_i, double sdp_j) { return sdp_i - sdp_j; }

struct DdpSubset {
    std::size_t sat_i = 0, sat_j = 0;
    std::vector<double> values;  // M(M−1) ordered receiver-pair DDPs
};

struct D2psSampleSet {
    std::vector<double> samples;  // length M(M−1)
    std::size_t m = 0;            // receivers
    std::size_t j = 0;            // satellites
    std::size_t k = 1;            // epochs averaged
};

// Ordered receiver pairs (n, m), n != m, reference receiver in the outer loop.
inline std::vector<std::pair<std::size_t, std::size_t>> ordered_receiver_pairs(std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(m * (m - 1));
    for (std::size_t n = 0; n < m; ++n)
        for (std::size_t mm = 0; mm < m; ++mm)
            if (n != mm) out.emplace_back(n, mm);
    return out;
}

// Fills `subsets` in place so callers can reuse the buffers across epochs.
inline void build_subsets(const EpochMeasurements& epoch, const SkyView& sky,
                          std::vector<DdpSubset>& subsets) {
    const std::size_t m = epoch.n_receivers;
    const std::size_t j = epoch.n_satellites;
    if (sky.size() != j) throw std::invalid_argument("sky/measurement dimension mismatch");
    if (m < 2 || j < 2) throw std::invalid_argument("need M >= 2 and J >= 2");

    const std::size_t n_samples = m * (m - 1);
    const auto sat_pairs = sky.pairs();
    subsets.resize(sat_pairs.size());
    std::vector<double> sdp_by_receiver(m);
    for (std::size_t p = 0; p < sat_pairs.size(); ++p) {
        DdpSubset& sub = subsets[p];
        sub.sat_i = sat_pairs[p].first;
        sub.sat_j = sat_pairs[p].second;
        sub.values.resize(n_samples);
        for (std::size_t n = 0; n < m; ++n)
            sdp_by_receiver[n] = epoch.rho(n, sub.sat_i) - epoch.rho(n, sub.sat_j);
        std::size_t idx = 0;
        for (std::size_t n = 0; n < m; ++n) {
            const double a = sdp_by_receiver[n];
            for (std::size_t mm = 0; mm < m; ++mm) {
                if (n == mm) continue;
                // ddp(sdp_i, sdp_j) for ordered receiver pair (n, mm)
                sub.values[idx++] = a - sdp_by_receiver[mm];
            }
        }
    }
}

inline std::vector<DdpSubset> build_subsets(const EpochMeasurements& epoch, const SkyView& sky) {
    std::vector<DdpSubset> subsets;
    build_subsets(epoch, sky, subsets);
    return subsets;
}

// Permutation stream for one subset, keyed so parallel construction is reproducible.
inline Rng subset_rng(std::uint64_t run_seed, std::size_t epoch_index, std::size_t pair_index) {
    return Rng(derive_seed(run_seed, 0x5ab5e7ull, epoch_index, pair_index));
}

inline D2psSampleSet build_d2ps_epoch(const std::vector<DdpSubset>& subsets, std::uint64_t run_seed,
                                      std::size_t epoch_index, std::size_t m, std::size_t j) {
    if (subsets.empty()) throw std::invalid_argument("no subsets");
    const std::size_t n = subsets.front().values.size();
    for (const auto& s : subsets)
        if (s.values.size() != n) throw std::invalid_argument("subset length mismatch");

    D2psSampleSet set;
    set.m = m;
    set.j = j;
    set.k = 1;
    set.samples.assign(n, 0.0);

    // Shuffling a copy of the values applies the same permutation the keyed
    // stream would produce on an index array, without the gather.
    std::vector<double> shuffled(n);
    for (std::size_t p = 0; p < subsets.size(); ++p) {
        Rng rng = subset_rng(run_seed, epoch_index, p);
        shuffled = subsets[p].values;
        rng.shuffle(shuffled);
        for (std::size_t i = 0; i < n; ++i) set.samples[i] += shuffled[i];
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(subsets.size()));
    for (auto& s : set.samples) s *= scale;
    return set;
}

inline D2psSampleSet average_epochs(const std::vector<D2psSampleSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("no epoch sets");
    const std::size_t n = sets.front().samples.size();
    D2psSampleSet out = sets.front();
    for (std::size_t e = 1; e < sets.size(); ++e) {
        if (sets[e].samples.size() != n) throw std::invalid_argument("set length mismatch");
        for (std::size_t i = 0; i < n; ++i) out.samples[i] += sets[e].samples[i];
    }
    const double inv = 1.0 / static_cast<double>(sets.size());
    for (auto& s : out.samples) s *= inv;
    out.k = sets.size();
    return out;
}

// Full pipeline for one region: epochs -> subsets -> permuted merge -> K-average.
inline D2psSampleSet build_d2ps(const std::vector<EpochMeasurements>& epochs, const SkyView& sky,
                                std::uint64_t run_seed) {
    std::vector<D2psSampleSet> per_epoch;
    per_epoch.reserve(epochs.size());
    std::vector<DdpSubset> subsets;  // reused across epochs
    for (std::size_t e = 0; e < epochs.size(); ++e) {
        build_subsets(epochs[e], sky, subsets);
        per_epoch.push_back(build_d2ps_epoch(subsets, run_seed, e, epochs[e].n_receivers,
                                             epochs[e].n_satellites));
    }
    return average_epochs(per_epoch);
}

}  // namespace d2ps
