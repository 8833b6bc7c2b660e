#pragma once

#include <vector>

#include "superburst/trace.hpp"

namespace superburst {

struct BurstOptions {
    double threshold_factor = 3.0;    ///< burst = power above this multiple of the median
    /// A burst ends only once power falls to this multiple of the median, so noise on
    /// the flanks does not split one pulse into several.
    double release_factor = 1.0;
    double settle_fraction = 0.2;     ///< bursts starting in this leading fraction are unsettled
    /// Intervals whose peak is below this fraction of the largest settled peak are
    /// dropped; this removes the weak ringing that follows each pulse.
    double min_peak_fraction = 0.25;
};

struct BurstTrain {
    std::vector<double> onsets;  ///< up-crossing times, linearly interpolated (s)
    std::vector<double> peaks;   ///< peak power within each burst
    std::vector<double> peak_times;
    std::vector<bool> settled;
    double period = 0.0;         ///< median settled onset spacing, 0 when fewer than two settled bursts

    [[nodiscard]] std::size_t size() const noexcept { return onsets.size(); }
    [[nodiscard]] std::size_t settled_count() const noexcept;
    [[nodiscard]] double mean_settled_peak() const;
    /// Onset of the first settled burst; throws DomainError if there is none.
    [[nodiscard]] double first_settled_onset() const;
};

/// Throws DomainError for traces shorter than 16 samples or release_factor > threshold_factor.
[[nodiscard]] BurstTrain detect_bursts(const EmissionTrace& trace, const BurstOptions& options = {});

struct PhaseStatistics {
    std::vector<double> phases;      ///< theta_k = 2 pi tau_k / T mod 2 pi
    double resultant_length = 0.0;   ///< |mean exp(i theta)|
    double rayleigh_z = 0.0;         ///< n R^2
    double p_value = 1.0;            ///< Rayleigh test against uniformity (Zar's approximation)
};

/// Rayleigh test on the first settled onset of each train.
[[nodiscard]] PhaseStatistics onset_phases(const std::vector<BurstTrain>& trains, double T_ref);
/// Same test on raw onset times.
[[nodiscard]] PhaseStatistics onset_phases(const std::vector<double>& onsets, double T_ref);

}  // namespace superburst
