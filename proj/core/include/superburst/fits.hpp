#pragma once

#include <utility>
#include <vector>

#include "superburst/bursts.hpp"
#include "superburst/trace.hpp"

namespace superburst {

struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0;  ///< RMS of log-space residuals
};

/// Least squares of log(y) against log(N). Throws DomainError for < 3 points or non-positive values.
[[nodiscard]] PowerLawFit scaling_fit(const std::vector<std::pair<double, double>>& points);

struct CollapseOptions {
    BurstOptions bursts;
    /// Compare at most this much rescaled time after alignment (same units as t N); 0 uses the full overlap.
    double window = 0.0;
};

struct CollapseResult {
    std::vector<EmissionTrace> collapsed;  ///< time axis (t - tau_first) N, power / N^2
    double metric = 0.0;  ///< max pairwise RMS difference over the shared grid / peak rescaled power
};

/// Throws DomainError for fewer than two traces or a trace without settled bursts.
[[nodiscard]] CollapseResult data_collapse(const std::vector<std::pair<EmissionTrace, double>>& traces,
                                           const CollapseOptions& options = {});

/**
 * Fits n_th + n_sp from linewidths measured at several intracavity photon
 * numbers, using Delta f = A (n + 1) / n_c with A fixed by kappa_c and kappa_a.
 */
[[nodiscard]] double fit_st_noise(const std::vector<std::pair<double, double>>& photons_and_linewidth,
                                  double kappa_c, double kappa_a);

}  // namespace superburst
