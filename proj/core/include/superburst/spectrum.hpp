#pragma once

#include <vector>

#include "superburst/trace.hpp"

namespace superburst {

struct SpectrumOptions {
    double window_start_fraction = 0.2;  ///< leading fraction of the trace dropped as transient
    int peak_window_bins = 4;            ///< width of the excluded central window, in grid bins
};

/**
 * One-sided periodogram of the emitted power. density[k] is in power^2 / Hz at
 * frequency[k] = k df, and sum(density) df equals the mean square of the segment.
 */
struct Spectrum {
    std::vector<double> frequency;  ///< Hz
    std::vector<double> density;
    double df = 0.0;
    double peak_frequency = 0.0;    ///< Hz, argmax of the density (DC included)
    double total_power = 0.0;       ///< A_tot
    double sideband_power = 0.0;    ///< A_sb, everything outside the central window
    double crystalline_fraction = 0.0;
};

/// Rectangular-window periodogram via FFTW. Throws DomainError if the segment has fewer than 16 samples.
[[nodiscard]] Spectrum psd(const EmissionTrace& trace, const SpectrumOptions& options = {});

}  // namespace superburst
