#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace superburst {

enum class DisorderKind { gaussian, two_delta, table };

/// How the spin transition frequencies are spread around the ensemble center.
struct DisorderSpec {
    DisorderKind kind = DisorderKind::gaussian;
    double width = 0.0;  ///< Gamma (FWHM) for gaussian, half-splitting delta for two_delta
    std::vector<std::pair<double, double>> table;  ///< (detuning, weight) for table
    double span_fwhm = 2.0;  ///< gaussian half-span in units of the FWHM
    std::uint64_t rng_seed = 0;
};

/**
 * M detuning bins treated as identical sub-ensembles. Detunings are relative
 * to the ensemble center omega_s and sorted ascending.
 */
struct BinnedEnsemble {
    std::vector<double> detunings;
    std::vector<double> weights;
    double total_N = 1.0;

    [[nodiscard]] std::size_t size() const noexcept { return detunings.size(); }
    /// N rho_m
    [[nodiscard]] double population(std::size_t m) const noexcept { return total_N * weights[m]; }
};

/// A single bin holding the whole ensemble at zero detuning.
[[nodiscard]] BinnedEnsemble homogeneous_ensemble(double N);

/**
 * Gaussian: M equal-width bins spanning +-span_fwhm FWHM (default 2), weight = Gaussian mass per bin,
 * tails folded into the edge bins. two_delta: two bins at +-delta. table:
 * validated and sorted passthrough. M is ignored for two_delta and table.
 */
[[nodiscard]] BinnedEnsemble build_bins(const DisorderSpec& spec, double N, int M);

/// `count` equally weighted spins drawn from a Gaussian of FWHM `fwhm` with the given seed.
[[nodiscard]] BinnedEnsemble sample_gaussian(double fwhm, double N, std::size_t count, std::uint64_t seed);

}  // namespace superburst
