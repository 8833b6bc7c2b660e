#pragma once

#include <numbers>

namespace superburst {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Linear frequency (Hz) to angular frequency (rad/s).
[[nodiscard]] constexpr double angular(double hz) noexcept { return kTwoPi * hz; }
[[nodiscard]] constexpr double linear(double rad_per_s) noexcept { return rad_per_s / kTwoPi; }

/**
 * Physical rates and counts of the driven cavity-spin system.
 *
 * Every rate is an angular frequency in rad/s. The inversion convention used
 * throughout the library is u = p_up - p_down, so u = +1 means every spin sits
 * in the upper (pumped) level.
 */
struct ModelParams {
    double cavity_freq = 0.0;             ///< omega_e, only differences enter the dynamics
    double cavity_decay = 0.0;            ///< kappa (energy decay rate)
    double coupling = 0.0;                ///< single-spin coupling g
    double dephasing = 0.0;               ///< homogeneous dephasing gamma
    double relaxation = 0.0;              ///< gamma_1, upper -> lower
    double pump = 0.0;                    ///< incoherent repump D, lower -> upper
    double ensemble_size = 1.0;           ///< N, real-valued
    double thermal_photons = 0.0;         ///< N_th
    double ensemble_detuning = 0.0;       ///< Delta_e = omega_s - omega_e
    double inhomogeneous_linewidth = 0.0; ///< Gamma (FWHM)

    [[nodiscard]] double spin_center_freq() const noexcept { return cavity_freq + ensemble_detuning; }

    /// kappa_s = gamma + gamma_1 + D, the total decay of the spin-spin correlations.
    [[nodiscard]] double total_spin_decay() const noexcept { return dephasing + relaxation + pump; }

    /**
     * Cavity decay seen by an ensemble detuned by Delta_e, kappa (1 + (2 Delta_e / kappa)^2).
     * Eliminating the cavity from <b^dag sigma> gives a Purcell rate 4 g^2 / this, so
     * detuning weakens the coupling.
     */
    [[nodiscard]] double effective_cavity_decay() const noexcept;

    /// sqrt(N) g.
    [[nodiscard]] double collective_coupling() const noexcept;

    /// Throws ConfigError when an invariant (kappa > 0, rates >= 0, N >= 1) is broken.
    void validate() const;
};

/// C = 4 N g^2 / (kappa_eff Gamma) with kappa_eff = effective_cavity_decay().
[[nodiscard]] double cooperativity(const ModelParams& params);

/// g_norm = sqrt(N) g / (kappa / 2).
[[nodiscard]] double normalized_coupling(const ModelParams& params);

/// Participating population when an optical pump detuned by `pump_detuning`
/// addresses a Gaussian optical line of FWHM `optical_linewidth`.
[[nodiscard]] double effective_ensemble_size(double pump_detuning, double optical_linewidth, double total_size);

/**
 * Identical-atom steady emission frequency, a kappa-weighted average of cavity
 * and spin frequencies: (kappa_s omega_c + kappa omega_s) / (kappa + kappa_s).
 */
[[nodiscard]] double steady_emission_frequency(const ModelParams& params);

}  // namespace superburst
