#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "superburst/ensemble.hpp"
#include "superburst/params.hpp"

namespace superburst {

/**
 * Extension of ModelParams for the ground / down / up system. The optical pump
 * (Rabi frequency Omega) drives g <-> up, the microwave cavity b couples
 * up <-> down, the optical cavity a couples down <-> g, and gamma_1 relaxes
 * both excited levels into g. `base.pump` is unused: pumping is explicit.
 */
struct ThreeLevelParams {
    ModelParams base;
    double optical_decay = 0.0;     ///< kappa_o
    double optical_dephasing = 0.0; ///< gamma_o, coherence decay of g-down and g-up is gamma_o / 2
    double optical_coupling = 0.0;  ///< g_o
    double rabi = 0.0;              ///< Omega
    double noise_drive = 0.0;       ///< eta_b, constant drive on the microwave cavity
    double optical_detuning = 0.0;  ///< Delta_a, optical cavity detuning in its rotating frame
    double pump_detuning = 0.0;     ///< Delta_p, pump detuning from the g <-> up transition
    double spin_dephasing = -1.0;   ///< gamma_s for the down-up coherence; < 0 means gamma + gamma_1

    [[nodiscard]] double microwave_dephasing() const noexcept {
        return spin_dephasing >= 0.0 ? spin_dephasing : base.dephasing + base.relaxation;
    }
    /// Incoherent repump rate 4 Omega^2 / gamma_o seen by the microwave transition when Omega << gamma_o.
    [[nodiscard]] double effective_pump() const noexcept;
    void validate() const;
};

struct ThreeLevelState {
    std::complex<double> optical_amp{};
    std::complex<double> microwave_amp{};
    std::vector<std::complex<double>> s_gd;  ///< <sigma_{g,down}>
    std::vector<std::complex<double>> s_du;  ///< <sigma_{down,up}>
    std::vector<std::complex<double>> s_gu;  ///< <sigma_{g,up}>
    std::vector<double> p_g, p_d, p_u;
};

/// Everything in |g> plus a small seeded down-up coherence.
[[nodiscard]] ThreeLevelState three_level_ground(std::size_t M, double eps = 1e-3);

/**
 * Mean-field three-level model. Both cavities are in their own rotating
 * frames; level energies in that frame are E_g = 0, E_up = Delta_p,
 * E_down = Delta_p - (Delta_e + delta_m).
 *
 * Flat layout: [Re a, Im a, Re b, Im b, then per bin
 * (s_gd, s_du, s_gu as re/im pairs, p_g, p_d, p_u)].
 */
class ThreeLevelMeanField {
public:
    static constexpr std::size_t kPerBin = 9;

    ThreeLevelMeanField(ThreeLevelParams params, BinnedEnsemble ens);

    [[nodiscard]] std::size_t dim() const noexcept { return 4 + kPerBin * ens_.size(); }
    [[nodiscard]] std::size_t bins() const noexcept { return ens_.size(); }
    void derivs(double t, std::span<const double> y, std::span<double> dydt) const;

    /// Microwave output kappa |b|^2.
    [[nodiscard]] double emission(std::span<const double> y) const;
    [[nodiscard]] std::complex<double> amplitude(std::span<const double> y) const { return {y[2], y[3]}; }
    /// Optical output kappa_o |a|^2.
    [[nodiscard]] double optical_emission(std::span<const double> y) const;
    [[nodiscard]] std::complex<double> optical_amplitude(std::span<const double> y) const { return {y[0], y[1]}; }

    [[nodiscard]] std::vector<double> pack(const ThreeLevelState& s) const;
    [[nodiscard]] ThreeLevelState unpack(std::span<const double> y) const;
    [[nodiscard]] std::vector<std::size_t> coherence_slots() const;
    /// Ensemble-averaged (p_g, p_down, p_up).
    [[nodiscard]] std::array<double, 3> mean_populations(std::span<const double> y) const;

    [[nodiscard]] const ThreeLevelParams& params() const noexcept { return p_; }
    [[nodiscard]] const BinnedEnsemble& ensemble() const noexcept { return ens_; }

private:
    ThreeLevelParams p_;
    BinnedEnsemble ens_;
};

[[nodiscard]] ThreeLevelState mf_derivs_three_level(const ThreeLevelState& state, const ThreeLevelParams& params,
                                                    const BinnedEnsemble& ens);

}  // namespace superburst
