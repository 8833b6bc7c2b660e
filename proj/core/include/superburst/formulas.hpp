#pragma once

#include <functional>

#include "superburst/params.hpp"

namespace superburst {

struct AnalyticBurst {
    double delay = 0.0;  ///< tau_d (s)
    double width = 0.0;  ///< tau_w, FWHM of the emitted pulse (s)
    /// <S_z>(t) in the down-minus-up convention: (N/2) tanh(2 N g^2 / kappa (t - tau_d)).
    std::function<double(double)> sz;
};

/**
 * Superfluorescent burst of N identical spins tipped by theta from full
 * inversion, bad-cavity limit:
 *   tau_d = -(kappa / 2 N g^2) ln tan(theta/2)   (positive for theta < pi/2)
 *   tau_w =  (kappa / N g^2) ln(sqrt 2 + 1)
 * Throws DomainError unless 0 < theta < pi.
 */
[[nodiscard]] AnalyticBurst analytic_burst(const ModelParams& params, double theta);

struct BurstPeriod {
    bool bursts = false;  ///< false when the threshold population is unreachable
    double exact = 0.0;   ///< (1/D) ln((N_f - N_i) / (N_f - kappa Gamma / 4 g^2))
    double approx = 0.0;  ///< 1 / (D C_f), C_f = 4 N_f g^2 / (kappa Gamma)
};

/// Repump-limited period of the burst train.
[[nodiscard]] BurstPeriod burst_period_formula(double D, double N_i, double N_f, double g, double kappa, double Gamma);

/**
 * Schawlow-Townes linewidth in Hz with angular linewidths kappa_c (cavity)
 * and kappa_a (ensemble):
 *   (1 / 4 pi n_c kappa_c) (kappa_a kappa_c / (kappa_a + kappa_c))^2 (n_th + n_sp + 1)
 */
[[nodiscard]] double st_linewidth(double n_c, double kappa_c, double kappa_a, double n_th, double n_sp);

}  // namespace superburst
