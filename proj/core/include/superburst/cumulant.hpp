#pragma once

#include <complex>
#include <span>
#include <vector>

#include "superburst/ensemble.hpp"
#include "superburst/params.hpp"

namespace superburst {

/**
 * Second-order cumulant state in the binned representation.
 *   photon_number  <b^dag b>
 *   cross_corr     X_m = <b^dag sigma_{down,up,m}>
 *   spin_corr      C_mn = <sigma_{up,down,m} sigma_{down,up,n}>, full M x M row-major
 *   inversion      u_m = p_up - p_down
 */
struct CumulantState {
    double photon_number = 0.0;
    std::vector<std::complex<double>> cross_corr;
    std::vector<std::complex<double>> spin_corr;
    std::vector<double> inversion;
};

/// Bracketed terms of the photon emission rate, each already multiplied by 4 g^2 / kappa_eff.
struct EmissionRates {
    double spontaneous = 0.0;
    double stimulated = 0.0;
    double superradiant = 0.0;

    [[nodiscard]] double total() const noexcept { return spontaneous + stimulated + superradiant; }
};

/**
 *   dX_m/dt = (-i (Delta_e + delta_m) - (kappa + kappa_s)/2) X_m
 *             + i g [ (1 + u_m)/2 + (N rho_m - 1) C_mm + sum_{n != m} N rho_n C_nm + u_m n ]
 *   dn/dt   = -kappa n + kappa N_th + 2 g sum_m N rho_m Im X_m
 *   dC_mn/dt = (i (delta_m - delta_n) - kappa_s) C_mn - i g u_m X_n + i g u_n X_m^*
 *   du_m/dt = D (1 - u_m) - gamma_1 (1 + u_m) - 4 g Im X_m
 *
 * Only the upper triangle of C is evolved, so Hermiticity holds by construction.
 * Flat layout: [n, (Re X_m, Im X_m)..., u_m..., (Re C_mn, Im C_mn) for m <= n row by row].
 */
class CumulantModel {
public:
    CumulantModel(ModelParams params, BinnedEnsemble ens);

    [[nodiscard]] std::size_t dim() const noexcept;
    [[nodiscard]] std::size_t bins() const noexcept { return ens_.size(); }
    void derivs(double t, std::span<const double> y, std::span<double> dydt) const;

    /// kappa <b^dag b> photons per second.
    [[nodiscard]] double emission(std::span<const double> y) const { return p_.cavity_decay * y[0]; }
    /// The cumulant closure carries no <b>; the amplitude channel is zero.
    [[nodiscard]] std::complex<double> amplitude(std::span<const double>) const { return {}; }

    [[nodiscard]] double photon_number(std::span<const double> y) const { return y[0]; }
    [[nodiscard]] double mean_inversion(std::span<const double> y) const;
    /// <S_{up,down} S_{down,up}> assembled from the stored triangle.
    [[nodiscard]] double spin_spin_correlation(std::span<const double> y) const;
    [[nodiscard]] EmissionRates decomposition(std::span<const double> y) const;

    /// All spins in the lower level, no correlations, <b^dag b> = N_th.
    [[nodiscard]] std::vector<double> ground_state() const;
    [[nodiscard]] std::vector<double> pack(const CumulantState& s) const;
    [[nodiscard]] CumulantState unpack(std::span<const double> y) const;
    /// Real and imaginary parts of every X_m.
    [[nodiscard]] std::vector<std::size_t> coherence_slots() const;
    [[nodiscard]] std::vector<std::size_t> inversion_slots() const;
    /// Flat index of the real part of C_mn (m <= n).
    [[nodiscard]] std::size_t corr_index(std::size_t m, std::size_t n) const noexcept;

    [[nodiscard]] const ModelParams& params() const noexcept { return p_; }
    [[nodiscard]] const BinnedEnsemble& ensemble() const noexcept { return ens_; }

private:
    ModelParams p_;
    BinnedEnsemble ens_;
    std::size_t offset_u_;
    std::size_t offset_c_;
};

/// Throws NumericalError when the weighted sum has a relative imaginary part above 1e-9.
[[nodiscard]] double spin_spin_correlation(const CumulantState& state, const BinnedEnsemble& ens);
[[nodiscard]] EmissionRates emission_decomposition(const CumulantState& state, const ModelParams& params,
                                                   const BinnedEnsemble& ens);
[[nodiscard]] CumulantState cumulant_derivs(const CumulantState& state, const ModelParams& params,
                                            const BinnedEnsemble& ens);

}  // namespace superburst
