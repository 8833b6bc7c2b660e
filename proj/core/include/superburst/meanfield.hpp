#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "superburst/ensemble.hpp"
#include "superburst/params.hpp"

namespace superburst {

using cplx = std::complex<double>;

/**
 * First-order state: cavity amplitude <b>, per-bin coherence s_m = <sigma_{down,up}>
 * and inversion u_m = p_up - p_down. The adiabatic model ignores cavity_amp.
 */
struct MeanFieldState {
    cplx cavity_amp{};
    std::vector<cplx> coherence;
    std::vector<double> inversion;
};

/// Every spin tipped by theta from the inverted pole: u = cos(theta), s = sin(theta)/2 e^{i phase}.
[[nodiscard]] MeanFieldState tipped_state(std::size_t M, double theta, double phase = 0.0);

/// All spins in the lower level with a small seeded coherence eps (the noise surrogate).
[[nodiscard]] MeanFieldState ground_state(std::size_t M, double eps = 1e-3);

/**
 * Two-level spins with an explicit cavity, integrated in the frame rotating at
 * the cavity frequency:
 *
 *   db/dt   = -(kappa/2) b - i g sum_m N rho_m s_m
 *   ds_m/dt = -(i (Delta_e + delta_m) + kappa_s/2) s_m + i g u_m b
 *   du_m/dt = (D - gamma_1) - (D + gamma_1) u_m + 4 g Im(s_m^* b)
 *
 * Flat layout: [Re b, Im b, (Re s_m, Im s_m)..., u_m...].
 */
class CavityMeanField {
public:
    CavityMeanField(ModelParams params, BinnedEnsemble ens);

    [[nodiscard]] std::size_t dim() const noexcept { return 2 + 3 * ens_.size(); }
    [[nodiscard]] std::size_t bins() const noexcept { return ens_.size(); }
    void derivs(double t, std::span<const double> y, std::span<double> dydt) const;

    /// kappa |b|^2 photons per second.
    [[nodiscard]] double emission(std::span<const double> y) const;
    [[nodiscard]] cplx amplitude(std::span<const double> y) const { return {y[0], y[1]}; }

    [[nodiscard]] std::vector<double> pack(const MeanFieldState& s) const;
    [[nodiscard]] MeanFieldState unpack(std::span<const double> y) const;
    /// Indices of the real and imaginary coherence components.
    [[nodiscard]] std::vector<std::size_t> coherence_slots() const;
    /// N-weighted mean inversion sum_m rho_m u_m.
    [[nodiscard]] double mean_inversion(std::span<const double> y) const;

    [[nodiscard]] const ModelParams& params() const noexcept { return p_; }
    [[nodiscard]] const BinnedEnsemble& ensemble() const noexcept { return ens_; }

private:
    ModelParams p_;
    BinnedEnsemble ens_;
};

/**
 * Spins only, cavity slaved to the collective coherence S = sum_m N rho_m s_m.
 * In the frame rotating at the ensemble center the cavity follows
 * b = -i g S / (kappa/2 - i Delta_e), so each coherence picks up the drive
 * g^2 u_m S / (kappa/2 - i Delta_e) (2 g^2 u_m S / kappa on resonance).
 *
 * Flat layout: [(Re s_m, Im s_m)..., u_m...].
 */
class AdiabaticMeanField {
public:
    AdiabaticMeanField(ModelParams params, BinnedEnsemble ens);

    [[nodiscard]] std::size_t dim() const noexcept { return 3 * ens_.size(); }
    [[nodiscard]] std::size_t bins() const noexcept { return ens_.size(); }
    void derivs(double t, std::span<const double> y, std::span<double> dydt) const;

    [[nodiscard]] cplx amplitude(std::span<const double> y) const;
    [[nodiscard]] double emission(std::span<const double> y) const;

    [[nodiscard]] std::vector<double> pack(const MeanFieldState& s) const;
    [[nodiscard]] MeanFieldState unpack(std::span<const double> y) const;
    [[nodiscard]] std::vector<std::size_t> coherence_slots() const;
    [[nodiscard]] double mean_inversion(std::span<const double> y) const;

    [[nodiscard]] const ModelParams& params() const noexcept { return p_; }
    [[nodiscard]] const BinnedEnsemble& ensemble() const noexcept { return ens_; }

private:
    ModelParams p_;
    BinnedEnsemble ens_;
    cplx slave_;  // -i g / (kappa/2 - i Delta_e)
};

/// Struct-level evaluators; they pack, evaluate and unpack.
[[nodiscard]] MeanFieldState mf_derivs_cavity(const MeanFieldState& state, const ModelParams& params,
                                              const BinnedEnsemble& ens);
[[nodiscard]] MeanFieldState mf_derivs_adiabatic(const MeanFieldState& state, const ModelParams& params,
                                                 const BinnedEnsemble& ens);

}  // namespace superburst
