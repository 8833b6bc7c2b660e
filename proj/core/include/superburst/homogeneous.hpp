#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace superburst {

/// Rescaled identical-spin cumulant variables: n = <b^dag b>/N, x = Im<S_- b^dag>/N^{3/2}, z = <S_z>/N, c = <C>/N^2.
struct ReducedHomogeneousState {
    double n = 0.0;
    double x = 0.0;
    double z = 0.0;
    double c = 0.0;
};

struct HomogeneousParams {
    double g_collective = 0.0;  ///< g~ = sqrt(N) g
    double kappa = 0.0;
    double gamma_plus = 0.0;    ///< gamma_up + gamma_down
    double gamma_minus = 0.0;   ///< gamma_up - gamma_down
    double gamma_s = 0.0;       ///< (gamma_up + gamma_down + 4 gamma_phi) / 2
};

/**
 *   n' = 2 g~ x - kappa n
 *   x' = g~ (z n + c + (1 + z) / 2N) - (gamma_s + kappa/2) x
 *   z' = gamma_- - gamma_+ z - 4 g~ x
 *   c' = 2 g~ z x - 2 gamma_s c
 * N = +infinity drops the single-spin term.
 */
[[nodiscard]] ReducedHomogeneousState homogeneous_reduced_derivs(const ReducedHomogeneousState& s,
                                                                 const HomogeneousParams& p, double N);

/**
 * The collective rate of the many-body analysis is not defined explicitly.
 * 4 g~^2 / kappa is what makes the quoted non-trivial solution an exact fixed
 * point; 2 g~^2 / kappa reproduces the quoted z of about 0.06.
 */
enum class CollectiveRate { four_g2_over_kappa, two_g2_over_kappa };

[[nodiscard]] double collective_rate(const HomogeneousParams& p, CollectiveRate convention);

/// Non-trivial large-N steady state: z = 2 gamma_s / Gamma and n, x, c from the quoted closed forms.
[[nodiscard]] ReducedHomogeneousState homogeneous_nontrivial_state(const HomogeneousParams& p,
                                                                   CollectiveRate convention);
/// n = x = c = 0, z = gamma_- / gamma_+.
[[nodiscard]] ReducedHomogeneousState homogeneous_trivial_state(const HomogeneousParams& p);

/**
 * N above which the collective solution dominates the single-spin term:
 * Gamma kappa / (2 gamma_s gamma_-). Throws DomainError unless all inputs are > 0.
 */
[[nodiscard]] double ensemble_threshold(double g_collective, double kappa, double gamma_s, double gamma_minus,
                                        CollectiveRate convention = CollectiveRate::two_g2_over_kappa);

/// Same bound before the z << 1 simplification: multiplied by (1 + z) / (1 - gamma_+ z / gamma_-).
[[nodiscard]] double ensemble_threshold_full(const HomogeneousParams& p, CollectiveRate convention);

/// The rescaled system as an integrable model; emission is kappa n N photons per second.
class HomogeneousModel {
public:
    HomogeneousModel(HomogeneousParams params, double N);

    [[nodiscard]] std::size_t dim() const noexcept { return 4; }
    void derivs(double t, std::span<const double> y, std::span<double> dydt) const;
    [[nodiscard]] double emission(std::span<const double> y) const { return p_.kappa * y[0] * N_; }
    [[nodiscard]] std::complex<double> amplitude(std::span<const double>) const { return {}; }

private:
    HomogeneousParams p_;
    double N_;
};

}  // namespace superburst
