#pragma once

#include <array>
#include <complex>
#include <optional>

#include <Eigen/Core>

#include "superburst/params.hpp"

namespace superburst {

/// Two sub-ensembles at +-delta around the cavity, in the rescaled w, x, y, z variables.
struct ReducedParams {
    double g_collective = 0.0;  ///< g~ = sqrt(N) g
    double kappa = 0.0;
    double gamma_s = 0.0;
    double gamma_plus = 0.0;    ///< D + gamma_1
    double gamma_minus = 0.0;   ///< D - gamma_1
    double delta = 0.0;

    /// Throws ConfigError unless kappa > 0, gamma_s > 0 and gamma_+ >= |gamma_-|.
    void validate() const;
    /// Homogeneous linewidth gamma_0 = 2 gamma_s.
    [[nodiscard]] double gamma0() const noexcept { return 2.0 * gamma_s; }
};

/// gamma_s = kappa_s / 2, gamma_+- = D +- gamma_1, g~ = sqrt(N) g.
[[nodiscard]] ReducedParams reduced_from_model(const ModelParams& p, double delta);

struct ReducedState {
    double w = 0.0;  ///< i <b> / sqrt(N)
    double x = 0.0;  ///< symmetric coherence
    double y = 0.0;  ///< antisymmetric coherence
    double z = 0.0;  ///< inversion, +1 fully up
};

struct SteadyStateSet {
    ReducedState trivial;
    std::optional<ReducedState> nontrivial_plus;
    std::optional<ReducedState> nontrivial_minus;
    double x0_squared = 0.0;  ///< sign decides whether the coherent branch exists

    [[nodiscard]] bool nontrivial_valid() const noexcept { return nontrivial_plus.has_value(); }
};

/**
 *   w' = -kappa w / 2 + g~ x
 *   x' = -delta y - gamma_s x + g~ w z
 *   y' =  delta x - gamma_s y
 *   z' = gamma_- - gamma_+ z - 4 g~ w x
 */
[[nodiscard]] ReducedState reduced_derivs(const ReducedState& s, const ReducedParams& p);

[[nodiscard]] SteadyStateSet steady_states(const ReducedParams& p);

/// Analytic Jacobian at a steady state; throws ContractViolation if the residual exceeds 1e-9 (relative).
[[nodiscard]] Eigen::Matrix4d jacobian(const ReducedState& ss, const ReducedParams& p);

[[nodiscard]] std::array<std::complex<double>, 4> eigenvalues(const Eigen::Matrix4d& m);

struct CharCoeffs {
    double c3 = 0.0;
    double c2 = 0.0;
    double c1 = 0.0;
    double c0 = 0.0;
};

/// Closed-form coefficients of det(lambda - Lambda) on the coherent branch; DomainError if it is absent.
[[nodiscard]] CharCoeffs char_coeffs(const ReducedParams& p);

struct HopfResidual {
    double value = 0.0;
    bool pole = false;  ///< c1 or c3 vanished; the value is meaningless
};

/// c0 c3 / c1 - c2 + c1 / c3 at the given delta (p.delta is ignored).
[[nodiscard]] HopfResidual hopf_residual(double delta, const ReducedParams& p);

/// gamma_s^2 + delta^2 < 2 g~^2 gamma_s gamma_- / (kappa gamma_+).
[[nodiscard]] bool trivial_instability(const ReducedParams& p);

/// Largest real part among the eigenvalues of the Jacobian on the coherent branch.
[[nodiscard]] double nontrivial_growth_rate(const ReducedParams& p);

struct HopfPoint {
    double delta_c = 0.0;           ///< rad/s
    double critical_linewidth = 0.0; ///< Gamma_c = gamma_0 (1 + 4 delta_c^2 / gamma_0^2)
    std::complex<double> crossing_pair{};  ///< eigenvalue of the pair closest to the imaginary axis
};

/**
 * First delta in (0, delta_max] where the coherent branch loses stability.
 * The bracket comes from the Jacobian spectrum, so poles of the residual are
 * never mistaken for roots; inside it the residual is solved by TOMS 748 to
 * `tolerance` in delta. Returns nothing when no crossing exists.
 */
[[nodiscard]] std::optional<HopfPoint> find_critical_disorder(const ReducedParams& p, double delta_max,
                                                              double tolerance = kTwoPi * 1.0);

/// Gamma = gamma_0 (1 + 4 delta^2 / gamma_0^2), the two-delta linewidth.
[[nodiscard]] double two_delta_linewidth(double delta, double gamma0);

}  // namespace superburst
