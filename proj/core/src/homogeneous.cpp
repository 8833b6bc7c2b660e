#include "superburst/homogeneous.hpp"

#include <cmath>
#include <string>

#include "superburst/errors.hpp"

namespace superburst {

ReducedHomogeneousState homogeneous_reduced_derivs(const ReducedHomogeneousState& s, const HomogeneousParams& p,
                                                   double N) {
    if (!(N >= 1.0)) throw DomainError("homogeneous_reduced_derivs: N must be >= 1");
    const double g = p.g_collective;
    const double single = std::isinf(N) ? 0.0 : (1.0 + s.z) / (2.0 * N);
    return {
        2.0 * g * s.x - p.kappa * s.n,
        g * (s.z * s.n + s.c + single) - (p.gamma_s + 0.5 * p.kappa) * s.x,
        p.gamma_minus - p.gamma_plus * s.z - 4.0 * g * s.x,
        2.0 * g * s.z * s.x - 2.0 * p.gamma_s * s.c,
    };
}

double collective_rate(const HomogeneousParams& p, CollectiveRate convention) {
    if (!(p.kappa > 0.0)) throw DomainError("collective_rate: kappa must be > 0");
    const double g2 = p.g_collective * p.g_collective;
    return (convention == CollectiveRate::four_g2_over_kappa ? 4.0 : 2.0) * g2 / p.kappa;
}

ReducedHomogeneousState homogeneous_nontrivial_state(const HomogeneousParams& p, CollectiveRate convention) {
    const double Gamma = collective_rate(p, convention);
    if (!(Gamma > 0.0)) throw DomainError("homogeneous_nontrivial_state: coupling must be > 0");
    const double z = 2.0 * p.gamma_s / Gamma;
    // gamma_- (1 - gamma_+ z / gamma_-), written without dividing by gamma_-.
    const double drive = p.gamma_minus - p.gamma_plus * z;
    return {drive / (2.0 * p.kappa), drive / (2.0 * std::sqrt(Gamma * p.kappa)), z, drive / (2.0 * Gamma)};
}

ReducedHomogeneousState homogeneous_trivial_state(const HomogeneousParams& p) {
    if (!(p.gamma_plus > 0.0)) throw DomainError("homogeneous_trivial_state: gamma_+ must be > 0");
    return {0.0, 0.0, p.gamma_minus / p.gamma_plus, 0.0};
}

double ensemble_threshold(double g_collective, double kappa, double gamma_s, double gamma_minus,
                          CollectiveRate convention) {
    if (!(g_collective > 0.0) || !(kappa > 0.0) || !(gamma_s > 0.0) || !(gamma_minus > 0.0)) {
        throw DomainError("ensemble_threshold: all arguments must be > 0");
    }
    HomogeneousParams p;
    p.g_collective = g_collective;
    p.kappa = kappa;
    return collective_rate(p, convention) * kappa / (2.0 * gamma_s * gamma_minus);
}

double ensemble_threshold_full(const HomogeneousParams& p, CollectiveRate convention) {
    const double base = ensemble_threshold(p.g_collective, p.kappa, p.gamma_s, p.gamma_minus, convention);
    const double z = 2.0 * p.gamma_s / collective_rate(p, convention);
    const double margin = 1.0 - p.gamma_plus * z / p.gamma_minus;
    if (!(margin > 0.0)) {
        throw DomainError("ensemble_threshold_full: non-trivial branch absent (gamma_+ z >= gamma_-), z = " +
                          std::to_string(z));
    }
    return base * (1.0 + z) / margin;
}

HomogeneousModel::HomogeneousModel(HomogeneousParams params, double N) : p_(params), N_(N) {
    if (!(N >= 1.0)) throw ConfigError("homogeneous model needs N >= 1");
    if (!(p_.kappa > 0.0)) throw ConfigError("homogeneous model needs kappa > 0");
}

void HomogeneousModel::derivs(double, std::span<const double> y, std::span<double> dydt) const {
    const auto d = homogeneous_reduced_derivs({y[0], y[1], y[2], y[3]}, p_, N_);
    dydt[0] = d.n;
    dydt[1] = d.x;
    dydt[2] = d.z;
    dydt[3] = d.c;
}

}  // namespace superburst
