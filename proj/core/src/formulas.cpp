#include "superburst/formulas.hpp"

#include <cmath>
#include <numbers>

#include "superburst/errors.hpp"

namespace superburst {

AnalyticBurst analytic_burst(const ModelParams& params, double theta) {
    if (!(theta > 0.0 && theta < std::numbers::pi)) throw DomainError("analytic_burst: tip angle must be in (0, pi)");
    const double N = params.ensemble_size;
    const double g2 = params.coupling * params.coupling;
    if (!(g2 > 0.0)) throw DomainError("analytic_burst: coupling must be > 0");
    const double kappa = params.effective_cavity_decay();
    const double rate = 2.0 * N * g2 / kappa;
    AnalyticBurst b;
    b.delay = -std::log(std::tan(0.5 * theta)) / rate;
    b.width = kappa / (N * g2) * std::log(std::numbers::sqrt2 + 1.0);
    b.sz = [N, rate, delay = b.delay](double t) { return 0.5 * N * std::tanh(rate * (t - delay)); };
    return b;
}

BurstPeriod burst_period_formula(double D, double N_i, double N_f, double g, double kappa, double Gamma) {
    if (!(D > 0.0) || !(g > 0.0) || !(kappa > 0.0) || !(Gamma > 0.0)) {
        throw DomainError("burst_period_formula: rates must be > 0");
    }
    const double threshold = kappa * Gamma / (4.0 * g * g);
    BurstPeriod out;
    if (!(N_f > threshold) || !(N_f > N_i)) return out;
    out.bursts = true;
    out.exact = std::log((N_f - N_i) / (N_f - threshold)) / D;
    out.approx = 1.0 / (D * (N_f / threshold));
    return out;
}

double st_linewidth(double n_c, double kappa_c, double kappa_a, double n_th, double n_sp) {
    if (!(n_c > 0.0) || !(kappa_c > 0.0) || !(kappa_a > 0.0)) {
        throw DomainError("st_linewidth: n_c, kappa_c and kappa_a must be > 0");
    }
    const double reduced = kappa_a * kappa_c / (kappa_a + kappa_c);
    return reduced * reduced * (n_th + n_sp + 1.0) / (4.0 * std::numbers::pi * n_c * kappa_c);
}

}  // namespace superburst
