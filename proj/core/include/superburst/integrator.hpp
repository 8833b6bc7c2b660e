#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace superburst {

enum class IntegrationMethod { fixed_rk4, adaptive_rk45 };

struct IntegratorConfig {
    IntegrationMethod method = IntegrationMethod::adaptive_rk45;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 50e-9;
    double fixed_step = 1e-9;
    double t_start = 0.0;
    double t_end = 1e-3;
    double output_dt = 10e-9;

    /// Throws ConfigError on non-positive tolerances, steps or an empty span.
    void validate() const;
};

using Derivs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;
using Observer = std::function<void(double t, std::span<const double> y)>;

/**
 * Discontinuous state updates at fixed times. The integrator lands exactly on
 * each time, reports the pre-kick sample if it is on the output grid, applies
 * the kick, and restarts stepping from the modified state.
 */
struct KickSchedule {
    std::vector<double> times;
    std::function<void(std::size_t index, double t, std::span<double> y)> apply;
};

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
    std::size_t samples = 0;
};

/**
 * Integrates dy/dt = f(t, y) from cfg.t_start to cfg.t_end and calls `observe`
 * on the uniform grid t_start + k output_dt (both ends included when they fall
 * on the grid). Adaptive mode is Dormand-Prince 5(4) with its quartic dense
 * output, so samples do not depend on the internal step sequence.
 *
 * Throws IntegrationError on step-size underflow or a non-finite state.
 */
IntegrationStats integrate(const Derivs& f, std::vector<double> y0, const IntegratorConfig& cfg,
                           const Observer& observe, const KickSchedule* kicks = nullptr);

/// Number of output samples integrate() will emit for cfg.
[[nodiscard]] std::size_t output_sample_count(const IntegratorConfig& cfg);

}  // namespace superburst
