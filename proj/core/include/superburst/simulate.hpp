#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "superburst/integrator.hpp"
#include "superburst/trace.hpp"

namespace superburst {

/**
 * Seeded Gaussian kicks added to a set of state components.
 * interval <= 0 gives a single kick at t_start. A collective kick draws one
 * value per kick and adds it to every slot; otherwise each slot gets its own.
 * Kicked values are reflected back into [lower, upper].
 */
struct KickSpec {
    double amplitude = 0.0;
    double interval = 0.0;
    std::uint64_t seed = 0;
    bool collective = false;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
};

/// Folds v into [lower, upper] by mirror reflection at the bounds.
[[nodiscard]] double reflect_into(double v, double lower, double upper);

[[nodiscard]] KickSchedule gaussian_kicks(const KickSpec& spec, const IntegratorConfig& cfg,
                                          std::vector<std::size_t> slots);

/**
 * Integrates any model exposing dim(), derivs(), emission() and amplitude()
 * and records the output power on the integrator's grid.
 */
template <class Model>
EmissionTrace simulate(const Model& model, std::vector<double> y0, const IntegratorConfig& cfg,
                       bool keep_amplitude = false, const KickSchedule* kicks = nullptr,
                       IntegrationStats* stats = nullptr) {
    EmissionTrace trace;
    trace.t0 = cfg.t_start;
    trace.dt = cfg.output_dt;
    const std::size_t n = output_sample_count(cfg);
    trace.power.reserve(n);
    if (keep_amplitude) trace.amplitude.reserve(n);
    auto rhs = [&model](double t, std::span<const double> y, std::span<double> dy) { model.derivs(t, y, dy); };
    auto observe = [&](double, std::span<const double> y) {
        trace.power.push_back(model.emission(y));
        if (keep_amplitude) trace.amplitude.push_back(model.amplitude(y));
    };
    const auto s = integrate(rhs, std::move(y0), cfg, observe, kicks);
    if (stats) *stats = s;
    return trace;
}

}  // namespace superburst
