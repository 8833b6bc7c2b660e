#include "superburst/simulate.hpp"

#include <cmath>
#include <random>

#include "superburst/errors.hpp"

namespace superburst {

double reflect_into(double v, double lower, double upper) {
    if (!(lower <= upper)) throw ConfigError("kick bounds must satisfy lower <= upper");
    const bool lo = std::isfinite(lower);
    const bool hi = std::isfinite(upper);
    if (lo && hi) {
        const double w = upper - lower;
        if (w == 0.0) return lower;
        double r = std::fmod(v - lower, 2.0 * w);
        if (r < 0.0) r += 2.0 * w;
        return r <= w ? lower + r : upper - (r - w);
    }
    if (lo && v < lower) return 2.0 * lower - v;
    if (hi && v > upper) return 2.0 * upper - v;
    return v;
}

KickSchedule gaussian_kicks(const KickSpec& spec, const IntegratorConfig& cfg, std::vector<std::size_t> slots) {
    if (!(spec.amplitude >= 0.0)) throw ConfigError("kick amplitude must be >= 0");
    KickSchedule schedule;
    if (spec.interval > 0.0) {
        for (double t = cfg.t_start; t < cfg.t_end; t += spec.interval) schedule.times.push_back(t);
    } else {
        schedule.times.push_back(cfg.t_start);
    }
    // Each kick draws from its own stream so replaying a schedule is repeatable.
    schedule.apply = [spec, slots = std::move(slots)](std::size_t index, double, std::span<double> y) {
        std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                          static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> normal(0.0, spec.amplitude);
        const double shared = spec.collective ? normal(rng) : 0.0;
        for (std::size_t i : slots) {
            const double kick = spec.collective ? shared : normal(rng);
            y[i] = reflect_into(y[i] + kick, spec.lower, spec.upper);
        }
    };
    return schedule;
}

}  // namespace superburst
