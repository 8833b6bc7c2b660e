#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace superburst {

/// Uniformly sampled cavity output, power in photons per second.
struct EmissionTrace {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> power;
    std::vector<std::complex<double>> amplitude;  ///< empty unless retained

    [[nodiscard]] std::size_t size() const noexcept { return power.size(); }
    [[nodiscard]] double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
    [[nodiscard]] double duration() const noexcept {
        return power.empty() ? 0.0 : static_cast<double>(power.size() - 1) * dt;
    }

    /// Throws ContractViolation unless dt > 0, size >= 2 and amplitude is empty or matches.
    void validate() const;

    /// Samples with t >= t_from (the grid is kept).
    [[nodiscard]] EmissionTrace tail(double t_from) const;
};

[[nodiscard]] double mean(const std::vector<double>& v);

}  // namespace superburst
