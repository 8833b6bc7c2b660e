#include "superburst/spectrum.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>

#include "superburst/errors.hpp"

namespace superburst {

namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(p);
    }
};

}  // namespace

Spectrum psd(const EmissionTrace& trace, const SpectrumOptions& options) {
    trace.validate();
    if (!(options.window_start_fraction >= 0.0 && options.window_start_fraction < 1.0)) {
        throw DomainError("psd: window start fraction must be in [0, 1)");
    }
    const auto first = static_cast<std::size_t>(std::floor(options.window_start_fraction * trace.size()));
    const std::size_t n = trace.size() - first;
    if (n < 16) throw DomainError("psd: analysis segment shorter than 16 samples");

    std::vector<double> in(trace.power.begin() + static_cast<std::ptrdiff_t>(first), trace.power.end());
    const std::size_t bins = n / 2 + 1;
    std::vector<std::complex<double>> out(bins);
    std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_ESTIMATE));
    }
    if (!plan) throw NumericalError("psd: FFTW planning failed");
    fftw_execute(plan.get());

    Spectrum s;
    s.df = 1.0 / (static_cast<double>(n) * trace.dt);
    s.frequency.resize(bins);
    s.density.resize(bins);
    const double norm = 1.0 / (static_cast<double>(n) * static_cast<double>(n) * s.df);
    for (std::size_t k = 0; k < bins; ++k) {
        s.frequency[k] = static_cast<double>(k) * s.df;
        const bool unpaired = k == 0 || (n % 2 == 0 && k == n / 2);
        s.density[k] = std::norm(out[k]) * norm * (unpaired ? 1.0 : 2.0);
    }

    const auto peak = static_cast<std::size_t>(std::max_element(s.density.begin(), s.density.end()) - s.density.begin());
    s.peak_frequency = s.frequency[peak];
    const double half = 0.5 * options.peak_window_bins;
    for (std::size_t k = 0; k < bins; ++k) {
        const double power = s.density[k] * s.df;
        s.total_power += power;
        if (std::abs(static_cast<double>(k) - static_cast<double>(peak)) > half) s.sideband_power += power;
    }
    s.crystalline_fraction = s.total_power > 0.0 ? std::clamp(s.sideband_power / s.total_power, 0.0, 1.0) : 0.0;
    return s;
}

}  // namespace superburst
