#include "superburst/bursts.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "superburst/errors.hpp"

namespace superburst {

namespace {

double median(std::vector<double> v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2 == 1) return *mid;
    const double upper = *mid;
    const double lower = *std::max_element(v.begin(), mid);
    return 0.5 * (lower + upper);
}

struct Interval {
    std::size_t begin;
    std::size_t end;  // one past the last sample above threshold
};

}  // namespace

std::size_t BurstTrain::settled_count() const noexcept {
    return static_cast<std::size_t>(std::count(settled.begin(), settled.end(), true));
}

double BurstTrain::mean_settled_peak() const {
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < size(); ++k) {
        if (settled[k]) {
            acc += peaks[k];
            ++n;
        }
    }
    if (n == 0) throw DomainError("no settled bursts");
    return acc / static_cast<double>(n);
}

double BurstTrain::first_settled_onset() const {
    for (std::size_t k = 0; k < size(); ++k) {
        if (settled[k]) return onsets[k];
    }
    throw DomainError("no settled bursts");
}

BurstTrain detect_bursts(const EmissionTrace& trace, const BurstOptions& options) {
    if (trace.size() < 16) throw DomainError("detect_bursts: trace needs at least 16 samples");
    const auto& P = trace.power;
    if (!(options.release_factor <= options.threshold_factor)) {
        throw DomainError("detect_bursts: release factor must not exceed the threshold factor");
    }
    const double base = median(P);
    const double threshold = options.threshold_factor * base;
    const double release = options.release_factor * base;

    std::vector<Interval> runs;
    for (std::size_t k = 1; k < P.size(); ++k) {
        if (P[k] > threshold && !(P[k - 1] > threshold)) {
            std::size_t e = k;
            while (e < P.size() && P[e] > release) ++e;
            runs.push_back({k, e});
            k = e;
        }
    }

    const double settle_time = trace.t0 + options.settle_fraction * trace.duration();
    auto onset_of = [&](const Interval& r) {
        const std::size_t k = r.begin;
        const double frac = (threshold - P[k - 1]) / (P[k] - P[k - 1]);
        return trace.time(k - 1) + std::clamp(frac, 0.0, 1.0) * trace.dt;
    };

    double largest = 0.0;
    double largest_settled = 0.0;
    std::vector<std::size_t> peak_index(runs.size());
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto it = std::max_element(P.begin() + static_cast<std::ptrdiff_t>(runs[r].begin),
                                         P.begin() + static_cast<std::ptrdiff_t>(runs[r].end));
        peak_index[r] = static_cast<std::size_t>(it - P.begin());
        largest = std::max(largest, *it);
        if (onset_of(runs[r]) >= settle_time) largest_settled = std::max(largest_settled, *it);
    }
    const double reference = largest_settled > 0.0 ? largest_settled : largest;

    BurstTrain train;
    for (std::size_t r = 0; r < runs.size(); ++r) {
        const double peak = P[peak_index[r]];
        if (peak < options.min_peak_fraction * reference) continue;
        const double onset = onset_of(runs[r]);
        train.onsets.push_back(onset);
        train.peaks.push_back(peak);
        train.peak_times.push_back(trace.time(peak_index[r]));
        train.settled.push_back(onset >= settle_time);
    }

    std::vector<double> gaps;
    for (std::size_t k = 1; k < train.size(); ++k) {
        if (train.settled[k] && train.settled[k - 1]) gaps.push_back(train.onsets[k] - train.onsets[k - 1]);
    }
    if (!gaps.empty()) train.period = median(gaps);
    return train;
}

PhaseStatistics onset_phases(const std::vector<double>& onsets, double T_ref) {
    if (!(T_ref > 0.0)) throw DomainError("onset_phases: reference period must be > 0");
    if (onsets.empty()) throw DomainError("onset_phases: no onsets");
    PhaseStatistics out;
    std::complex<double> sum{};
    for (double tau : onsets) {
        double theta = std::fmod(2.0 * std::numbers::pi * tau / T_ref, 2.0 * std::numbers::pi);
        if (theta < 0.0) theta += 2.0 * std::numbers::pi;
        out.phases.push_back(theta);
        sum += std::polar(1.0, theta);
    }
    const double n = static_cast<double>(onsets.size());
    const double Rn = std::abs(sum);
    out.resultant_length = Rn / n;
    out.rayleigh_z = Rn * Rn / n;
    const double p = std::exp(std::sqrt(1.0 + 4.0 * n + 4.0 * (n * n - Rn * Rn)) - (1.0 + 2.0 * n));
    out.p_value = std::clamp(p, 0.0, 1.0);
    return out;
}

PhaseStatistics onset_phases(const std::vector<BurstTrain>& trains, double T_ref) {
    if (trains.empty()) throw DomainError("onset_phases: no trains");
    std::vector<double> onsets;
    onsets.reserve(trains.size());
    for (const auto& t : trains) onsets.push_back(t.first_settled_onset());
    return onset_phases(onsets, T_ref);
}

}  // namespace superburst
