#include "superburst/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "superburst/errors.hpp"

namespace superburst {

namespace {

constexpr double kWeightTol = 1e-12;

void normalize(std::vector<double>& w) {
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= total;
}

BinnedEnsemble gaussian_bins(double fwhm, double span_fwhm, double N, int M) {
    if (M < 1 || M % 2 == 0) {
        throw ConfigError("gaussian binning needs an odd bin count, got " + std::to_string(M));
    }
    if (!(fwhm >= 0.0)) throw ConfigError("gaussian linewidth must be >= 0");
    if (!(span_fwhm > 0.0)) throw ConfigError("gaussian span must be > 0");
    if (fwhm == 0.0 || M == 1) return homogeneous_ensemble(N);

    const double sigma = fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2));
    const double span = span_fwhm * fwhm;
    const double width = 2.0 * span / M;
    auto cdf = [sigma](double x) { return 0.5 * std::erfc(-x / (sigma * std::numbers::sqrt2)); };

    BinnedEnsemble ens;
    ens.total_N = N;
    ens.detunings.resize(M);
    ens.weights.resize(M);
    for (int m = 0; m < M; ++m) {
        const double lo = -span + m * width;
        const double hi = lo + width;
        ens.detunings[m] = 0.5 * (lo + hi);
        const double c_lo = m == 0 ? 0.0 : cdf(lo);
        const double c_hi = m == M - 1 ? 1.0 : cdf(hi);
        ens.weights[m] = c_hi - c_lo;
    }
    ens.detunings[M / 2] = 0.0;
    normalize(ens.weights);
    return ens;
}

}  // namespace

BinnedEnsemble homogeneous_ensemble(double N) {
    BinnedEnsemble ens;
    ens.total_N = N;
    ens.detunings = {0.0};
    ens.weights = {1.0};
    return ens;
}

BinnedEnsemble build_bins(const DisorderSpec& spec, double N, int M) {
    if (!(N >= 1.0)) throw ConfigError("ensemble size must be >= 1");
    switch (spec.kind) {
        case DisorderKind::gaussian:
            return gaussian_bins(spec.width, spec.span_fwhm, N, M);
        case DisorderKind::two_delta: {
            if (!(spec.width >= 0.0)) throw ConfigError("two_delta splitting must be >= 0");
            BinnedEnsemble ens;
            ens.total_N = N;
            ens.detunings = {-spec.width, spec.width};
            ens.weights = {0.5, 0.5};
            return ens;
        }
        case DisorderKind::table: {
            if (spec.table.empty()) throw ConfigError("disorder table is empty");
            auto rows = spec.table;
            double total = 0.0;
            for (const auto& [d, w] : rows) {
                if (!(w >= 0.0)) throw ConfigError("disorder table weights must be >= 0");
                if (!std::isfinite(d)) throw ConfigError("disorder table detunings must be finite");
                total += w;
            }
            if (std::abs(total - 1.0) > kWeightTol) {
                throw ConfigError("disorder table weights must sum to 1");
            }
            std::stable_sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
            BinnedEnsemble ens;
            ens.total_N = N;
            for (const auto& [d, w] : rows) {
                ens.detunings.push_back(d);
                ens.weights.push_back(w);
            }
            return ens;
        }
    }
    throw ConfigError("unknown disorder kind");
}

BinnedEnsemble sample_gaussian(double fwhm, double N, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw ConfigError("sample count must be >= 1");
    if (!(fwhm >= 0.0)) throw ConfigError("gaussian linewidth must be >= 0");
    if (!(N >= 1.0)) throw ConfigError("ensemble size must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, fwhm / (2.0 * std::sqrt(2.0 * std::numbers::ln2)));
    BinnedEnsemble ens;
    ens.total_N = N;
    ens.detunings.resize(count);
    for (double& d : ens.detunings) d = fwhm > 0.0 ? normal(rng) : 0.0;
    std::sort(ens.detunings.begin(), ens.detunings.end());
    ens.weights.assign(count, 1.0 / static_cast<double>(count));
    return ens;
}

}  // namespace superburst
