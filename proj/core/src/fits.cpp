#include "superburst/fits.hpp"

#include <algorithm>
#include <cmath>

#include "superburst/errors.hpp"
#include "superburst/formulas.hpp"

namespace superburst {

PowerLawFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw DomainError("scaling_fit: need at least 3 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [N, y] : points) {
        if (!(N > 0.0) || !(y > 0.0)) throw DomainError("scaling_fit: values must be > 0");
        sx += std::log(N);
        sy += std::log(y);
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n;
    const double my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [N, y] : points) {
        const double dx = std::log(N) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(y) - my);
    }
    if (!(sxx > 0.0)) throw DomainError("scaling_fit: all N identical");
    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    const double intercept = my - fit.exponent * mx;
    fit.prefactor = std::exp(intercept);
    double ss = 0.0;
    for (const auto& [N, y] : points) {
        const double r = std::log(y) - (intercept + fit.exponent * std::log(N));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

namespace {

double sample_linear(const EmissionTrace& t, double x) {
    const double pos = (x - t.t0) / t.dt;
    const auto k = static_cast<std::ptrdiff_t>(std::floor(pos));
    const auto last = static_cast<std::ptrdiff_t>(t.size()) - 1;
    if (k < 0) return t.power.front();
    if (k >= last) return t.power.back();
    const double f = pos - static_cast<double>(k);
    return (1.0 - f) * t.power[k] + f * t.power[k + 1];
}

}  // namespace

CollapseResult data_collapse(const std::vector<std::pair<EmissionTrace, double>>& traces,
                             const CollapseOptions& options) {
    if (traces.size() < 2) throw DomainError("data_collapse: need at least two traces");
    CollapseResult out;
    double peak = 0.0;
    for (const auto& [trace, N] : traces) {
        if (!(N > 0.0)) throw DomainError("data_collapse: N must be > 0");
        const BurstTrain train = detect_bursts(trace, options.bursts);
        const double tau = train.first_settled_onset();
        EmissionTrace c;
        c.t0 = (trace.t0 - tau) * N;
        c.dt = trace.dt * N;
        c.power.resize(trace.size());
        for (std::size_t k = 0; k < trace.size(); ++k) {
            c.power[k] = trace.power[k] / (N * N);
            peak = std::max(peak, c.power[k]);
        }
        out.collapsed.push_back(std::move(c));
    }
    if (!(peak > 0.0)) throw DomainError("data_collapse: traces carry no power");

    for (std::size_t a = 0; a < out.collapsed.size(); ++a) {
        for (std::size_t b = a + 1; b < out.collapsed.size(); ++b) {
            const auto& A = out.collapsed[a];
            const auto& B = out.collapsed[b];
            // Shared window starts at the aligned onset so the unsettled prefix is ignored.
            const double lo = 0.0;
            double hi = std::min(A.t0 + A.duration(), B.t0 + B.duration());
            if (options.window > 0.0) hi = std::min(hi, options.window);
            const double step = std::min(A.dt, B.dt);
            if (!(hi > lo + step)) throw DomainError("data_collapse: traces do not overlap after alignment");
            double ss = 0.0;
            std::size_t count = 0;
            for (double x = lo; x <= hi; x = lo + static_cast<double>(++count) * step) {
                const double d = sample_linear(A, x) - sample_linear(B, x);
                ss += d * d;
            }
            out.metric = std::max(out.metric, std::sqrt(ss / static_cast<double>(count)) / peak);
        }
    }
    return out;
}

double fit_st_noise(const std::vector<std::pair<double, double>>& photons_and_linewidth, double kappa_c,
                    double kappa_a) {
    if (photons_and_linewidth.size() < 2) throw DomainError("fit_st_noise: need at least two points");
    // Delta f = A (n + 1) x with x = 1 / n_c; A is the linewidth at n = 0, n_c = 1.
    const double A = st_linewidth(1.0, kappa_c, kappa_a, 0.0, 0.0);
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n_c, df] : photons_and_linewidth) {
        if (!(n_c > 0.0)) throw DomainError("fit_st_noise: photon numbers must be > 0");
        const double x = 1.0 / n_c;
        sxx += x * x;
        sxy += x * df;
    }
    return sxy / sxx / A - 1.0;
}

}  // namespace superburst
