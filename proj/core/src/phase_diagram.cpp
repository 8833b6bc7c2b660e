#include "superburst/phase_diagram.hpp"

#include <cmath>

#include "superburst/errors.hpp"

namespace superburst {

std::string_view phase_name(Phase p) noexcept {
    switch (p) {
        case Phase::no_sr: return "no_SR";
        case Phase::cw_sr: return "CW_SR";
        case Phase::periodic_sr: return "periodic_SR";
    }
    return "unknown";
}

namespace {

double axis_factor(const ReducedParams& base, const PhaseDiagramOptions& options) {
    return options.include_population_factor ? std::sqrt(base.gamma_minus / base.gamma_plus) : 1.0;
}

}  // namespace

ReducedParams point_params(double g_norm, double normalized_disorder, const ReducedParams& base,
                           const PhaseDiagramOptions& options) {
    ReducedParams p = base;
    p.g_collective = g_norm * 0.5 * base.kappa / axis_factor(base, options);
    p.delta = base.gamma_s * std::sqrt(std::max(normalized_disorder, 0.0));
    return p;
}

Phase classify(const ReducedParams& p) {
    if (!steady_states(p).nontrivial_valid()) return Phase::no_sr;
    return nontrivial_growth_rate(p) < 0.0 ? Phase::cw_sr : Phase::periodic_sr;
}

double c1_coupling(double normalized_disorder, const ReducedParams& base, const PhaseDiagramOptions& options) {
    const double gs = base.gamma_s;
    const double d2 = gs * gs * std::max(normalized_disorder, 0.0);
    const double g = std::sqrt(base.kappa * base.gamma_plus * (gs * gs + d2) / (2.0 * gs * base.gamma_minus));
    return g / (0.5 * base.kappa) * axis_factor(base, options);
}

PhaseDiagram phase_diagram(const std::vector<double>& g_norm, const std::vector<double>& disorder,
                           const ReducedParams& base, const PhaseDiagramOptions& options) {
    if (g_norm.empty() || disorder.empty()) throw DomainError("phase_diagram: empty grid");
    if (!(base.gamma_minus > 0.0)) throw DomainError("phase_diagram: needs net pumping (gamma_- > 0)");
    base.validate();

    PhaseDiagram out;
    out.g_norm = g_norm;
    out.disorder = disorder;
    const std::size_t ng = g_norm.size();
    const std::size_t nd = disorder.size();
    out.labels.assign(ng * nd, Phase::no_sr);

#if defined(SUPERBURST_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t k = 0; k < static_cast<std::ptrdiff_t>(ng * nd); ++k) {
        const std::size_t i = static_cast<std::size_t>(k) / ng;
        const std::size_t j = static_cast<std::size_t>(k) % ng;
        out.labels[k] = classify(point_params(g_norm[j], disorder[i], base, options));
    }

    for (double d : disorder) out.c1_boundary.emplace_back(c1_coupling(d, base, options), d);

    // Hopf crossings between horizontally adjacent CW and periodic cells, refined by bisection.
    for (std::size_t i = 0; i < nd; ++i) {
        for (std::size_t j = 0; j + 1 < ng; ++j) {
            const Phase a = out.at(i, j);
            const Phase b = out.at(i, j + 1);
            const bool crossing = (a == Phase::cw_sr && b == Phase::periodic_sr) ||
                                  (a == Phase::periodic_sr && b == Phase::cw_sr);
            if (!crossing) continue;
            double lo = g_norm[j];
            double hi = g_norm[j + 1];
            const bool lo_stable = a == Phase::cw_sr;
            for (int step = 0; step < options.refine_steps; ++step) {
                const double mid = 0.5 * (lo + hi);
                const Phase pm = classify(point_params(mid, disorder[i], base, options));
                if (pm == Phase::no_sr) break;
                if ((pm == Phase::cw_sr) == lo_stable) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.hopf_boundary.emplace_back(0.5 * (lo + hi), disorder[i]);
        }
    }
    return out;
}

std::optional<double> periodic_onset(const PhaseDiagram& diagram, std::size_t disorder_index) {
    for (std::size_t j = 0; j < diagram.g_norm.size(); ++j) {
        if (diagram.at(disorder_index, j) == Phase::periodic_sr) return diagram.g_norm[j];
    }
    return std::nullopt;
}

}  // namespace superburst
