#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "superburst/bifurcation.hpp"

namespace superburst {

enum class Phase { no_sr, cw_sr, periodic_sr };

[[nodiscard]] std::string_view phase_name(Phase p) noexcept;

struct PhaseDiagramOptions {
    /// Plot against sqrt(gamma_-/gamma_+) sqrt(N) g / (kappa/2), the coupling of the population the pump can sustain.
    bool include_population_factor = false;
    /// Bisection steps used to place each boundary crossing inside its grid cell.
    int refine_steps = 40;
};

/// (g_norm, normalized disorder) vertex of a boundary polyline.
using BoundaryPoint = std::pair<double, double>;

struct PhaseDiagram {
    std::vector<double> g_norm;
    std::vector<double> disorder;  ///< delta^2 / gamma_s^2
    std::vector<Phase> labels;     ///< row-major: labels[i * g_norm.size() + j] is (disorder[i], g_norm[j])
    std::vector<BoundaryPoint> c1_boundary;
    std::vector<BoundaryPoint> hopf_boundary;

    [[nodiscard]] Phase at(std::size_t disorder_index, std::size_t g_index) const {
        return labels[disorder_index * g_norm.size() + g_index];
    }
};

/// Parameters of the grid point; base supplies kappa, gamma_s and gamma_+-.
[[nodiscard]] ReducedParams point_params(double g_norm, double normalized_disorder, const ReducedParams& base,
                                         const PhaseDiagramOptions& options);

[[nodiscard]] Phase classify(const ReducedParams& p);

/// Coupling on the plotted axis where the coherent branch appears (C = 1) at this disorder.
[[nodiscard]] double c1_coupling(double normalized_disorder, const ReducedParams& base,
                                 const PhaseDiagramOptions& options);

[[nodiscard]] PhaseDiagram phase_diagram(const std::vector<double>& g_norm, const std::vector<double>& disorder,
                                         const ReducedParams& base, const PhaseDiagramOptions& options = {});

/// Smallest grid coupling labelled periodic in the given disorder row, if any.
[[nodiscard]] std::optional<double> periodic_onset(const PhaseDiagram& diagram, std::size_t disorder_index);

}  // namespace superburst
