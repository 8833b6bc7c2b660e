#pragma once

#include "superburst/bifurcation.hpp"
#include "superburst/ensemble.hpp"
#include "superburst/integrator.hpp"
#include "superburst/params.hpp"
#include "superburst/three_level.hpp"

namespace superburst {

// Reference parameter sets of the Yb:YVO4 device. Rates in rad/s.
namespace reference {

inline constexpr double kEnsembleSize = 1e10;
inline constexpr double kCavityDecayHz = 3.6e6;
inline constexpr double kCollectiveCouplingHz = 1.1e6;
inline constexpr double kLinewidthHz = 160e3;
inline constexpr double kPumpHz = 0.76e3;        // gamma_up
inline constexpr double kRelaxationHz = 0.44e3;  // gamma_down
inline constexpr double kSpinDecayHz = 32e3;     // kappa_s = 2 gamma_s
inline constexpr double kThermalPhotons = 3.2;

/// Pulsed-regime (regime III) two-level parameters at 400 uW pump.
[[nodiscard]] ModelParams regime_three();

/// Same device seen through the three-level model; the repump is an explicit optical Rabi drive.
[[nodiscard]] ThreeLevelParams regime_three_level();

/// Two-sub-ensemble rates of the bifurcation analysis (delta = 0).
[[nodiscard]] ReducedParams reduced();

/// Gaussian disorder of width Gamma for the given params.
[[nodiscard]] DisorderSpec gaussian_disorder(const ModelParams& p);

/// Tolerances used for the long cumulant runs.
[[nodiscard]] IntegratorConfig cumulant_integrator(double t_end);

}  // namespace reference
}  // namespace superburst
