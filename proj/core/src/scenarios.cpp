#include "superburst/scenarios.hpp"

#include <cmath>

namespace superburst::reference {

ModelParams regime_three() {
    ModelParams p;
    p.ensemble_size = kEnsembleSize;
    p.cavity_decay = angular(kCavityDecayHz);
    p.coupling = angular(kCollectiveCouplingHz) / std::sqrt(kEnsembleSize);
    p.pump = angular(kPumpHz);
    p.relaxation = angular(kRelaxationHz);
    p.dephasing = angular(kSpinDecayHz - kPumpHz - kRelaxationHz);
    p.thermal_photons = kThermalPhotons;
    p.inhomogeneous_linewidth = angular(kLinewidthHz);
    return p;
}

ThreeLevelParams regime_three_level() {
    ThreeLevelParams p;
    p.base = regime_three();
    p.base.pump = 0.0;
    p.base.thermal_photons = 0.0;
    p.optical_dephasing = angular(1e6);
    p.rabi = angular(25e3);
    p.optical_decay = angular(20e6);
    p.optical_coupling = angular(1.0);
    return p;
}

ReducedParams reduced() {
    ReducedParams p;
    p.g_collective = angular(kCollectiveCouplingHz);
    p.kappa = angular(kCavityDecayHz);
    p.gamma_s = angular(kSpinDecayHz / 2.0);
    p.gamma_plus = angular(kPumpHz + kRelaxationHz);
    p.gamma_minus = angular(kPumpHz - kRelaxationHz);
    return p;
}

DisorderSpec gaussian_disorder(const ModelParams& p) {
    DisorderSpec d;
    d.kind = DisorderKind::gaussian;
    d.width = p.inhomogeneous_linewidth;
    return d;
}

IntegratorConfig cumulant_integrator(double t_end) {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-8;
    cfg.abs_tol = 1e-10;
    cfg.max_step = 50e-9;
    cfg.t_end = t_end;
    cfg.output_dt = 100e-9;
    return cfg;
}

}  // namespace superburst::reference
