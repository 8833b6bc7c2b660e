#include "superburst/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "superburst/errors.hpp"

namespace superburst {

namespace {

void require_non_negative(double value, const char* name) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
        throw ConfigError(std::string(name) + " must be finite and >= 0");
    }
}

}  // namespace

double ModelParams::effective_cavity_decay() const noexcept {
    const double r = 2.0 * ensemble_detuning / cavity_decay;
    return cavity_decay * (1.0 + r * r);
}

double ModelParams::collective_coupling() const noexcept { return std::sqrt(ensemble_size) * coupling; }

void ModelParams::validate() const {
    if (!(cavity_decay > 0.0) || !std::isfinite(cavity_decay)) {
        throw ConfigError("cavity_decay must be > 0");
    }
    require_non_negative(coupling, "coupling");
    require_non_negative(dephasing, "dephasing");
    require_non_negative(relaxation, "relaxation");
    require_non_negative(pump, "pump");
    require_non_negative(thermal_photons, "thermal_photons");
    require_non_negative(inhomogeneous_linewidth, "inhomogeneous_linewidth");
    if (!(ensemble_size >= 1.0) || !std::isfinite(ensemble_size)) {
        throw ConfigError("ensemble_size must be >= 1");
    }
    if (!std::isfinite(ensemble_detuning) || !std::isfinite(cavity_freq)) {
        throw ConfigError("frequencies must be finite");
    }
}

double cooperativity(const ModelParams& params) {
    if (!(params.cavity_decay > 0.0)) {
        throw DomainError("cooperativity: cavity decay must be > 0");
    }
    if (!(params.inhomogeneous_linewidth > 0.0)) {
        throw DomainError("cooperativity: inhomogeneous linewidth must be > 0");
    }
    const double g = params.coupling;
    return 4.0 * params.ensemble_size * g * g /
           (params.effective_cavity_decay() * params.inhomogeneous_linewidth);
}

double normalized_coupling(const ModelParams& params) {
    if (!(params.cavity_decay > 0.0)) {
        throw DomainError("normalized_coupling: cavity decay must be > 0");
    }
    return params.collective_coupling() / (0.5 * params.cavity_decay);
}

double effective_ensemble_size(double pump_detuning, double optical_linewidth, double total_size) {
    if (!(optical_linewidth > 0.0)) {
        throw DomainError("effective_ensemble_size: optical linewidth must be > 0");
    }
    const double r = pump_detuning / optical_linewidth;
    return total_size * std::exp(-4.0 * std::numbers::ln2 * r * r);
}

double steady_emission_frequency(const ModelParams& params) {
    const double kappa = params.cavity_decay;
    const double kappa_s = params.total_spin_decay();
    if (!(kappa + kappa_s > 0.0)) {
        throw DomainError("steady_emission_frequency: kappa + kappa_s must be > 0");
    }
    return (kappa_s * params.cavity_freq + kappa * params.spin_center_freq()) / (kappa + kappa_s);
}

}  // namespace superburst
