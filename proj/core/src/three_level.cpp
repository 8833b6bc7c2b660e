#include "superburst/three_level.hpp"

#include <cmath>

#include "superburst/errors.hpp"

namespace superburst {

using cplx = std::complex<double>;

namespace {

constexpr cplx kI{0.0, 1.0};

void check_span(std::size_t got, std::size_t want) {
    if (got != want) {
        throw ContractViolation("state dimension " + std::to_string(got) + " != " + std::to_string(want));
    }
}

}  // namespace

double ThreeLevelParams::effective_pump() const noexcept {
    return optical_dephasing > 0.0 ? 4.0 * rabi * rabi / optical_dephasing : 0.0;
}

void ThreeLevelParams::validate() const {
    base.validate();
    for (double v : {optical_decay, optical_dephasing, optical_coupling, rabi, noise_drive}) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("three-level rates must be finite and >= 0");
    }
    if (!std::isfinite(optical_detuning) || !std::isfinite(pump_detuning)) {
        throw ConfigError("three-level detunings must be finite");
    }
}

ThreeLevelState three_level_ground(std::size_t M, double eps) {
    ThreeLevelState s;
    s.s_gd.assign(M, {});
    s.s_du.assign(M, {eps, 0.0});
    s.s_gu.assign(M, {});
    s.p_g.assign(M, 1.0);
    s.p_d.assign(M, 0.0);
    s.p_u.assign(M, 0.0);
    return s;
}

ThreeLevelMeanField::ThreeLevelMeanField(ThreeLevelParams params, BinnedEnsemble ens)
    : p_(params), ens_(std::move(ens)) {
    p_.validate();
    if (ens_.size() == 0) throw ContractViolation("empty ensemble");
}

void ThreeLevelMeanField::derivs(double, std::span<const double> y, std::span<double> dydt) const {
    check_span(y.size(), dim());
    check_span(dydt.size(), dim());
    const cplx a{y[0], y[1]};
    const cplx b{y[2], y[3]};
    const double g = p_.base.coupling;
    const double go = p_.optical_coupling;
    const double W = p_.rabi;
    const double half_go = 0.5 * p_.optical_dephasing;
    const double half_gs = 0.5 * p_.microwave_dephasing();
    const double g1 = p_.base.relaxation;
    const cplx ac = std::conj(a);
    const cplx bc = std::conj(b);

    cplx sum_gd{};
    cplx sum_du{};
    for (std::size_t m = 0; m < ens_.size(); ++m) {
        const double* x = y.data() + 4 + kPerBin * m;
        double* dx = dydt.data() + 4 + kPerBin * m;
        const cplx s_gd{x[0], x[1]};
        const cplx s_du{x[2], x[3]};
        const cplx s_gu{x[4], x[5]};
        const double pg = x[6];
        const double pd = x[7];
        const double pu = x[8];
        const double e_up = p_.pump_detuning;
        const double e_down = p_.pump_detuning - (p_.base.ensemble_detuning + ens_.detunings[m]);

        const cplx d_gd = -(kI * e_down + half_go) * s_gd - kI * go * (pg - pd) * a + kI * W * std::conj(s_du) -
                          kI * g * bc * s_gu;
        const cplx d_du = -(kI * (e_up - e_down) + half_gs) * s_du + kI * g * (pu - pd) * b + kI * go * ac * s_gu -
                          kI * W * std::conj(s_gd);
        const cplx d_gu = -(kI * e_up + half_go) * s_gu - kI * W * (pg - pu) - kI * g * b * s_gd + kI * go * a * s_du;
        // -i (z - z^*) = 2 Im z
        const double pump_flow = 2.0 * W * std::imag(s_gu);       // net up -> g
        const double mw_flow = 2.0 * g * std::imag(bc * s_du);    // net up -> down
        const double opt_flow = 2.0 * go * std::imag(ac * s_gd);  // net down -> g
        dx[0] = d_gd.real();
        dx[1] = d_gd.imag();
        dx[2] = d_du.real();
        dx[3] = d_du.imag();
        dx[4] = d_gu.real();
        dx[5] = d_gu.imag();
        dx[6] = g1 * (pd + pu) + pump_flow + opt_flow;
        dx[7] = -g1 * pd + mw_flow - opt_flow;
        dx[8] = -g1 * pu - pump_flow - mw_flow;
        const double w = ens_.population(m);
        sum_gd += w * s_gd;
        sum_du += w * s_du;
    }
    const cplx da = -(kI * p_.optical_detuning + 0.5 * p_.optical_decay) * a - kI * go * sum_gd;
    const cplx db = -0.5 * p_.base.cavity_decay * b - kI * g * sum_du - kI * p_.noise_drive;
    dydt[0] = da.real();
    dydt[1] = da.imag();
    dydt[2] = db.real();
    dydt[3] = db.imag();
}

double ThreeLevelMeanField::emission(std::span<const double> y) const {
    return p_.base.cavity_decay * (y[2] * y[2] + y[3] * y[3]);
}

double ThreeLevelMeanField::optical_emission(std::span<const double> y) const {
    return p_.optical_decay * (y[0] * y[0] + y[1] * y[1]);
}

std::vector<double> ThreeLevelMeanField::pack(const ThreeLevelState& s) const {
    const std::size_t M = ens_.size();
    for (const auto* v : {&s.s_gd, &s.s_du, &s.s_gu}) {
        if (v->size() != M) throw ContractViolation("three-level coherence length differs from bin count");
    }
    for (const auto* v : {&s.p_g, &s.p_d, &s.p_u}) {
        if (v->size() != M) throw ContractViolation("three-level population length differs from bin count");
    }
    std::vector<double> y(dim());
    y[0] = s.optical_amp.real();
    y[1] = s.optical_amp.imag();
    y[2] = s.microwave_amp.real();
    y[3] = s.microwave_amp.imag();
    for (std::size_t m = 0; m < M; ++m) {
        double* x = y.data() + 4 + kPerBin * m;
        x[0] = s.s_gd[m].real();
        x[1] = s.s_gd[m].imag();
        x[2] = s.s_du[m].real();
        x[3] = s.s_du[m].imag();
        x[4] = s.s_gu[m].real();
        x[5] = s.s_gu[m].imag();
        x[6] = s.p_g[m];
        x[7] = s.p_d[m];
        x[8] = s.p_u[m];
    }
    return y;
}

ThreeLevelState ThreeLevelMeanField::unpack(std::span<const double> y) const {
    check_span(y.size(), dim());
    const std::size_t M = ens_.size();
    ThreeLevelState s;
    s.optical_amp = {y[0], y[1]};
    s.microwave_amp = {y[2], y[3]};
    s.s_gd.resize(M);
    s.s_du.resize(M);
    s.s_gu.resize(M);
    s.p_g.resize(M);
    s.p_d.resize(M);
    s.p_u.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        const double* x = y.data() + 4 + kPerBin * m;
        s.s_gd[m] = {x[0], x[1]};
        s.s_du[m] = {x[2], x[3]};
        s.s_gu[m] = {x[4], x[5]};
        s.p_g[m] = x[6];
        s.p_d[m] = x[7];
        s.p_u[m] = x[8];
    }
    return s;
}

std::vector<std::size_t> ThreeLevelMeanField::coherence_slots() const {
    std::vector<std::size_t> out;
    out.reserve(2 * ens_.size());
    for (std::size_t m = 0; m < ens_.size(); ++m) {
        out.push_back(4 + kPerBin * m + 2);
        out.push_back(4 + kPerBin * m + 3);
    }
    return out;
}

std::array<double, 3> ThreeLevelMeanField::mean_populations(std::span<const double> y) const {
    std::array<double, 3> acc{};
    for (std::size_t m = 0; m < ens_.size(); ++m) {
        const double* x = y.data() + 4 + kPerBin * m;
        for (int k = 0; k < 3; ++k) acc[k] += ens_.weights[m] * x[6 + k];
    }
    return acc;
}

ThreeLevelState mf_derivs_three_level(const ThreeLevelState& state, const ThreeLevelParams& params,
                                      const BinnedEnsemble& ens) {
    const ThreeLevelMeanField model(params, ens);
    const auto y = model.pack(state);
    std::vector<double> dy(y.size());
    model.derivs(0.0, y, dy);
    return model.unpack(dy);
}

}  // namespace superburst
