#include "superburst/meanfield.hpp"

#include <cmath>

#include "superburst/errors.hpp"

namespace superburst {

namespace {

void check_state(const MeanFieldState& s, std::size_t M) {
    if (s.coherence.size() != M || s.inversion.size() != M) {
        throw ContractViolation("mean-field state has " + std::to_string(s.coherence.size()) + "/" +
                                std::to_string(s.inversion.size()) + " bins, ensemble has " + std::to_string(M));
    }
}

void check_span(std::size_t got, std::size_t want) {
    if (got != want) {
        throw ContractViolation("state dimension " + std::to_string(got) + " != " + std::to_string(want));
    }
}

// Spin equations shared by both models; b is the (possibly slaved) cavity amplitude.
void spin_block(const ModelParams& p, const BinnedEnsemble& ens, double frame_offset, const double* s, const double* u,
                double* ds, double* du, cplx b) {
    const double half_ks = 0.5 * p.total_spin_decay();
    const double gain = p.pump - p.relaxation;
    const double loss = p.pump + p.relaxation;
    for (std::size_t m = 0; m < ens.size(); ++m) {
        const cplx sm{s[2 * m], s[2 * m + 1]};
        const cplx rate{-half_ks, -(frame_offset + ens.detunings[m])};
        const cplx d = rate * sm + cplx{0.0, p.coupling} * u[m] * b;
        ds[2 * m] = d.real();
        ds[2 * m + 1] = d.imag();
        du[m] = gain - loss * u[m] + 4.0 * p.coupling * std::imag(std::conj(sm) * b);
    }
}

cplx collective(const BinnedEnsemble& ens, const double* s) {
    cplx S{};
    for (std::size_t m = 0; m < ens.size(); ++m) S += ens.population(m) * cplx{s[2 * m], s[2 * m + 1]};
    return S;
}

double weighted_inversion(const BinnedEnsemble& ens, const double* u) {
    double acc = 0.0;
    for (std::size_t m = 0; m < ens.size(); ++m) acc += ens.weights[m] * u[m];
    return acc;
}

void pack_spins(const MeanFieldState& s, double* out) {
    const std::size_t M = s.coherence.size();
    for (std::size_t m = 0; m < M; ++m) {
        out[2 * m] = s.coherence[m].real();
        out[2 * m + 1] = s.coherence[m].imag();
        out[2 * M + m] = s.inversion[m];
    }
}

void unpack_spins(const double* in, std::size_t M, MeanFieldState& s) {
    s.coherence.resize(M);
    s.inversion.resize(M);
    for (std::size_t m = 0; m < M; ++m) {
        s.coherence[m] = {in[2 * m], in[2 * m + 1]};
        s.inversion[m] = in[2 * M + m];
    }
}

}  // namespace

MeanFieldState tipped_state(std::size_t M, double theta, double phase) {
    MeanFieldState s;
    s.coherence.assign(M, std::polar(0.5 * std::sin(theta), phase));
    s.inversion.assign(M, std::cos(theta));
    return s;
}

MeanFieldState ground_state(std::size_t M, double eps) {
    MeanFieldState s;
    s.coherence.assign(M, cplx{eps, 0.0});
    s.inversion.assign(M, -1.0);
    return s;
}

CavityMeanField::CavityMeanField(ModelParams params, BinnedEnsemble ens) : p_(params), ens_(std::move(ens)) {
    p_.validate();
    if (ens_.size() == 0) throw ContractViolation("empty ensemble");
}

void CavityMeanField::derivs(double, std::span<const double> y, std::span<double> dydt) const {
    check_span(y.size(), dim());
    check_span(dydt.size(), dim());
    const std::size_t M = ens_.size();
    const cplx b{y[0], y[1]};
    const double* s = y.data() + 2;
    const cplx db = -0.5 * p_.cavity_decay * b - cplx{0.0, p_.coupling} * collective(ens_, s);
    dydt[0] = db.real();
    dydt[1] = db.imag();
    spin_block(p_, ens_, p_.ensemble_detuning, s, s + 2 * M, dydt.data() + 2, dydt.data() + 2 + 2 * M, b);
}

double CavityMeanField::emission(std::span<const double> y) const {
    return p_.cavity_decay * (y[0] * y[0] + y[1] * y[1]);
}

std::vector<double> CavityMeanField::pack(const MeanFieldState& s) const {
    check_state(s, ens_.size());
    std::vector<double> y(dim());
    y[0] = s.cavity_amp.real();
    y[1] = s.cavity_amp.imag();
    pack_spins(s, y.data() + 2);
    return y;
}

MeanFieldState CavityMeanField::unpack(std::span<const double> y) const {
    check_span(y.size(), dim());
    MeanFieldState s;
    s.cavity_amp = {y[0], y[1]};
    unpack_spins(y.data() + 2, ens_.size(), s);
    return s;
}

std::vector<std::size_t> CavityMeanField::coherence_slots() const {
    std::vector<std::size_t> out(2 * ens_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 2 + i;
    return out;
}

double CavityMeanField::mean_inversion(std::span<const double> y) const {
    return weighted_inversion(ens_, y.data() + 2 + 2 * ens_.size());
}

AdiabaticMeanField::AdiabaticMeanField(ModelParams params, BinnedEnsemble ens) : p_(params), ens_(std::move(ens)) {
    p_.validate();
    if (ens_.size() == 0) throw ContractViolation("empty ensemble");
    slave_ = cplx{0.0, -p_.coupling} / cplx{0.5 * p_.cavity_decay, -p_.ensemble_detuning};
}

cplx AdiabaticMeanField::amplitude(std::span<const double> y) const { return slave_ * collective(ens_, y.data()); }

double AdiabaticMeanField::emission(std::span<const double> y) const {
    return p_.cavity_decay * std::norm(amplitude(y));
}

void AdiabaticMeanField::derivs(double, std::span<const double> y, std::span<double> dydt) const {
    check_span(y.size(), dim());
    check_span(dydt.size(), dim());
    const std::size_t M = ens_.size();
    spin_block(p_, ens_, 0.0, y.data(), y.data() + 2 * M, dydt.data(), dydt.data() + 2 * M, amplitude(y));
}

std::vector<double> AdiabaticMeanField::pack(const MeanFieldState& s) const {
    check_state(s, ens_.size());
    std::vector<double> y(dim());
    pack_spins(s, y.data());
    return y;
}

MeanFieldState AdiabaticMeanField::unpack(std::span<const double> y) const {
    check_span(y.size(), dim());
    MeanFieldState s;
    s.cavity_amp = amplitude(y);
    unpack_spins(y.data(), ens_.size(), s);
    return s;
}

std::vector<std::size_t> AdiabaticMeanField::coherence_slots() const {
    std::vector<std::size_t> out(2 * ens_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
}

double AdiabaticMeanField::mean_inversion(std::span<const double> y) const {
    return weighted_inversion(ens_, y.data() + 2 * ens_.size());
}

MeanFieldState mf_derivs_cavity(const MeanFieldState& state, const ModelParams& params, const BinnedEnsemble& ens) {
    const CavityMeanField model(params, ens);
    const auto y = model.pack(state);
    std::vector<double> dy(y.size());
    model.derivs(0.0, y, dy);
    return model.unpack(dy);
}

MeanFieldState mf_derivs_adiabatic(const MeanFieldState& state, const ModelParams& params, const BinnedEnsemble& ens) {
    const AdiabaticMeanField model(params, ens);
    const auto y = model.pack(state);
    std::vector<double> dy(y.size());
    model.derivs(0.0, y, dy);
    MeanFieldState d;
    unpack_spins(dy.data(), ens.size(), d);
    return d;
}

}  // namespace superburst
