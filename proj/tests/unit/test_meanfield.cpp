#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "superburst/errors.hpp"
#include "superburst/formulas.hpp"
#include "superburst/meanfield.hpp"
#include "superburst/simulate.hpp"

using namespace superburst;

namespace {

// Dimensionless bad-cavity set: kappa = 1, sqrt(N) g = kappa / ratio.
ModelParams bad_cavity(double ratio, double N = 1e6) {
    ModelParams p;
    p.cavity_decay = 1.0;
    p.ensemble_size = N;
    p.coupling = 1.0 / (ratio * std::sqrt(N));
    return p;
}

MeanFieldState random_state(std::size_t M, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    MeanFieldState s;
    s.cavity_amp = {U(rng), U(rng)};
    for (std::size_t m = 0; m < M; ++m) {
        s.coherence.emplace_back(0.5 * U(rng), 0.5 * U(rng));
        s.inversion.push_back(U(rng));
    }
    return s;
}

ModelParams rich_params() {
    ModelParams p;
    p.cavity_decay = 2.0;
    p.coupling = 0.01;
    p.ensemble_size = 500.0;
    p.dephasing = 0.05;
    p.relaxation = 0.01;
    p.pump = 0.03;
    p.ensemble_detuning = 0.4;
    return p;
}

BinnedEnsemble five_bins() {
    DisorderSpec d;
    d.width = 0.3;
    return build_bins(d, 500.0, 5);
}

template <class Model>
std::vector<double> inversion_series(const Model& model, std::vector<double> y0, const IntegratorConfig& cfg) {
    std::vector<double> out;
    integrate([&](double t, std::span<const double> y, std::span<double> dy) { model.derivs(t, y, dy); }, std::move(y0),
              cfg, [&](double, std::span<const double> y) { out.push_back(model.mean_inversion(y)); });
    return out;
}

}  // namespace

TEST(CavityMeanField, DarkStateIsStationary) {
    ModelParams p = rich_params();
    p.pump = 0.0;
    const auto ens = five_bins();
    const auto d = mf_derivs_cavity(ground_state(ens.size(), 0.0), p, ens);
    EXPECT_EQ(d.cavity_amp, cplx{});
    for (std::size_t m = 0; m < ens.size(); ++m) {
        EXPECT_EQ(d.coherence[m], cplx{});
        EXPECT_EQ(d.inversion[m], 0.0);
    }
}

TEST(CavityMeanField, DecoupledCavityDecays) {
    ModelParams p = rich_params();
    p.coupling = 0.0;
    const CavityMeanField model(p, five_bins());
    auto s = ground_state(5, 0.1);
    s.cavity_amp = {1.0, 0.0};
    IntegratorConfig cfg;
    cfg.t_end = 4.0;
    cfg.output_dt = 0.25;
    cfg.max_step = 0.1;
    const auto trace = simulate(model, model.pack(s), cfg);
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const double expected = p.cavity_decay * std::exp(-p.cavity_decay * trace.time(k));
        EXPECT_NEAR(trace.power[k] / expected, 1.0, 1e-7);
    }
}

TEST(CavityMeanField, Z2Symmetry) {
    std::mt19937_64 rng(11);
    const auto p = rich_params();
    const auto ens = five_bins();
    for (int trial = 0; trial < 200; ++trial) {
        auto s = random_state(ens.size(), rng);
        auto f = s;
        f.cavity_amp = -f.cavity_amp;
        for (auto& c : f.coherence) c = -c;
        const auto d = mf_derivs_cavity(s, p, ens);
        const auto e = mf_derivs_cavity(f, p, ens);
        EXPECT_LT(std::abs(d.cavity_amp + e.cavity_amp), 1e-12);
        for (std::size_t m = 0; m < ens.size(); ++m) {
            EXPECT_LT(std::abs(d.coherence[m] + e.coherence[m]), 1e-12);
            EXPECT_LT(std::abs(d.inversion[m] - e.inversion[m]), 1e-12);
        }
    }
}

TEST(CavityMeanField, MatchesHandWrittenEquations) {
    std::mt19937_64 rng(5);
    const auto p = rich_params();
    const auto ens = five_bins();
    const auto s = random_state(ens.size(), rng);
    const auto d = mf_derivs_cavity(s, p, ens);
    const cplx I{0.0, 1.0};
    cplx S{};
    for (std::size_t m = 0; m < ens.size(); ++m) S += ens.population(m) * s.coherence[m];
    EXPECT_LT(std::abs(d.cavity_amp - (-0.5 * p.cavity_decay * s.cavity_amp - I * p.coupling * S)), 1e-12);
    const double ks = p.dephasing + p.relaxation + p.pump;
    for (std::size_t m = 0; m < ens.size(); ++m) {
        const cplx sm = s.coherence[m];
        const double um = s.inversion[m];
        const cplx ds = -(I * (p.ensemble_detuning + ens.detunings[m]) + 0.5 * ks) * sm + I * p.coupling * um * s.cavity_amp;
        // d(p_up - p_down)/dt with p_up + p_down = 1.
        const double pu = 0.5 * (1 + um), pd = 0.5 * (1 - um);
        const double du = 2.0 * (p.pump * pd - p.relaxation * pu) +
                          2.0 * p.coupling * (I * (std::conj(s.cavity_amp) * sm - std::conj(sm) * s.cavity_amp)).real();
        EXPECT_LT(std::abs(d.coherence[m] - ds), 1e-12);
        EXPECT_NEAR(d.inversion[m], du, 1e-12);
    }
}

TEST(CavityMeanField, FrameOffsetDoesNotChangeOutput) {
    auto p = rich_params();
    const auto ens = five_bins();
    IntegratorConfig cfg;
    cfg.t_end = 50.0;
    cfg.output_dt = 0.5;
    cfg.max_step = 0.5;
    const auto y0 = CavityMeanField(p, ens).pack(tipped_state(ens.size(), 0.3));
    const auto a = simulate(CavityMeanField(p, ens), y0, cfg);
    p.cavity_freq += 1234.5;  // common shift: Delta_e and every delta_m are unchanged
    const auto b = simulate(CavityMeanField(p, ens), y0, cfg);
    EXPECT_EQ(a.power, b.power);
}

TEST(CavityMeanField, InversionStaysBounded) {
    ModelParams p = bad_cavity(2.0, 1e4);
    p.pump = 0.02;
    p.relaxation = 0.002;
    p.dephasing = 0.01;
    DisorderSpec d;
    d.width = 0.02;
    const CavityMeanField model(p, build_bins(d, 1e4, 9));
    IntegratorConfig cfg;
    cfg.t_end = 3000.0;
    cfg.output_dt = 1.0;
    cfg.max_step = 1.0;
    double worst = 0.0;
    integrate([&](double t, std::span<const double> y, std::span<double> dy) { model.derivs(t, y, dy); },
              model.pack(ground_state(9)), cfg, [&](double, std::span<const double> y) {
                  const auto s = model.unpack(y);
                  for (double u : s.inversion) worst = std::max(worst, std::abs(u));
              });
    EXPECT_LE(worst, 1.0 + 1e-6);
}

TEST(CavityMeanField, DimensionMismatch) {
    const auto ens = five_bins();
    EXPECT_THROW((void)mf_derivs_cavity(ground_state(4), rich_params(), ens), ContractViolation);
    const CavityMeanField model(rich_params(), ens);
    std::vector<double> y(model.dim() + 1), dy(model.dim() + 1);
    EXPECT_THROW(model.derivs(0.0, y, dy), ContractViolation);
}

TEST(AdiabaticMeanField, NoCollectiveCoherenceMeansFreeRotation) {
    auto p = rich_params();
    p.pump = 0.0;
    p.relaxation = 0.0;
    DisorderSpec d;
    d.kind = DisorderKind::two_delta;
    d.width = 0.2;
    const auto ens = build_bins(d, 500.0, 2);
    MeanFieldState s;
    s.coherence = {cplx{0.3, 0.1}, cplx{-0.3, -0.1}};  // S = 0
    s.inversion = {0.2, -0.4};
    const auto ds = mf_derivs_adiabatic(s, p, ens);
    const double half_ks = 0.5 * p.total_spin_decay();
    for (std::size_t m = 0; m < 2; ++m) {
        const cplx expected = cplx{-half_ks, -ens.detunings[m]} * s.coherence[m];
        EXPECT_LT(std::abs(ds.coherence[m] - expected), 1e-15);
        EXPECT_EQ(ds.inversion[m], 0.0);
    }
}

TEST(AdiabaticMeanField, ResonantDriveCoefficient) {
    ModelParams p = bad_cavity(10.0, 100.0);
    const auto ens = homogeneous_ensemble(100.0);
    MeanFieldState s;
    s.coherence = {cplx{0.2, -0.05}};
    s.inversion = {0.6};
    const auto ds = mf_derivs_adiabatic(s, p, ens);
    const cplx S = 100.0 * s.coherence[0];
    const cplx drive = ds.coherence[0];  // no dephasing, no detuning
    const cplx coefficient = drive / (s.inversion[0] * S);
    EXPECT_NEAR(coefficient.real(), 2.0 * p.coupling * p.coupling / p.cavity_decay, 1e-15);
    EXPECT_NEAR(coefficient.imag(), 0.0, 1e-18);
}

TEST(AdiabaticMeanField, CollectiveInversionLoss) {
    auto p = rich_params();
    p.pump = 0.0;
    p.relaxation = 0.0;
    const auto ens = five_bins();
    std::mt19937_64 rng(3);
    const auto s = random_state(ens.size(), rng);
    const auto ds = mf_derivs_adiabatic(s, p, ens);
    cplx S{};
    double dU = 0.0;
    for (std::size_t m = 0; m < ens.size(); ++m) {
        S += ens.population(m) * s.coherence[m];
        dU += ens.population(m) * ds.inversion[m];
    }
    const double kappa = p.cavity_decay;
    const double Delta = p.ensemble_detuning;
    const double expected =
        -2.0 * p.coupling * p.coupling * kappa / (Delta * Delta + 0.25 * kappa * kappa) * std::norm(S);
    EXPECT_NEAR(dU, expected, 1e-12 * std::abs(expected));
}

TEST(AdiabaticMeanField, TanhSolution) {
    const auto p = bad_cavity(10.0, 1e6);
    const double theta = 0.05;
    const auto burst = analytic_burst(p, theta);
    const AdiabaticMeanField model(p, homogeneous_ensemble(p.ensemble_size));
    IntegratorConfig cfg;
    cfg.t_end = 3.0 * burst.delay;
    cfg.output_dt = burst.delay / 200.0;
    cfg.max_step = cfg.output_dt;
    const auto u = inversion_series(model, model.pack(tipped_state(1, theta)), cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double t = static_cast<double>(k) * cfg.output_dt;
        // <S_z> in the down-minus-up convention is -(N/2) u.
        worst = std::max(worst, std::abs(-u[k] - burst.sz(t) / (0.5 * p.ensemble_size)));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(CavityMeanField, TanhSolutionInBadCavity) {
    const auto p = bad_cavity(100.0, 1e6);
    const double theta = 0.05;
    const auto burst = analytic_burst(p, theta);
    const CavityMeanField model(p, homogeneous_ensemble(p.ensemble_size));
    auto s = tipped_state(1, theta);
    s.cavity_amp = -cplx{0.0, p.coupling} * p.ensemble_size * s.coherence[0] / (0.5 * p.cavity_decay);
    IntegratorConfig cfg;
    cfg.t_end = 3.0 * burst.delay;
    cfg.output_dt = burst.delay / 200.0;
    cfg.max_step = cfg.output_dt;
    const auto u = inversion_series(model, model.pack(s), cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double t = static_cast<double>(k) * cfg.output_dt;
        worst = std::max(worst, std::abs(-u[k] - burst.sz(t) / (0.5 * p.ensemble_size)));
    }
    EXPECT_LT(worst, 0.01);
}

TEST(MeanField, CavityAndAdiabaticBurstsAgree) {
    const auto p = bad_cavity(30.0, 1e6);
    const double theta = 0.05;
    const auto burst = analytic_burst(p, theta);
    IntegratorConfig cfg;
    cfg.t_end = 3.0 * burst.delay;
    cfg.output_dt = burst.delay / 1000.0;
    cfg.max_step = cfg.output_dt;
    const auto ens = homogeneous_ensemble(p.ensemble_size);
    const CavityMeanField cavity(p, ens);
    const AdiabaticMeanField adiabatic(p, ens);
    auto s = tipped_state(1, theta);
    s.cavity_amp = -cplx{0.0, p.coupling} * p.ensemble_size * s.coherence[0] / (0.5 * p.cavity_decay);
    const auto a = simulate(cavity, cavity.pack(s), cfg);
    const auto b = simulate(adiabatic, adiabatic.pack(tipped_state(1, theta)), cfg);
    const auto peak = [](const EmissionTrace& t) {
        return t.time(static_cast<std::size_t>(std::max_element(t.power.begin(), t.power.end()) - t.power.begin()));
    };
    EXPECT_NEAR(peak(a) / peak(b), 1.0, 0.05);
    EXPECT_NEAR(peak(b) / burst.delay, 1.0, 0.05);
}
