#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "superburst/errors.hpp"
#include "superburst/three_level.hpp"

using namespace superburst;

namespace {

using Mat3 = Eigen::Matrix3cd;
constexpr int G = 0, Dn = 1, Up = 2;

ThreeLevelParams random_params(std::mt19937_64& rng, bool dissipative) {
    std::uniform_real_distribution<double> U(0.1, 1.0);
    ThreeLevelParams p;
    p.base.cavity_decay = U(rng);
    p.base.coupling = U(rng);
    p.base.ensemble_size = 3.0;
    p.base.ensemble_detuning = U(rng) - 0.5;
    p.optical_coupling = U(rng);
    p.rabi = U(rng);
    p.noise_drive = U(rng);
    p.optical_decay = U(rng);
    p.optical_detuning = U(rng) - 0.5;
    p.pump_detuning = U(rng) - 0.5;
    if (dissipative) {
        p.base.relaxation = U(rng);
        p.base.dephasing = U(rng);
        p.optical_dephasing = U(rng);
    } else {
        p.spin_dephasing = 0.0;
    }
    return p;
}

// Physical single-atom state: a random density matrix, read out as <sigma_ij> = rho_ji.
ThreeLevelState random_state(std::mt19937_64& rng, std::size_t M, std::vector<Mat3>* rhos = nullptr) {
    std::normal_distribution<double> n(0.0, 1.0);
    ThreeLevelState s;
    s.optical_amp = {n(rng), n(rng)};
    s.microwave_amp = {n(rng), n(rng)};
    for (std::size_t m = 0; m < M; ++m) {
        Mat3 A;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) A(i, j) = {n(rng), n(rng)};
        Mat3 rho = A * A.adjoint();
        rho /= rho.trace().real();
        if (rhos) rhos->push_back(rho);
        s.s_gd.push_back(rho(Dn, G));
        s.s_du.push_back(rho(Up, Dn));
        s.s_gu.push_back(rho(Up, G));
        s.p_g.push_back(rho(G, G).real());
        s.p_d.push_back(rho(Dn, Dn).real());
        s.p_u.push_back(rho(Up, Up).real());
    }
    return s;
}

Mat3 ket_bra(int i, int j) {
    Mat3 m = Mat3::Zero();
    m(i, j) = 1.0;
    return m;
}

}  // namespace

TEST(ThreeLevel, ClosedGroundStateIsStationary) {
    ThreeLevelParams p;
    p.base.cavity_decay = 1.0;
    p.base.relaxation = 0.1;
    p.base.dephasing = 0.2;
    p.optical_decay = 1.0;
    p.optical_dephasing = 0.5;
    DisorderSpec d;
    d.width = 1.0;
    const auto ens = build_bins(d, 100.0, 7);
    const auto ds = mf_derivs_three_level(three_level_ground(7, 0.0), p, ens);
    EXPECT_EQ(ds.optical_amp, std::complex<double>{});
    EXPECT_EQ(ds.microwave_amp, std::complex<double>{});
    for (std::size_t m = 0; m < 7; ++m) {
        EXPECT_EQ(ds.s_gd[m], std::complex<double>{});
        EXPECT_EQ(ds.s_du[m], std::complex<double>{});
        EXPECT_EQ(ds.s_gu[m], std::complex<double>{});
        EXPECT_EQ(ds.p_g[m], 0.0);
        EXPECT_EQ(ds.p_d[m], 0.0);
        EXPECT_EQ(ds.p_u[m], 0.0);
    }
}

TEST(ThreeLevel, PopulationIsConserved) {
    std::mt19937_64 rng(21);
    DisorderSpec d;
    d.width = 0.5;
    const auto ens = build_bins(d, 3.0, 5);
    for (int trial = 0; trial < 500; ++trial) {
        const auto p = random_params(rng, true);
        const auto ds = mf_derivs_three_level(random_state(rng, 5), p, ens);
        for (std::size_t m = 0; m < 5; ++m) EXPECT_NEAR(ds.p_g[m] + ds.p_d[m] + ds.p_u[m], 0.0, 1e-12);
    }
}

TEST(ThreeLevel, CoherentPartIsTheCommutator) {
    // With dissipation off, every atomic derivative must equal -i [H, rho]
    // for the frame Hamiltonian with the fields held at their mean values.
    std::mt19937_64 rng(4);
    DisorderSpec d;
    d.width = 0.7;
    const auto ens = build_bins(d, 3.0, 3);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = random_params(rng, false);
        std::vector<Mat3> rhos;
        const auto s = random_state(rng, 3, &rhos);
        const auto ds = mf_derivs_three_level(s, p, ens);
        for (std::size_t m = 0; m < 3; ++m) {
            const double e_up = p.pump_detuning;
            const double e_down = p.pump_detuning - (p.base.ensemble_detuning + ens.detunings[m]);
            const auto a = s.optical_amp;
            const auto b = s.microwave_amp;
            const Mat3 H = e_down * ket_bra(Dn, Dn) + e_up * ket_bra(Up, Up) +
                           p.optical_coupling * (std::conj(a) * ket_bra(G, Dn) + a * ket_bra(Dn, G)) +
                           p.rabi * (ket_bra(G, Up) + ket_bra(Up, G)) +
                           p.base.coupling * (std::conj(b) * ket_bra(Dn, Up) + b * ket_bra(Up, Dn));
            const Mat3& rho = rhos[m];
            const Mat3 drho = std::complex<double>(0.0, -1.0) * (H * rho - rho * H);
            EXPECT_LT(std::abs(ds.s_gd[m] - drho(Dn, G)), 1e-12);
            EXPECT_LT(std::abs(ds.s_du[m] - drho(Up, Dn)), 1e-12);
            EXPECT_LT(std::abs(ds.s_gu[m] - drho(Up, G)), 1e-12);
            EXPECT_NEAR(ds.p_g[m], drho(G, G).real(), 1e-12);
            EXPECT_NEAR(ds.p_d[m], drho(Dn, Dn).real(), 1e-12);
            EXPECT_NEAR(ds.p_u[m], drho(Up, Up).real(), 1e-12);
        }
    }
}

TEST(ThreeLevel, CavityEquations) {
    std::mt19937_64 rng(8);
    DisorderSpec d;
    d.width = 0.7;
    const auto ens = build_bins(d, 3.0, 3);
    const auto p = random_params(rng, true);
    const auto s = random_state(rng, 3);
    const auto ds = mf_derivs_three_level(s, p, ens);
    const std::complex<double> I{0.0, 1.0};
    std::complex<double> Sgd{}, Sdu{};
    for (std::size_t m = 0; m < 3; ++m) {
        Sgd += ens.population(m) * s.s_gd[m];
        Sdu += ens.population(m) * s.s_du[m];
    }
    const auto da = -(I * p.optical_detuning + 0.5 * p.optical_decay) * s.optical_amp - I * p.optical_coupling * Sgd;
    const auto db = -0.5 * p.base.cavity_decay * s.microwave_amp - I * p.base.coupling * Sdu - I * p.noise_drive;
    EXPECT_LT(std::abs(ds.optical_amp - da), 1e-12);
    EXPECT_LT(std::abs(ds.microwave_amp - db), 1e-12);
}

TEST(ThreeLevel, RelaxationFeedsGround) {
    ThreeLevelParams p;
    p.base.cavity_decay = 1.0;
    p.base.relaxation = 0.3;
    const auto ens = homogeneous_ensemble(1.0);
    ThreeLevelState s = three_level_ground(1, 0.0);
    s.p_g = {0.2};
    s.p_d = {0.3};
    s.p_u = {0.5};
    const auto ds = mf_derivs_three_level(s, p, ens);
    EXPECT_NEAR(ds.p_g[0], 0.3 * 0.8, 1e-15);
    EXPECT_NEAR(ds.p_d[0], -0.3 * 0.3, 1e-15);
    EXPECT_NEAR(ds.p_u[0], -0.3 * 0.5, 1e-15);
}

TEST(ThreeLevel, EffectivePumpAndValidation) {
    ThreeLevelParams p;
    p.base.cavity_decay = 1.0;
    p.rabi = 2.0;
    p.optical_dephasing = 8.0;
    EXPECT_DOUBLE_EQ(p.effective_pump(), 2.0);
    p.rabi = -1.0;
    EXPECT_THROW(p.validate(), ConfigError);
    p.rabi = 1.0;
    const auto ens = homogeneous_ensemble(1.0);
    EXPECT_THROW((void)mf_derivs_three_level(three_level_ground(2), p, ens), ContractViolation);
}
