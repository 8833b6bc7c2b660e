#include "superburst/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/toms748_solve.hpp>

#include "superburst/errors.hpp"

namespace superburst {

void ReducedParams::validate() const {
    if (!(kappa > 0.0)) throw ConfigError("reduced model: kappa must be > 0");
    if (!(gamma_s > 0.0)) throw ConfigError("reduced model: gamma_s must be > 0");
    if (!(gamma_plus >= std::abs(gamma_minus))) throw ConfigError("reduced model: gamma_+ must be >= |gamma_-|");
    if (!(g_collective >= 0.0)) throw ConfigError("reduced model: coupling must be >= 0");
    if (!std::isfinite(delta)) throw ConfigError("reduced model: delta must be finite");
}

ReducedParams reduced_from_model(const ModelParams& p, double delta) {
    ReducedParams r;
    r.g_collective = p.collective_coupling();
    r.kappa = p.cavity_decay;
    r.gamma_s = 0.5 * p.total_spin_decay();
    r.gamma_plus = p.pump + p.relaxation;
    r.gamma_minus = p.pump - p.relaxation;
    r.delta = delta;
    return r;
}

ReducedState reduced_derivs(const ReducedState& s, const ReducedParams& p) {
    const double g = p.g_collective;
    return {
        -0.5 * p.kappa * s.w + g * s.x,
        -p.delta * s.y - p.gamma_s * s.x + g * s.w * s.z,
        p.delta * s.x - p.gamma_s * s.y,
        p.gamma_minus - p.gamma_plus * s.z - 4.0 * g * s.w * s.x,
    };
}

SteadyStateSet steady_states(const ReducedParams& p) {
    SteadyStateSet out;
    out.trivial = {0.0, 0.0, 0.0, p.gamma_plus > 0.0 ? p.gamma_minus / p.gamma_plus : 0.0};
    const double g2 = p.g_collective * p.g_collective;
    if (!(g2 > 0.0)) {
        out.x0_squared = -std::numeric_limits<double>::infinity();
        return out;
    }
    const double z0 = p.kappa * (p.gamma_s * p.gamma_s + p.delta * p.delta) / (2.0 * g2 * p.gamma_s);
    out.x0_squared = p.kappa / (8.0 * g2) * (p.gamma_minus - p.gamma_plus * z0);
    if (out.x0_squared > 0.0) {
        const double x0 = std::sqrt(out.x0_squared);
        const ReducedState plus{2.0 * p.g_collective / p.kappa * x0, x0, p.delta / p.gamma_s * x0, z0};
        out.nontrivial_plus = plus;
        out.nontrivial_minus = ReducedState{-plus.w, -plus.x, -plus.y, z0};
    }
    return out;
}

Eigen::Matrix4d jacobian(const ReducedState& ss, const ReducedParams& p) {
    const double g = p.g_collective;
    const auto r = reduced_derivs(ss, p);
    const double scale = 0.5 * p.kappa * std::abs(ss.w) + g * std::abs(ss.x) + std::abs(p.delta * ss.y) +
                         p.gamma_s * (std::abs(ss.x) + std::abs(ss.y)) + g * std::abs(ss.w * ss.z) +
                         std::abs(p.delta * ss.x) + std::abs(p.gamma_minus) + p.gamma_plus * std::abs(ss.z) +
                         4.0 * g * std::abs(ss.w * ss.x);
    const double residual = std::max({std::abs(r.w), std::abs(r.x), std::abs(r.y), std::abs(r.z)});
    if (residual > 1e-9 * std::max(scale, std::numeric_limits<double>::min())) {
        throw ContractViolation("jacobian: state is not a steady state (residual " + std::to_string(residual) + ")");
    }
    Eigen::Matrix4d L;
    // clang-format off
    L << -0.5 * p.kappa,   g,                0.0,       0.0,
         g * ss.z,         -p.gamma_s,       -p.delta,  g * ss.w,
         0.0,              p.delta,          -p.gamma_s, 0.0,
         -4.0 * g * ss.x,  -4.0 * g * ss.w,  0.0,       -p.gamma_plus;
    // clang-format on
    return L;
}

std::array<std::complex<double>, 4> eigenvalues(const Eigen::Matrix4d& m) {
    const Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
    std::array<std::complex<double>, 4> out;
    for (int i = 0; i < 4; ++i) out[i] = solver.eigenvalues()[i];
    return out;
}

CharCoeffs char_coeffs(const ReducedParams& p) {
    if (!steady_states(p).nontrivial_valid()) throw DomainError("char_coeffs: coherent branch absent");
    const double gp = p.gamma_plus;
    const double gm = p.gamma_minus;
    const double gs = p.gamma_s;
    const double k = p.kappa;
    const double d2 = p.delta * p.delta;
    const double g2 = p.g_collective * p.g_collective;
    CharCoeffs c;
    c.c3 = gp + 2.0 * gs + 0.5 * k;
    c.c2 = d2 + 2.0 * g2 * gm / k + 0.5 * ((gp + gs) * (2.0 * gs + k) - d2 / gs * (2.0 * gp + k));
    c.c1 = 2.0 * g2 * gm * (gs + k) / k - gp * k * (gs * gs + 3.0 * d2) / (2.0 * gs);
    c.c0 = 2.0 * g2 * gm * gs - gp * k * (gs * gs + d2);
    return c;
}

HopfResidual hopf_residual(double delta, const ReducedParams& p) {
    ReducedParams q = p;
    q.delta = delta;
    const CharCoeffs c = char_coeffs(q);
    constexpr double kPoleTol = 1e-14;
    const double scale1 = 2.0 * q.g_collective * q.g_collective * std::abs(q.gamma_minus) *
                              (q.gamma_s + q.kappa) / q.kappa +
                          q.gamma_plus * q.kappa * (q.gamma_s * q.gamma_s + 3.0 * delta * delta) / (2.0 * q.gamma_s);
    if (std::abs(c.c1) <= kPoleTol * scale1 || c.c3 == 0.0) return {0.0, true};
    return {c.c0 * c.c3 / c.c1 - c.c2 + c.c1 / c.c3, false};
}

bool trivial_instability(const ReducedParams& p) {
    const double g2 = p.g_collective * p.g_collective;
    return p.gamma_s * p.gamma_s + p.delta * p.delta < 2.0 * g2 * p.gamma_s * p.gamma_minus / (p.kappa * p.gamma_plus);
}

double nontrivial_growth_rate(const ReducedParams& p) {
    const auto ss = steady_states(p);
    if (!ss.nontrivial_valid()) throw DomainError("nontrivial_growth_rate: coherent branch absent");
    double growth = -std::numeric_limits<double>::infinity();
    for (const auto& ev : eigenvalues(jacobian(*ss.nontrivial_plus, p))) growth = std::max(growth, ev.real());
    return growth;
}

double two_delta_linewidth(double delta, double gamma0) { return gamma0 * (1.0 + 4.0 * delta * delta / (gamma0 * gamma0)); }

std::optional<HopfPoint> find_critical_disorder(const ReducedParams& p, double delta_max, double tolerance) {
    p.validate();
    if (!(delta_max > 0.0)) throw DomainError("find_critical_disorder: delta_max must be > 0");
    // The coherent branch exists for delta^2 < 2 g~^2 gamma_s gamma_- / (kappa gamma_+) - gamma_s^2.
    const double g2 = p.g_collective * p.g_collective;
    const double edge2 = 2.0 * g2 * p.gamma_s * p.gamma_minus / (p.kappa * p.gamma_plus) - p.gamma_s * p.gamma_s;
    if (!(edge2 > 0.0)) return std::nullopt;
    const double hi = std::min(delta_max, std::sqrt(edge2) * (1.0 - 1e-9));

    auto growth = [&](double delta) {
        ReducedParams q = p;
        q.delta = delta;
        return nontrivial_growth_rate(q);
    };
    constexpr int kScan = 2000;
    double a = 0.0;
    double ga = growth(0.0);
    double b = 0.0;
    bool found = false;
    for (int i = 1; i <= kScan; ++i) {
        const double d = hi * i / kScan;
        const double gd = growth(d);
        if ((ga < 0.0) != (gd < 0.0)) {
            b = d;
            found = true;
            break;
        }
        a = d;
        ga = gd;
    }
    if (!found) return std::nullopt;

    auto f = [&](double delta) {
        const auto r = hopf_residual(delta, p);
        if (r.pole) throw NumericalError("hopf residual pole inside the stability bracket");
        return r.value;
    };
    double fa = f(a);
    double fb = f(b);
    double delta_c = 0.0;
    if ((fa < 0.0) != (fb < 0.0)) {
        boost::uintmax_t iterations = 200;
        // The bracket closes superlinearly, so polishing past `tolerance` to
        // near machine precision costs a handful of evaluations.
        auto tol = [tolerance](double lo, double up) {
            return std::abs(up - lo) <= std::min(tolerance, 1e-13 * std::abs(up));
        };
        const auto [lo, up] = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iterations);
        delta_c = 0.5 * (lo + up);
    } else {
        // The crossing is not a Hopf point (a real eigenvalue crossed); bisect the spectrum instead.
        while (b - a > tolerance) {
            const double m = 0.5 * (a + b);
            if ((growth(m) < 0.0) == (ga < 0.0)) a = m; else b = m;
        }
        delta_c = 0.5 * (a + b);
    }

    HopfPoint out;
    out.delta_c = delta_c;
    out.critical_linewidth = two_delta_linewidth(delta_c, p.gamma0());
    ReducedParams q = p;
    q.delta = delta_c;
    const auto ev = eigenvalues(jacobian(*steady_states(q).nontrivial_plus, q));
    out.crossing_pair = *std::min_element(ev.begin(), ev.end(), [](auto l, auto r) {
        const bool lc = std::abs(l.imag()) > 0.0;
        const bool rc = std::abs(r.imag()) > 0.0;
        if (lc != rc) return lc;
        return std::abs(l.real()) < std::abs(r.real());
    });
    return out;
}

}  // namespace superburst
