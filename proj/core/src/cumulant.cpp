#include "superburst/cumulant.hpp"

#include <cmath>

#include "superburst/errors.hpp"

namespace superburst {

using cplx = std::complex<double>;

namespace {

constexpr double kHermitianTol = 1e-9;

void check_span(std::size_t got, std::size_t want) {
    if (got != want) {
        throw ContractViolation("state dimension " + std::to_string(got) + " != " + std::to_string(want));
    }
}

// Start of row i of a packed upper triangle (diagonal included) of an M x M matrix.
constexpr std::size_t row_start(std::size_t i, std::size_t M) { return i * M - (i * (i - 1)) / 2; }

const cplx* as_complex(const double* p) { return reinterpret_cast<const cplx*>(p); }
cplx* as_complex(double* p) { return reinterpret_cast<cplx*>(p); }

}  // namespace

CumulantModel::CumulantModel(ModelParams params, BinnedEnsemble ens) : p_(params), ens_(std::move(ens)) {
    p_.validate();
    if (ens_.size() == 0) throw ContractViolation("empty ensemble");
    const std::size_t M = ens_.size();
    offset_u_ = 1 + 2 * M;
    offset_c_ = offset_u_ + M;
}

std::size_t CumulantModel::dim() const noexcept {
    const std::size_t M = ens_.size();
    return offset_c_ + M * (M + 1);
}

std::size_t CumulantModel::corr_index(std::size_t m, std::size_t n) const noexcept {
    return offset_c_ + 2 * (row_start(m, ens_.size()) + (n - m));
}

void CumulantModel::derivs(double, std::span<const double> y, std::span<double> dydt) const {
    check_span(y.size(), dim());
    check_span(dydt.size(), dim());
    const std::size_t M = ens_.size();
    const double g = p_.coupling;
    const double kappa = p_.cavity_decay;
    const double ks = p_.total_spin_decay();
    const cplx ig{0.0, g};

    const double n = y[0];
    const cplx* X = as_complex(y.data() + 1);
    const double* u = y.data() + offset_u_;
    const cplx* C = as_complex(y.data() + offset_c_);
    cplx* dX = as_complex(dydt.data() + 1);
    double* du = dydt.data() + offset_u_;
    cplx* dC = as_complex(dydt.data() + offset_c_);

    // S_m = sum_n N rho_n C_nm - C_mm, walking the stored triangle once.
    std::vector<cplx> S(M, cplx{});
    {
        std::size_t k = 0;
        for (std::size_t i = 0; i < M; ++i) {
            const double wi = ens_.population(i);
            S[i] += (wi - 1.0) * C[k];
            ++k;
            for (std::size_t j = i + 1; j < M; ++j, ++k) {
                S[j] += wi * C[k];
                S[i] += ens_.population(j) * std::conj(C[k]);
            }
        }
    }

    double source = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        const cplx rate{-0.5 * (kappa + ks), -(p_.ensemble_detuning + ens_.detunings[m])};
        dX[m] = rate * X[m] + ig * (0.5 * (1.0 + u[m]) + S[m] + u[m] * n);
        du[m] = p_.pump * (1.0 - u[m]) - p_.relaxation * (1.0 + u[m]) - 4.0 * g * X[m].imag();
        source += ens_.population(m) * X[m].imag();
    }
    dydt[0] = -kappa * n + kappa * p_.thermal_photons + 2.0 * g * source;

#if defined(SUPERBURST_HAVE_OPENMP)
#pragma omp parallel for schedule(static) if (M >= 96)
#endif
    for (std::size_t i = 0; i < M; ++i) {
        const std::size_t row = row_start(i, M);
        const cplx xi_conj = std::conj(X[i]);
        for (std::size_t j = i; j < M; ++j) {
            const std::size_t k = row + (j - i);
            const cplx rate{-ks, ens_.detunings[i] - ens_.detunings[j]};
            dC[k] = rate * C[k] - ig * u[i] * X[j] + ig * u[j] * xi_conj;
        }
    }
}

double CumulantModel::mean_inversion(std::span<const double> y) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < ens_.size(); ++m) acc += ens_.weights[m] * y[offset_u_ + m];
    return acc;
}

double CumulantModel::spin_spin_correlation(std::span<const double> y) const {
    check_span(y.size(), dim());
    const std::size_t M = ens_.size();
    const cplx* C = as_complex(y.data() + offset_c_);
    // Off-diagonal pairs come in conjugate couples, so only the real part survives.
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < M; ++i) {
        const double wi = ens_.population(i);
        acc += wi * (wi - 1.0) * C[k].real();
        ++k;
        for (std::size_t j = i + 1; j < M; ++j, ++k) acc += 2.0 * wi * ens_.population(j) * C[k].real();
    }
    return acc;
}

EmissionRates CumulantModel::decomposition(std::span<const double> y) const {
    check_span(y.size(), dim());
    const double scale = 4.0 * p_.coupling * p_.coupling / p_.effective_cavity_decay();
    double spont = 0.0;
    double sum_u = 0.0;
    for (std::size_t m = 0; m < ens_.size(); ++m) {
        const double w = ens_.population(m);
        spont += w * 0.5 * (1.0 + y[offset_u_ + m]);
        sum_u += w * y[offset_u_ + m];
    }
    return {scale * spont, scale * y[0] * sum_u, scale * spin_spin_correlation(y)};
}

std::vector<double> CumulantModel::ground_state() const {
    std::vector<double> y(dim(), 0.0);
    y[0] = p_.thermal_photons;
    for (std::size_t m = 0; m < ens_.size(); ++m) y[offset_u_ + m] = -1.0;
    return y;
}

std::vector<double> CumulantModel::pack(const CumulantState& s) const {
    const std::size_t M = ens_.size();
    if (s.cross_corr.size() != M || s.inversion.size() != M || s.spin_corr.size() != M * M) {
        throw ContractViolation("cumulant state dimensions do not match the ensemble");
    }
    std::vector<double> y(dim());
    y[0] = s.photon_number;
    for (std::size_t m = 0; m < M; ++m) {
        y[1 + 2 * m] = s.cross_corr[m].real();
        y[2 + 2 * m] = s.cross_corr[m].imag();
        y[offset_u_ + m] = s.inversion[m];
        for (std::size_t n = m; n < M; ++n) {
            const std::size_t k = corr_index(m, n);
            y[k] = s.spin_corr[m * M + n].real();
            y[k + 1] = s.spin_corr[m * M + n].imag();
        }
    }
    return y;
}

CumulantState CumulantModel::unpack(std::span<const double> y) const {
    check_span(y.size(), dim());
    const std::size_t M = ens_.size();
    CumulantState s;
    s.photon_number = y[0];
    s.cross_corr.resize(M);
    s.inversion.resize(M);
    s.spin_corr.resize(M * M);
    for (std::size_t m = 0; m < M; ++m) {
        s.cross_corr[m] = {y[1 + 2 * m], y[2 + 2 * m]};
        s.inversion[m] = y[offset_u_ + m];
        for (std::size_t n = m; n < M; ++n) {
            const std::size_t k = corr_index(m, n);
            const cplx c{y[k], y[k + 1]};
            s.spin_corr[m * M + n] = c;
            s.spin_corr[n * M + m] = std::conj(c);
        }
    }
    return s;
}

std::vector<std::size_t> CumulantModel::inversion_slots() const {
    std::vector<std::size_t> out(ens_.size());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = offset_u_ + m;
    return out;
}

std::vector<std::size_t> CumulantModel::coherence_slots() const {
    std::vector<std::size_t> out(2 * ens_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1 + i;
    return out;
}

double spin_spin_correlation(const CumulantState& state, const BinnedEnsemble& ens) {
    const std::size_t M = ens.size();
    if (state.spin_corr.size() != M * M) throw ContractViolation("spin_corr must be M x M");
    cplx acc{};
    double magnitude = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
        const double wm = ens.population(m);
        for (std::size_t n = 0; n < M; ++n) {
            const double weight = n == m ? wm * (wm - 1.0) : wm * ens.population(n);
            const cplx term = weight * state.spin_corr[n * M + m];
            acc += term;
            magnitude += std::abs(term);
        }
    }
    // Measured against the summed magnitudes so cancellation in Re does not trip it.
    if (std::abs(acc.imag()) > kHermitianTol * magnitude) {
        throw NumericalError("spin correlation matrix is not Hermitian: Im = " + std::to_string(acc.imag()));
    }
    return acc.real();
}

EmissionRates emission_decomposition(const CumulantState& state, const ModelParams& params,
                                     const BinnedEnsemble& ens) {
    const CumulantModel model(params, ens);
    const auto rates = model.decomposition(model.pack(state));
    // Re-run the Hermiticity check on the full matrix as supplied.
    (void)spin_spin_correlation(state, ens);
    return rates;
}

CumulantState cumulant_derivs(const CumulantState& state, const ModelParams& params, const BinnedEnsemble& ens) {
    const CumulantModel model(params, ens);
    const auto y = model.pack(state);
    std::vector<double> dy(y.size());
    model.derivs(0.0, y, dy);
    return model.unpack(dy);
}

}  // namespace superburst
