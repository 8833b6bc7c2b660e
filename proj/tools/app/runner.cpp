#include "runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <type_traits>

#if defined(SUPERBURST_HAVE_OPENMP)
#include <omp.h>
#endif

#include "io.hpp"
#include "superburst/bifurcation.hpp"
#include "superburst/cumulant.hpp"
#include "superburst/fits.hpp"
#include "superburst/formulas.hpp"
#include "superburst/meanfield.hpp"
#include "superburst/phase_diagram.hpp"

namespace superburst::cli {

namespace {

// Rescaled two-sub-ensemble model; w = i<b>/sqrt(N), so |b|^2 = N w^2.
class ReducedModel {
  public:
    ReducedModel(ReducedParams p, double N) : p_(p), N_(N) { p_.validate(); }
    [[nodiscard]] std::size_t dim() const noexcept { return 4; }
    void derivs(double, std::span<const double> y, std::span<double> dy) const {
        const auto d = reduced_derivs({y[0], y[1], y[2], y[3]}, p_);
        dy[0] = d.w;
        dy[1] = d.x;
        dy[2] = d.y;
        dy[3] = d.z;
    }
    [[nodiscard]] double emission(std::span<const double> y) const { return p_.kappa * N_ * y[0] * y[0]; }
    [[nodiscard]] cplx amplitude(std::span<const double> y) const { return {0.0, -std::sqrt(N_) * y[0]}; }

  private:
    ReducedParams p_;
    double N_;
};

struct Trajectory {
    EmissionTrace trace;
    IntegrationStats stats;
    EmissionRates mean_rates;
    bool has_rates = false;
    std::vector<std::array<double, 4>> rates;  // t, superradiant, stimulated, spontaneous
    double mean_photons = 0.0;
};

void apply_threads(const RunContext& ctx) {
#if defined(SUPERBURST_HAVE_OPENMP)
    if (ctx.threads > 0) omp_set_num_threads(ctx.threads);
#else
    (void)ctx;
#endif
}

BinnedEnsemble make_ensemble(const RunConfig& c) {
    const double N = c.params.base.ensemble_size;
    switch (c.disorder.mode) {
        case DisorderMode::none: return homogeneous_ensemble(N);
        case DisorderMode::sampled:
            return sample_gaussian(c.disorder.spec.width, N, c.disorder.atoms, c.disorder.spec.rng_seed);
        default: return build_bins(c.disorder.spec, N, c.disorder.bins);
    }
}

std::vector<std::size_t> range_slots(std::size_t from, std::size_t count) {
    std::vector<std::size_t> s(count);
    std::iota(s.begin(), s.end(), from);
    return s;
}

MeanFieldState first_order_start(const RunConfig& c, std::size_t M) {
    if (c.initial.kind == InitialKind::tipped) return tipped_state(M, c.initial.theta, c.initial.phase);
    return ground_state(M, c.initial.seed_coherence);
}

// Product state of spins tipped by theta: C_mn = |s|^2 = sin^2(theta)/4 for every pair.
std::vector<double> tipped_cumulant(const CumulantModel& m, double theta) {
    CumulantState s;
    const std::size_t M = m.bins();
    s.photon_number = m.params().thermal_photons;
    s.cross_corr.assign(M, {});
    s.inversion.assign(M, std::cos(theta));
    const double c = 0.25 * std::sin(theta) * std::sin(theta);
    s.spin_corr.assign(M * M, {c, 0.0});
    return m.pack(s);
}

template <class Model>
Trajectory integrate_model(const Model& model, std::vector<double> y0, const RunConfig& c,
                           std::vector<std::size_t> kick_slots) {
    Trajectory out;
    const auto& cfg = c.integrator;
    out.trace.t0 = cfg.t_start;
    out.trace.dt = cfg.output_dt;
    const bool amp = c.analysis.keep_amplitude;
    const double settle = cfg.t_start + c.analysis.burst_options.settle_fraction * (cfg.t_end - cfg.t_start);
    std::size_t averaged = 0;
    KickSchedule schedule;
    if (c.kicks.enabled) schedule = gaussian_kicks(c.kicks.spec, cfg, std::move(kick_slots));
    auto rhs = [&model](double t, std::span<const double> y, std::span<double> dy) { model.derivs(t, y, dy); };
    auto observe = [&](double t, std::span<const double> y) {
        out.trace.power.push_back(model.emission(y));
        if (amp) out.trace.amplitude.push_back(model.amplitude(y));
        if constexpr (std::is_same_v<Model, CumulantModel>) {
            if (c.analysis.decomposition) {
                const auto r = model.decomposition(y);
                out.rates.push_back({t, r.superradiant, r.stimulated, r.spontaneous});
                if (t >= settle) {
                    out.mean_rates.superradiant += r.superradiant;
                    out.mean_rates.stimulated += r.stimulated;
                    out.mean_rates.spontaneous += r.spontaneous;
                }
            }
            if (t >= settle) {
                out.mean_photons += model.photon_number(y);
                ++averaged;
            }
        }
    };
    out.stats = integrate(rhs, std::move(y0), cfg, observe, c.kicks.enabled ? &schedule : nullptr);
    if constexpr (std::is_same_v<Model, CumulantModel>) {
        if (averaged > 0) {
            out.mean_photons /= static_cast<double>(averaged);
            if (c.analysis.decomposition) {
                out.mean_rates.superradiant /= static_cast<double>(averaged);
                out.mean_rates.stimulated /= static_cast<double>(averaged);
                out.mean_rates.spontaneous /= static_cast<double>(averaged);
                out.has_rates = true;
            }
        }
    } else {
        const auto tail = out.trace.tail(settle);
        out.mean_photons = tail.size() > 0 ? mean(tail.power) / c.params.base.cavity_decay : 0.0;
    }
    return out;
}

Trajectory run_model(const RunConfig& c) {
    c.integrator.validate();
    const auto& p = c.params.base;
    const bool tipped = c.initial.kind == InitialKind::tipped;
    const bool inversion_kicks = c.kicks.target == KickTarget::inversion;
    switch (c.model) {
        case ModelKind::meanfield2: {
            const CavityMeanField m(p, make_ensemble(c));
            const std::size_t M = m.bins();
            auto slots = inversion_kicks ? range_slots(2 + 2 * M, M) : m.coherence_slots();
            return integrate_model(m, m.pack(first_order_start(c, M)), c, std::move(slots));
        }
        case ModelKind::meanfield_adiabatic: {
            const AdiabaticMeanField m(p, make_ensemble(c));
            const std::size_t M = m.bins();
            auto slots = inversion_kicks ? range_slots(2 * M, M) : m.coherence_slots();
            return integrate_model(m, m.pack(first_order_start(c, M)), c, std::move(slots));
        }
        case ModelKind::meanfield3: {
            if (tipped) throw KeyError("initial.kind", "the three-level model starts from the optical ground state");
            c.params.validate();
            const ThreeLevelMeanField m(c.params, make_ensemble(c));
            return integrate_model(m, m.pack(three_level_ground(m.bins(), c.initial.seed_coherence)), c,
                                   m.coherence_slots());
        }
        case ModelKind::cumulant: {
            const CumulantModel m(p, make_ensemble(c));
            auto slots = inversion_kicks ? m.inversion_slots() : m.coherence_slots();
            auto y0 = tipped ? tipped_cumulant(m, c.initial.theta) : m.ground_state();
            return integrate_model(m, std::move(y0), c, std::move(slots));
        }
        case ModelKind::reduced_wxyz: {
            const ReducedModel m(reduced_from_model(p, c.delta), p.ensemble_size);
            std::vector<double> y0{0.0, c.initial.seed_coherence, 0.0, -1.0};
            if (tipped) y0 = {0.0, 0.5 * std::sin(c.initial.theta), 0.0, std::cos(c.initial.theta)};
            return integrate_model(m, std::move(y0), c, {});
        }
    }
    throw ConfigError("unknown model");
}

json nullable(double v, bool valid) { return valid && std::isfinite(v) ? json(v) : json(nullptr); }

json derived_quantities(const RunConfig& c) {
    const auto& p = c.params.base;
    json d;
    d["g_norm"] = normalized_coupling(p);
    d["collective_coupling_hz"] = linear(p.collective_coupling());
    d["single_spin_coupling_hz"] = linear(p.coupling);
    d["effective_cavity_decay_hz"] = linear(p.effective_cavity_decay());
    d["cooperativity"] = p.inhomogeneous_linewidth > 0.0 ? json(cooperativity(p)) : json(nullptr);
    d["total_spin_decay_hz"] = linear(p.total_spin_decay());
    if (c.model == ModelKind::meanfield3) d["effective_pump_hz"] = linear(c.params.effective_pump());
    if (c.model == ModelKind::reduced_wxyz) {
        const auto r = reduced_from_model(p, c.delta);
        d["trivial_state_unstable"] = trivial_instability(r);
    }
    return d;
}

json manifest(const RunConfig& c, const std::string& verb) {
    json m;
    m["tool"] = "superburst";
    m["version"] = kToolVersion;
    m["verb"] = verb;
    m["model"] = std::string(model_name(c.model));
    m["config_hash"] = hex16(config_hash(c.resolved));
    m["rng_seed"] = c.seed;
    m["derived"] = derived_quantities(c);
    m["resolved"] = c.resolved;
    return m;
}

void prepare_dir(const fs::path& dir) {
    if (dir.empty()) throw KeyError("output", "an output directory is required (--out or \"output\")");
    fs::create_directories(dir);
    fs::remove(dir / "error.json");
}

json analyse_trace(const EmissionTrace& trace, const AnalysisConfig& a, const fs::path& dir) {
    json f;
    f["samples"] = trace.size();
    f["mean_power_photons_per_s"] = trace.size() ? mean(trace.power) : 0.0;
    if (a.bursts) {
        const auto train = detect_bursts(trace, a.burst_options);
        write_bursts_csv(dir / "bursts.csv", train);
        f["burst_count"] = train.size();
        f["settled_bursts"] = train.settled_count();
        f["period_s"] = nullable(train.period, train.period > 0.0);
        f["mean_settled_peak_photons_per_s"] = nullable(train.settled_count() ? train.mean_settled_peak() : 0.0,
                                                        train.settled_count() > 0);
    }
    if (a.spectrum) {
        const auto s = psd(trace, a.spectrum_options);
        write_spectrum_csv(dir / "spectrum.csv", s);
        f["total_spectral_power"] = s.total_power;
        f["sideband_power"] = s.sideband_power;
        f["crystalline_fraction"] = s.crystalline_fraction;
        f["peak_frequency_hz"] = s.peak_frequency;
    }
    return f;
}

struct SimulateResult {
    json fits;
    EmissionTrace trace;
};

SimulateResult simulate_into(const RunConfig& c, const fs::path& dir, const RunContext& ctx) {
    prepare_dir(dir);
    apply_threads(ctx);
    auto m = manifest(c, "simulate");
    const auto run = run_model(c);
    write_trace_csv(dir / "trace.csv", run.trace);
    auto fits = analyse_trace(run.trace, c.analysis, dir);
    fits["model"] = std::string(model_name(c.model));
    fits["mean_photons"] = run.mean_photons;
    if (run.has_rates) {
        CsvWriter w(dir / "decomposition.csv", {"t_s", "superradiant_photons_per_s", "stimulated_photons_per_s",
                                                "spontaneous_photons_per_s"});
        for (const auto& r : run.rates) w.num(r[0]).num(r[1]).num(r[2]).num(r[3]).end_row();
        fits["decomposition"] = {{"superradiant_photons_per_s", run.mean_rates.superradiant},
                                 {"stimulated_photons_per_s", run.mean_rates.stimulated},
                                 {"spontaneous_photons_per_s", run.mean_rates.spontaneous},
                                 {"superradiant_over_stimulated",
                                  nullable(run.mean_rates.superradiant / run.mean_rates.stimulated,
                                           run.mean_rates.stimulated != 0.0)}};
    }
    write_json(dir / "fits.json", fits);
    m["integration"] = {{"accepted_steps", run.stats.accepted},
                        {"rejected_steps", run.stats.rejected},
                        {"evaluations", run.stats.evaluations},
                        {"samples", run.stats.samples}};
    m["status"] = "ok";
    write_json(dir / "manifest.json", m);
    return {fits, run.trace};
}

// Linear interpolation of the half-maximum crossing between samples k and k+1.
double crossing(const EmissionTrace& tr, std::size_t k, double level) {
    const double a = tr.power[k], b = tr.power[k + 1];
    return tr.time(k) + tr.dt * (level - a) / (b - a);
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> idx(v.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        for (std::size_t i = 0; i < idx.size();) {
            std::size_t j = i;
            while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
            for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j);
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    const double mx = mean(rx), my = mean(ry);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    return sxx > 0.0 && syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
}

json fit_json(const PowerLawFit& f) {
    return {{"exponent", f.exponent}, {"prefactor", f.prefactor}, {"log_rms_residual", f.residual}};
}

}  // namespace

int run_guarded(const fs::path& dir, const std::function<void()>& body) {
    json err;
    int code = 0;
    try {
        body();
        return 0;
    } catch (const KeyError& e) {
        code = 1;
        err = {{"kind", "config"}, {"key_path", e.path()}, {"message", e.what()}};
    } catch (const ConfigError& e) {
        code = 1;
        err = {{"kind", "config"}, {"message", e.what()}};
    } catch (const IntegrationError& e) {
        code = 2;
        err = {{"kind", "integration"}, {"time_s", e.time()}, {"message", e.what()}};
    } catch (const std::exception& e) {
        code = 3;
        err = {{"kind", "runtime"}, {"message", e.what()}};
    }
    err["status"] = "error";
    err["exit_code"] = code;
    std::cerr << "superburst: " << err["message"].get<std::string>() << '\n';
    if (!dir.empty()) {
        try {
            fs::create_directories(dir);
            write_json(dir / "error.json", err);
        } catch (const std::exception& e) {
            std::cerr << "superburst: could not record the error: " << e.what() << '\n';
        }
    }
    return code;
}

json run_simulate(const RunConfig& config, const fs::path& dir, const RunContext& ctx) {
    return simulate_into(config, dir, ctx).fits;
}

json run_transient(const RunConfig& c, const fs::path& dir, const RunContext& ctx) {
    if (c.initial.kind != InitialKind::tipped) throw KeyError("initial.kind", "transient runs start from a tipped state");
    if (c.model == ModelKind::meanfield3 || c.model == ModelKind::reduced_wxyz) {
        throw KeyError("model", "transient runs need meanfield2, meanfield_adiabatic or cumulant");
    }
    prepare_dir(dir);
    apply_threads(ctx);
    auto m = manifest(c, "transient");
    const auto run = run_model(c);
    const auto& tr = run.trace;
    write_trace_csv(dir / "trace.csv", tr);

    const auto peak = static_cast<std::size_t>(std::max_element(tr.power.begin(), tr.power.end()) - tr.power.begin());
    const double half = 0.5 * tr.power[peak];
    std::optional<double> rise, fall;
    for (std::size_t k = peak; k > 0; --k) {
        if (tr.power[k - 1] < half) {
            rise = crossing(tr, k - 1, half);
            break;
        }
    }
    for (std::size_t k = peak; k + 1 < tr.size(); ++k) {
        if (tr.power[k + 1] < half) {
            fall = crossing(tr, k, half);
            break;
        }
    }
    const auto theory = analytic_burst(c.params.base, c.initial.theta);
    json f;
    f["model"] = std::string(model_name(c.model));
    f["theta"] = c.initial.theta;
    f["peak_time_s"] = tr.time(peak);
    f["peak_power_photons_per_s"] = tr.power[peak];
    f["fwhm_s"] = rise && fall ? json(*fall - *rise) : json(nullptr);
    f["analytic_delay_s"] = theory.delay;
    f["analytic_width_s"] = theory.width;
    f["delay_deviation"] = (tr.time(peak) - theory.delay) / theory.delay;
    f["width_deviation"] = rise && fall ? json((*fall - *rise - theory.width) / theory.width) : json(nullptr);
    f["delay_times_N_s"] = tr.time(peak) * c.params.base.ensemble_size;
    write_json(dir / "fits.json", f);
    m["status"] = "ok";
    write_json(dir / "manifest.json", m);
    return f;
}

json run_phase_diagram(const RunConfig& c, const fs::path& dir, const RunContext& ctx) {
    prepare_dir(dir);
    apply_threads(ctx);
    auto m = manifest(c, "phase-diagram");
    const auto base = reduced_from_model(c.params.base, 0.0);
    PhaseDiagramOptions opt;
    opt.include_population_factor = c.phase_diagram.include_population_factor;
    opt.refine_steps = c.phase_diagram.refine_steps;
    const auto pd = phase_diagram(c.phase_diagram.g_norm.values(), c.phase_diagram.disorder.values(), base, opt);

    {
        CsvWriter w(dir / "phase_diagram.csv", {"g_norm", "normalized_disorder", "label"});
        for (std::size_t i = 0; i < pd.disorder.size(); ++i) {
            for (std::size_t j = 0; j < pd.g_norm.size(); ++j) {
                w.num(pd.g_norm[j]).num(pd.disorder[i]).text(std::string(phase_name(pd.at(i, j)))).end_row();
            }
        }
    }
    auto poly = [](const std::vector<BoundaryPoint>& pts) {
        json a = json::array();
        for (const auto& [g, d] : pts) a.push_back({g, d});
        return a;
    };
    write_json(dir / "boundaries.json",
               {{"axes", {"g_norm", "normalized_disorder"}}, {"c1", poly(pd.c1_boundary)}, {"hopf", poly(pd.hopf_boundary)}});

    json f;
    std::set<std::string> seen;
    for (auto l : pd.labels) seen.insert(std::string(phase_name(l)));
    f["labels_present"] = seen;
    json onsets = json::array();
    for (std::size_t i = 0; i < pd.disorder.size(); ++i) {
        const auto o = periodic_onset(pd, i);
        onsets.push_back({{"normalized_disorder", pd.disorder[i]}, {"g_norm", o ? json(*o) : json(nullptr)}});
    }
    f["periodic_onset"] = onsets;
    auto hopf_params = base;
    hopf_params.g_collective = c.params.base.collective_coupling();
    if (const auto h = find_critical_disorder(hopf_params, c.phase_diagram.delta_max)) {
        f["critical_disorder"] = {{"delta_c_hz", linear(h->delta_c)},
                                  {"critical_linewidth_hz", linear(h->critical_linewidth)}};
    } else {
        f["critical_disorder"] = nullptr;
    }
    write_json(dir / "fits.json", f);
    m["status"] = "ok";
    write_json(dir / "manifest.json", m);
    return f;
}

int run_sweep(const RunConfig& c, const fs::path& dir, const RunContext& ctx) {
    if (!c.sweep) throw KeyError("sweep", "the sweep verb needs a sweep block");
    const auto& sw = *c.sweep;
    if (dir.empty()) throw KeyError("output", "an output directory is required (--out or \"output\")");

    json base = c.resolved;
    base.erase("sweep");
    base.erase("output");
    std::vector<RunConfig> children;
    std::set<std::string> dirs;
    for (std::size_t i = 0; i < sw.size(); ++i) {
        json doc;
        if (!sw.axis.empty()) {
            try {
                doc = with_value(base, sw.axis, sw.values[i]);
            } catch (const KeyError&) {
                throw KeyError("sweep.axis", "'" + sw.axis + "' does not name a config key");
            }
        } else {
            doc = base;
            doc.merge_patch(sw.variants[i]);
        }
        RunConfig child;
        try {
            child = parse_config(doc, ctx.strict);
        } catch (const KeyError& e) {
            throw KeyError(sw.axis.empty() ? "sweep.variants[" + std::to_string(i) + "]" : "sweep.values[" + std::to_string(i) + "]",
                           e.what());
        }
        if (!dirs.insert(hex16(config_hash(child.resolved))).second) {
            throw KeyError("sweep", "entry " + std::to_string(i) + " repeats an earlier configuration");
        }
        children.push_back(std::move(child));
    }
    fs::create_directories(dir);
    fs::remove(dir / "error.json");

    const int workers = std::max(1, ctx.workers > 0 ? ctx.workers : sw.workers);
    RunContext child_ctx = ctx;
    if (child_ctx.threads == 0 && workers > 1) child_ctx.threads = 1;

    std::vector<int> codes(children.size(), 0);
    std::vector<json> fits(children.size());
    std::vector<EmissionTrace> traces(children.size());
    std::vector<std::string> names(children.size());
    const bool over_n = sw.axis == "params.N";
    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < children.size(); i = next++) {
            names[i] = "run-" + hex16(config_hash(children[i].resolved));
            const auto child_dir = dir / names[i];
            codes[i] = run_guarded(child_dir, [&] {
                auto r = simulate_into(children[i], child_dir, child_ctx);
                fits[i] = std::move(r.fits);
                if (over_n) traces[i] = std::move(r.trace);
            });
            std::lock_guard lock(log_mutex);
            std::cerr << "superburst: " << names[i] << (codes[i] == 0 ? " done" : " failed") << " (" << i + 1 << "/"
                      << children.size() << ")\n";
        }
    };
    std::vector<std::thread> pool;
    const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), children.size());
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    auto value_of = [&](std::size_t i) -> json {
        if (!sw.axis.empty()) return sw.values[i];
        return sw.variants[i];
    };
    auto number = [](const json& f, const char* key) {
        return f.is_object() && f.contains(key) && f[key].is_number() ? f[key].get<double>() : std::nan("");
    };
    {
        CsvWriter w(dir / "sweep.csv", {"index", "value", "run_dir", "exit_code", "period_s", "mean_power_photons_per_s",
                                        "mean_settled_peak_photons_per_s", "mean_photons", "crystalline_fraction"});
        for (std::size_t i = 0; i < children.size(); ++i) {
            const auto v = value_of(i);
            std::string cell = v.is_number() ? "" : v.dump();
            if (!cell.empty()) {
                // JSON text may contain commas and quotes; quote it as a CSV field.
                std::string q = "\"";
                for (char ch : cell) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                cell = q + "\"";
            }
            w.integer(static_cast<long long>(i));
            if (v.is_number()) w.num(v.get<double>());
            else w.text(cell);
            w.text(names[i]).integer(codes[i]);
            for (const char* k : {"period_s", "mean_power_photons_per_s", "mean_settled_peak_photons_per_s", "mean_photons",
                                  "crystalline_fraction"}) {
                w.num(number(fits[i], k));
            }
            w.end_row();
        }
    }

    json f;
    f["axis"] = sw.axis.empty() ? json(nullptr) : json(sw.axis);
    f["runs"] = children.size();
    f["failed"] = std::count_if(codes.begin(), codes.end(), [](int x) { return x != 0; });
    const bool numeric = !sw.axis.empty() && std::all_of(sw.values.begin(), sw.values.end(), [](const json& v) { return v.is_number(); });
    if (numeric) {
        std::vector<double> x, cf;
        for (std::size_t i = 0; i < children.size(); ++i) {
            const double v = number(fits[i], "crystalline_fraction");
            if (codes[i] == 0 && std::isfinite(v)) {
                x.push_back(sw.values[i].get<double>());
                cf.push_back(v);
            }
        }
        if (x.size() >= 3) f["crystalline_fraction_rank_correlation"] = spearman(x, cf);
    }
    if (over_n) {
        std::vector<std::pair<double, double>> T, P, Pm;
        std::vector<std::pair<EmissionTrace, double>> collapse_in;
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (codes[i] != 0) continue;
            const double N = children[i].params.base.ensemble_size;
            const double period = number(fits[i], "period_s");
            const double peak = number(fits[i], "mean_settled_peak_photons_per_s");
            if (std::isfinite(period) && std::isfinite(peak)) {
                T.emplace_back(N, period);
                P.emplace_back(N, peak);
                collapse_in.emplace_back(traces[i], N);
            }
            const double tail = traces[i].size() ? mean(traces[i].tail(children[i].integrator.t_start + children[i].analysis.burst_options.settle_fraction * (children[i].integrator.t_end - children[i].integrator.t_start)).power) : 0.0;
            if (tail > 0.0) Pm.emplace_back(N, tail);
        }
        json sc;
        auto try_fit = [&](const char* key, const std::vector<std::pair<double, double>>& pts) {
            sc[key] = pts.size() >= 3 ? fit_json(scaling_fit(pts)) : json(nullptr);
        };
        try_fit("period", T);
        try_fit("peak_power", P);
        try_fit("mean_power", Pm);
        f["scaling"] = sc;
        if (collapse_in.size() >= 2) {
            try {
                const auto col = data_collapse(collapse_in);
                f["collapse"] = {{"metric", col.metric}, {"traces", collapse_in.size()}};
            } catch (const DomainError& e) {
                f["collapse"] = {{"metric", nullptr}, {"reason", e.what()}};
            }
        }
    }
    write_json(dir / "fits.json", f);
    json m;
    m["tool"] = "superburst";
    m["version"] = kToolVersion;
    m["verb"] = "sweep";
    m["config_hash"] = hex16(config_hash(c.resolved));
    m["rng_seed"] = c.seed;
    m["workers"] = workers;
    m["runs"] = names;
    m["resolved"] = c.resolved;
    m["status"] = f["failed"] == 0 ? "ok" : "partial";
    write_json(dir / "manifest.json", m);
    return *std::max_element(codes.begin(), codes.end());
}

json run_analyze(const fs::path& trace_csv, const RunConfig& c, const fs::path& dir) {
    prepare_dir(dir);
    const auto trace = to_trace(read_trace_csv(trace_csv));
    auto f = analyse_trace(trace, c.analysis, dir);
    f["source"] = trace_csv.string();
    write_json(dir / "fits.json", f);
    return f;
}

int run_reproduce(const std::string& figure, const fs::path& dir, std::optional<std::uint64_t> seed,
                  const RunContext& ctx) {
    const auto& all = presets();
    const auto it = std::find_if(all.begin(), all.end(), [&](const auto& p) { return p.first == figure; });
    if (it == all.end()) throw ConfigError("unknown figure id '" + figure + "'");
    const json preset = json::parse(it->second);
    const auto& runs = preset.at("runs");
    json summary;
    summary["figure"] = figure;
    summary["description"] = preset.value("description", "");
    int worst = 0;
    for (const auto& r : runs) {
        const std::string name = r.at("name");
        const std::string verb = r.at("verb");
        const fs::path sub = runs.size() == 1 ? dir : dir / name;
        json doc = r.at("config");
        if (seed) doc["rng_seed"] = *seed;
        json result;
        int code = 0;
        if (verb == "sweep") {
            int children = 0;
            code = run_guarded(sub, [&] {
                children = run_sweep(parse_config(doc, ctx.strict), sub, ctx);
                result = json::parse(std::ifstream(sub / "fits.json"));
            });
            code = std::max(code, children);
        } else {
            code = run_guarded(sub, [&] {
                const auto c = parse_config(doc, ctx.strict);
                if (verb == "simulate") result = run_simulate(c, sub, ctx);
                else if (verb == "transient") result = run_transient(c, sub, ctx);
                else if (verb == "phase-diagram") result = run_phase_diagram(c, sub, ctx);
                else throw ConfigError("preset names unknown verb '" + verb + "'");
            });
        }
        summary["runs"][name] = {{"verb", verb}, {"exit_code", code}, {"fits", result}};
        worst = std::max(worst, code);
    }
    if (runs.size() > 1) write_json(dir / "fits.json", summary);
    return worst;
}

}  // namespace superburst::cli
