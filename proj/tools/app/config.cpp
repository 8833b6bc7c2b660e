#include "config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "superburst/params.hpp"
#include "superburst/scenarios.hpp"

namespace superburst::cli {

std::string_view model_name(ModelKind m) noexcept {
    switch (m) {
        case ModelKind::meanfield2: return "meanfield2";
        case ModelKind::meanfield_adiabatic: return "meanfield_adiabatic";
        case ModelKind::meanfield3: return "meanfield3";
        case ModelKind::cumulant: return "cumulant";
        case ModelKind::reduced_wxyz: return "reduced_wxyz";
    }
    return "unknown";
}

std::vector<double> GridAxis::values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[i] = count == 1 ? from : from + (to - from) * i / (count - 1);
    return v;
}

namespace {

enum class Check { any, positive, non_negative, finite_any };

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

// One JSON object being read. Every key the reader asks for is recorded so
// the leftovers can be reported, and the resolved value is written to `out`.
class Section {
  public:
    Section(const json* in, json& out, std::string path, bool strict, std::vector<std::string>* warnings)
        : in_(in), out_(out), path_(std::move(path)), strict_(strict), warnings_(warnings) {
        if (in_ && !in_->is_object()) throw KeyError(path_.empty() ? "<root>" : path_, "must be an object");
        out_ = json::object();
    }

    [[nodiscard]] std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    [[nodiscard]] bool has(const std::string& key) {
        known_.insert(key);
        return in_ && in_->contains(key) && !(*in_)[key].is_null();
    }

    [[nodiscard]] const json& raw(const std::string& key) const { return (*in_)[key]; }

    double number(const std::string& key, double fallback, Check check = Check::finite_any) {
        double v = fallback;
        if (has(key)) {
            const auto& j = raw(key);
            if (!j.is_number()) throw KeyError(key_path(key), "expected a number");
            v = j.get<double>();
        }
        verify(key, v, check);
        out_[key] = v;
        return v;
    }

    std::optional<double> optional_number(const std::string& key, Check check = Check::finite_any) {
        if (!has(key)) {
            out_[key] = nullptr;
            return std::nullopt;
        }
        return number(key, 0.0, check);
    }

    int integer(const std::string& key, int fallback, int minimum) {
        int v = fallback;
        if (has(key)) {
            const auto& j = raw(key);
            if (!j.is_number_integer()) throw KeyError(key_path(key), "expected an integer");
            const auto wide = j.get<std::int64_t>();
            if (wide < minimum || wide > 1'000'000'000) {
                throw KeyError(key_path(key), "must be an integer >= " + std::to_string(minimum));
            }
            v = static_cast<int>(wide);
        }
        if (v < minimum) throw KeyError(key_path(key), "must be an integer >= " + std::to_string(minimum));
        out_[key] = v;
        return v;
    }

    std::uint64_t unsigned64(const std::string& key, std::uint64_t fallback) {
        std::uint64_t v = fallback;
        if (has(key)) {
            const auto& j = raw(key);
            if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
                throw KeyError(key_path(key), "expected a non-negative integer");
            }
            v = j.get<std::uint64_t>();
        }
        out_[key] = v;
        return v;
    }

    bool boolean(const std::string& key, bool fallback) {
        bool v = fallback;
        if (has(key)) {
            if (!raw(key).is_boolean()) throw KeyError(key_path(key), "expected true or false");
            v = raw(key).get<bool>();
        }
        out_[key] = v;
        return v;
    }

    std::string text(const std::string& key, const std::string& fallback,
                     const std::vector<std::string>& allowed = {}) {
        std::string v = fallback;
        if (has(key)) {
            if (!raw(key).is_string()) throw KeyError(key_path(key), "expected a string");
            v = raw(key).get<std::string>();
        }
        if (!allowed.empty() && std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw KeyError(key_path(key), "'" + v + "' is not one of " + list);
        }
        out_[key] = v;
        return v;
    }

    /// Nested object; nullptr input means "absent, use defaults".
    [[nodiscard]] const json* object(const std::string& key) {
        if (!has(key)) return nullptr;
        if (!raw(key).is_object()) throw KeyError(key_path(key), "must be an object");
        return &raw(key);
    }

    json& out() { return out_; }
    void mark(const std::string& key) { known_.insert(key); }

    void finish() {
        if (!in_) return;
        for (const auto& [key, value] : in_->items()) {
            if (known_.count(key)) continue;
            check_unit(key);
            if (strict_) throw KeyError(key_path(key), "unknown key");
            if (warnings_) warnings_->push_back(key_path(key) + ": unknown key ignored");
        }
    }

  private:
    void verify(const std::string& key, double v, Check check) const {
        if (!std::isfinite(v)) throw KeyError(key_path(key), "must be finite");
        if (check == Check::positive && !(v > 0.0)) throw KeyError(key_path(key), "must be > 0");
        if (check == Check::non_negative && !(v >= 0.0)) throw KeyError(key_path(key), "must be >= 0");
    }

    // A key such as kappa_khz that only differs from a known quantity by its unit.
    void check_unit(const std::string& key) const {
        for (const auto& k : known_) {
            for (std::string_view unit : {"_hz", "_s"}) {
                if (!ends_with(k, unit)) continue;
                const std::string stem = k.substr(0, k.size() - unit.size());
                if (key.rfind(stem + "_", 0) == 0) {
                    throw KeyError(key_path(key), "unsupported unit suffix '" + key.substr(stem.size()) +
                                                      "'; only _hz and _s are accepted (use " + k + ")");
                }
            }
            if (!ends_with(k, "_hz") && !ends_with(k, "_s") && key.rfind(k + "_", 0) == 0) {
                throw KeyError(key_path(key), "'" + k + "' is dimensionless and takes no unit suffix");
            }
        }
    }

    const json* in_;
    json& out_;
    std::string path_;
    bool strict_;
    std::vector<std::string>* warnings_;
    std::set<std::string> known_;
};

double hz(double v) { return angular(v); }

void read_params(Section& s, RunConfig& c) {
    namespace ref = reference;
    auto& p = c.params.base;
    p.ensemble_size = s.number("N", ref::kEnsembleSize, Check::positive);
    if (p.ensemble_size < 1.0) throw KeyError(s.key_path("N"), "must be >= 1");
    p.cavity_decay = hz(s.number("kappa_hz", ref::kCavityDecayHz, Check::positive));
    const bool single = s.has("g_hz");
    const bool collective = s.has("g_collective_hz");
    if (single && collective) throw KeyError(s.key_path("g_hz"), "give either g_hz or g_collective_hz, not both");
    if (single) {
        p.coupling = hz(s.number("g_hz", 0.0, Check::non_negative));
    } else {
        p.coupling = hz(s.number("g_collective_hz", ref::kCollectiveCouplingHz, Check::non_negative)) /
                     std::sqrt(p.ensemble_size);
    }
    p.dephasing = hz(s.number("gamma_hz", ref::kSpinDecayHz - ref::kPumpHz - ref::kRelaxationHz, Check::non_negative));
    p.relaxation = hz(s.number("gamma1_hz", ref::kRelaxationHz, Check::non_negative));
    p.pump = hz(s.number("pump_hz", ref::kPumpHz, Check::non_negative));
    p.thermal_photons = s.number("thermal_photons", ref::kThermalPhotons, Check::non_negative);
    p.ensemble_detuning = hz(s.number("detuning_hz", 0.0));
    p.cavity_freq = hz(s.number("cavity_freq_hz", 0.0));
    p.inhomogeneous_linewidth = hz(s.number("linewidth_hz", ref::kLinewidthHz, Check::non_negative));

    const auto three = ref::regime_three_level();
    auto& t = c.params;
    t.optical_decay = hz(s.number("optical_decay_hz", linear(three.optical_decay), Check::positive));
    t.optical_dephasing = hz(s.number("optical_dephasing_hz", linear(three.optical_dephasing), Check::non_negative));
    t.optical_coupling = hz(s.number("optical_coupling_hz", linear(three.optical_coupling), Check::non_negative));
    t.rabi = hz(s.number("rabi_hz", linear(three.rabi), Check::non_negative));
    t.noise_drive = hz(s.number("noise_drive_hz", 0.0));
    t.optical_detuning = hz(s.number("optical_detuning_hz", 0.0));
    t.pump_detuning = hz(s.number("pump_detuning_hz", 0.0));
    const auto sd = s.optional_number("spin_dephasing_hz", Check::non_negative);
    t.spin_dephasing = sd ? hz(*sd) : -1.0;
    c.delta = hz(s.number("delta_hz", 0.0, Check::non_negative));
    try {
        p.validate();
    } catch (const ConfigError& e) {
        throw KeyError(s.key_path(""), e.what());
    }
    s.finish();
}

void read_disorder(Section& s, RunConfig& c, bool strict, std::vector<std::string>* warnings) {
    auto& d = c.disorder;
    const auto kind = s.text("kind", "gaussian", {"none", "gaussian", "two_delta", "table", "sampled"});
    const double linewidth = linear(c.params.base.inhomogeneous_linewidth);
    d.bins = s.integer("bins", 129, 1);
    d.spec.span_fwhm = s.number("span_fwhm", 2.0, Check::positive);
    d.atoms = static_cast<std::size_t>(s.integer("atoms", 100, 1));
    d.spec.rng_seed = s.unsigned64("seed", c.seed);
    if (kind == "none") {
        d.mode = DisorderMode::none;
        s.number("width_hz", 0.0, Check::non_negative);
    } else if (kind == "gaussian" || kind == "sampled") {
        d.mode = kind == "gaussian" ? DisorderMode::gaussian : DisorderMode::sampled;
        d.spec.kind = DisorderKind::gaussian;
        d.spec.width = hz(s.number("width_hz", linewidth, Check::non_negative));
        if (d.mode == DisorderMode::gaussian && d.bins % 2 == 0) {
            throw KeyError(s.key_path("bins"), "gaussian binning needs an odd bin count");
        }
    } else if (kind == "two_delta") {
        d.mode = DisorderMode::two_delta;
        d.spec.kind = DisorderKind::two_delta;
        if (!s.has("width_hz")) throw KeyError(s.key_path("width_hz"), "two_delta needs the half-splitting width_hz");
        d.spec.width = hz(s.number("width_hz", 0.0, Check::non_negative));
    } else {
        d.mode = DisorderMode::table;
        d.spec.kind = DisorderKind::table;
        s.number("width_hz", 0.0, Check::non_negative);
    }
    if (s.has("table")) {
        const auto& t = s.raw("table");
        if (!t.is_array() || t.empty()) throw KeyError(s.key_path("table"), "expected a non-empty array of [detuning_hz, weight]");
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto& row = t[i];
            const auto where = s.key_path("table") + "[" + std::to_string(i) + "]";
            if (!row.is_array() || row.size() != 2 || !row[0].is_number() || !row[1].is_number()) {
                throw KeyError(where, "expected [detuning_hz, weight]");
            }
            if (!(row[1].get<double>() >= 0.0)) throw KeyError(where, "weight must be >= 0");
            d.spec.table.emplace_back(hz(row[0].get<double>()), row[1].get<double>());
        }
        s.out()["table"] = t;
    } else if (d.mode == DisorderMode::table) {
        throw KeyError(s.key_path("table"), "table disorder needs a table");
    }
    (void)strict;
    (void)warnings;
    s.finish();
}

void read_integrator(Section& s, RunConfig& c) {
    auto& i = c.integrator;
    const auto method = s.text("method", "adaptive_rk45", {"adaptive_rk45", "fixed_rk4"});
    i.method = method == "fixed_rk4" ? IntegrationMethod::fixed_rk4 : IntegrationMethod::adaptive_rk45;
    i.rel_tol = s.number("rel_tol", 1e-8, Check::positive);
    i.abs_tol = s.number("abs_tol", 1e-10, Check::positive);
    i.max_step = s.number("max_step_s", 50e-9, Check::positive);
    i.fixed_step = s.number("fixed_step_s", 1e-9, Check::positive);
    i.t_start = s.number("t_start_s", 0.0);
    i.t_end = s.number("t_end_s", 1.5e-3);
    i.output_dt = s.number("output_dt_s", 100e-9, Check::positive);
    if (!(i.t_end > i.t_start)) throw KeyError(s.key_path("t_end_s"), "must be later than t_start_s");
    s.finish();
}

void read_initial(Section& s, RunConfig& c) {
    auto& i = c.initial;
    const auto kind = s.text("kind", "ground", {"ground", "tipped"});
    i.kind = kind == "tipped" ? InitialKind::tipped : InitialKind::ground;
    i.theta = s.number("theta", 0.0);
    i.phase = s.number("phase", 0.0);
    i.seed_coherence = s.number("seed_coherence", 1e-3, Check::non_negative);
    if (i.kind == InitialKind::tipped && !(i.theta > 0.0 && i.theta < std::acos(-1.0))) {
        throw KeyError(s.key_path("theta"), "tip angle must lie in (0, pi)");
    }
    s.finish();
}

void read_kicks(Section& s, RunConfig& c, bool present) {
    auto& k = c.kicks;
    k.enabled = s.boolean("enabled", present);
    k.spec.amplitude = s.number("amplitude", 0.0, Check::non_negative);
    k.spec.interval = s.number("interval_s", 0.0, Check::non_negative);
    k.spec.collective = s.boolean("collective", false);
    k.spec.seed = s.unsigned64("seed", c.seed);
    const auto target = s.text("target", "inversion", {"inversion", "coherence"});
    k.target = target == "coherence" ? KickTarget::coherence : KickTarget::inversion;
    const double inf = std::numeric_limits<double>::infinity();
    const bool inversion = k.target == KickTarget::inversion;
    const auto lo = s.optional_number("lower");
    const auto hi = s.optional_number("upper");
    k.spec.lower = lo.value_or(inversion ? -1.0 : -inf);
    k.spec.upper = hi.value_or(inversion ? 1.0 : inf);
    if (!lo) s.out()["lower"] = inversion ? json(-1.0) : json(nullptr);
    if (!hi) s.out()["upper"] = inversion ? json(1.0) : json(nullptr);
    if (!(k.spec.lower <= k.spec.upper)) throw KeyError(s.key_path("lower"), "must not exceed upper");
    s.finish();
}

void read_analysis(Section& s, RunConfig& c) {
    auto& a = c.analysis;
    a.bursts = s.boolean("bursts", true);
    a.spectrum = s.boolean("spectrum", true);
    a.decomposition = s.boolean("decomposition", false);
    a.keep_amplitude = s.boolean("keep_amplitude", false);
    a.burst_options.threshold_factor = s.number("threshold_factor", 3.0, Check::positive);
    a.burst_options.release_factor = s.number("release_factor", 1.0, Check::non_negative);
    a.burst_options.settle_fraction = s.number("settle_fraction", 0.2, Check::non_negative);
    a.burst_options.min_peak_fraction = s.number("min_peak_fraction", 0.25, Check::non_negative);
    a.spectrum_options.window_start_fraction = s.number("window_start_fraction", 0.2, Check::non_negative);
    a.spectrum_options.peak_window_bins = s.integer("peak_window_bins", 4, 0);
    if (a.burst_options.release_factor > a.burst_options.threshold_factor) {
        throw KeyError(s.key_path("release_factor"), "must not exceed threshold_factor");
    }
    if (a.burst_options.settle_fraction >= 1.0) throw KeyError(s.key_path("settle_fraction"), "must be < 1");
    if (a.spectrum_options.window_start_fraction >= 1.0) {
        throw KeyError(s.key_path("window_start_fraction"), "must be < 1");
    }
    s.finish();
}

GridAxis read_axis(Section& parent, const std::string& key, GridAxis fallback, bool strict,
                   std::vector<std::string>* warnings) {
    const json* in = parent.object(key);
    Section s(in, parent.out()[key], parent.key_path(key), strict, warnings);
    GridAxis a;
    a.from = s.number("from", fallback.from);
    a.to = s.number("to", fallback.to);
    a.count = s.integer("count", fallback.count, 1);
    if (a.count > 1 && !(a.to > a.from)) throw KeyError(s.key_path("to"), "must exceed from");
    s.finish();
    return a;
}

void read_phase_diagram(Section& s, RunConfig& c, bool strict, std::vector<std::string>* warnings) {
    auto& pd = c.phase_diagram;
    pd.g_norm = read_axis(s, "g_norm", pd.g_norm, strict, warnings);
    pd.disorder = read_axis(s, "disorder", pd.disorder, strict, warnings);
    if (pd.g_norm.from < 0.0) throw KeyError(s.key_path("g_norm.from"), "must be >= 0");
    if (pd.disorder.from < 0.0) throw KeyError(s.key_path("disorder.from"), "must be >= 0");
    pd.include_population_factor = s.boolean("include_population_factor", false);
    pd.delta_max = hz(s.number("delta_max_hz", 100e3, Check::positive));
    pd.refine_steps = s.integer("refine_steps", 40, 0);
    s.finish();
}

void read_sweep(Section& s, RunConfig& c) {
    SweepConfig sw;
    sw.workers = s.integer("workers", 1, 1);
    const bool has_axis = s.has("axis");
    const bool has_variants = s.has("variants");
    if (has_axis == has_variants) throw KeyError(s.key_path("axis"), "give either axis with values, or variants");
    if (has_axis) {
        sw.axis = s.text("axis", "");
        if (!s.has("values") || !s.raw("values").is_array() || s.raw("values").empty()) {
            throw KeyError(s.key_path("values"), "expected a non-empty array");
        }
        for (const auto& v : s.raw("values")) sw.values.push_back(v);
        s.out()["values"] = s.raw("values");
    } else {
        const auto& v = s.raw("variants");
        if (!v.is_array() || v.empty()) throw KeyError(s.key_path("variants"), "expected a non-empty array of objects");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_object()) throw KeyError(s.key_path("variants") + "[" + std::to_string(i) + "]", "must be an object");
            sw.variants.push_back(v[i]);
        }
        s.out()["variants"] = v;
    }
    s.finish();
    c.sweep = std::move(sw);
}

}  // namespace

RunConfig parse_config(const json& doc, bool strict, std::vector<std::string>* warnings) {
    RunConfig c;
    json resolved;
    Section root(&doc, resolved, "", strict, warnings);
    c.seed = root.unsigned64("rng_seed", 0);
    c.description = root.text("description", "");
    c.output = root.text("output", "");
    const auto model = root.text("model", "cumulant",
                                 {"meanfield2", "meanfield_adiabatic", "meanfield3", "cumulant", "reduced_wxyz"});
    if (model == "meanfield2") c.model = ModelKind::meanfield2;
    else if (model == "meanfield_adiabatic") c.model = ModelKind::meanfield_adiabatic;
    else if (model == "meanfield3") c.model = ModelKind::meanfield3;
    else if (model == "reduced_wxyz") c.model = ModelKind::reduced_wxyz;
    else c.model = ModelKind::cumulant;

    {
        Section s(root.object("params"), resolved["params"], "params", strict, warnings);
        read_params(s, c);
    }
    {
        Section s(root.object("disorder"), resolved["disorder"], "disorder", strict, warnings);
        read_disorder(s, c, strict, warnings);
    }
    {
        Section s(root.object("integrator"), resolved["integrator"], "integrator", strict, warnings);
        read_integrator(s, c);
    }
    {
        Section s(root.object("initial"), resolved["initial"], "initial", strict, warnings);
        read_initial(s, c);
    }
    {
        const json* k = root.object("kicks");
        Section s(k, resolved["kicks"], "kicks", strict, warnings);
        read_kicks(s, c, k != nullptr);
    }
    {
        Section s(root.object("analysis"), resolved["analysis"], "analysis", strict, warnings);
        read_analysis(s, c);
    }
    {
        Section s(root.object("phase_diagram"), resolved["phase_diagram"], "phase_diagram", strict, warnings);
        read_phase_diagram(s, c, strict, warnings);
    }
    if (const json* sw = root.object("sweep")) {
        Section s(sw, resolved["sweep"], "sweep", strict, warnings);
        read_sweep(s, c);
    }
    root.finish();

    if (c.model == ModelKind::meanfield3 && c.kicks.enabled && c.kicks.target == KickTarget::inversion) {
        throw KeyError("kicks.target", "the three-level model has no inversion slots; use coherence");
    }
    if (c.model == ModelKind::reduced_wxyz && c.kicks.enabled) {
        throw KeyError("kicks", "kicks are not supported for the reduced model");
    }
    if (c.analysis.decomposition && c.model != ModelKind::cumulant) {
        throw KeyError("analysis.decomposition", "only the cumulant model carries the emission decomposition");
    }
    c.resolved = std::move(resolved);
    return c;
}

RunConfig parse_config_text(std::string_view text, bool strict, std::vector<std::string>* warnings) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw KeyError("<document>", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc, strict, warnings);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw KeyError("<document>", std::string("invalid JSON in '") + path + "': " + e.what());
    }
}

json with_value(json doc, const std::string& path, const json& value) {
    json* node = &doc;
    std::size_t start = 0;
    for (;;) {
        const auto dot = path.find('.', start);
        const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (!node->is_object()) throw KeyError(path, "does not name a config key");
        if (dot == std::string::npos) {
            // Mutually exclusive coupling keys: switching one on removes the other.
            if (key == "g_hz") node->erase("g_collective_hz");
            if (key == "g_collective_hz") node->erase("g_hz");
            if (!node->contains(key) && key != "g_hz" && key != "g_collective_hz") {
                throw KeyError(path, "does not name a config key");
            }
            (*node)[key] = value;
            return doc;
        }
        if (!node->contains(key)) throw KeyError(path, "does not name a config key");
        node = &(*node)[key];
        start = dot + 1;
    }
}

std::uint64_t config_hash(const json& resolved) {
    json copy = resolved;
    copy.erase("output");
    copy.erase("description");
    if (copy.contains("sweep")) copy["sweep"].erase("workers");
    const std::string text = copy.dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex16(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace superburst::cli
