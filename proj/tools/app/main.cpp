#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "runner.hpp"

using namespace superburst::cli;

namespace {

struct Common {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    int workers = 0;
    bool strict = true;
};

void add_common(CLI::App* cmd, Common& o, bool needs_config) {
    auto* c = cmd->add_option("--config", o.config, "JSON run configuration");
    if (needs_config) c->required();
    cmd->add_option("--out", o.out, "output directory (overrides \"output\")");
    cmd->add_option("--seed", o.seed, "rng seed (overrides \"rng_seed\")");
    cmd->add_option("--workers", o.workers, "concurrent runs for sweeps")->check(CLI::PositiveNumber);
    cmd->add_flag("--strict,!--no-strict", o.strict, "reject unknown config keys (default on)");
}

RunContext context(const Common& o) {
    RunContext ctx;
    ctx.strict = o.strict;
    ctx.workers = o.workers;
    if (const char* t = std::getenv("SUPERBURST_THREADS")) {
        const int n = std::atoi(t);
        if (n > 0) ctx.threads = n;
    }
    return ctx;
}

// Loads and parses the config with CLI overrides; returns the output directory through `dir`.
RunConfig load(const Common& o, fs::path& dir) {
    auto doc = load_json_file(o.config);
    if (!doc.is_object()) throw KeyError("<root>", "must be an object");
    if (o.seed) doc["rng_seed"] = *o.seed;
    if (!o.out.empty()) doc["output"] = o.out;
    std::vector<std::string> warnings;
    auto c = parse_config(doc, o.strict, &warnings);
    for (const auto& w : warnings) std::cerr << "superburst: warning: " << w << '\n';
    dir = c.output;
    return c;
}

// Best guess at the output directory before the config has been parsed.
fs::path early_dir(const Common& o) {
    if (!o.out.empty()) return o.out;
    try {
        const auto doc = load_json_file(o.config);
        if (doc.is_object() && doc.contains("output") && doc["output"].is_string()) return doc["output"].get<std::string>();
    } catch (const std::exception&) {
    }
    return {};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven-dissipative spin ensemble in a cavity: simulation and analysis"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    Common sim, tra, pd, sw, an, rep;
    auto* c_sim = app.add_subcommand("simulate", "integrate one trajectory and analyse it");
    add_common(c_sim, sim, true);
    auto* c_tra = app.add_subcommand("transient", "single superfluorescent burst from a tipped state");
    add_common(c_tra, tra, true);
    auto* c_pd = app.add_subcommand("phase-diagram", "classify the reduced model on a coupling x disorder grid");
    add_common(c_pd, pd, true);
    auto* c_sw = app.add_subcommand("sweep", "run the configured sweep block");
    add_common(c_sw, sw, true);
    auto* c_an = app.add_subcommand("analyze", "detect bursts and compute the spectrum of an existing trace.csv");
    add_common(c_an, an, false);
    std::string trace_path;
    c_an->add_option("--trace", trace_path, "trace.csv to analyse")->required()->check(CLI::ExistingFile);
    auto* c_rep = app.add_subcommand("reproduce", "run a packaged figure configuration");
    add_common(c_rep, rep, false);
    std::string figure;
    std::vector<std::string> ids;
    for (const auto& [id, text] : presets()) ids.push_back(id);
    c_rep->add_option("figure", figure, "figure id")->required()->check(CLI::IsMember(ids));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    auto single = [](const Common& o, auto&& verb) {
        fs::path dir = early_dir(o);
        return run_guarded(dir, [&] {
            const auto c = load(o, dir);
            verb(c, dir, context(o));
        });
    };

    if (c_sim->parsed()) return single(sim, [](const RunConfig& c, const fs::path& d, const RunContext& x) { (void)run_simulate(c, d, x); });
    if (c_tra->parsed()) return single(tra, [](const RunConfig& c, const fs::path& d, const RunContext& x) { (void)run_transient(c, d, x); });
    if (c_pd->parsed()) return single(pd, [](const RunConfig& c, const fs::path& d, const RunContext& x) { (void)run_phase_diagram(c, d, x); });
    if (c_sw->parsed()) {
        int children = 0;
        const int code = single(sw, [&](const RunConfig& c, const fs::path& d, const RunContext& x) { children = run_sweep(c, d, x); });
        return std::max(code, children);
    }
    if (c_an->parsed()) {
        fs::path dir = an.out;
        return run_guarded(dir, [&] {
            RunConfig c;
            if (!an.config.empty()) {
                c = load(an, dir);
            } else {
                c = parse_config(json::object());
            }
            if (!an.out.empty()) dir = an.out;
            (void)run_analyze(trace_path, c, dir);
        });
    }
    if (c_rep->parsed()) {
        if (rep.out.empty()) rep.out = "reproduce-" + figure;
        int code = 0;
        const int guard = run_guarded(rep.out, [&] { code = run_reproduce(figure, rep.out, rep.seed, context(rep)); });
        return std::max(code, guard);
    }
    return 3;
}
