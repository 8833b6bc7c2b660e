#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "superburst/bursts.hpp"
#include "superburst/ensemble.hpp"
#include "superburst/errors.hpp"
#include "superburst/integrator.hpp"
#include "superburst/simulate.hpp"
#include "superburst/spectrum.hpp"
#include "superburst/three_level.hpp"

namespace superburst::cli {

using json = nlohmann::json;

/// Configuration error that remembers which key caused it.
class KeyError : public ConfigError {
  public:
    KeyError(std::string path, const std::string& what)
        : ConfigError(path + ": " + what), path_(std::move(path)) {}
    [[nodiscard]] const std::string& path() const noexcept { return path_; }

  private:
    std::string path_;
};

enum class ModelKind { meanfield2, meanfield_adiabatic, meanfield3, cumulant, reduced_wxyz };

[[nodiscard]] std::string_view model_name(ModelKind m) noexcept;

enum class DisorderMode { none, gaussian, two_delta, table, sampled };

struct DisorderConfig {
    DisorderMode mode = DisorderMode::gaussian;
    DisorderSpec spec;  // width in rad/s
    int bins = 129;
    std::size_t atoms = 100;
};

enum class InitialKind { ground, tipped };

struct InitialConfig {
    InitialKind kind = InitialKind::ground;
    double theta = 0.0;
    double phase = 0.0;
    double seed_coherence = 1e-3;  // mean-field ground states need a small coherence to leave the fixed point
};

enum class KickTarget { inversion, coherence };

struct KickConfig {
    bool enabled = false;
    KickSpec spec;
    KickTarget target = KickTarget::inversion;
};

struct AnalysisConfig {
    bool bursts = true;
    bool spectrum = true;
    bool decomposition = false;
    bool keep_amplitude = false;
    BurstOptions burst_options;
    SpectrumOptions spectrum_options;
};

struct GridAxis {
    double from = 0.0;
    double to = 1.0;
    int count = 2;
    [[nodiscard]] std::vector<double> values() const;
};

struct PhaseDiagramConfig {
    GridAxis g_norm{0.01, 2.0, 100};
    GridAxis disorder{0.0, 8.0, 100};
    bool include_population_factor = false;
    double delta_max = 0.0;  // rad/s
    int refine_steps = 40;
};

/// Either a single parameter path with a list of values, or a list of JSON merge patches.
struct SweepConfig {
    std::string axis;
    std::vector<json> values;
    std::vector<json> variants;
    int workers = 1;
    [[nodiscard]] std::size_t size() const noexcept { return axis.empty() ? variants.size() : values.size(); }
};

struct RunConfig {
    ModelKind model = ModelKind::cumulant;
    ThreeLevelParams params;  // params.base holds the two-level rates, all in rad/s
    double delta = 0.0;       // reduced model half-splitting, rad/s
    DisorderConfig disorder;
    IntegratorConfig integrator;
    InitialConfig initial;
    KickConfig kicks;
    AnalysisConfig analysis;
    PhaseDiagramConfig phase_diagram;
    std::optional<SweepConfig> sweep;
    std::string output;
    std::uint64_t seed = 0;
    std::string description;
    json resolved;  // every key with its default filled in, Hz and seconds as written
};

/**
 * Validates and unit-converts a config document. Keys ending in _hz are
 * linear frequencies and become rad/s, keys ending in _s are seconds.
 * Unknown keys are rejected when `strict`, otherwise reported through
 * `warnings`. A unit suffix other than _hz or _s on a known quantity is
 * always an error.
 */
[[nodiscard]] RunConfig parse_config(const json& doc, bool strict = true, std::vector<std::string>* warnings = nullptr);
[[nodiscard]] RunConfig parse_config_text(std::string_view text, bool strict = true,
                                          std::vector<std::string>* warnings = nullptr);
[[nodiscard]] json load_json_file(const std::string& path);

/// Writes `value` at a dotted path such as "params.N"; the path must name an existing key.
[[nodiscard]] json with_value(json doc, const std::string& path, const json& value);

/// 64-bit FNV-1a of the canonical serialization of `resolved` without output-only keys.
[[nodiscard]] std::uint64_t config_hash(const json& resolved);
[[nodiscard]] std::string hex16(std::uint64_t h);

}  // namespace superburst::cli
