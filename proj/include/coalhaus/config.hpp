#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coalhaus/lambda_measure.hpp"
#include "coalhaus/lookdown.hpp"
#include "coalhaus/regime.hpp"

namespace coalhaus {

/** Configuration failure with a machine-readable kind so the CLI can map
 *  each cause to its own exit code. */
class ConfigError : public std::runtime_error {
  public:
    enum class Kind { Parse, UnknownKey, RegimeMismatch, Io };

    ConfigError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

/** Everything an experiment run needs, parsed from a sectioned key = value
 *  file. The [model] section fills RegimeConfig; [experiment] holds the
 *  orchestration knobs. Unknown keys are rejected rather than ignored. */
struct ExperimentConfig {
    RegimeConfig model;
    int k = 2;
    double horizon = 1.0;
    int reps = 100;
    std::uint64_t seed = 1;
    std::vector<double> K_list;  // empty means {model.K}
    std::string out;             // output prefix; may be overridden by --out
    int threads = 1;
    LookdownMode mode = LookdownMode::Scalable;
    std::optional<LambdaMeasure> lambda;
    std::string lambda_text;   // original spec string, kept for stamping
    std::vector<double> grid;  // rescaled observation times
    std::uint32_t initial_alphabet = 0; // 0 = distinct labels 1..N(0)
    double significance = 1e-3;

    std::vector<double> effective_K_list() const {
        return K_list.empty() ? std::vector<double>{model.K} : K_list;
    }
};

/** `geometric(q=0.5)`, `stable(alpha=1.5)`, `neveu`, `explicit(0.2,0.8)`. */
OffspringLaw parse_offspring(const std::string& text);

/** `kingman(a=1.0)`, `beta(alpha=1.5,scale=1.0)`, `uniform(scale=1.0)`,
 *  each optionally suffixed `+kingman(a=...)` for a mixed measure. */
LambdaMeasure parse_lambda(const std::string& text);

/** Comma-separated reals: "100,300,1000". */
std::vector<double> parse_list(const std::string& text);

/** "start:stop:step" inclusive grid, or a plain comma list. */
std::vector<double> parse_grid(const std::string& text);

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/** FNV-1a over the raw config bytes; stamped into every output file so a
 *  result can be traced back to the exact configuration that produced it. */
std::uint64_t config_hash(const std::string& text);

/** The config file content as last parsed, for hashing by callers that go
 *  through parse_config_file. */
std::string read_file_or_throw(const std::string& path);

} // namespace coalhaus
