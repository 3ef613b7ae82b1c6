#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "microgrid/economics.hpp"
#include "microgrid/optimize.hpp"
#include "microgrid/scenario.hpp"

namespace microgrid {

// Flat key/value view of a TOML-style config file: sections in brackets,
// `key = value` lines, `#` comments. Values are strings, numbers or
// booleans; keys are addressed as "section.key".
class ConfigFile {
  public:
    static ConfigFile parse_file(const std::string& path);
    static ConfigFile parse_string(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    double get_number(const std::string& key) const;
    double get_number(const std::string& key, double fallback) const;
    long get_integer(const std::string& key) const;
    long get_integer(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    const std::string& origin() const { return origin_; }

  private:
    struct Entry {
        std::string raw;
        std::size_t line = 0;
    };
    const Entry& require(const std::string& key) const;
    std::map<std::string, Entry> values_;
    std::string origin_;
};

struct OptimizerSettings {
    std::string algorithm = "mspsa";  // "mspsa" or "pso"
    GainSchedule gains;
    long max_iterations = 500;
    int replicates_per_eval = 1;
    bool common_random_numbers = true;
    double stall_tolerance = 1e-6;
    long stall_window = 50;
    double pso_c1 = 2.3;
    double pso_c2 = 2.3;
    double pso_w = 1.0;
    int pso_population = 20;
    double pso_v0_lo = -1.0;
    double pso_v0_hi = 1.0;
};

// Everything one experiment needs, validated field by field at load time.
struct RunConfig {
    std::string tmy_path;  // resolved relative to the config file
    StochasticParams stochastic;
    ComponentSpecs specs;
    std::array<ReliabilityParams, kNumComponents> reliability;
    CostParams costs;
    Bounds bounds;                    // 6 coordinates
    std::vector<bool> discrete_mask;  // capacities discrete, thresholds continuous
    DesignVector initial_design;
    OptimizerSettings optimizer;
    std::uint64_t seed = 0;
    int scenarios = 1;  // default Monte Carlo sample count for evaluate

    // Shrinks the threshold bounds to [0, 0]; the without-incentives protocol.
    void clamp_incentives_to_zero();

    MspsaConfig mspsa_config() const;
    PsoConfig pso_config() const;

    static RunConfig load(const std::string& path);
};

}  // namespace microgrid
