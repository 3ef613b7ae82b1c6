#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "microgrid/errors.hpp"

namespace microgrid {

inline constexpr std::size_t kHoursPerYear = 8760;

// Component indices used for availability chains and cost tables.
enum class Component : int { Pv = 0, Wt = 1, Bss = 2, Mt = 3 };
inline constexpr std::size_t kNumComponents = 4;
inline constexpr std::array<const char*, kNumComponents> kComponentNames{"pv", "wt", "bss", "mt"};

// Deterministic base year: hourly irradiance, temperature, wind speed, load.
struct TypicalYear {
    std::vector<double> irradiance;   // kW/m^2
    std::vector<double> temperature;  // degC
    std::vector<double> wind_speed;   // m/s
    std::vector<double> load;         // kW

    void validate() const;
};

struct StochasticParams {
    double sigma_pv = 0.0;      // kW/m^2
    double weibull_shape = 2.0; // k
    double weibull_scale = 6.8; // m/s

    void validate() const;
};

// Hourly two-state Markov transition probabilities.
struct ReliabilityParams {
    double failure_rate = 0.0;  // P(available -> failed) per hour
    double repair_rate = 1.0;   // P(failed -> available) per hour

    void validate() const;
    double stationary_availability() const {
        return repair_rate / (failure_rate + repair_rate);
    }
};

// One stochastic year: perturbed weather plus per-component availability masks.
struct ScenarioBundle {
    std::vector<double> irradiance;
    std::vector<double> temperature;
    std::vector<double> wind_speed;
    std::vector<double> load;
    std::array<std::vector<std::uint8_t>, kNumComponents> availability;  // 1 = available

    std::size_t hours() const { return load.size(); }
};

std::vector<double> perturb_solar(const TypicalYear& tmy, const StochasticParams& params,
                                  std::uint64_t seed);

std::vector<double> sample_wind(const StochasticParams& params, std::size_t n_hours,
                                std::uint64_t seed);

std::vector<std::uint8_t> sample_availability(const ReliabilityParams& params,
                                              std::size_t n_hours, std::uint64_t seed);

ScenarioBundle build_scenario(const TypicalYear& tmy, const StochasticParams& sparams,
                              const std::array<ReliabilityParams, kNumComponents>& rparams,
                              std::uint64_t seed);

// Reads `hour,irradiance_kw_m2,temperature_c,wind_speed_m_s,load_kw` with
// exactly 8760 data rows. Throws InvalidParameter with the offending line.
TypicalYear load_tmy_csv(const std::string& path);

}  // namespace microgrid
