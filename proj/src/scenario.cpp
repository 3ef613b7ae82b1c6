#include "microgrid/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "microgrid/rng.hpp"

namespace microgrid {

void TypicalYear::validate() const {
    auto check_len = [](const std::vector<double>& v, const char* name) {
        if (v.size() != kHoursPerYear)
            throw InvalidParameter(
                fmt::format("TMY series '{}' has {} entries, expected {}", name, v.size(),
                            kHoursPerYear));
    };
    check_len(irradiance, "irradiance");
    check_len(temperature, "temperature");
    check_len(wind_speed, "wind_speed");
    check_len(load, "load");
    for (std::size_t h = 0; h < kHoursPerYear; ++h) {
        if (irradiance[h] < 0.0)
            throw InvalidParameter(fmt::format("negative irradiance at hour {}", h));
        if (wind_speed[h] < 0.0)
            throw InvalidParameter(fmt::format("negative wind speed at hour {}", h));
        if (load[h] < 0.0) throw InvalidParameter(fmt::format("negative load at hour {}", h));
    }
}

void StochasticParams::validate() const {
    if (sigma_pv < 0.0) throw InvalidParameter("sigma_pv must be >= 0");
    if (weibull_shape <= 0.0) throw InvalidParameter("weibull_shape must be > 0");
    if (weibull_scale <= 0.0) throw InvalidParameter("weibull_scale must be > 0");
}

void ReliabilityParams::validate() const {
    if (failure_rate < 0.0 || failure_rate > 1.0)
        throw InvalidParameter("failure_rate must be in [0, 1]");
    if (repair_rate < 0.0 || repair_rate > 1.0)
        throw InvalidParameter("repair_rate must be in [0, 1]");
    if (failure_rate + repair_rate <= 0.0)
        throw InvalidParameter("failure_rate + repair_rate must be > 0");
}

std::vector<double> perturb_solar(const TypicalYear& tmy, const StochasticParams& params,
                                  std::uint64_t seed) {
    params.validate();
    rng::Stream stream(seed);
    std::vector<double> out(tmy.irradiance.size());
    for (std::size_t h = 0; h < out.size(); ++h) {
        double base = tmy.irradiance[h];
        if (base <= 0.0) {
            out[h] = 0.0;  // night hours stay dark
            continue;
        }
        out[h] = std::max(0.0, base + stream.normal(0.0, params.sigma_pv));
    }
    return out;
}

std::vector<double> sample_wind(const StochasticParams& params, std::size_t n_hours,
                                std::uint64_t seed) {
    params.validate();
    rng::Stream stream(seed);
    std::vector<double> out(n_hours);
    for (auto& v : out) v = stream.weibull(params.weibull_shape, params.weibull_scale);
    return out;
}

std::vector<std::uint8_t> sample_availability(const ReliabilityParams& params,
                                              std::size_t n_hours, std::uint64_t seed) {
    params.validate();
    rng::Stream stream(seed);
    std::vector<std::uint8_t> out(n_hours);
    bool available = true;  // commissioned working
    for (std::size_t h = 0; h < n_hours; ++h) {
        out[h] = available ? 1 : 0;
        if (available)
            available = !stream.bernoulli(params.failure_rate);
        else
            available = stream.bernoulli(params.repair_rate);
    }
    return out;
}

ScenarioBundle build_scenario(const TypicalYear& tmy, const StochasticParams& sparams,
                              const std::array<ReliabilityParams, kNumComponents>& rparams,
                              std::uint64_t seed) {
    tmy.validate();
    ScenarioBundle bundle;
    bundle.temperature = tmy.temperature;
    bundle.load = tmy.load;
    bundle.irradiance = perturb_solar(tmy, sparams, rng::derive_seed(seed, "solar"));
    bundle.wind_speed =
        sample_wind(sparams, tmy.wind_speed.size(), rng::derive_seed(seed, "wind"));
    for (std::size_t c = 0; c < kNumComponents; ++c) {
        bundle.availability[c] = sample_availability(
            rparams[c], tmy.load.size(),
            rng::derive_seed(seed, "availability", static_cast<std::uint64_t>(c)));
    }
    return bundle;
}

namespace {

double parse_field(const std::string& field, const std::string& path, std::size_t line_no,
                   const char* name) {
    double value{};
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw InvalidParameter(
            fmt::format("{}:{}: cannot parse {} value '{}'", path, line_no, name, field));
    return value;
}

}  // namespace

TypicalYear load_tmy_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter(fmt::format("cannot open TMY file '{}'", path));

    std::string line;
    if (!std::getline(in, line))
        throw InvalidParameter(fmt::format("{}: empty file", path));
    // tolerate trailing CR from CRLF files
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string expected = "hour,irradiance_kw_m2,temperature_c,wind_speed_m_s,load_kw";
    if (line != expected)
        throw InvalidParameter(
            fmt::format("{}:1: bad header '{}', expected '{}'", path, line, expected));

    TypicalYear tmy;
    tmy.irradiance.reserve(kHoursPerYear);
    tmy.temperature.reserve(kHoursPerYear);
    tmy.wind_speed.reserve(kHoursPerYear);
    tmy.load.reserve(kHoursPerYear);

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::array<std::string, 5> fields;
        std::size_t start = 0, idx = 0;
        for (; idx < 5; ++idx) {
            auto comma = line.find(',', start);
            if (comma == std::string::npos) {
                fields[idx] = line.substr(start);
                start = line.size();
                ++idx;
                break;
            }
            fields[idx] = line.substr(start, comma - start);
            start = comma + 1;
        }
        if (idx != 5 || start != line.size())
            throw InvalidParameter(
                fmt::format("{}:{}: expected 5 comma-separated fields", path, line_no));
        tmy.irradiance.push_back(parse_field(fields[1], path, line_no, "irradiance_kw_m2"));
        tmy.temperature.push_back(parse_field(fields[2], path, line_no, "temperature_c"));
        tmy.wind_speed.push_back(parse_field(fields[3], path, line_no, "wind_speed_m_s"));
        tmy.load.push_back(parse_field(fields[4], path, line_no, "load_kw"));
    }
    if (tmy.load.size() != kHoursPerYear)
        throw InvalidParameter(fmt::format("{}: {} data rows, expected {}", path,
                                           tmy.load.size(), kHoursPerYear));
    tmy.validate();
    return tmy;
}

}  // namespace microgrid
