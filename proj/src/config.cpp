#include "microgrid/config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace microgrid {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter(fmt::format("cannot open config file '{}'", path));
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_string(buf.str(), path);
}

ConfigFile ConfigFile::parse_string(const std::string& text, const std::string& origin) {
    ConfigFile cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        // strip comments outside quotes
        bool in_quote = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quote = !in_quote;
            if (line[i] == '#' && !in_quote) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw InvalidParameter(
                    fmt::format("{}:{}: malformed section header '{}'", origin, line_no, line));
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw InvalidParameter(fmt::format("{}:{}: empty section name", origin, line_no));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParameter(
                fmt::format("{}:{}: expected 'key = value', got '{}'", origin, line_no, line));
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw InvalidParameter(fmt::format("{}:{}: empty key", origin, line_no));
        std::string full = section.empty() ? key : section + "." + key;
        if (cfg.values_.count(full))
            throw InvalidParameter(
                fmt::format("{}:{}: duplicate key '{}'", origin, line_no, full));
        cfg.values_[full] = Entry{value, line_no};
    }
    return cfg;
}

const ConfigFile::Entry& ConfigFile::require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end())
        throw InvalidParameter(fmt::format("{}: missing required key '{}'", origin_, key));
    return it->second;
}

double ConfigFile::get_number(const std::string& key) const {
    const Entry& e = require(key);
    double v{};
    auto [ptr, ec] = std::from_chars(e.raw.data(), e.raw.data() + e.raw.size(), v);
    if (ec != std::errc{} || ptr != e.raw.data() + e.raw.size())
        throw InvalidParameter(fmt::format("{}:{}: key '{}': '{}' is not a number", origin_,
                                           e.line, key, e.raw));
    return v;
}

double ConfigFile::get_number(const std::string& key, double fallback) const {
    return has(key) ? get_number(key) : fallback;
}

long ConfigFile::get_integer(const std::string& key) const {
    const Entry& e = require(key);
    long v{};
    auto [ptr, ec] = std::from_chars(e.raw.data(), e.raw.data() + e.raw.size(), v);
    if (ec != std::errc{} || ptr != e.raw.data() + e.raw.size())
        throw InvalidParameter(fmt::format("{}:{}: key '{}': '{}' is not an integer", origin_,
                                           e.line, key, e.raw));
    return v;
}

long ConfigFile::get_integer(const std::string& key, long fallback) const {
    return has(key) ? get_integer(key) : fallback;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Entry& e = require(key);
    if (e.raw == "true") return true;
    if (e.raw == "false") return false;
    throw InvalidParameter(fmt::format("{}:{}: key '{}': '{}' is not true/false", origin_,
                                       e.line, key, e.raw));
}

std::string ConfigFile::get_string(const std::string& key) const {
    const Entry& e = require(key);
    std::string v = e.raw;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"')
        v = v.substr(1, v.size() - 2);
    return v;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

void RunConfig::clamp_incentives_to_zero() {
    bounds.lo[4] = bounds.hi[4] = 0.0;
    bounds.lo[5] = bounds.hi[5] = 0.0;
    initial_design.t_rp = 0.0;
    initial_design.t_er = 0.0;
}

MspsaConfig RunConfig::mspsa_config() const {
    MspsaConfig c;
    c.gains = optimizer.gains;
    c.bounds = bounds;
    c.discrete_mask = discrete_mask;
    auto arr = initial_design.to_array();
    c.theta0.assign(arr.begin(), arr.end());
    c.max_iterations = optimizer.max_iterations;
    c.seed = seed;
    c.common_random_numbers = optimizer.common_random_numbers;
    c.stall_tolerance = optimizer.stall_tolerance;
    c.stall_window = optimizer.stall_window;
    return c;
}

PsoConfig RunConfig::pso_config() const {
    PsoConfig c;
    c.c1 = optimizer.pso_c1;
    c.c2 = optimizer.pso_c2;
    c.w = optimizer.pso_w;
    c.population = optimizer.pso_population;
    c.v0_lo = optimizer.pso_v0_lo;
    c.v0_hi = optimizer.pso_v0_hi;
    c.bounds = bounds;
    c.discrete_mask = discrete_mask;
    auto arr = initial_design.to_array();
    c.theta0.assign(arr.begin(), arr.end());
    c.max_evaluations = 2 * optimizer.max_iterations;  // budget parity with MSPSA
    c.seed = seed;
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    ConfigFile f = ConfigFile::parse_file(path);
    RunConfig rc;

    auto dir = std::filesystem::path(path).parent_path();
    std::filesystem::path tmy = f.get_string("tmy.path");
    rc.tmy_path = tmy.is_absolute() ? tmy.string() : (dir / tmy).string();
    if (!std::filesystem::exists(rc.tmy_path))
        throw InvalidParameter(
            fmt::format("{}: tmy.path '{}' does not exist", path, rc.tmy_path));

    rc.stochastic.sigma_pv = f.get_number("stochastic.sigma_pv");
    rc.stochastic.weibull_shape = f.get_number("stochastic.weibull_shape");
    rc.stochastic.weibull_scale = f.get_number("stochastic.weibull_scale");
    rc.stochastic.validate();

    rc.specs.pv.rated_kw = f.get_number("pv.rated_kw", 1.0);
    rc.specs.pv.g_stc = f.get_number("pv.g_stc", 1.0);
    rc.specs.pv.temp_coeff = f.get_number("pv.temp_coeff", 0.0);
    rc.specs.pv.t_stc = f.get_number("pv.t_stc", 25.0);

    rc.specs.wind.rated_kw = f.get_number("wind.rated_kw", 1.0);
    rc.specs.wind.v_cut_in = f.get_number("wind.v_cut_in");
    rc.specs.wind.v_rated = f.get_number("wind.v_rated");
    rc.specs.wind.v_cut_out = f.get_number("wind.v_cut_out");

    rc.specs.battery.capacity_kwh = f.get_number("battery.capacity_kwh", 1.0);
    rc.specs.battery.eta_carryover = f.get_number("battery.eta_carryover", 1.0);
    rc.specs.battery.eta_charge = f.get_number("battery.eta_charge", 0.9);
    rc.specs.battery.eta_discharge = f.get_number("battery.eta_discharge", 0.9);
    rc.specs.battery.soc_min = f.get_number("battery.soc_min", 0.1);
    rc.specs.battery.soc_max = f.get_number("battery.soc_max", 1.0);
    rc.specs.battery.soc_init = f.get_number("battery.soc_init", 0.5);
    double cap = rc.specs.battery.capacity_kwh;
    rc.specs.battery.p_charge_max = f.get_number("battery.p_charge_max", 0.5 * cap);
    rc.specs.battery.p_discharge_max = f.get_number("battery.p_discharge_max", 0.5 * cap);

    rc.specs.turbine.rated_kw = f.get_number("turbine.rated_kw", 1.0);
    rc.specs.turbine.emissions_factor = f.get_number("turbine.emissions_factor");
    rc.specs.turbine.fuel_rate = f.get_number("turbine.fuel_rate");
    rc.specs.allow_mt_charging = f.get_bool("turbine.allow_mt_charging", false);
    rc.specs.validate();

    const std::array<std::string, kNumComponents> sections{"pv", "wind", "battery", "turbine"};
    for (std::size_t c = 0; c < kNumComponents; ++c) {
        const std::string& sec = sections[c];
        rc.reliability[c].failure_rate = f.get_number(sec + ".failure_rate", 0.0);
        rc.reliability[c].repair_rate = f.get_number(sec + ".repair_rate", 1.0);
        rc.reliability[c].validate();
        rc.costs.capex_unit[c] = f.get_number(sec + ".capex_unit");
        rc.costs.opex_unit[c] = f.get_number(sec + ".opex_unit");
    }

    rc.costs.carbon_tax = f.get_number("costs.carbon_tax");
    rc.costs.fuel_price = f.get_number("costs.fuel_price");
    rc.costs.voll = f.get_number("costs.voll");
    rc.costs.discount_rate = f.get_number("costs.discount_rate");
    rc.costs.lifetime_years = f.get_integer("costs.lifetime_years");
    rc.costs.h_max = f.get_number("costs.h_max");
    rc.costs.penalty_r = f.get_number("costs.penalty_r", 1e4);
    rc.costs.lifetime_sum = f.get_bool("costs.lifetime_sum", true);
    rc.costs.er_gate_literal = f.get_bool("costs.er_gate_literal", false);
    rc.costs.validate();

    const std::array<const char*, DesignVector::kDim> names{"pv_kw", "wt_kw", "bss_kwh",
                                                            "mt_kw", "t_rp", "t_er"};
    rc.bounds.lo.resize(DesignVector::kDim);
    rc.bounds.hi.resize(DesignVector::kDim);
    for (std::size_t i = 0; i < DesignVector::kDim; ++i) {
        double def_lo = 0.0, def_hi = i < 4 ? 10000.0 : 1.0;
        rc.bounds.lo[i] = f.get_number(fmt::format("bounds.{}_min", names[i]), def_lo);
        rc.bounds.hi[i] = f.get_number(fmt::format("bounds.{}_max", names[i]), def_hi);
    }
    rc.bounds.validate();
    rc.discrete_mask = {true, true, true, true, false, false};

    std::array<double, DesignVector::kDim> theta0{};
    for (std::size_t i = 0; i < DesignVector::kDim; ++i)
        theta0[i] = f.get_number(fmt::format("design.{}", names[i]), i < 4 ? 5000.0 : 0.0);
    rc.initial_design = DesignVector::from_array(theta0);
    rc.initial_design.validate();
    for (std::size_t i = 0; i < DesignVector::kDim; ++i)
        if (theta0[i] < rc.bounds.lo[i] || theta0[i] > rc.bounds.hi[i])
            throw InvalidParameter(fmt::format(
                "{}: design.{} = {} outside bounds [{}, {}]", path, names[i], theta0[i],
                rc.bounds.lo[i], rc.bounds.hi[i]));

    rc.optimizer.algorithm = f.get_string("optimizer.algorithm", "mspsa");
    if (rc.optimizer.algorithm != "mspsa" && rc.optimizer.algorithm != "pso")
        throw InvalidParameter(fmt::format("{}: optimizer.algorithm must be 'mspsa' or 'pso'",
                                           path));
    rc.optimizer.gains.a = f.get_number("optimizer.a", 0.25);
    rc.optimizer.gains.c = f.get_number("optimizer.c", 0.7);
    rc.optimizer.gains.A = f.get_number("optimizer.A", 500.0);
    rc.optimizer.gains.alpha = f.get_number("optimizer.alpha", 0.602);
    rc.optimizer.gains.gamma = f.get_number("optimizer.gamma", 0.101);
    rc.optimizer.gains.validate();
    rc.optimizer.max_iterations = f.get_integer("optimizer.max_iterations", 500);
    rc.optimizer.replicates_per_eval =
        static_cast<int>(f.get_integer("optimizer.replicates_per_eval", 1));
    if (rc.optimizer.replicates_per_eval < 1)
        throw InvalidParameter(fmt::format("{}: optimizer.replicates_per_eval must be >= 1",
                                           path));
    rc.optimizer.common_random_numbers =
        f.get_bool("optimizer.common_random_numbers", true);
    rc.optimizer.stall_tolerance = f.get_number("optimizer.stall_tolerance", 1e-6);
    rc.optimizer.stall_window = f.get_integer("optimizer.stall_window", 50);
    rc.optimizer.pso_c1 = f.get_number("optimizer.pso_c1", 2.3);
    rc.optimizer.pso_c2 = f.get_number("optimizer.pso_c2", 2.3);
    rc.optimizer.pso_w = f.get_number("optimizer.pso_w", 1.0);
    rc.optimizer.pso_population = static_cast<int>(f.get_integer("optimizer.pso_population", 20));
    rc.optimizer.pso_v0_lo = f.get_number("optimizer.pso_v0_lo", -1.0);
    rc.optimizer.pso_v0_hi = f.get_number("optimizer.pso_v0_hi", 1.0);

    rc.seed = static_cast<std::uint64_t>(f.get_integer("run.seed", 0));
    rc.scenarios = static_cast<int>(f.get_integer("run.scenarios", 1));
    if (rc.scenarios < 1)
        throw InvalidParameter(fmt::format("{}: run.scenarios must be >= 1", path));

    // the nested configs carry their own validity checks
    rc.mspsa_config().validate();
    rc.pso_config().validate();
    return rc;
}

}  // namespace microgrid
