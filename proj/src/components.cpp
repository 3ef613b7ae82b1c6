#include "microgrid/components.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace microgrid {

namespace {
constexpr double kSocTolerance = 1e-9;
}

void PvSpec::validate() const {
    if (rated_kw < 0.0) throw InvalidParameter("PvSpec: rated_kw must be >= 0");
    if (g_stc <= 0.0) throw InvalidParameter("PvSpec: g_stc must be > 0");
}

void WindSpec::validate() const {
    if (rated_kw < 0.0) throw InvalidParameter("WindSpec: rated_kw must be >= 0");
    if (v_cut_in < 0.0 || !(v_cut_in < v_rated) || !(v_rated <= v_cut_out))
        throw InvalidParameter("WindSpec: require 0 <= v_cut_in < v_rated <= v_cut_out");
}

void BatterySpec::validate() const {
    if (capacity_kwh < 0.0) throw InvalidParameter("BatterySpec: capacity_kwh must be >= 0");
    if (eta_charge <= 0.0 || eta_charge > 1.0)
        throw InvalidParameter("BatterySpec: eta_charge must be in (0, 1]");
    if (eta_discharge <= 0.0 || eta_discharge > 1.0)
        throw InvalidParameter("BatterySpec: eta_discharge must be in (0, 1]");
    if (eta_carryover <= 0.0 || eta_carryover > 1.0)
        throw InvalidParameter("BatterySpec: eta_carryover must be in (0, 1]");
    if (!(0.0 <= soc_min && soc_min <= soc_init && soc_init <= soc_max && soc_max <= 1.0))
        throw InvalidParameter("BatterySpec: require 0 <= soc_min <= soc_init <= soc_max <= 1");
    if (p_charge_max < 0.0 || p_discharge_max < 0.0)
        throw InvalidParameter("BatterySpec: power limits must be >= 0");
}

BatterySpec BatterySpec::scaled_to(double capacity) const {
    BatterySpec s = *this;
    double ratio = capacity_kwh > 0.0 ? capacity / capacity_kwh : 0.0;
    s.capacity_kwh = capacity;
    s.p_charge_max = p_charge_max * ratio;
    s.p_discharge_max = p_discharge_max * ratio;
    return s;
}

void TurbineSpec::validate() const {
    if (rated_kw < 0.0 || emissions_factor < 0.0 || fuel_rate < 0.0)
        throw InvalidParameter("TurbineSpec: fields must be >= 0");
}

double pv_power(const PvSpec& spec, double irradiance, double temperature) {
    spec.validate();
    if (irradiance < 0.0) throw InvalidParameter("pv_power: irradiance must be >= 0");
    double p = spec.rated_kw * (irradiance / spec.g_stc) *
               (1.0 + spec.temp_coeff * (temperature - spec.t_stc));
    return std::max(0.0, p);
}

double wind_power(const WindSpec& spec, double wind_speed) {
    spec.validate();
    if (wind_speed < 0.0) throw InvalidParameter("wind_power: wind_speed must be >= 0");
    if (wind_speed <= spec.v_cut_in || wind_speed > spec.v_cut_out) return 0.0;
    if (wind_speed <= spec.v_rated)
        return spec.rated_kw * (wind_speed - spec.v_cut_in) / (spec.v_rated - spec.v_cut_in);
    return spec.rated_kw;
}

double battery_step(const BatterySpec& spec, double soc_prev, double p_charge,
                    double p_discharge) {
    spec.validate();
    if (p_charge > 0.0 && p_discharge > 0.0)
        throw InvalidParameter("battery_step: simultaneous charge and discharge");
    if (p_charge < 0.0 || p_discharge < 0.0)
        throw InvalidParameter("battery_step: powers must be >= 0");
    // soc_prev may sit below soc_min after carry-over decay during an outage;
    // only values outside the physical [0, soc_max] range are rejected.
    if (soc_prev < -kSocTolerance || soc_prev > spec.soc_max + kSocTolerance)
        throw InvalidParameter(fmt::format("battery_step: soc_prev {} outside [0, {}]",
                                           soc_prev, spec.soc_max));

    const double dt = 1.0;  // 1-hour step
    double soc = spec.eta_carryover * soc_prev;
    if (p_charge > 0.0) soc += p_charge * dt * spec.eta_charge / spec.capacity_kwh;
    if (p_discharge > 0.0) soc -= p_discharge * dt / (spec.capacity_kwh * spec.eta_discharge);

    if (p_discharge > 0.0 && soc < spec.soc_min - kSocTolerance)
        throw SimulationError(fmt::format("battery_step: discharge left SOC {} below {}",
                                          soc, spec.soc_min));
    if (soc > spec.soc_max + kSocTolerance)
        throw SimulationError(fmt::format("battery_step: resulting SOC {} above {}", soc,
                                          spec.soc_max));
    return std::min(soc, spec.soc_max);
}

double max_charge_power(const BatterySpec& spec, double soc_prev) {
    spec.validate();
    if (spec.capacity_kwh <= 0.0) return 0.0;
    double headroom = spec.soc_max - spec.eta_carryover * soc_prev;
    if (headroom <= 0.0) return 0.0;
    double p = headroom * spec.capacity_kwh / spec.eta_charge;
    return std::min(p, spec.p_charge_max);
}

double max_discharge_power(const BatterySpec& spec, double soc_prev) {
    spec.validate();
    if (spec.capacity_kwh <= 0.0) return 0.0;
    double depth = spec.eta_carryover * soc_prev - spec.soc_min;
    if (depth <= 0.0) return 0.0;
    double p = depth * spec.capacity_kwh * spec.eta_discharge;
    return std::min(p, spec.p_discharge_max);
}

}  // namespace microgrid
