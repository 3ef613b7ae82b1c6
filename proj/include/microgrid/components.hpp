#pragma once

#include "microgrid/errors.hpp"

namespace microgrid {

struct PvSpec {
    double rated_kw = 1.0;    // P_STC
    double g_stc = 1.0;       // kW/m^2
    double temp_coeff = 0.0;  // fraction per degC, typically negative
    double t_stc = 25.0;      // degC

    void validate() const;
};

struct WindSpec {
    double rated_kw = 1.0;
    double v_cut_in = 3.0;    // m/s
    double v_rated = 12.0;    // m/s
    double v_cut_out = 25.0;  // m/s

    void validate() const;
};

struct BatterySpec {
    double capacity_kwh = 1.0;      // E_max
    double eta_carryover = 1.0;     // per hour
    double eta_charge = 0.9;
    double eta_discharge = 0.9;
    double soc_min = 0.1;
    double soc_max = 1.0;
    double soc_init = 0.5;
    double p_charge_max = 0.5;      // kW
    double p_discharge_max = 0.5;   // kW

    void validate() const;

    // Same cell chemistry at a different fleet size; power limits scale with
    // capacity.
    BatterySpec scaled_to(double capacity) const;
};

struct TurbineSpec {
    double rated_kw = 1.0;
    double emissions_factor = 0.0;  // kg CO2 per kWh
    double fuel_rate = 0.0;         // fuel units per kWh

    void validate() const;
};

// P_STC * (G/G_STC) * [1 + k_c*(T - T_STC)], floored at zero.
double pv_power(const PvSpec& spec, double irradiance, double temperature);

// Piecewise curve: 0 for v <= v_ci or v > v_co, linear ramp to rated on
// (v_ci, v_r], rated on (v_r, v_co].
double wind_power(const WindSpec& spec, double wind_speed);

// One-hour SOC update. Throws on simultaneous charge/discharge or if the
// result leaves [soc_min, soc_max] beyond tolerance; bounding the inputs is
// the dispatch caller's job.
double battery_step(const BatterySpec& spec, double soc_prev, double p_charge,
                    double p_discharge);

// Largest powers for which one battery_step stays inside the SOC bounds and
// the power limits. Exact inverses of battery_step against the binding bound.
double max_charge_power(const BatterySpec& spec, double soc_prev);
double max_discharge_power(const BatterySpec& spec, double soc_prev);

}  // namespace microgrid
