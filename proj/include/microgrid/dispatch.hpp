#pragma once

#include <vector>

#include "microgrid/components.hpp"
#include "microgrid/scenario.hpp"

namespace microgrid {

// Decision vector: four fleet capacities plus the two incentive thresholds.
// The optimizer holds fractional working values for the capacities; they are
// integers after finalization.
struct DesignVector {
    double pv_kw = 0.0;
    double wt_kw = 0.0;
    double bss_kwh = 0.0;
    double mt_kw = 0.0;
    double t_rp = 0.0;  // renewable-penetration threshold, fraction
    double t_er = 0.0;  // emissions-reduction threshold, fraction

    static constexpr std::size_t kDim = 6;
    std::array<double, kDim> to_array() const {
        return {pv_kw, wt_kw, bss_kwh, mt_kw, t_rp, t_er};
    }
    static DesignVector from_array(const std::array<double, kDim>& a) {
        return {a[0], a[1], a[2], a[3], a[4], a[5]};
    }
    static DesignVector from_vector(const std::vector<double>& v);

    void validate() const;
};

struct ComponentSpecs {
    PvSpec pv;
    WindSpec wind;
    BatterySpec battery;
    TurbineSpec turbine;
    bool allow_mt_charging = false;  // MT never charges the battery by default

    void validate() const;
};

struct DispatchTrace {
    // per hour, kWh (1-hour steps, so kW == kWh)
    std::vector<double> pv_gen;
    std::vector<double> wt_gen;
    std::vector<double> mt_gen;
    std::vector<double> batt_charge;
    std::vector<double> batt_discharge;
    std::vector<double> curtailed;
    std::vector<double> unserved;
    std::vector<double> soc;

    double renewable_served_kwh = 0.0;
    double total_served_kwh = 0.0;
    double total_load_kwh = 0.0;
    double mt_kwh = 0.0;
    double unserved_kwh = 0.0;
    long hll = 0;  // hours with unserved load
    double emissions_kg = 0.0;
    double fuel_units = 0.0;
};

// Unserved energy above this counts the hour toward HLL.
inline constexpr double kLostLoadEpsilonKwh = 1e-9;

// Hour-by-hour greedy merit order: renewables -> battery -> microturbine ->
// lost load; surplus -> battery -> curtail.
DispatchTrace simulate_year(const DesignVector& design, const ScenarioBundle& scenario,
                            const ComponentSpecs& specs);

// renewable_served / total_served; 1.0 when nothing was served.
double renewable_penetration(const DispatchTrace& trace);

// 1 - actual / baseline emissions, baseline = all load served by the MT.
// Clamped to [0, 1]; 1.0 when total load is zero.
double emissions_reduction(const DispatchTrace& trace, const ComponentSpecs& specs);

}  // namespace microgrid
