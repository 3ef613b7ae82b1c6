#include "microgrid/dispatch.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "microgrid/kernels.hpp"

namespace microgrid {

DesignVector DesignVector::from_vector(const std::vector<double>& v) {
    if (v.size() != kDim)
        throw InvalidParameter(fmt::format("DesignVector: expected {} coordinates, got {}",
                                           kDim, v.size()));
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

void DesignVector::validate() const {
    if (pv_kw < 0.0 || wt_kw < 0.0 || bss_kwh < 0.0 || mt_kw < 0.0)
        throw InvalidParameter("DesignVector: capacities must be >= 0");
    if (t_rp < 0.0 || t_rp > 1.0 || t_er < 0.0 || t_er > 1.0)
        throw InvalidParameter("DesignVector: thresholds must be in [0, 1]");
}

void ComponentSpecs::validate() const {
    pv.validate();
    wind.validate();
    battery.validate();
    turbine.validate();
}

DispatchTrace simulate_year(const DesignVector& design, const ScenarioBundle& scenario,
                            const ComponentSpecs& specs) {
    design.validate();
    specs.validate();
    const std::size_t n = scenario.hours();
    if (scenario.irradiance.size() != n || scenario.temperature.size() != n ||
        scenario.wind_speed.size() != n)
        throw SimulationError("simulate_year: scenario series lengths differ");
    for (const auto& mask : scenario.availability)
        if (mask.size() != n)
            throw SimulationError("simulate_year: availability mask length mismatch");

    DispatchTrace t;
    for (auto* v : {&t.pv_gen, &t.wt_gen, &t.mt_gen, &t.batt_charge, &t.batt_discharge,
                    &t.curtailed, &t.unserved, &t.soc})
        v->assign(n, 0.0);

    // Potential renewable generation, before availability masking.
    double pv_scale = specs.pv.rated_kw > 0.0 ? design.pv_kw / specs.pv.rated_kw : 0.0;
    double wt_scale = specs.wind.rated_kw > 0.0 ? design.wt_kw / specs.wind.rated_kw : 0.0;
    kernels::pv_series(specs.pv, pv_scale, scenario.irradiance, scenario.temperature,
                       t.pv_gen);
    kernels::wind_series(specs.wind, wt_scale, scenario.wind_speed, t.wt_gen);

    const BatterySpec batt = specs.battery.scaled_to(design.bss_kwh);
    const auto& avail_pv = scenario.availability[static_cast<int>(Component::Pv)];
    const auto& avail_wt = scenario.availability[static_cast<int>(Component::Wt)];
    const auto& avail_bss = scenario.availability[static_cast<int>(Component::Bss)];
    const auto& avail_mt = scenario.availability[static_cast<int>(Component::Mt)];

    double soc = batt.soc_init;
    for (std::size_t h = 0; h < n; ++h) {
        if (!avail_pv[h]) t.pv_gen[h] = 0.0;
        if (!avail_wt[h]) t.wt_gen[h] = 0.0;
        const double load = scenario.load[h];
        const double renew = t.pv_gen[h] + t.wt_gen[h];

        double served_renew = std::min(load, renew);
        double surplus = renew - served_renew;
        double deficit = load - served_renew;

        double charge = 0.0, discharge = 0.0;
        if (avail_bss[h] && batt.capacity_kwh > 0.0) {
            if (surplus > 0.0) {
                charge = std::min(surplus, max_charge_power(batt, soc));
            } else if (deficit > 0.0) {
                discharge = std::min(deficit, max_discharge_power(batt, soc));
                deficit -= discharge;
            }
        }
        t.curtailed[h] = surplus - charge;
        t.batt_charge[h] = charge;
        t.batt_discharge[h] = discharge;

        if (deficit > 0.0 && avail_mt[h]) {
            double mt = std::min(deficit, design.mt_kw);
            t.mt_gen[h] = mt;
            deficit -= mt;
            if (specs.allow_mt_charging && charge == 0.0 && discharge == 0.0 &&
                avail_bss[h] && batt.capacity_kwh > 0.0) {
                double spare = design.mt_kw - mt;
                double extra = std::min(spare, max_charge_power(batt, soc));
                if (extra > 0.0) {
                    charge = extra;
                    t.batt_charge[h] = charge;
                    t.mt_gen[h] += extra;
                }
            }
        }
        t.unserved[h] = std::max(0.0, deficit);

        if (charge > 0.0 || discharge > 0.0)
            soc = battery_step(batt, soc, charge, discharge);
        else
            soc = batt.eta_carryover * soc;  // idle decay, outage hours included
        t.soc[h] = soc;

        t.renewable_served_kwh += served_renew + discharge;
        t.total_load_kwh += load;
        t.unserved_kwh += t.unserved[h];
        t.mt_kwh += t.mt_gen[h];
        if (t.unserved[h] > kLostLoadEpsilonKwh) ++t.hll;
    }
    t.total_served_kwh = t.total_load_kwh - t.unserved_kwh;
    t.emissions_kg = t.mt_kwh * specs.turbine.emissions_factor;
    t.fuel_units = t.mt_kwh * specs.turbine.fuel_rate;
    return t;
}

double renewable_penetration(const DispatchTrace& trace) {
    if (trace.total_served_kwh <= 0.0) return 1.0;
    return trace.renewable_served_kwh / trace.total_served_kwh;
}

double emissions_reduction(const DispatchTrace& trace, const ComponentSpecs& specs) {
    double baseline = specs.turbine.emissions_factor * trace.total_load_kwh;
    if (baseline <= 0.0) return 1.0;
    return std::clamp(1.0 - trace.emissions_kg / baseline, 0.0, 1.0);
}

}  // namespace microgrid
