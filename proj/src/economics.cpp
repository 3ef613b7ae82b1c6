#include "microgrid/economics.hpp"

#include <cmath>

#include <fmt/format.h>

namespace microgrid {

void CostParams::validate() const {
    for (double c : capex_unit)
        if (c < 0.0) throw InvalidParameter("CostParams: capex_unit must be >= 0");
    for (double c : opex_unit)
        if (c < 0.0) throw InvalidParameter("CostParams: opex_unit must be >= 0");
    if (carbon_tax < 0.0 || fuel_price < 0.0 || voll < 0.0)
        throw InvalidParameter("CostParams: monetary rates must be >= 0");
    if (discount_rate <= 0.0 || discount_rate >= 1.0)
        throw InvalidParameter("CostParams: discount_rate must be in (0, 1)");
    if (lifetime_years < 1) throw InvalidParameter("CostParams: lifetime_years must be >= 1");
    if (h_max < 0.0) throw InvalidParameter("CostParams: h_max must be >= 0");
    if (penalty_r <= 0.0) throw InvalidParameter("CostParams: penalty_r must be > 0");
}

double crf(double discount_rate, long lifetime_years) {
    double i = discount_rate;
    double n = static_cast<double>(lifetime_years);
    // expm1/log1p form is stable for tiny i (annuity limit 1/n)
    double growth = std::expm1(n * std::log1p(i));  // (1+i)^n - 1
    return i * (growth + 1.0) / growth;
}

double incentive_rp(const DesignVector& design, double capex_total, double realized_rp) {
    if (design.t_rp < 0.0 || design.t_rp > 1.0)
        throw InvalidParameter("incentive_rp: t_rp must be in [0, 1]");
    return realized_rp >= design.t_rp ? capex_total * design.t_rp : 0.0;
}

double incentive_er(double baseline_tax, double t_er, double realized_er, bool gate_literal) {
    if (t_er < 0.0 || t_er > 1.0)
        throw InvalidParameter("incentive_er: t_er must be in [0, 1]");
    bool applies = gate_literal ? (t_er >= realized_er) : (realized_er >= t_er);
    return applies ? baseline_tax * t_er : 0.0;
}

CostBreakdown evaluate_loss(const DesignVector& design,
                            const std::vector<DispatchTrace>& traces,
                            const ComponentSpecs& specs, const CostParams& params) {
    design.validate();
    params.validate();
    if (traces.empty()) throw InvalidParameter("evaluate_loss: no dispatch traces");

    // mean operational quantities across Monte Carlo replicates
    double mean_mt_kwh = 0.0, mean_unserved = 0.0, mean_hll = 0.0;
    double mean_emissions = 0.0, mean_fuel = 0.0, mean_load = 0.0;
    double mean_rp = 0.0, mean_er = 0.0;
    for (const auto& tr : traces) {
        mean_mt_kwh += tr.mt_kwh;
        mean_unserved += tr.unserved_kwh;
        mean_hll += static_cast<double>(tr.hll);
        mean_emissions += tr.emissions_kg;
        mean_fuel += tr.fuel_units;
        mean_load += tr.total_load_kwh;
        mean_rp += renewable_penetration(tr);
        mean_er += emissions_reduction(tr, specs);
    }
    const double inv = 1.0 / static_cast<double>(traces.size());
    mean_mt_kwh *= inv;
    mean_unserved *= inv;
    mean_hll *= inv;
    mean_emissions *= inv;
    mean_fuel *= inv;
    mean_load *= inv;
    mean_rp *= inv;
    mean_er *= inv;

    CostBreakdown b;
    b.r_rp = mean_rp;
    b.r_er = mean_er;
    b.hll = mean_hll;
    b.unserved_kwh = mean_unserved;

    const std::array<double, kNumComponents> capacities{design.pv_kw, design.wt_kw,
                                                        design.bss_kwh, design.mt_kw};
    double opex_annual = 0.0;
    for (std::size_t c = 0; c < kNumComponents; ++c) {
        b.capex_total += params.capex_unit[c] * capacities[c];
        opex_annual += params.opex_unit[c] * capacities[c];
    }

    const double years =
        params.lifetime_sum ? static_cast<double>(params.lifetime_years) : 1.0;
    b.opex_total = opex_annual * years;
    b.carbon_tax_cost = mean_emissions * params.carbon_tax * years;
    b.fuel_cost = mean_fuel * params.fuel_price * years;
    b.voll_cost = mean_unserved * params.voll * years;

    // baseline: every kWh of annual load served by the MT
    double baseline_tax =
        specs.turbine.emissions_factor * mean_load * params.carbon_tax * years;
    b.subsidy_rp = incentive_rp(design, b.capex_total, mean_rp);
    b.subsidy_er = incentive_er(baseline_tax, design.t_er, mean_er, params.er_gate_literal);

    b.crf = crf(params.discount_rate, params.lifetime_years);
    b.npc = (b.capex_total + b.opex_total + b.carbon_tax_cost + b.fuel_cost + b.voll_cost -
             b.subsidy_rp - b.subsidy_er) *
            b.crf;

    double overshoot = std::max(0.0, mean_hll - params.h_max);
    b.penalty = params.penalty_r * overshoot * overshoot;
    b.loss = b.npc + b.penalty;
    return b;
}

std::string CostBreakdown::to_json() const {
    return fmt::format(
        "{{\"capex_total\":{:.17g},\"opex_total\":{:.17g},\"carbon_tax_cost\":{:.17g},"
        "\"fuel_cost\":{:.17g},\"voll_cost\":{:.17g},\"subsidy_rp\":{:.17g},"
        "\"subsidy_er\":{:.17g},\"crf\":{:.17g},\"npc\":{:.17g},\"hll\":{:.17g},"
        "\"penalty\":{:.17g},\"loss\":{:.17g},\"r_rp\":{:.17g},\"r_er\":{:.17g},"
        "\"unserved_kwh\":{:.17g}}}",
        capex_total, opex_total, carbon_tax_cost, fuel_cost, voll_cost, subsidy_rp,
        subsidy_er, crf, npc, hll, penalty, loss, r_rp, r_er, unserved_kwh);
}

}  // namespace microgrid
