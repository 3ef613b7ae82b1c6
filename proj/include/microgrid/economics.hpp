#pragma once

#include <array>
#include <string>
#include <vector>

#include "microgrid/dispatch.hpp"

namespace microgrid {

struct CostParams {
    // indexed by Component: USD per kW (kWh for the battery)
    std::array<double, kNumComponents> capex_unit{};
    // USD per kW (kWh) per year
    std::array<double, kNumComponents> opex_unit{};
    double carbon_tax = 0.0;    // USD per kg CO2
    double fuel_price = 0.0;    // USD per fuel unit
    double voll = 0.0;          // USD per kWh unserved
    double discount_rate = 0.08;
    long lifetime_years = 20;
    double h_max = 0.0;         // allowed lost-load hours per year
    double penalty_r = 1e4;     // USD per hr^2

    // Annual operational terms are multiplied by lifetime before CRF
    // annualization ("lifetime-sum" convention). Set false for the literal
    // single-year sum.
    bool lifetime_sum = true;

    // The subsidy gate reads "applies when achieved rate >= threshold". The
    // source model's displayed inequality for the emissions subsidy is
    // reversed; set true to reproduce that literal behavior.
    bool er_gate_literal = false;

    void validate() const;
};

struct CostBreakdown {
    double capex_total = 0.0;
    double opex_total = 0.0;        // lifetime-summed unless lifetime_sum = false
    double carbon_tax_cost = 0.0;
    double fuel_cost = 0.0;
    double voll_cost = 0.0;
    double subsidy_rp = 0.0;
    double subsidy_er = 0.0;        // monetized
    double crf = 0.0;
    double npc = 0.0;
    double hll = 0.0;               // mean across traces
    double penalty = 0.0;
    double loss = 0.0;              // npc + penalty
    double r_rp = 0.0;              // realized renewable penetration, mean
    double r_er = 0.0;              // realized emissions reduction, mean
    double unserved_kwh = 0.0;      // mean

    std::string to_json() const;
};

// i(1+i)^n / ((1+i)^n - 1)
double crf(double discount_rate, long lifetime_years);

// capex_total * t_rp when the realized penetration meets the threshold.
double incentive_rp(const DesignVector& design, double capex_total, double realized_rp);

// baseline_tax * t_er when the realized reduction meets the threshold
// (or the literal reversed gate when requested).
double incentive_er(double baseline_tax, double t_er, double realized_er,
                    bool gate_literal = false);

// Penalized loss for a design, averaging operational quantities over the
// given Monte Carlo traces.
CostBreakdown evaluate_loss(const DesignVector& design,
                            const std::vector<DispatchTrace>& traces,
                            const ComponentSpecs& specs, const CostParams& params);

}  // namespace microgrid
