#pragma once

#include <memory>

#include "microgrid/config.hpp"
#include "microgrid/dispatch.hpp"
#include "microgrid/economics.hpp"
#include "microgrid/optimize.hpp"

namespace microgrid {

// Immutable evaluation context shared by all loss evaluations of a run.
struct LossContext {
    TypicalYear tmy;
    StochasticParams stochastic;
    std::array<ReliabilityParams, kNumComponents> reliability;
    ComponentSpecs specs;
    CostParams costs;
    int replicates_per_eval = 1;

    static std::shared_ptr<const LossContext> from_run_config(const RunConfig& rc);
};

// Full cost breakdown for a design, averaged over n_scenarios Monte Carlo
// scenarios with seeds derived from `seed`. `jobs` bounds the worker threads;
// results are independent of the thread count.
CostBreakdown evaluate_design(const LossContext& ctx, const DesignVector& design,
                              int n_scenarios, std::uint64_t seed, int jobs = 1);

// One simulated trace per scenario seed, for export.
std::vector<DispatchTrace> simulate_scenarios(const LossContext& ctx,
                                              const DesignVector& design, int n_scenarios,
                                              std::uint64_t seed, int jobs = 1);

// The optimizer-facing penalized loss: theta -> build replicates_per_eval
// scenarios from the evaluation seed, simulate, cost.
LossFn make_loss(std::shared_ptr<const LossContext> ctx);

}  // namespace microgrid
