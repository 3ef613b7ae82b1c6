#include "microgrid/loss.hpp"

#include <atomic>
#include <mutex>
#include <thread>
#include <vector>

namespace microgrid {

namespace {

// Index-keyed parallel map; output order is independent of scheduling.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
    jobs = std::max(1, std::min(jobs, n));
    if (jobs == 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& w : workers) w.join();
}

}  // namespace

std::shared_ptr<const LossContext> LossContext::from_run_config(const RunConfig& rc) {
    auto ctx = std::make_shared<LossContext>();
    ctx->tmy = load_tmy_csv(rc.tmy_path);
    ctx->stochastic = rc.stochastic;
    ctx->reliability = rc.reliability;
    ctx->specs = rc.specs;
    ctx->costs = rc.costs;
    ctx->replicates_per_eval = rc.optimizer.replicates_per_eval;
    return ctx;
}

std::vector<DispatchTrace> simulate_scenarios(const LossContext& ctx,
                                              const DesignVector& design, int n_scenarios,
                                              std::uint64_t seed, int jobs) {
    if (n_scenarios < 1) throw InvalidParameter("simulate_scenarios: n_scenarios must be >= 1");
    std::vector<DispatchTrace> traces(static_cast<std::size_t>(n_scenarios));
    std::exception_ptr error;
    std::mutex error_mutex;
    parallel_for(n_scenarios, jobs, [&](int i) {
        try {
            ScenarioBundle bundle =
                build_scenario(ctx.tmy, ctx.stochastic, ctx.reliability,
                               rng::derive_seed(seed, "scenario", static_cast<std::uint64_t>(i)));
            traces[static_cast<std::size_t>(i)] = simulate_year(design, bundle, ctx.specs);
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return traces;
}

CostBreakdown evaluate_design(const LossContext& ctx, const DesignVector& design,
                              int n_scenarios, std::uint64_t seed, int jobs) {
    auto traces = simulate_scenarios(ctx, design, n_scenarios, seed, jobs);
    return evaluate_loss(design, traces, ctx.specs, ctx.costs);
}

LossFn make_loss(std::shared_ptr<const LossContext> ctx) {
    return [ctx](const std::vector<double>& theta, std::uint64_t seed) {
        DesignVector design = DesignVector::from_vector(theta);
        return evaluate_design(*ctx, design, ctx->replicates_per_eval, seed).loss;
    };
}

}  // namespace microgrid
