#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "microgrid/config.hpp"
#include "microgrid/loss.hpp"
#include "microgrid/optimize.hpp"

namespace fs = std::filesystem;
using namespace microgrid;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir = "out";
    int jobs = 0;  // 0 = available parallelism
    int scenarios = -1;
    int replicates = 10;
    bool no_incentives = false;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_scenarios, bool with_replicates) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--jobs", args.jobs, "worker threads (0 = hardware parallelism)");
    cmd->add_flag("--no-incentives", args.no_incentives,
                  "clamp both incentive-threshold bounds to zero");
    cmd->add_option("--seed", args.seed, "master seed (overrides MICROGRID_SEED and config)")
        ->each([&args](const std::string&) { args.seed_set = true; });
    if (with_scenarios)
        cmd->add_option("--scenarios", args.scenarios, "Monte Carlo scenario count");
    if (with_replicates)
        cmd->add_option("--replicates", args.replicates, "independent optimizer replicates");
}

RunConfig load_run_config(CommonArgs& args) {
    RunConfig rc = RunConfig::load(args.config_path);
    if (args.seed_set) {
        rc.seed = args.seed;
    } else if (const char* env = std::getenv("MICROGRID_SEED")) {
        rc.seed = std::strtoull(env, nullptr, 10);
    }
    if (args.scenarios > 0) rc.scenarios = args.scenarios;
    if (args.no_incentives) rc.clamp_incentives_to_zero();
    if (args.jobs <= 0)
        args.jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    fs::create_directories(args.out_dir);
    return rc;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimulationError(fmt::format("cannot write '{}'", path.string()));
    out << content;
}

std::string trace_csv(const DispatchTrace& t) {
    std::string s =
        "hour,pv_gen_kwh,wt_gen_kwh,mt_gen_kwh,batt_charge_kwh,batt_discharge_kwh,"
        "curtailed_kwh,unserved_kwh,soc\n";
    for (std::size_t h = 0; h < t.soc.size(); ++h)
        s += fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                         h, t.pv_gen[h], t.wt_gen[h], t.mt_gen[h], t.batt_charge[h],
                         t.batt_discharge[h], t.curtailed[h], t.unserved[h], t.soc[h]);
    return s;
}

std::string design_json(const DesignVector& d) {
    return fmt::format(
        "{{\"pv_kw\":{:.17g},\"wt_kw\":{:.17g},\"bss_kwh\":{:.17g},\"mt_kw\":{:.17g},"
        "\"t_rp\":{:.17g},\"t_er\":{:.17g}}}",
        d.pv_kw, d.wt_kw, d.bss_kwh, d.mt_kw, d.t_rp, d.t_er);
}

int cmd_simulate(CommonArgs& args) {
    RunConfig rc = load_run_config(args);
    auto ctx = LossContext::from_run_config(rc);
    int n = args.scenarios > 0 ? args.scenarios : rc.scenarios;
    auto traces = simulate_scenarios(*ctx, rc.initial_design, n, rc.seed, args.jobs);

    double rp = 0, er = 0, hll = 0, unserved = 0;
    for (std::size_t i = 0; i < traces.size(); ++i) {
        write_file(fs::path(args.out_dir) / fmt::format("trace_{:03d}.csv", i),
                   trace_csv(traces[i]));
        rp += renewable_penetration(traces[i]);
        er += emissions_reduction(traces[i], ctx->specs);
        hll += static_cast<double>(traces[i].hll);
        unserved += traces[i].unserved_kwh;
    }
    double inv = 1.0 / static_cast<double>(traces.size());
    std::string summary = fmt::format(
        "{{\"design\":{},\"scenarios\":{},\"mean_r_rp\":{:.17g},\"mean_r_er\":{:.17g},"
        "\"mean_hll\":{:.17g},\"mean_unserved_kwh\":{:.17g}}}",
        design_json(rc.initial_design), n, rp * inv, er * inv, hll * inv, unserved * inv);
    write_file(fs::path(args.out_dir) / "summary.json", summary + "\n");
    fmt::print("{}\n", summary);
    return 0;
}

int cmd_evaluate(CommonArgs& args) {
    RunConfig rc = load_run_config(args);
    auto ctx = LossContext::from_run_config(rc);
    int n = args.scenarios > 0 ? args.scenarios : rc.scenarios;
    CostBreakdown b = evaluate_design(*ctx, rc.initial_design, n, rc.seed, args.jobs);
    std::string record = fmt::format("{{\"design\":{},\"scenarios\":{},\"breakdown\":{}}}",
                                     design_json(rc.initial_design), n, b.to_json());
    write_file(fs::path(args.out_dir) / "breakdown.json", record + "\n");
    fmt::print("{}\n", record);
    return 0;
}

std::string iterates_csv(const std::vector<IterateRecord>& trace) {
    std::string s =
        "k,pv_kw,wt_kw,bss_kwh,mt_kw,t_rp,t_er,loss_plus,loss_minus,"
        "g_pv,g_wt,g_bss,g_mt,g_trp,g_ter\n";
    for (const auto& r : trace) {
        s += fmt::format("{}", r.k);
        for (double v : r.theta) s += fmt::format(",{:.17g}", v);
        s += fmt::format(",{:.17g},{:.17g}", r.loss_plus, r.loss_minus);
        for (double v : r.gradient) s += fmt::format(",{:.17g}", v);
        s += "\n";
    }
    return s;
}

int cmd_optimize(CommonArgs& args) {
    RunConfig rc = load_run_config(args);
    auto ctx = LossContext::from_run_config(rc);
    LossFn loss = make_loss(ctx);

    auto start = round_discrete(project(rc.mspsa_config().theta0, rc.bounds), rc.discrete_mask);
    double initial_loss = loss(start, rng::derive_seed(rc.seed, "init"));

    OptResult res;
    if (rc.optimizer.algorithm == "pso")
        res = run_pso(rc.pso_config(), loss);
    else
        res = run_mspsa(rc.mspsa_config(), loss);

    if (!res.trace.empty())
        write_file(fs::path(args.out_dir) / "iterates.csv", iterates_csv(res.trace));
    std::string curve = "evals,best_loss\n";
    for (std::size_t i = 0; i < res.best_so_far.size(); ++i)
        curve += fmt::format("{},{:.17g}\n", i + 1, res.best_so_far[i]);
    write_file(fs::path(args.out_dir) / "convergence.csv", curve);

    DesignVector final_design = DesignVector::from_vector(res.final_theta);
    int n = args.scenarios > 0 ? args.scenarios : rc.scenarios;
    CostBreakdown b =
        evaluate_design(*ctx, final_design, n, rng::derive_seed(rc.seed, "final-eval"), args.jobs);

    double reduction =
        initial_loss > 0.0 ? 100.0 * (initial_loss - res.final_loss) / initial_loss : 0.0;
    std::string record = fmt::format(
        "{{\"algorithm\":\"{}\",\"design\":{},\"evals_used\":{},\"initial_loss\":{:.17g},"
        "\"final_loss\":{:.17g},\"loss_reduction_pct\":{:.17g},\"evaluation\":{}}}",
        rc.optimizer.algorithm, design_json(final_design), res.evals_used, initial_loss,
        res.final_loss, reduction, b.to_json());
    write_file(fs::path(args.out_dir) / "result.json", record + "\n");
    fmt::print("{}\n", record);
    return 0;
}

int cmd_compare(CommonArgs& args) {
    RunConfig rc = load_run_config(args);
    auto ctx = LossContext::from_run_config(rc);
    LossFn loss = make_loss(ctx);

    auto curves = compare_replicated(rc.mspsa_config(), rc.pso_config(), loss,
                                     args.replicates);

    std::string csv = "evals,loss_mean,loss_std,optimizer\n";
    for (const auto& c : curves)
        for (std::size_t i = 0; i < c.evals.size(); ++i)
            csv += fmt::format("{},{:.17g},{:.17g},{}\n", c.evals[i], c.loss_mean[i],
                               c.loss_std[i], c.optimizer);
    write_file(fs::path(args.out_dir) / "curves.csv", csv);

    std::string summary = "{";
    for (const auto& c : curves) {
        double reduction = c.initial_loss > 0.0
                               ? 100.0 * (c.initial_loss - c.final_loss_mean) / c.initial_loss
                               : 0.0;
        summary += fmt::format(
            "\"{}\":{{\"initial_loss\":{:.17g},\"final_loss_mean\":{:.17g},"
            "\"loss_reduction_pct\":{:.17g}}},",
            c.optimizer, c.initial_loss, c.final_loss_mean, reduction);
        fmt::print("{}: initial {:.6g}, final mean {:.6g}, reduction {:.2f}%\n", c.optimizer,
                   c.initial_loss, c.final_loss_mean, reduction);
    }
    summary += fmt::format("\"replicates\":{},\"budget_unit\":\"function evaluations\"}}",
                           args.replicates);
    write_file(fs::path(args.out_dir) / "summary.json", summary + "\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hybrid-microgrid sizing and policy-incentive optimization"};
    app.require_subcommand(1);

    CommonArgs args;
    auto* simulate = app.add_subcommand("simulate", "simulate dispatch for the configured design");
    add_common(simulate, args, true, false);
    auto* evaluate = app.add_subcommand("evaluate", "Monte Carlo cost evaluation of the design");
    add_common(evaluate, args, true, false);
    auto* optimize = app.add_subcommand("optimize", "run the configured optimizer");
    add_common(optimize, args, true, false);
    auto* compare = app.add_subcommand("compare", "replicated MSPSA vs PSO comparison");
    add_common(compare, args, true, true);

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return cmd_simulate(args);
        if (evaluate->parsed()) return cmd_evaluate(args);
        if (optimize->parsed()) return cmd_optimize(args);
        if (compare->parsed()) return cmd_compare(args);
    } catch (const InvalidParameter& e) {
        fmt::print(stderr, "config error: {}\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 2;
    }
    return 0;
}
