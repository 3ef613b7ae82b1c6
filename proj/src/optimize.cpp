#include "microgrid/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <fmt/format.h>

namespace microgrid {

void GainSchedule::validate() const {
    if (a < 0.0 || c <= 0.0)
        throw InvalidParameter("GainSchedule: require a >= 0 and c > 0");
    if (A < 0.0) throw InvalidParameter("GainSchedule: A must be >= 0");
    if (alpha < 0.0 || gamma < 0.0)
        throw InvalidParameter("GainSchedule: alpha and gamma must be >= 0");
    if (!(0.0 < gamma && gamma < alpha && alpha <= 1.0))
        std::fprintf(stderr,
                     "warning: gain exponents (alpha=%g, gamma=%g) outside the standard "
                     "validity range 0 < gamma < alpha <= 1\n",
                     alpha, gamma);
}

void Bounds::validate() const {
    if (lo.empty() || lo.size() != hi.size())
        throw InvalidParameter("Bounds: empty or mismatched lo/hi");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i]))
            throw InvalidParameter(
                fmt::format("Bounds: lo[{}]={} > hi[{}]={}", i, lo[i], i, hi[i]));
}

namespace {

void check_common(const Bounds& bounds, const std::vector<bool>& mask,
                  const std::vector<double>& theta0) {
    bounds.validate();
    if (mask.size() != bounds.dim())
        throw InvalidParameter("discrete_mask size does not match bounds");
    if (theta0.size() != bounds.dim())
        throw InvalidParameter("theta0 size does not match bounds");
}

}  // namespace

void MspsaConfig::validate() const {
    gains.validate();
    check_common(bounds, discrete_mask, theta0);
    if (max_iterations < 0) throw InvalidParameter("MspsaConfig: max_iterations must be >= 0");
    if (stall_window < 1) throw InvalidParameter("MspsaConfig: stall_window must be >= 1");
    if (stall_tolerance < 0.0)
        throw InvalidParameter("MspsaConfig: stall_tolerance must be >= 0");
}

void PsoConfig::validate() const {
    check_common(bounds, discrete_mask, theta0);
    if (population < 2) throw InvalidParameter("PsoConfig: population must be >= 2");
    if (c1 < 0.0 || c2 < 0.0 || w < 0.0)
        throw InvalidParameter("PsoConfig: c1, c2, w must be >= 0");
    if (v0_lo > v0_hi) throw InvalidParameter("PsoConfig: v0 range is inverted");
    if (max_evaluations < 0)
        throw InvalidParameter("PsoConfig: max_evaluations must be >= 0");
}

std::vector<double> perturbation(std::size_t dimension, rng::Stream& stream) {
    if (dimension < 1) throw InvalidParameter("perturbation: dimension must be >= 1");
    std::vector<double> delta(dimension);
    for (auto& d : delta) d = stream.sign();
    return delta;
}

std::vector<double> project(std::vector<double> theta, const Bounds& bounds) {
    bounds.validate();
    if (theta.size() != bounds.dim())
        throw InvalidParameter("project: dimension mismatch");
    for (std::size_t i = 0; i < theta.size(); ++i)
        theta[i] = std::clamp(theta[i], bounds.lo[i], bounds.hi[i]);
    return theta;
}

std::vector<double> round_discrete(std::vector<double> theta,
                                   const std::vector<bool>& discrete_mask) {
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (discrete_mask[i]) theta[i] = std::floor(theta[i] + 0.5);
    return theta;
}

std::vector<double> eval_point(const std::vector<double>& theta,
                               const std::vector<bool>& discrete_mask) {
    std::vector<double> out = theta;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (discrete_mask[i]) out[i] = std::floor(out[i]) + 0.5;
    return out;
}

std::vector<double> gradient_estimate(const std::vector<double>& theta,
                                      const std::vector<double>& delta,
                                      const std::vector<double>& c_vector,
                                      const std::vector<bool>& discrete_mask,
                                      const Bounds& bounds, const LossFn& loss_fn,
                                      std::uint64_t seed_plus, std::uint64_t seed_minus,
                                      double& y_plus, double& y_minus) {
    const std::size_t p = theta.size();
    if (delta.size() != p || c_vector.size() != p || discrete_mask.size() != p)
        throw InvalidParameter("gradient_estimate: dimension mismatch");
    for (double c : c_vector)
        if (!(c > 0.0)) throw InvalidParameter("gradient_estimate: c_vector must be > 0");

    std::vector<double> base = eval_point(theta, discrete_mask);
    std::vector<double> plus(p), minus(p);
    for (std::size_t i = 0; i < p; ++i) {
        plus[i] = base[i] + c_vector[i] * delta[i];
        minus[i] = base[i] - c_vector[i] * delta[i];
    }
    y_plus = loss_fn(project(std::move(plus), bounds), seed_plus);
    y_minus = loss_fn(project(std::move(minus), bounds), seed_minus);

    std::vector<double> grad(p);
    for (std::size_t i = 0; i < p; ++i)
        grad[i] = (y_plus - y_minus) / (2.0 * c_vector[i] * delta[i]);
    return grad;
}

OptResult run_mspsa(const MspsaConfig& config, const LossFn& loss_fn) {
    config.validate();
    const std::size_t p = config.bounds.dim();
    rng::Stream delta_stream(rng::derive_seed(config.seed, "delta"));

    std::vector<double> theta = project(config.theta0, config.bounds);
    OptResult result;
    result.trace.reserve(static_cast<std::size_t>(config.max_iterations));
    result.best_so_far.reserve(static_cast<std::size_t>(2 * config.max_iterations));

    double best = std::numeric_limits<double>::infinity();
    std::vector<double> best_at_iter;  // for the stall rule
    best_at_iter.reserve(static_cast<std::size_t>(config.max_iterations));

    auto record_eval = [&](double y) {
        best = std::min(best, y);
        result.best_so_far.push_back(best);
        ++result.evals_used;
    };

    for (long k = 0; k < config.max_iterations; ++k) {
        const double ak = config.gains.a_k(k);
        const double ck = config.gains.c_k(k);

        std::vector<double> delta = perturbation(p, delta_stream);
        std::vector<double> c_vec(p);
        for (std::size_t i = 0; i < p; ++i)
            c_vec[i] = config.discrete_mask[i] ? 0.5 : ck;

        std::uint64_t seed_plus, seed_minus;
        if (config.common_random_numbers) {
            seed_plus = seed_minus =
                rng::derive_seed(config.seed, "eval", static_cast<std::uint64_t>(k));
        } else {
            seed_plus = rng::derive_seed(config.seed, "eval+", static_cast<std::uint64_t>(k));
            seed_minus = rng::derive_seed(config.seed, "eval-", static_cast<std::uint64_t>(k));
        }

        double y_plus = 0.0, y_minus = 0.0;
        std::vector<double> grad;
        try {
            grad = gradient_estimate(theta, delta, c_vec, config.discrete_mask,
                                     config.bounds, loss_fn, seed_plus, seed_minus, y_plus,
                                     y_minus);
        } catch (const std::exception& e) {
            throw SimulationError(fmt::format(
                "mspsa: loss evaluation failed at iteration {} (theta[0]={}): {}", k,
                theta.empty() ? 0.0 : theta[0], e.what()));
        }
        record_eval(y_plus);
        record_eval(y_minus);

        IterateRecord rec;
        rec.k = k;
        rec.theta = theta;
        rec.loss_plus = y_plus;
        rec.loss_minus = y_minus;
        rec.gradient = grad;
        result.trace.push_back(std::move(rec));

        for (std::size_t i = 0; i < p; ++i) theta[i] -= ak * grad[i];
        theta = project(std::move(theta), config.bounds);

        best_at_iter.push_back(best);
        if (k + 1 >= config.stall_window) {
            double then = best_at_iter[static_cast<std::size_t>(k + 1 - config.stall_window)];
            double improvement = then - best;
            double scale = std::max(1.0, std::abs(then));
            if (improvement < config.stall_tolerance * scale) break;
        }
    }

    result.final_theta = round_discrete(project(std::move(theta), config.bounds),
                                        config.discrete_mask);
    result.final_eval_seed = rng::derive_seed(config.seed, "final");
    result.final_loss = loss_fn(result.final_theta, result.final_eval_seed);
    return result;
}

OptResult run_pso(const PsoConfig& config, const LossFn& loss_fn) {
    config.validate();
    const std::size_t p = config.bounds.dim();
    const int m = config.population;
    rng::Stream stream(rng::derive_seed(config.seed, "pso"));

    std::vector<std::vector<double>> x(m, project(config.theta0, config.bounds));
    std::vector<std::vector<double>> v(m, std::vector<double>(p));
    for (auto& vi : v)
        for (auto& c : vi) c = stream.uniform(config.v0_lo, config.v0_hi);

    OptResult result;
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t eval_counter = 0;

    auto evaluate = [&](const std::vector<double>& pos) {
        auto point = round_discrete(pos, config.discrete_mask);
        std::uint64_t s = rng::derive_seed(config.seed, "eval", eval_counter++);
        double y;
        try {
            y = loss_fn(point, s);
        } catch (const std::exception& e) {
            throw SimulationError(
                fmt::format("pso: loss evaluation failed at evaluation {}: {}",
                            eval_counter - 1, e.what()));
        }
        best = std::min(best, y);
        result.best_so_far.push_back(best);
        ++result.evals_used;
        return y;
    };

    std::vector<std::vector<double>> pbest = x;
    std::vector<double> pbest_loss(m, std::numeric_limits<double>::infinity());
    std::vector<double> gbest = x[0];
    double gbest_loss = std::numeric_limits<double>::infinity();

    for (int i = 0; i < m && result.evals_used < config.max_evaluations; ++i) {
        double y = evaluate(x[i]);
        pbest_loss[i] = y;
        if (y < gbest_loss) {
            gbest_loss = y;
            gbest = x[i];
        }
    }

    while (result.evals_used < config.max_evaluations) {
        for (int i = 0; i < m && result.evals_used < config.max_evaluations; ++i) {
            for (std::size_t d = 0; d < p; ++d) {
                double r1 = stream.uniform();
                double r2 = stream.uniform();
                v[i][d] = config.w * v[i][d] + config.c1 * r1 * (pbest[i][d] - x[i][d]) +
                          config.c2 * r2 * (gbest[d] - x[i][d]);
                x[i][d] += v[i][d];
            }
            x[i] = project(std::move(x[i]), config.bounds);
            double y = evaluate(x[i]);
            if (y < pbest_loss[i]) {
                pbest_loss[i] = y;
                pbest[i] = x[i];
            }
            if (y < gbest_loss) {
                gbest_loss = y;
                gbest = x[i];
            }
        }
    }

    result.final_theta = round_discrete(gbest, config.discrete_mask);
    result.final_eval_seed = rng::derive_seed(config.seed, "final");
    result.final_loss = loss_fn(result.final_theta, result.final_eval_seed);
    return result;
}

namespace {

ConvergenceCurve summarize(const std::string& name,
                           const std::vector<std::vector<double>>& curves,
                           const std::vector<double>& initial_losses,
                           const std::vector<double>& final_losses,
                           std::vector<std::vector<double>> final_thetas, long budget,
                           long stride) {
    ConvergenceCurve out;
    out.optimizer = name;
    out.final_thetas = std::move(final_thetas);
    const int n = static_cast<int>(curves.size());

    double init_mean = 0.0;
    for (double v : initial_losses) init_mean += v;
    out.initial_loss = init_mean / n;
    double final_mean = 0.0;
    for (double v : final_losses) final_mean += v;
    out.final_loss_mean = final_mean / n;

    for (long e = 0; e <= budget; e += stride) {
        double mean = 0.0, sq = 0.0;
        for (int r = 0; r < n; ++r) {
            // best-so-far including the shared initial evaluation; runs that
            // stalled early hold their last value
            double val = initial_losses[static_cast<std::size_t>(r)];
            const auto& c = curves[static_cast<std::size_t>(r)];
            if (e > 0 && !c.empty()) {
                std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(e), c.size());
                val = std::min(val, c[idx - 1]);
            }
            mean += val;
            sq += val * val;
        }
        mean /= n;
        double var = std::max(0.0, sq / n - mean * mean);
        out.evals.push_back(e);
        out.loss_mean.push_back(mean);
        out.loss_std.push_back(std::sqrt(var));
    }
    return out;
}

}  // namespace

std::vector<ConvergenceCurve> compare_replicated(const MspsaConfig& mspsa_config,
                                                 const PsoConfig& pso_config,
                                                 const LossFn& loss_fn, int n_replicates,
                                                 long stride) {
    if (n_replicates < 1)
        throw InvalidParameter("compare_replicated: n_replicates must be >= 1");
    if (stride < 1) throw InvalidParameter("compare_replicated: stride must be >= 1");

    std::vector<std::vector<double>> mspsa_curves, pso_curves;
    std::vector<std::vector<double>> mspsa_finals, pso_finals;
    std::vector<double> initial_losses, mspsa_final_losses, pso_final_losses;

    for (int r = 0; r < n_replicates; ++r) {
        MspsaConfig mc = mspsa_config;
        mc.seed = rng::derive_seed(mspsa_config.seed, "replicate",
                                   static_cast<std::uint64_t>(r));
        PsoConfig pc = pso_config;
        pc.seed = rng::derive_seed(pso_config.seed, "replicate",
                                   static_cast<std::uint64_t>(r));

        // shared starting point: both curves open at the loss of rounded theta0
        auto start = round_discrete(project(mspsa_config.theta0, mspsa_config.bounds),
                                    mspsa_config.discrete_mask);
        double l0 = loss_fn(start, rng::derive_seed(mc.seed, "init"));
        initial_losses.push_back(l0);

        OptResult mr = run_mspsa(mc, loss_fn);
        OptResult pr = run_pso(pc, loss_fn);
        mspsa_curves.push_back(std::move(mr.best_so_far));
        pso_curves.push_back(std::move(pr.best_so_far));
        mspsa_final_losses.push_back(mr.final_loss);
        pso_final_losses.push_back(pr.final_loss);
        mspsa_finals.push_back(std::move(mr.final_theta));
        pso_finals.push_back(std::move(pr.final_theta));
    }

    const long mspsa_budget = 2 * mspsa_config.max_iterations;
    std::vector<ConvergenceCurve> out;
    out.push_back(summarize("mspsa", mspsa_curves, initial_losses, mspsa_final_losses,
                            std::move(mspsa_finals), mspsa_budget, stride));
    out.push_back(summarize("pso", pso_curves, initial_losses, pso_final_losses,
                            std::move(pso_finals), pso_config.max_evaluations, stride));
    return out;
}

}  // namespace microgrid
