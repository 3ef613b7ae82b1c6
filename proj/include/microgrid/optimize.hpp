#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "microgrid/errors.hpp"
#include "microgrid/rng.hpp"

namespace microgrid {

// Penalized loss measurement at a design point. The seed selects the
// stochastic scenario(s); deterministic losses ignore it.
using LossFn = std::function<double(const std::vector<double>& theta, std::uint64_t seed)>;

struct GainSchedule {
    double a = 0.25;
    double c = 0.7;
    double A = 500.0;
    double alpha = 0.602;
    double gamma = 0.101;

    void validate() const;  // warns (stderr) outside the standard validity range
    double a_k(long k) const { return a / std::pow(static_cast<double>(k) + 1.0 + A, alpha); }
    double c_k(long k) const { return c / std::pow(static_cast<double>(k) + 1.0, gamma); }
};

struct Bounds {
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const { return lo.size(); }
    void validate() const;
};

struct MspsaConfig {
    GainSchedule gains;
    Bounds bounds;
    std::vector<bool> discrete_mask;  // true = integer-valued coordinate
    std::vector<double> theta0;
    long max_iterations = 500;
    std::uint64_t seed = 0;
    bool common_random_numbers = true;
    double stall_tolerance = 1e-6;  // relative best-so-far improvement
    long stall_window = 50;         // iterations

    void validate() const;
};

struct PsoConfig {
    double c1 = 2.3;
    double c2 = 2.3;
    double w = 1.0;
    int population = 20;
    double v0_lo = -1.0;
    double v0_hi = 1.0;
    Bounds bounds;
    std::vector<bool> discrete_mask;
    std::vector<double> theta0;
    long max_evaluations = 1000;
    std::uint64_t seed = 0;

    void validate() const;
};

struct IterateRecord {
    long k = 0;
    std::vector<double> theta;  // working iterate before the update
    double loss_plus = 0.0;
    double loss_minus = 0.0;
    std::vector<double> gradient;
};

struct OptResult {
    std::vector<double> final_theta;  // discrete coordinates rounded half-up
    double final_loss = 0.0;          // re-evaluation of final_theta
    std::uint64_t final_eval_seed = 0;
    long evals_used = 0;
    std::vector<double> best_so_far;  // best measured loss after each evaluation
    std::vector<IterateRecord> trace; // MSPSA only
};

// Independent Bernoulli +-1 coordinates.
std::vector<double> perturbation(std::size_t dimension, rng::Stream& stream);

// Per-coordinate clip to the box (nearest Euclidean point).
std::vector<double> project(std::vector<double> theta, const Bounds& bounds);

// Half-up rounding of the masked coordinates; continuous ones pass through.
std::vector<double> round_discrete(std::vector<double> theta,
                                   const std::vector<bool>& discrete_mask);

// Measurement point: discrete coordinates snap to the integer-lattice
// midpoint floor(x)+0.5 so that +-0.5 perturbations land on adjacent
// integers; continuous coordinates pass through.
std::vector<double> eval_point(const std::vector<double>& theta,
                               const std::vector<bool>& discrete_mask);

// Simultaneous-perturbation gradient estimate around theta. c_vector holds
// the per-coordinate perturbation magnitudes (already 0.5 for discrete
// coordinates). Perturbed points are projected into bounds before
// evaluation. Returns the estimate; y_plus/y_minus report the measurements.
std::vector<double> gradient_estimate(const std::vector<double>& theta,
                                      const std::vector<double>& delta,
                                      const std::vector<double>& c_vector,
                                      const std::vector<bool>& discrete_mask,
                                      const Bounds& bounds, const LossFn& loss_fn,
                                      std::uint64_t seed_plus, std::uint64_t seed_minus,
                                      double& y_plus, double& y_minus);

OptResult run_mspsa(const MspsaConfig& config, const LossFn& loss_fn);

OptResult run_pso(const PsoConfig& config, const LossFn& loss_fn);

struct ConvergenceCurve {
    std::string optimizer;
    std::vector<long> evals;
    std::vector<double> loss_mean;
    std::vector<double> loss_std;
    double initial_loss = 0.0;    // loss at rounded theta0, replicate-averaged
    double final_loss_mean = 0.0; // re-evaluated final designs, replicate-averaged
    std::vector<std::vector<double>> final_thetas;  // one per replicate
};

// Runs both optimizers n_replicates times with seeds derived from their
// config seeds; best-so-far curves are sampled every `stride` evaluations
// and averaged. Budget parity is by function evaluations.
std::vector<ConvergenceCurve> compare_replicated(const MspsaConfig& mspsa_config,
                                                 const PsoConfig& pso_config,
                                                 const LossFn& loss_fn, int n_replicates,
                                                 long stride = 10);

}  // namespace microgrid
