#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ttalab/adapt.hpp"
#include "ttalab/model.hpp"
#include "ttalab/streams.hpp"

namespace ttalab::recovery {

enum class Estimator { uniform_tail, mean_hitting_time };
enum class HittingRule { sustained_to_horizon, first_crossing };

const char* to_string(Estimator e);
const char* to_string(HittingRule r);
Estimator estimator_from_string(const std::string& name);
HittingRule hitting_rule_from_string(const std::string& name);

/// Recovery-time estimate over repeated seeded baseline runs.
///
/// Times are 1-based: failure_curve[t-1] is the empirical P(E_t > eps).
/// uniform_tail returns the smallest t whose suffix-max failure
/// probability is <= delta; mean_hitting_time averages per-run hitting
/// times (rule-dependent). `recovered == false` flags that no valid time
/// exists within the simulated horizon (tau_hat is then T_max + 1).
struct RecoveryEstimate {
    double tau_hat = 0.0;
    Estimator estimator = Estimator::uniform_tail;
    HittingRule hitting_rule = HittingRule::sustained_to_horizon;
    int n_runs = 0;
    int horizon_T_max = 0;
    bool recovered = false;
    bool feasible = true; ///< zeta/(alpha mu) <= eps delta / 2 (warn-only)
    double tau_stderr = 0.0; ///< SE of the mean (mean_hitting_time only)
    std::vector<double> failure_curve;
    std::vector<double> stderr_curve;
};

/// Horizon default: 20x the closed-form recovery upper bound, floored at 32.
int default_t_max(const model::ProblemInstance& p);

/// Monte Carlo recovery-complexity estimate on a single-shift trajectory
/// (one location change at t = 1, stationary thereafter; `traj` must be
/// constant). Overrides of eps allow pricing tau at a different target
/// than the instance's (pass <= 0 to use p.eps). Runs are seeded from
/// cfg.master_seed and are independent of scheduling order.
RecoveryEstimate estimate_recovery(const model::QuadraticInstance& inst,
                                   const streams::DistributionTrajectory& traj,
                                   const adapt::BaselineConfig& cfg, int n_runs,
                                   int t_max, Estimator estimator,
                                   HittingRule rule = HittingRule::sustained_to_horizon,
                                   double eps_override = 0.0);

/// Stream-level violation-rate estimate.
struct LearnabilityEstimate {
    double rho_hat = 0.0;
    double rho_stderr = 0.0; ///< SE over per-run violation rates
    std::vector<double> per_t_violation;
    double mean_cumulative_excess = 0.0; ///< mean over runs of sum_t E_t
    double cum_excess_stderr = 0.0;
    int total_boundary_hits = 0; ///< projection count summed over runs
    int n_runs = 0;
};

/// Empirical (eps, rho)-learnability over an arbitrary admissible
/// trajectory: rho_hat = (1/T) sum_t Phat(E_t > eps).
LearnabilityEstimate estimate_learnability(const model::QuadraticInstance& inst,
                                           const streams::DistributionTrajectory& traj,
                                           const adapt::BaselineConfig& cfg, int n_runs,
                                           double eps);

/// CSV columns "t,p_fail,stderr".
std::string failure_curve_to_csv(const RecoveryEstimate& est);

} // namespace ttalab::recovery
