#include "ttalab/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "ttalab/bounds.hpp"
#include "ttalab/errors.hpp"
#include "ttalab/io.hpp"
#include "ttalab/stats.hpp"

namespace ttalab::recovery {

const char* to_string(Estimator e) {
    return e == Estimator::uniform_tail ? "uniform-tail" : "mean-hitting-time";
}

const char* to_string(HittingRule r) {
    return r == HittingRule::sustained_to_horizon ? "sustained" : "first-crossing";
}

Estimator estimator_from_string(const std::string& name) {
    if (name == "uniform-tail") return Estimator::uniform_tail;
    if (name == "mean-hitting-time") return Estimator::mean_hitting_time;
    throw BadParamsError("unknown estimator: " + name);
}

HittingRule hitting_rule_from_string(const std::string& name) {
    if (name == "sustained" || name == "sustained-to-horizon")
        return HittingRule::sustained_to_horizon;
    if (name == "first-crossing") return HittingRule::first_crossing;
    throw BadParamsError("unknown hitting rule: " + name);
}

int default_t_max(const model::ProblemInstance& p) {
    const double ub = bounds::upper_bound_table(p);
    const double scaled = 20.0 * std::ceil(ub);
    return std::max(32, static_cast<int>(std::min(scaled, 1.0e7)));
}

namespace {

streams::DistributionTrajectory constant_trajectory(double location, int T) {
    streams::DistributionTrajectory traj;
    traj.kind = streams::TrajectoryKind::piecewise_constant;
    traj.locations.assign(static_cast<std::size_t>(T), location);
    return traj;
}

// Per-run hitting time (1-based). Returns T_max + 1 when the rule is not
// satisfied within the horizon.
int hitting_time(const std::vector<double>& excess, double eps, HittingRule rule) {
    const int T = static_cast<int>(excess.size());
    if (rule == HittingRule::first_crossing) {
        for (int t = 0; t < T; ++t)
            if (excess[static_cast<std::size_t>(t)] <= eps) return t + 1;
        return T + 1;
    }
    // sustained_to_horizon: one past the last violating step.
    for (int t = T - 1; t >= 0; --t)
        if (excess[static_cast<std::size_t>(t)] > eps) return t + 2;
    return 1;
}

} // namespace

RecoveryEstimate estimate_recovery(const model::QuadraticInstance& inst,
                                   const streams::DistributionTrajectory& traj,
                                   const adapt::BaselineConfig& cfg, int n_runs,
                                   int t_max, Estimator estimator, HittingRule rule,
                                   double eps_override) {
    if (n_runs < 30) throw BadParamsError("estimate_recovery: n_runs must be >= 30");
    if (traj.locations.empty()) throw BadParamsError("estimate_recovery: empty trajectory");
    for (double m : traj.locations)
        if (m != traj.locations.front())
            throw BadParamsError(
                "estimate_recovery: trajectory must be stationary after t = 1");

    const model::ProblemInstance& p = inst.problem;
    const double eps = eps_override > 0.0 ? eps_override : p.eps;
    const int T = t_max > 0 ? t_max : default_t_max(p);

    RecoveryEstimate est;
    est.estimator = estimator;
    est.hitting_rule = rule;
    est.n_runs = n_runs;
    est.horizon_T_max = T;
    // Alignment feasibility of the target; violations are reported, not fatal.
    est.feasible = p.zeta / (p.alpha * p.pl_mu) <= eps * p.delta / 2.0;

    const streams::DistributionTrajectory run_traj =
        constant_trajectory(traj.locations.front(), T);
    adapt::BaselineConfig run_cfg = cfg;
    run_cfg.horizon_T = T;

    std::vector<int> fail_counts(static_cast<std::size_t>(T), 0);
    stats::RunningStats hits;
    bool all_runs_recovered = true;

    for (int run = 0; run < n_runs; ++run) {
        auto proc = adapt::make_process(p, stats::derive_seed(cfg.master_seed,
                                                              static_cast<std::uint64_t>(run)));
        const adapt::TrajectoryRecord rec =
            adapt::run_baseline(inst, run_traj, proc, run_cfg);
        for (int t = 0; t < T; ++t)
            if (rec.excess[static_cast<std::size_t>(t)] > eps)
                ++fail_counts[static_cast<std::size_t>(t)];
        const int h = hitting_time(rec.excess, eps, rule);
        if (h > T) all_runs_recovered = false;
        hits.add(static_cast<double>(h));
    }

    est.failure_curve.resize(static_cast<std::size_t>(T));
    est.stderr_curve.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        const double ph = static_cast<double>(fail_counts[static_cast<std::size_t>(t)]) /
                          static_cast<double>(n_runs);
        est.failure_curve[static_cast<std::size_t>(t)] = ph;
        est.stderr_curve[static_cast<std::size_t>(t)] =
            stats::binomial_stderr(ph, static_cast<std::size_t>(n_runs));
    }

    if (estimator == Estimator::uniform_tail) {
        // Suffix max of the failure curve; tau is the first time from
        // which the tail stays within the budget. The tail sup is taken
        // over the simulated horizon only.
        double suffix_max = 0.0;
        int tau = T + 1;
        for (int t = T - 1; t >= 0; --t) {
            suffix_max = std::max(suffix_max, est.failure_curve[static_cast<std::size_t>(t)]);
            if (suffix_max <= p.delta) tau = t + 1;
        }
        est.recovered = tau <= T;
        est.tau_hat = static_cast<double>(tau);
    } else {
        est.recovered = all_runs_recovered;
        est.tau_hat = hits.mean();
        est.tau_stderr = hits.stderr_mean();
    }
    return est;
}

LearnabilityEstimate estimate_learnability(const model::QuadraticInstance& inst,
                                           const streams::DistributionTrajectory& traj,
                                           const adapt::BaselineConfig& cfg, int n_runs,
                                           double eps) {
    if (n_runs < 30) throw BadParamsError("estimate_learnability: n_runs must be >= 30");
    if (!(eps > 0.0)) throw BadParamsError("estimate_learnability: eps must be > 0");
    const int T = cfg.horizon_T > 0 ? cfg.horizon_T : traj.horizon();

    std::vector<int> violations(static_cast<std::size_t>(T), 0);
    stats::RunningStats per_run_rho;
    stats::RunningStats per_run_cum;
    int boundary_hits = 0;

    for (int run = 0; run < n_runs; ++run) {
        auto proc = adapt::make_process(
            inst.problem, stats::derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run)));
        const adapt::TrajectoryRecord rec = adapt::run_baseline(inst, traj, proc, cfg);
        boundary_hits += rec.boundary_hits;
        int run_violations = 0;
        double run_cum = 0.0;
        for (int t = 0; t < T; ++t) {
            const double e = rec.excess[static_cast<std::size_t>(t)];
            run_cum += e;
            if (e > eps) {
                ++violations[static_cast<std::size_t>(t)];
                ++run_violations;
            }
        }
        per_run_rho.add(static_cast<double>(run_violations) / static_cast<double>(T));
        per_run_cum.add(run_cum);
    }

    LearnabilityEstimate est;
    est.n_runs = n_runs;
    est.per_t_violation.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
        est.per_t_violation[static_cast<std::size_t>(t)] =
            static_cast<double>(violations[static_cast<std::size_t>(t)]) /
            static_cast<double>(n_runs);
    est.rho_hat = per_run_rho.mean();
    est.rho_stderr = per_run_rho.stderr_mean();
    est.mean_cumulative_excess = per_run_cum.mean();
    est.cum_excess_stderr = per_run_cum.stderr_mean();
    est.total_boundary_hits = boundary_hits;
    return est;
}

std::string failure_curve_to_csv(const RecoveryEstimate& est) {
    std::string out = "t,p_fail,stderr\n";
    for (std::size_t i = 0; i < est.failure_curve.size(); ++i) {
        out += io::format_int(static_cast<std::int64_t>(i + 1));
        out += ',';
        out += io::format_double(est.failure_curve[i]);
        out += ',';
        out += io::format_double(est.stderr_curve[i]);
        out += '\n';
    }
    return out;
}

} // namespace ttalab::recovery
