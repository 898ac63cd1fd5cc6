#include <cmath>
#include <vector>

#include "doctest.h"

#include "test_helpers.hpp"
#include "ttalab/bounds.hpp"
#include "ttalab/errors.hpp"
#include "ttalab/recovery.hpp"

using namespace ttalab;
using testing::base_problem;
using testing::refresh_derived;

namespace {

streams::DistributionTrajectory constant_traj(double location, int T = 1) {
    streams::DistributionTrajectory t;
    t.locations.assign(static_cast<std::size_t>(T), location);
    return t;
}

// sigma = 0, zeta = 0, eta alpha = 0.1 deterministic oracle setup.
model::QuadraticInstance oracle_instance() {
    auto p = base_problem();
    p.alpha = 1.0;
    p.sigma = 0.0;
    p.zeta = 0.0;
    p = refresh_derived(p);
    return model::make_instance(p, 3.0, 0.0);
}

adapt::BaselineConfig oracle_config() {
    adapt::BaselineConfig cfg;
    cfg.eta = 0.1;
    cfg.eta_rule = adapt::EtaRule::manual;
    cfg.master_seed = 1;
    return cfg;
}

// Closed-form recovery time: first t with 4.5 * 0.81^{t-1} <= eps.
int closed_form_tau(double eps) {
    int t = 1;
    while (4.5 * std::pow(0.81, t - 1) > eps) ++t;
    return t;
}

} // namespace

TEST_SUITE("recovery") {

TEST_CASE("deterministic oracle: both estimators return the closed-form tau") {
    const auto inst = oracle_instance();
    const int expected = closed_form_tau(1.0);
    CHECK(expected == 9);

    const auto ut = recovery::estimate_recovery(inst, constant_traj(3.0), oracle_config(),
                                                100, 50, recovery::Estimator::uniform_tail);
    CHECK(ut.tau_hat == doctest::Approx(9.0));
    CHECK(ut.recovered);

    const auto mh_sustained = recovery::estimate_recovery(
        inst, constant_traj(3.0), oracle_config(), 100, 50,
        recovery::Estimator::mean_hitting_time, recovery::HittingRule::sustained_to_horizon);
    CHECK(mh_sustained.tau_hat == doctest::Approx(9.0));
    CHECK(mh_sustained.tau_stderr == doctest::Approx(0.0));

    const auto mh_first = recovery::estimate_recovery(
        inst, constant_traj(3.0), oracle_config(), 100, 50,
        recovery::Estimator::mean_hitting_time, recovery::HittingRule::first_crossing);
    CHECK(mh_first.tau_hat == doctest::Approx(9.0));

    // failure curve is the deterministic step function
    for (int t = 1; t <= 50; ++t)
        CHECK(ut.failure_curve[static_cast<std::size_t>(t - 1)] ==
              doctest::Approx(t < 9 ? 1.0 : 0.0));
}

TEST_CASE("already recovered when eps covers the initial excess") {
    const auto inst = oracle_instance();
    const auto est = recovery::estimate_recovery(inst, constant_traj(3.0), oracle_config(),
                                                 100, 30, recovery::Estimator::uniform_tail,
                                                 recovery::HittingRule::sustained_to_horizon,
                                                 4.5);
    CHECK(est.tau_hat == doctest::Approx(1.0));
}

TEST_CASE("no recovery within horizon is flagged, not fatal") {
    const auto inst = oracle_instance();
    auto cfg = oracle_config();
    cfg.eta = 0.0; // never moves, excess stays at 4.5
    const auto est = recovery::estimate_recovery(inst, constant_traj(3.0), cfg, 100, 20,
                                                 recovery::Estimator::uniform_tail);
    CHECK_FALSE(est.recovered);
    CHECK(est.tau_hat == doctest::Approx(21.0));
}

TEST_CASE("infeasible alignment regime warns but still runs") {
    auto p = base_problem();
    p.zeta = p.alpha * p.pl_mu * p.eps * p.delta; // twice the feasible ceiling
    p = refresh_derived(p);
    const auto inst = model::make_instance(p, 3.0, 0.0);
    adapt::BaselineConfig cfg;
    cfg.eta_rule = adapt::EtaRule::prescription;
    cfg.eta_c = 1.0;
    const auto est = recovery::estimate_recovery(inst, constant_traj(3.0), cfg, 30, 40,
                                                 recovery::Estimator::uniform_tail);
    CHECK_FALSE(est.feasible);
    CHECK(est.failure_curve.size() == 40);
}

TEST_CASE("input validation") {
    const auto inst = oracle_instance();
    CHECK_THROWS_AS((void)recovery::estimate_recovery(inst, constant_traj(3.0),
                                                      oracle_config(), 10, 50,
                                                      recovery::Estimator::uniform_tail),
                    BadParamsError);
    streams::DistributionTrajectory moving;
    moving.locations = {3.0, 3.1};
    CHECK_THROWS_AS((void)recovery::estimate_recovery(inst, moving, oracle_config(), 100,
                                                      50, recovery::Estimator::uniform_tail),
                    BadParamsError);
}

TEST_CASE("monotonicity of tau in eps and delta with shared seeds") {
    const auto p = base_problem();
    const auto inst = model::make_instance(p, 3.0, 0.0);
    adapt::BaselineConfig cfg;
    cfg.eta_rule = adapt::EtaRule::prescription;
    cfg.eta_c = 2.6;
    cfg.master_seed = 33;

    // non-increasing in eps (identical runs, pointwise fewer violations)
    double prev = 1e18, prev_mh = 1e18;
    for (double eps : {0.5, 1.0, 2.0, 4.0}) {
        const auto est = recovery::estimate_recovery(
            inst, constant_traj(3.0), cfg, 100, 400, recovery::Estimator::uniform_tail,
            recovery::HittingRule::sustained_to_horizon, eps);
        CHECK(est.tau_hat <= prev);
        prev = est.tau_hat;

        const auto mh = recovery::estimate_recovery(
            inst, constant_traj(3.0), cfg, 100, 400,
            recovery::Estimator::mean_hitting_time, recovery::HittingRule::first_crossing,
            eps);
        CHECK(mh.tau_hat <= prev_mh);
        prev_mh = mh.tau_hat;
    }

    // non-increasing in delta on the same failure curve
    double prev_delta_tau = 1e18;
    for (double delta : {0.05, 0.1, 0.2, 0.4}) {
        auto p2 = base_problem();
        p2.delta = delta;
        p2 = refresh_derived(p2);
        const auto inst2 = model::make_instance(p2, 3.0, 0.0);
        adapt::BaselineConfig cfg2 = cfg;
        cfg2.eta = adapt::prescribed_eta(p, 2.6); // same eta across delta grid
        cfg2.eta_rule = adapt::EtaRule::manual;
        const auto est = recovery::estimate_recovery(inst2, constant_traj(3.0), cfg2, 100,
                                                     400, recovery::Estimator::uniform_tail);
        CHECK(est.tau_hat <= prev_delta_tau);
        prev_delta_tau = est.tau_hat;
    }
}

TEST_CASE("uniform-tail equals per-run hitting time on deterministic instances") {
    const auto inst = oracle_instance();
    for (double eps : {0.25, 1.0, 2.0}) {
        const auto ut = recovery::estimate_recovery(
            inst, constant_traj(3.0), oracle_config(), 30, 80,
            recovery::Estimator::uniform_tail, recovery::HittingRule::sustained_to_horizon,
            eps);
        const auto mh = recovery::estimate_recovery(
            inst, constant_traj(3.0), oracle_config(), 30, 80,
            recovery::Estimator::mean_hitting_time,
            recovery::HittingRule::sustained_to_horizon, eps);
        CHECK(ut.tau_hat == doctest::Approx(mh.tau_hat));
        CHECK(ut.tau_hat == doctest::Approx(static_cast<double>(closed_form_tau(eps))));
    }
}

TEST_CASE("canonical cell stays between the bounds envelope") {
    const auto p = base_problem();
    const auto inst = model::make_instance(p, 3.0, 0.0);
    adapt::BaselineConfig cfg;
    cfg.eta_rule = adapt::EtaRule::prescription;
    cfg.eta_c = 2.6;
    cfg.master_seed = 427031;
    const auto est = recovery::estimate_recovery(inst, constant_traj(3.0), cfg, 100, 0,
                                                 recovery::Estimator::mean_hitting_time,
                                                 recovery::HittingRule::first_crossing);
    CHECK(est.recovered);
    CHECK(est.tau_hat >= bounds::lower_bound(p));
    CHECK(est.tau_hat <= 3.0 * bounds::upper_bound_table(p));
}

TEST_CASE("learnability: converged stationary start never violates") {
    auto p = base_problem();
    p.sigma = 0.0;
    p.zeta = 0.0;
    p = refresh_derived(p);
    const auto inst = model::make_instance(p, 0.0, 0.0); // theta_1 at the optimum
    adapt::BaselineConfig cfg;
    cfg.eta = 0.1;
    const auto est =
        recovery::estimate_learnability(inst, constant_traj(0.0, 100), cfg, 30, 1.0);
    CHECK(est.rho_hat == doctest::Approx(0.0));
    CHECK(est.mean_cumulative_excess == doctest::Approx(0.0));
}

TEST_CASE("learnability: deterministic single-shift violation count") {
    // tau = 9, T = 100: steps 1..8 violate, rho = 0.08 exactly.
    const auto inst = oracle_instance();
    const auto est = recovery::estimate_learnability(inst, constant_traj(3.0, 100),
                                                     oracle_config(), 30, 1.0);
    CHECK(est.rho_hat == doctest::Approx(0.08));
    CHECK(est.rho_stderr == doctest::Approx(0.0));
    for (int t = 0; t < 100; ++t)
        CHECK(est.per_t_violation[static_cast<std::size_t>(t)] ==
              doctest::Approx(t < 8 ? 1.0 : 0.0));
}

} // TEST_SUITE
