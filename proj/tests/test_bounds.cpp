#include <cmath>
#include <vector>

#include "doctest.h"

#include "test_helpers.hpp"
#include "ttalab/bench.hpp"
#include "ttalab/bounds.hpp"
#include "ttalab/errors.hpp"

using namespace ttalab;
using testing::base_problem;
using testing::refresh_derived;

namespace {

model::ProblemInstance with_alpha(double alpha) {
    auto p = base_problem();
    p.alpha = alpha;
    return refresh_derived(p);
}

model::ProblemInstance with_batch(int B) {
    auto p = base_problem();
    p.batch_B = B;
    return refresh_derived(p);
}

} // namespace

TEST_SUITE("bounds") {

TEST_CASE("lower bound reproduces the reference rows") {
    // alpha grid at B = 16
    CHECK(std::abs(bounds::lower_bound(with_alpha(0.05)) - 59.0) <= 0.1);
    CHECK(std::abs(bounds::lower_bound(with_alpha(0.10)) - 15.6) <= 0.1);
    CHECK(std::abs(bounds::lower_bound(with_alpha(0.20)) - 4.1) <= 0.1);
    CHECK(std::abs(bounds::lower_bound(with_alpha(0.50)) - 0.7) <= 0.1);

    // B grid at alpha = 0.2
    CHECK(std::abs(bounds::lower_bound(with_batch(1)) - 65.2) <= 0.1);
    CHECK(std::abs(bounds::lower_bound(with_batch(4)) - 16.3) <= 0.1);
    CHECK(std::abs(bounds::lower_bound(with_batch(16)) - 4.1) <= 0.1);
    CHECK(std::abs(bounds::lower_bound(with_batch(64)) - 1.0) <= 0.1);
}

TEST_CASE("lower bound closed form and zeta = 0 simplification") {
    auto p = base_problem();
    // independent arithmetic for the general form
    const double root = std::sqrt(p.zeta + 2.0 * p.alpha * p.eps) + std::sqrt(p.zeta);
    const double expected = 9.0 * 0.64 / (16.0 * 0.2 * root * root);
    CHECK(bounds::lower_bound(p) == doctest::Approx(expected).epsilon(1e-12));

    // zeta = 0 reduces to sigma^2 C_phi (1-2delta)^2 / (2 B alpha^2 eps)
    p.zeta = 0.0;
    p = refresh_derived(p);
    CHECK(bounds::lower_bound(p) ==
          doctest::Approx(9.0 * 0.64 / (2.0 * 16.0 * 0.04 * 1.0)).epsilon(1e-12));

    p.delta = 0.6;
    CHECK_THROWS_AS((void)bounds::lower_bound(p), OutOfRangeError);
}

TEST_CASE("table-form upper bound reproduces the reference rows") {
    CHECK(std::abs(bounds::upper_bound_table(with_alpha(0.05)) - 311.9) <= 0.1);
    CHECK(std::abs(bounds::upper_bound_table(with_alpha(0.10)) - 78.0) <= 0.1);
    CHECK(std::abs(bounds::upper_bound_table(with_alpha(0.20)) - 19.5) <= 0.1);
    CHECK(std::abs(bounds::upper_bound_table(with_alpha(0.50)) - 3.1) <= 0.1);

    CHECK(std::abs(bounds::upper_bound_table(with_batch(1)) - 311.9) <= 0.1);
    CHECK(std::abs(bounds::upper_bound_table(with_batch(4)) - 78.0) <= 0.1);
    CHECK(std::abs(bounds::upper_bound_table(with_batch(16)) - 19.5) <= 0.1);
    CHECK(std::abs(bounds::upper_bound_table(with_batch(64)) - 4.9) <= 0.1);
}

TEST_CASE("upper bound vanishes with the shift resolution") {
    auto p = base_problem();
    p.zeta = 0.0;
    p.delta_W = 1e-12;
    p = refresh_derived(p);
    CHECK(bounds::upper_bound_table(p) >= 0.0);
    CHECK(bounds::upper_bound_table(p) <= 1e-9);
}

TEST_CASE("explicit-delta upper bound hand value and monotonicity") {
    const auto p = base_problem();
    // 1 + (L sigma^2 / (2 c B alpha^2 mu^2 eps delta)) * log(4 * 4.5 / (eps delta))
    const double expected = 1.0 + (9.0 / 0.128) * std::log(180.0);
    CHECK(bounds::upper_bound_explicit(p, 1.0, 4.5) ==
          doctest::Approx(expected).epsilon(1e-12));

    // decreasing in delta (both the 1/delta and log(1/delta) factors shrink)
    double prev = 1e300;
    for (double delta : {0.05, 0.1, 0.2, 0.3, 0.45}) {
        auto q = base_problem();
        q.delta = delta;
        q = refresh_derived(q);
        const double v = bounds::upper_bound_explicit(q, 1.0, 4.5);
        CHECK(v < prev);
        prev = v;
    }

    // default initial excess is 2 Lambda delta_W + eps
    const double lam = bounds::bridging_lambda(p);
    CHECK(bounds::upper_bound_explicit(p, 1.0, 0.0) ==
          doctest::Approx(bounds::upper_bound_explicit(p, 1.0, 2.0 * lam * p.delta_W + p.eps)));

    auto p0 = base_problem();
    p0.sigma = 0.0;
    p0 = refresh_derived(p0);
    CHECK_THROWS_AS((void)bounds::upper_bound_explicit(p0, 1.0, 4.5), OutOfRangeError);
}

TEST_CASE("learnability transfer") {
    const auto preset = bench::learnability_preset();
    const auto p = bench::make_problem(preset.params);
    REQUIRE(bounds::feasibility_report(p).bridge_ok);

    CHECK(bounds::learnability_transfer(p, 0, 9.0, 100) == doctest::Approx(0.19));
    // T -> infinity leaves only delta
    CHECK(bounds::learnability_transfer(p, 3, 9.0, 2000000000) ==
          doctest::Approx(p.delta).epsilon(1e-6));

    // eps at the bridge boundary is rejected
    auto tight = p;
    tight.eps = bounds::bridging_lambda(p) * p.delta_W;
    CHECK_THROWS_AS((void)bounds::learnability_transfer(tight, 0, 9.0, 100),
                    BridgeInfeasibleError);
    CHECK_THROWS_AS((void)bounds::eps_prime(tight), BridgeInfeasibleError);

    // canonical preset with delta_W = 3 is far outside the bridge
    CHECK_THROWS_AS((void)bounds::eps_prime(base_problem()), BridgeInfeasibleError);
}

TEST_CASE("regret bound") {
    CHECK(bounds::regret_bound(1.0, 10.0, 0.05, 1000) == doctest::Approx(1500.0));
    CHECK(bounds::regret_bound(1.0, 10.0, 0.0, 1000) == doctest::Approx(1000.0));
    CHECK(bounds::regret_bound(0.0, 10.0, 0.0, 1000) == doctest::Approx(0.0));
    CHECK_THROWS_AS((void)bounds::regret_bound(1.0, -1.0, 0.0, 10), OutOfRangeError);
    CHECK_THROWS_AS((void)bounds::regret_bound(1.0, 1.0, 1.5, 10), OutOfRangeError);
}

TEST_CASE("feasibility report") {
    const auto p = base_problem();
    const auto f = bounds::feasibility_report(p);
    CHECK(f.alignment_ok);
    CHECK(f.alignment_lhs == doctest::Approx(0.005));
    CHECK(f.alignment_rhs == doctest::Approx(0.05));
    CHECK(f.shift_budget_ok); // 3 >= 2.9734
    CHECK_FALSE(f.bridge_ok); // Lambda delta_W ~ 33.5 >> 1
    CHECK_FALSE(f.canonical_regime_ok);

    // zeta at alpha mu eps delta makes the alignment infeasible
    auto bad = base_problem();
    bad.zeta = bad.alpha * bad.pl_mu * bad.eps * bad.delta;
    bad = refresh_derived(bad);
    CHECK_FALSE(bounds::feasibility_report(bad).alignment_ok);

    // shift budget boundary is inclusive
    auto edge = base_problem();
    edge.delta_W = 2.0 * std::sqrt(edge.zeta / edge.alpha + 2.0 * edge.eps) +
                   2.0 * std::sqrt(edge.zeta / edge.alpha);
    edge = refresh_derived(edge);
    CHECK(bounds::feasibility_report(edge).shift_budget_ok);
}

TEST_CASE("order matching: UB/LB ratio is constant in alpha and B when zeta = 0") {
    double ref_ratio = -1.0;
    for (double alpha : {0.03, 0.1, 0.4, 0.9}) {
        for (int B : {1, 8, 128}) {
            auto p = base_problem();
            p.zeta = 0.0;
            p.alpha = alpha;
            p.batch_B = B;
            p = refresh_derived(p);
            const double ratio = bounds::upper_bound_table(p) / bounds::lower_bound(p);
            if (ref_ratio < 0.0) ref_ratio = ratio;
            CHECK(ratio == doctest::Approx(ref_ratio).epsilon(1e-9));
        }
    }
}

TEST_CASE("zeta floor: lower bound converges as eps -> 0") {
    auto p = base_problem();
    const double limit =
        9.0 * 0.64 / (4.0 * 16.0 * p.alpha * p.zeta); // sigma^2 C (1-2d)^2 / (4 B alpha zeta)
    for (double eps : {1e-6, 1e-8, 1e-10}) {
        p.eps = eps;
        CHECK(bounds::lower_bound(p) == doctest::Approx(limit).epsilon(1e-2));
    }
    p.eps = 1e-12;
    CHECK(bounds::lower_bound(p) == doctest::Approx(limit).epsilon(1e-4));
}

TEST_CASE("bound report aggregates flags and values") {
    // bridge-infeasible instance reports NaN transfer values
    const auto canonical = bench::canonical_preset();
    const auto r = bounds::evaluate_bounds(bench::make_problem(canonical.params), 2, 1000, 1.0);
    CHECK(std::isnan(r.eps_prime));
    CHECK(std::isnan(r.rho_bound));
    CHECK(r.lb == doctest::Approx(4.07).epsilon(0.01));

    // bridge-feasible instance prices tau at eps'
    const auto learn = bench::learnability_preset();
    const auto p = bench::make_problem(learn.params);
    const auto r2 = bounds::evaluate_bounds(p, 2, 1000, 1.0);
    CHECK(r2.eps_prime == doctest::Approx(p.eps - r2.lambda_bridge * p.delta_W));
    CHECK(r2.rho_bound > p.delta);
    CHECK(r2.regret > 0.0);
}

} // TEST_SUITE
