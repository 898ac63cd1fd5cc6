#include <cmath>
#include <vector>

#include "doctest.h"

#include "ttalab/errors.hpp"
#include "ttalab/mixing.hpp"
#include "ttalab/stats.hpp"

using namespace ttalab;

TEST_SUITE("mixing") {

TEST_CASE("variance inflation factor") {
    CHECK(mixing::c_phi(0.0) == doctest::Approx(1.0));
    CHECK(mixing::c_phi(0.25) == doctest::Approx(5.0)); // 1 + 4*0.5/0.5
    CHECK(mixing::c_phi(0.998) > 1000.0);               // pole at sqrt(rho) -> 1
    CHECK_THROWS_AS((void)mixing::c_phi(-0.1), OutOfRangeError);
    CHECK_THROWS_AS((void)mixing::c_phi(1.0), OutOfRangeError);

    // monotone increasing in rho
    double prev = mixing::c_phi(0.0);
    for (double rho = 0.05; rho < 1.0; rho += 0.05) {
        const double cur = mixing::c_phi(rho);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("effective batch size") {
    CHECK(mixing::b_eff(16, 0.0) == doctest::Approx(16.0));
    CHECK(mixing::b_eff(16, 0.25) == doctest::Approx(3.2));
    CHECK(mixing::b_eff(1, 0.9) <= 1.0);
    CHECK_THROWS_AS((void)mixing::b_eff(0, 0.2), OutOfRangeError);

    // decreasing in rho, increasing in B
    CHECK(mixing::b_eff(16, 0.5) < mixing::b_eff(16, 0.25));
    CHECK(mixing::b_eff(32, 0.25) > mixing::b_eff(16, 0.25));
}

TEST_CASE("stay probability mapping") {
    CHECK(mixing::stay_prob_for_rho(0.0) == doctest::Approx(0.5));
    CHECK(mixing::stay_prob_for_rho(0.8) == doctest::Approx(0.9));
    mixing::MixingProcess proc(0.9, 3.0, 1);
    CHECK(proc.rho() == doctest::Approx(0.8));
    CHECK_THROWS_AS(mixing::MixingProcess(0.4, 1.0, 1), OutOfRangeError);
    CHECK_THROWS_AS(mixing::MixingProcess(1.0, 1.0, 1), OutOfRangeError);
}

TEST_CASE("deterministic replay and emission support") {
    mixing::MixingProcess a(0.75, 2.0, 99);
    mixing::MixingProcess b(0.75, 2.0, 99);
    mixing::MixingProcess c(0.75, 2.0, 100);
    const auto xs = a.sample_batch(256);
    const auto ys = b.sample_batch(256);
    const auto zs = c.sample_batch(256);
    CHECK(xs == ys);
    CHECK(xs != zs);
    for (double x : xs) CHECK(std::abs(x) == doctest::Approx(2.0));
}

TEST_CASE("chain autocovariance matches the closed form") {
    // Symmetric two-state chain: Cov(x_t, x_{t+i}) = sigma^2 * (2p-1)^i.
    const double sigma = 3.0;
    mixing::MixingProcess proc(0.9, sigma, 31415);
    const auto report = mixing::empirical_phi_report(proc, 5, 2000000);
    for (const auto& row : report) {
        const double closed = sigma * sigma * std::pow(0.8, row.lag);
        CHECK(row.cov == doctest::Approx(closed).epsilon(0.10));
    }
}

TEST_CASE("covariance control: ratios stay below one") {
    mixing::MixingProcess proc(0.9, 1.5, 2718);
    const auto report = mixing::empirical_phi_report(proc, 10, 1000000);
    for (const auto& row : report) {
        CHECK(row.bound == doctest::Approx(2.0 * 1.5 * 1.5 * std::pow(0.8, row.lag / 2.0)));
        CHECK(std::abs(row.cov) <= row.bound + 3.0 * row.stderr_);
        // closed form gives ratio = (2p-1)^{lag/2} / 2 <= 1/2
        CHECK(row.ratio <= 0.75);
    }
}

TEST_CASE("independent chain has statistically zero lag covariance") {
    mixing::MixingProcess proc(0.5, 2.5, 5);
    const auto report = mixing::empirical_phi_report(proc, 8, 1000000);
    for (const auto& row : report) {
        CHECK(row.bound == 0.0);
        CHECK(row.ratio == 0.0);
        CHECK(std::abs(row.cov) <= 4.0 * row.stderr_);
    }
}

TEST_CASE("per-sample variance and batch-mean variance bound") {
    const double sigma = 3.0;
    for (double p : {0.5, 0.9}) {
        const double rho = 2.0 * p - 1.0;
        // fresh process per batch so batch means are independent draws
        stats::RunningStats batch_means;
        stats::RunningStats singles;
        const int n_batches = 20000;
        const int B = 16;
        for (int i = 0; i < n_batches; ++i) {
            mixing::MixingProcess proc(p, sigma,
                                       stats::derive_seed(8675309, static_cast<std::uint64_t>(i)));
            double acc = 0.0;
            for (int j = 0; j < B; ++j) {
                const double x = proc.next();
                singles.add(x);
                acc += x;
            }
            batch_means.add(acc / B);
        }
        // stationary per-sample variance is sigma^2 exactly
        CHECK(singles.variance() == doctest::Approx(sigma * sigma).epsilon(0.02));
        // correlated batch mean obeys the inflation bound
        const double bound = sigma * sigma / B * mixing::c_phi(rho);
        CHECK(batch_means.variance() <= bound);
    }
}

} // TEST_SUITE
