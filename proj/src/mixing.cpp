#include "ttalab/mixing.hpp"

#include <cmath>

#include "ttalab/errors.hpp"
#include "ttalab/stats.hpp"

namespace ttalab::mixing {

double c_phi(double rho_mix) {
    if (!(rho_mix >= 0.0 && rho_mix < 1.0))
        throw OutOfRangeError("c_phi: rho_mix must lie in [0, 1)");
    const double s = std::sqrt(rho_mix);
    return 1.0 + 4.0 * s / (1.0 - s);
}

double b_eff(int batch_B, double rho_mix) {
    if (batch_B < 1) throw OutOfRangeError("b_eff: batch_B must be >= 1");
    return static_cast<double>(batch_B) / c_phi(rho_mix);
}

double stay_prob_for_rho(double rho_mix) {
    if (!(rho_mix >= 0.0 && rho_mix < 1.0))
        throw OutOfRangeError("stay_prob_for_rho: rho_mix must lie in [0, 1)");
    return (1.0 + rho_mix) / 2.0;
}

MixingProcess::MixingProcess(double stay_prob, double emission_sigma, std::uint64_t seed)
    : stay_prob_(stay_prob), sigma_(emission_sigma), rng_(seed) {
    if (!(stay_prob >= 0.5 && stay_prob < 1.0))
        throw OutOfRangeError("MixingProcess: stay_prob must lie in [0.5, 1)");
    if (!(emission_sigma >= 0.0))
        throw OutOfRangeError("MixingProcess: emission_sigma must be >= 0");
    // Stationary initialization: uniform over the two states.
    state_ = (rng_() & 1u) ? 1 : -1;
}

double MixingProcess::next() {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng_) >= stay_prob_) state_ = -state_;
    return sigma_ * static_cast<double>(state_);
}

void MixingProcess::sample_batch(int batch_B, std::vector<double>& out) {
    if (batch_B < 1) throw OutOfRangeError("sample_batch: batch_B must be >= 1");
    out.resize(static_cast<std::size_t>(batch_B));
    for (int i = 0; i < batch_B; ++i) out[static_cast<std::size_t>(i)] = next();
}

std::vector<double> MixingProcess::sample_batch(int batch_B) {
    std::vector<double> out;
    sample_batch(batch_B, out);
    return out;
}

double MixingProcess::batch_mean(int batch_B) {
    if (batch_B < 1) throw OutOfRangeError("batch_mean: batch_B must be >= 1");
    double acc = 0.0;
    for (int i = 0; i < batch_B; ++i) acc += next();
    return acc / static_cast<double>(batch_B);
}

std::vector<PhiLagStats> empirical_phi_report(MixingProcess& proc, int max_lag,
                                              long n_samples) {
    if (max_lag < 1) throw OutOfRangeError("empirical_phi_report: max_lag must be >= 1");
    if (n_samples <= max_lag + 1)
        throw OutOfRangeError("empirical_phi_report: n_samples too small");

    std::vector<double> xs(static_cast<std::size_t>(n_samples));
    for (auto& x : xs) x = proc.next();

    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n_samples);

    const double sigma2 = proc.sigma() * proc.sigma();
    const double rho = proc.rho();

    std::vector<PhiLagStats> report;
    report.reserve(static_cast<std::size_t>(max_lag));
    for (int lag = 1; lag <= max_lag; ++lag) {
        stats::RunningStats prod;
        for (long t = 0; t + lag < n_samples; ++t)
            prod.add((xs[static_cast<std::size_t>(t)] - mean) *
                     (xs[static_cast<std::size_t>(t + lag)] - mean));
        const double bound = 2.0 * sigma2 * std::pow(rho, lag / 2.0);
        PhiLagStats row;
        row.lag = lag;
        row.cov = prod.mean();
        row.bound = bound;
        row.ratio = bound > 0.0 ? std::abs(row.cov) / bound : 0.0;
        row.stderr_ = prod.stderr_mean();
        report.push_back(row);
    }
    return report;
}

} // namespace ttalab::mixing
