#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace ttalab::mixing {

/// Variance-inflation factor C_phi = 1 + 4 sqrt(rho) / (1 - sqrt(rho)).
/// Throws OutOfRangeError unless rho_mix lies in [0, 1).
double c_phi(double rho_mix);

/// Effective i.i.d. batch size B / C_phi. Always <= B.
double b_eff(int batch_B, double rho_mix);

/// Maps a declared decay rho to the stay probability of the symmetric
/// two-state chain whose second eigenvalue equals rho: p = (1 + rho) / 2.
double stay_prob_for_rho(double rho_mix);

/// Symmetric two-state Markov chain with +/- sigma emissions.
///
/// The chain's second eigenvalue is lambda_2 = 2p - 1, which is also the
/// declared geometric mixing decay rho. Emissions are bounded, centered
/// under the (uniform) stationary law, and the lag-i autocovariance is
/// sigma^2 * lambda_2^i in closed form. The initial state is drawn from
/// the stationary law, so the emitted process is stationary from the
/// first sample. Stateful and single-owner: parallel runs must each get
/// their own process with a seed derived from (master_seed, run_index).
class MixingProcess {
public:
    /// stay_prob in [0.5, 1); emission_sigma >= 0.
    MixingProcess(double stay_prob, double emission_sigma, std::uint64_t seed);

    double stay_prob() const { return stay_prob_; }
    double sigma() const { return sigma_; }

    /// Declared decay rho = 2p - 1 (= the chain's second eigenvalue).
    double rho() const { return 2.0 * stay_prob_ - 1.0; }

    /// Advances the chain one step and returns the emission (+/- sigma).
    double next();

    /// Advances the chain batch_B steps; one time window of the stream.
    std::vector<double> sample_batch(int batch_B);
    void sample_batch(int batch_B, std::vector<double>& out);

    /// Batch mean of the next batch_B emissions.
    double batch_mean(int batch_B);

private:
    double stay_prob_;
    double sigma_;
    int state_; // +1 or -1
    std::mt19937_64 rng_;
};

struct PhiLagStats {
    int lag;
    double cov;     ///< empirical lag covariance
    double bound;   ///< 2 sigma^2 rho^{lag/2}
    double ratio;   ///< |cov| / bound (0 when bound == 0)
    double stderr_; ///< standard error of the covariance estimate
};

/// Empirical lag-covariance table against the mixing covariance bound,
/// estimated from one stream of n_samples emissions.
std::vector<PhiLagStats> empirical_phi_report(MixingProcess& proc, int max_lag,
                                              long n_samples);

} // namespace ttalab::mixing
