#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ttalab/mixing.hpp"
#include "ttalab/model.hpp"
#include "ttalab/streams.hpp"

namespace ttalab::adapt {

enum class EtaRule { manual, prescription };

const char* to_string(EtaRule rule);
EtaRule eta_rule_from_string(const std::string& name);

struct BaselineConfig {
    double eta = 0.0;                    ///< used when eta_rule == manual
    EtaRule eta_rule = EtaRule::manual;
    double eta_c = 1.0;                  ///< prescription constant c
    int horizon_T = 0;                   ///< number of steps (0 = trajectory length)
    std::uint64_t master_seed = 0;
    bool restore_on_boundary = true;     ///< project iterates onto the r-neighborhood
};

/// Per-timestep record of one baseline run. Index 0 is time t = 1; the
/// excess at step t is measured at theta_t before the update.
struct TrajectoryRecord {
    std::vector<double> thetas;
    std::vector<double> excess;
    std::vector<double> grad_samples; ///< realized stochastic batch gradients
    int boundary_hits = 0;
};

/// Learning rate c * B * alpha * mu * eps * delta / (L * sigma^2 * C_phi).
/// Throws InvalidEtaError when sigma == 0 (prescription undefined) and
/// EtaTooLargeError when the result exceeds 1 / (4 alpha mu).
double prescribed_eta(const model::ProblemInstance& p, double c);

/// Resolves the configured learning rate; validates it.
double resolve_eta(const model::ProblemInstance& p, const BaselineConfig& cfg);

/// Runs the single-step proxy-gradient baseline over a trajectory.
///
/// For t = 1..T: records the excess risk of theta_t against the time-t
/// competitor (location m_t), forms the stochastic gradient
///   g_t = proxy_grad_mean(theta_t; m_t) + mean of B correlated noise samples,
/// and updates theta_{t+1} = theta_t - eta g_t, projected onto
/// [theta_1 - r, theta_1 + r] when restore_on_boundary is set. The noise
/// process `proc` advances across steps (consecutive batches are adjacent
/// windows of one stream). Deterministic given the process seed.
TrajectoryRecord run_baseline(const model::QuadraticInstance& inst,
                              const streams::DistributionTrajectory& traj,
                              mixing::MixingProcess& proc, const BaselineConfig& cfg);

/// Convenience: builds the run's mixing process from the instance
/// (stay prob from rho_mix, emissions at sigma) and the given seed.
mixing::MixingProcess make_process(const model::ProblemInstance& p, std::uint64_t seed);

/// Optional per-run dump, CSV columns "t,theta,excess".
std::string record_to_csv(const TrajectoryRecord& rec);
void write_record_csv(const std::filesystem::path& path, const TrajectoryRecord& rec);

} // namespace ttalab::adapt
