#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "ttalab/adapt.hpp"
#include "ttalab/model.hpp"
#include "ttalab/recovery.hpp"
#include "ttalab/streams.hpp"

namespace ttalab::config {

using nlohmann::json;

/// Parses a ProblemInstance from a strict JSON object. Unknown keys are
/// errors. grad_bound_G, lip_x, and lip_grad_psi may be omitted, in which
/// case the quadratic-family derived defaults are used.
model::ProblemInstance parse_problem(const json& j);
json problem_to_json(const model::ProblemInstance& p);

struct RecoverConfig {
    model::ProblemInstance problem;
    double pre_shift_location = 0.0;
    std::optional<double> post_shift_location; ///< default pre + delta_W
    std::optional<double> theta_init;          ///< default pre-shift proxy optimum
    std::optional<double> bias_xi;             ///< default zeta / (2 delta_W)
    adapt::BaselineConfig baseline;
    int n_runs = 100;
    int t_max = 0; ///< 0 = auto
    recovery::Estimator estimator = recovery::Estimator::uniform_tail;
    recovery::HittingRule hitting_rule = recovery::HittingRule::sustained_to_horizon;
    double eps_override = 0.0;
};

RecoverConfig parse_recover_config(const json& j);
json recover_config_to_json(const RecoverConfig& c);

struct StreamSpec {
    streams::TrajectoryKind kind = streams::TrajectoryKind::piecewise_constant;
    int horizon_T = 0;
    std::map<std::string, double> params;
    std::optional<std::string> csv_path; ///< import instead of generating
};

struct LearnabilityConfig {
    model::ProblemInstance problem;
    StreamSpec stream;
    std::optional<double> theta_init; ///< default stream-start proxy optimum
    std::optional<double> bias_xi;
    adapt::BaselineConfig baseline;
    int n_runs = 100;
    int recovery_t_max = 0;
};

LearnabilityConfig parse_learnability_config(const json& j);
json learnability_config_to_json(const LearnabilityConfig& c);

struct BoundsConfig {
    model::ProblemInstance problem;
    int shift_count_K = 0;
    int horizon_T = 1000;
    double eta_c = 1.0;
};

BoundsConfig parse_bounds_config(const json& j);

json load_json_file(const std::string& path);

} // namespace ttalab::config
