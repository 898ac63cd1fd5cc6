#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace ttalab::streams {

enum class TrajectoryKind { piecewise_constant, linear_drift, random_walk, custom };

const char* to_string(TrajectoryKind kind);
TrajectoryKind trajectory_kind_from_string(const std::string& name);

/// Time-indexed sequence of 1-D location parameters m_1..m_T. Locations of
/// same-shape location families, so W1 between two time points is exactly
/// the location distance. Index 0 corresponds to time t = 1.
struct DistributionTrajectory {
    std::vector<double> locations;
    TrajectoryKind kind = TrajectoryKind::custom;

    int horizon() const { return static_cast<int>(locations.size()); }

    /// V_T = sum over t of |m_{t+1} - m_t|.
    double path_variation() const;
};

/// Throws SingleStepViolationError if any |m_{t+1} - m_t| > delta_W / 2.
void check_single_step(const DistributionTrajectory& traj, double delta_W);

/// Piecewise-constant surrogate produced by the greedy quantizer.
struct QuantizedStream {
    std::vector<double> anchor_locations;    ///< mtilde_1..mtilde_T
    std::vector<std::uint8_t> shift_flags;   ///< Stilde_2..Stilde_T (size T-1)
    int shift_count = 0;                     ///< number of declared shifts
    std::vector<std::size_t> anchor_indices; ///< 0-based start index of each segment
};

/// W1 between two location-family distributions of the same shape.
double w1_location(double m_a, double m_b);

/// Exact 1-D W1 between two empirical distributions with equal sample
/// counts: mean absolute difference of sorted samples.
/// Throws LengthMismatchError on unequal counts and BadParamsError on
/// empty or unsorted input.
double w1_empirical(std::span<const double> xs_sorted, std::span<const double> ys_sorted);

/// Greedy quantized approximation. Walks the trajectory keeping the last
/// anchor while W1(m_t, m_anchor) <= delta_W / 2, and declares a shift
/// (new anchor at m_t) otherwise. Rejects inputs violating the single-step
/// drift condition rather than clamping them.
QuantizedStream greedy_quantize(const DistributionTrajectory& traj, double delta_W);

/// Ceil(2 V_T / delta_W), the shift-count budget of the quantizer.
int shift_count_budget(double path_variation, double delta_W);

/// Deterministic trajectory generators. Recognized params:
///   piecewise-constant: start, num_jumps, jump (magnitude <= delta_W,
///       realized as two half-steps), alternate (1 = alternate jump
///       direction, default; 0 = monotone)
///   linear-drift: start, slope (|slope| <= delta_W / 2)
///   random-walk:  start, step_sigma (Gaussian steps clipped to delta_W / 2)
/// Unknown keys are an error.
DistributionTrajectory gen_trajectory(TrajectoryKind kind, int horizon_T, double delta_W,
                                      const std::map<std::string, double>& params,
                                      std::uint64_t seed);

/// CSV with header "t,location"; t is 1-based and consecutive.
DistributionTrajectory read_trajectory_csv(const std::filesystem::path& path);
void write_trajectory_csv(const std::filesystem::path& path,
                          const DistributionTrajectory& traj);
std::string trajectory_to_csv(const DistributionTrajectory& traj);

} // namespace ttalab::streams
