#include "ttalab/streams.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ttalab/errors.hpp"
#include "ttalab/io.hpp"

namespace ttalab::streams {

const char* to_string(TrajectoryKind kind) {
    switch (kind) {
    case TrajectoryKind::piecewise_constant: return "piecewise-constant";
    case TrajectoryKind::linear_drift: return "linear-drift";
    case TrajectoryKind::random_walk: return "random-walk";
    case TrajectoryKind::custom: return "custom";
    }
    return "custom";
}

TrajectoryKind trajectory_kind_from_string(const std::string& name) {
    if (name == "piecewise-constant") return TrajectoryKind::piecewise_constant;
    if (name == "linear-drift") return TrajectoryKind::linear_drift;
    if (name == "random-walk") return TrajectoryKind::random_walk;
    if (name == "custom") return TrajectoryKind::custom;
    throw BadParamsError("unknown trajectory kind: " + name);
}

double DistributionTrajectory::path_variation() const {
    double v = 0.0;
    for (std::size_t t = 1; t < locations.size(); ++t)
        v += std::abs(locations[t] - locations[t - 1]);
    return v;
}

void check_single_step(const DistributionTrajectory& traj, double delta_W) {
    if (delta_W <= 0.0) throw BadParamsError("delta_W must be > 0");
    for (std::size_t t = 1; t < traj.locations.size(); ++t) {
        const double step = std::abs(traj.locations[t] - traj.locations[t - 1]);
        // ulp-scale slack so that steps of exactly delta_W/2 survive the
        // rounding of accumulated locations
        const double tol = 8.0 * std::numeric_limits<double>::epsilon() *
                           std::max({std::abs(traj.locations[t]),
                                     std::abs(traj.locations[t - 1]), delta_W});
        if (step > delta_W / 2.0 + tol)
            throw SingleStepViolationError(
                "step at t=" + io::format_int(static_cast<std::int64_t>(t + 1)) +
                " has |drift| " + io::format_double(step) + " > delta_W/2 = " +
                io::format_double(delta_W / 2.0));
    }
}

double w1_location(double m_a, double m_b) { return std::abs(m_a - m_b); }

double w1_empirical(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw LengthMismatchError("w1_empirical: sample counts differ");
    if (xs.empty()) throw BadParamsError("w1_empirical: empty samples");
    if (!std::is_sorted(xs.begin(), xs.end()) || !std::is_sorted(ys.begin(), ys.end()))
        throw BadParamsError("w1_empirical: samples must be sorted ascending");
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc += std::abs(xs[i] - ys[i]);
    return acc / static_cast<double>(xs.size());
}

QuantizedStream greedy_quantize(const DistributionTrajectory& traj, double delta_W) {
    if (traj.locations.empty()) throw BadParamsError("greedy_quantize: empty trajectory");
    check_single_step(traj, delta_W);

    const auto& m = traj.locations;
    QuantizedStream out;
    out.anchor_locations.resize(m.size());
    out.shift_flags.assign(m.size() > 0 ? m.size() - 1 : 0, 0);
    out.anchor_indices.push_back(0);

    std::size_t anchor = 0;
    out.anchor_locations[0] = m[0];
    for (std::size_t t = 1; t < m.size(); ++t) {
        if (w1_location(m[t], m[anchor]) <= delta_W / 2.0) {
            out.anchor_locations[t] = m[anchor];
        } else {
            out.shift_flags[t - 1] = 1;
            ++out.shift_count;
            anchor = t;
            out.anchor_locations[t] = m[t];
            out.anchor_indices.push_back(t);
        }
    }
    return out;
}

int shift_count_budget(double path_variation, double delta_W) {
    return static_cast<int>(std::ceil(2.0 * path_variation / delta_W));
}

namespace {

double take_param(std::map<std::string, double>& params, const std::string& key,
                  double fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    const double v = it->second;
    params.erase(it);
    return v;
}

void reject_leftovers(const std::map<std::string, double>& params) {
    if (!params.empty())
        throw BadParamsError("gen_trajectory: unknown param '" + params.begin()->first + "'");
}

DistributionTrajectory gen_piecewise(int T, double delta_W,
                                     std::map<std::string, double> params) {
    const double start = take_param(params, "start", 0.0);
    const int num_jumps = static_cast<int>(take_param(params, "num_jumps", 0.0));
    const double jump = take_param(params, "jump", delta_W);
    const bool alternate = take_param(params, "alternate", 1.0) != 0.0;
    reject_leftovers(params);

    if (num_jumps < 0) throw BadParamsError("num_jumps must be >= 0");
    if (jump < 0.0 || jump > delta_W)
        throw BadParamsError("jump magnitude must lie in [0, delta_W]");

    DistributionTrajectory traj;
    traj.kind = TrajectoryKind::piecewise_constant;
    traj.locations.assign(static_cast<std::size_t>(T), start);

    double level = start;
    double direction = 1.0;
    std::size_t prev_at = 0;
    for (int j = 1; j <= num_jumps; ++j) {
        // Evenly spaced jump midpoints; each jump occupies two half-steps.
        const std::size_t at = static_cast<std::size_t>(
            (static_cast<long long>(T - 1) * j) / (num_jumps + 1));
        if (at < 1 || at + 1 >= static_cast<std::size_t>(T) || (j > 1 && at < prev_at + 2))
            throw BadParamsError("horizon too short for requested jump count");
        const double next = level + direction * jump;
        traj.locations[at] = level + direction * jump / 2.0;
        for (std::size_t t = at + 1; t < traj.locations.size(); ++t)
            traj.locations[t] = next;
        level = next;
        prev_at = at;
        if (alternate) direction = -direction;
    }
    return traj;
}

DistributionTrajectory gen_linear(int T, double delta_W,
                                  std::map<std::string, double> params) {
    const double start = take_param(params, "start", 0.0);
    const double slope = take_param(params, "slope", 0.0);
    reject_leftovers(params);
    if (std::abs(slope) > delta_W / 2.0)
        throw BadParamsError("|slope| must not exceed delta_W / 2");

    DistributionTrajectory traj;
    traj.kind = TrajectoryKind::linear_drift;
    traj.locations.resize(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) traj.locations[t] = start + slope * t;
    return traj;
}

DistributionTrajectory gen_random_walk(int T, double delta_W,
                                       std::map<std::string, double> params,
                                       std::uint64_t seed) {
    const double start = take_param(params, "start", 0.0);
    const double step_sigma = take_param(params, "step_sigma", delta_W / 6.0);
    reject_leftovers(params);
    if (step_sigma < 0.0) throw BadParamsError("step_sigma must be >= 0");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, step_sigma);

    DistributionTrajectory traj;
    traj.kind = TrajectoryKind::random_walk;
    traj.locations.resize(static_cast<std::size_t>(T));
    double level = start;
    traj.locations[0] = level;
    for (int t = 1; t < T; ++t) {
        level += std::clamp(step(rng), -delta_W / 2.0, delta_W / 2.0);
        traj.locations[t] = level;
    }
    return traj;
}

} // namespace

DistributionTrajectory gen_trajectory(TrajectoryKind kind, int horizon_T, double delta_W,
                                      const std::map<std::string, double>& params,
                                      std::uint64_t seed) {
    if (horizon_T < 1) throw BadParamsError("horizon_T must be >= 1");
    if (delta_W <= 0.0) throw BadParamsError("delta_W must be > 0");

    DistributionTrajectory traj;
    switch (kind) {
    case TrajectoryKind::piecewise_constant:
        traj = gen_piecewise(horizon_T, delta_W, params);
        break;
    case TrajectoryKind::linear_drift:
        traj = gen_linear(horizon_T, delta_W, params);
        break;
    case TrajectoryKind::random_walk:
        traj = gen_random_walk(horizon_T, delta_W, params, seed);
        break;
    case TrajectoryKind::custom:
        throw BadParamsError("custom trajectories come from CSV import, not a generator");
    }
    check_single_step(traj, delta_W);
    return traj;
}

std::string trajectory_to_csv(const DistributionTrajectory& traj) {
    std::string out = "t,location\n";
    for (std::size_t i = 0; i < traj.locations.size(); ++i) {
        out += io::format_int(static_cast<std::int64_t>(i + 1));
        out += ',';
        out += io::format_double(traj.locations[i]);
        out += '\n';
    }
    return out;
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const DistributionTrajectory& traj) {
    io::write_text_file(path, trajectory_to_csv(traj));
}

DistributionTrajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::istringstream in(io::read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw BadParamsError("trajectory CSV: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "t,location")
        throw BadParamsError("trajectory CSV: expected header 't,location'");

    DistributionTrajectory traj;
    traj.kind = TrajectoryKind::custom;
    std::int64_t expected_t = 1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw BadParamsError("trajectory CSV: malformed row '" + line + "'");
        std::size_t pos = 0;
        const std::int64_t t = std::stoll(line.substr(0, comma), &pos);
        if (pos != comma) throw BadParamsError("trajectory CSV: bad time index in '" + line + "'");
        const std::string loc_str = line.substr(comma + 1);
        const double loc = std::stod(loc_str, &pos);
        if (pos != loc_str.size())
            throw BadParamsError("trajectory CSV: bad location in '" + line + "'");
        if (t != expected_t)
            throw BadParamsError("trajectory CSV: time indices must start at 1 and be consecutive");
        ++expected_t;
        traj.locations.push_back(loc);
    }
    if (traj.locations.empty()) throw BadParamsError("trajectory CSV: no rows");
    return traj;
}

} // namespace ttalab::streams
