#include "ttalab/adapt.hpp"

#include <algorithm>
#include <cmath>

#include "ttalab/errors.hpp"
#include "ttalab/io.hpp"

namespace ttalab::adapt {

const char* to_string(EtaRule rule) {
    return rule == EtaRule::manual ? "manual" : "theorem2-prescription";
}

EtaRule eta_rule_from_string(const std::string& name) {
    if (name == "manual") return EtaRule::manual;
    if (name == "theorem2-prescription" || name == "prescription")
        return EtaRule::prescription;
    throw BadParamsError("unknown eta rule: " + name);
}

double prescribed_eta(const model::ProblemInstance& p, double c) {
    if (!(c > 0.0)) throw InvalidEtaError("prescribed_eta: c must be > 0");
    if (p.sigma == 0.0)
        throw InvalidEtaError("prescribed_eta: undefined for sigma == 0");
    const double cphi = mixing::c_phi(p.rho_mix);
    const double eta = c * static_cast<double>(p.batch_B) * p.alpha * p.pl_mu * p.eps *
                       p.delta / (p.smooth_L * p.sigma * p.sigma * cphi);
    const double ceiling = 1.0 / (4.0 * p.alpha * p.pl_mu);
    if (eta > ceiling)
        throw EtaTooLargeError("prescribed_eta: eta " + io::format_double(eta) +
                               " exceeds 1/(4 alpha mu) = " + io::format_double(ceiling) +
                               "; reduce c");
    return eta;
}

double resolve_eta(const model::ProblemInstance& p, const BaselineConfig& cfg) {
    if (cfg.eta_rule == EtaRule::prescription) return prescribed_eta(p, cfg.eta_c);
    if (!std::isfinite(cfg.eta) || cfg.eta < 0.0)
        throw InvalidEtaError("manual eta must be finite and >= 0");
    return cfg.eta;
}

mixing::MixingProcess make_process(const model::ProblemInstance& p, std::uint64_t seed) {
    return mixing::MixingProcess(mixing::stay_prob_for_rho(p.rho_mix), p.sigma, seed);
}

TrajectoryRecord run_baseline(const model::QuadraticInstance& inst,
                              const streams::DistributionTrajectory& traj,
                              mixing::MixingProcess& proc, const BaselineConfig& cfg) {
    inst.validate();
    const double eta = resolve_eta(inst.problem, cfg);
    const int T = cfg.horizon_T > 0 ? cfg.horizon_T : traj.horizon();
    if (T < 1) throw BadParamsError("run_baseline: empty horizon");
    if (T > traj.horizon())
        throw BadParamsError("run_baseline: horizon exceeds trajectory length");

    const double lo = inst.theta_init - inst.problem.radius_r;
    const double hi = inst.theta_init + inst.problem.radius_r;
    const int B = inst.problem.batch_B;

    TrajectoryRecord rec;
    rec.thetas.resize(static_cast<std::size_t>(T));
    rec.excess.resize(static_cast<std::size_t>(T));
    rec.grad_samples.resize(static_cast<std::size_t>(T));

    double theta = inst.theta_init;
    for (int t = 0; t < T; ++t) {
        const model::QuadraticInstance step_inst =
            inst.at_location(traj.locations[static_cast<std::size_t>(t)]);
        rec.thetas[static_cast<std::size_t>(t)] = theta;
        rec.excess[static_cast<std::size_t>(t)] = model::excess_risk(step_inst, theta);

        // sigma == 0 is the exact deterministic regime; the chain is not consulted.
        const double noise = inst.problem.sigma > 0.0 ? proc.batch_mean(B) : 0.0;
        const double g = model::proxy_grad_mean(step_inst, theta) + noise;
        rec.grad_samples[static_cast<std::size_t>(t)] = g;

        theta -= eta * g;
        if (cfg.restore_on_boundary && (theta < lo || theta > hi)) {
            theta = std::clamp(theta, lo, hi);
            ++rec.boundary_hits;
        }
    }
    return rec;
}

std::string record_to_csv(const TrajectoryRecord& rec) {
    std::string out = "t,theta,excess\n";
    for (std::size_t i = 0; i < rec.thetas.size(); ++i) {
        out += io::format_int(static_cast<std::int64_t>(i + 1));
        out += ',';
        out += io::format_double(rec.thetas[i]);
        out += ',';
        out += io::format_double(rec.excess[i]);
        out += '\n';
    }
    return out;
}

void write_record_csv(const std::filesystem::path& path, const TrajectoryRecord& rec) {
    io::write_text_file(path, record_to_csv(rec));
}

} // namespace ttalab::adapt
