#include "ttalab/model.hpp"

#include <cmath>
#include <string>

#include "ttalab/errors.hpp"

namespace ttalab::model {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw BadParamsError(std::string("ProblemInstance: ") + message);
}

} // namespace

void ProblemInstance::validate() const {
    require(std::isfinite(alpha) && alpha > 0.0, "alpha must be > 0");
    require(std::isfinite(zeta) && zeta >= 0.0, "zeta must be >= 0");
    require(std::isfinite(smooth_L) && smooth_L > 0.0, "smooth_L must be > 0");
    require(std::isfinite(pl_mu) && pl_mu > 0.0, "pl_mu must be > 0");
    // The quadratic family has PL constant exactly L, so mu <= L is the
    // only consistent declaration.
    require(pl_mu <= smooth_L, "pl_mu must not exceed smooth_L");
    require(std::isfinite(sigma) && sigma >= 0.0, "sigma must be >= 0");
    require(std::isfinite(grad_bound_G) && grad_bound_G > 0.0, "grad_bound_G must be > 0");
    require(std::isfinite(lip_x) && lip_x > 0.0, "lip_x must be > 0");
    require(std::isfinite(lip_grad_psi) && lip_grad_psi > 0.0, "lip_grad_psi must be > 0");
    require(std::isfinite(radius_r) && radius_r > 0.0, "radius_r must be > 0");
    require(std::isfinite(delta_W) && delta_W > 0.0, "delta_W must be > 0");
    require(std::isfinite(eps) && eps > 0.0, "eps must be > 0");
    require(std::isfinite(delta) && delta > 0.0 && delta < 0.5, "delta must lie in (0, 0.5)");
    require(batch_B >= 1, "batch_B must be >= 1");
    require(std::isfinite(rho_mix) && rho_mix >= 0.0 && rho_mix < 1.0,
            "rho_mix must lie in [0, 1)");
    // Interiority headroom for the default-bias instance.
    require(radius_r > delta_W / 2.0 + default_bias_xi(*this) / alpha,
            "radius_r too small: proxy optima would not be interior");
}

double default_bias_xi(const ProblemInstance& p) {
    return p.zeta == 0.0 ? 0.0 : p.zeta / (2.0 * p.delta_W);
}

double derived_lip_x(const ProblemInstance& p) {
    return p.smooth_L * (p.radius_r + p.delta_W);
}

double derived_lip_grad_psi(const ProblemInstance& p) {
    return p.alpha * p.smooth_L;
}

double derived_grad_bound(const ProblemInstance& p, double bias_xi) {
    return p.alpha * p.smooth_L * (p.radius_r + p.delta_W) + std::abs(bias_xi) +
           3.0 * p.sigma;
}

void QuadraticInstance::validate() const {
    problem.validate();
    if (!std::isfinite(location_m) || !std::isfinite(bias_xi) || !std::isfinite(theta_init))
        throw BadParamsError("QuadraticInstance: non-finite field");
    if (problem.zeta == 0.0) {
        if (bias_xi != 0.0)
            throw BadParamsError("QuadraticInstance: bias_xi must be 0 when zeta == 0");
    } else {
        if (std::abs(bias_xi) > problem.zeta / (2.0 * problem.delta_W))
            throw BadParamsError(
                "QuadraticInstance: |bias_xi| exceeds zeta / (2 delta_W)");
        // Stationarity constraint of the bias at the proxy optimum;
        // guarantees the -zeta/(2 alpha mu) excess floor.
        if (bias_xi * bias_xi >
            problem.zeta * problem.alpha * problem.smooth_L / problem.pl_mu)
            throw BadParamsError(
                "QuadraticInstance: bias_xi^2 exceeds zeta * alpha * L / mu");
    }
}

QuadraticInstance make_instance(const ProblemInstance& p, double location_m,
                                double theta_init) {
    QuadraticInstance inst{p, location_m, default_bias_xi(p), theta_init};
    inst.validate();
    return inst;
}

double task_loss(const QuadraticInstance& inst, double theta) {
    const double d = theta - inst.location_m;
    return 0.5 * inst.problem.smooth_L * d * d;
}

double task_grad(const QuadraticInstance& inst, double theta) {
    return inst.problem.smooth_L * (theta - inst.location_m);
}

double proxy_grad_mean(const QuadraticInstance& inst, double theta) {
    return inst.problem.alpha * task_grad(inst, theta) + inst.bias_xi;
}

ProxyOptimum proxy_optimum_info(const QuadraticInstance& inst) noexcept {
    const double value =
        inst.location_m - inst.bias_xi / (inst.problem.alpha * inst.problem.smooth_L);
    const bool interior = std::abs(value - inst.theta_init) < inst.problem.radius_r;
    return {value, interior};
}

double proxy_optimum(const QuadraticInstance& inst) {
    const ProxyOptimum opt = proxy_optimum_info(inst);
    if (!opt.interior)
        throw NonInteriorError("proxy optimum hits the neighborhood boundary");
    return opt.value;
}

double excess_risk(const QuadraticInstance& inst, double theta) {
    return task_loss(inst, theta) - task_loss(inst, proxy_optimum(inst));
}

double excess_floor(const ProblemInstance& p) {
    return -p.zeta / (2.0 * p.alpha * p.pl_mu);
}

} // namespace ttalab::model
