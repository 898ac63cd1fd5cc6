#include "ttalab/bounds.hpp"

#include <cmath>
#include <limits>

#include "ttalab/errors.hpp"
#include "ttalab/mixing.hpp"

namespace ttalab::bounds {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double lower_bound(const model::ProblemInstance& p) {
    if (!(p.delta > 0.0 && p.delta < 0.5))
        throw OutOfRangeError("lower_bound: delta must lie in (0, 0.5)");
    const double cphi = mixing::c_phi(p.rho_mix);
    const double root = std::sqrt(p.zeta + 2.0 * p.alpha * p.eps) + std::sqrt(p.zeta);
    const double one_minus = 1.0 - 2.0 * p.delta;
    return p.sigma * p.sigma * cphi * one_minus * one_minus /
           (static_cast<double>(p.batch_B) * p.alpha * root * root);
}

double upper_bound_table(const model::ProblemInstance& p) {
    const double cphi = mixing::c_phi(p.rho_mix);
    return p.sigma * p.sigma * cphi * std::log((p.delta_W + p.eps) / p.eps) /
           (static_cast<double>(p.batch_B) * p.alpha * p.alpha * p.eps);
}

double bridging_lambda(const model::ProblemInstance& p) {
    return p.lip_x + p.grad_bound_G * p.lip_grad_psi / p.pl_mu;
}

double eps_prime(const model::ProblemInstance& p) {
    const double lam = bridging_lambda(p);
    if (!(p.eps > lam * p.delta_W))
        throw BridgeInfeasibleError("eps_prime: eps must exceed Lambda * delta_W");
    return p.eps - lam * p.delta_W;
}

double default_initial_excess(const model::ProblemInstance& p) {
    return 2.0 * bridging_lambda(p) * p.delta_W + p.eps;
}

double upper_bound_explicit(const model::ProblemInstance& p, double eta_c,
                            double initial_excess) {
    if (!(eta_c > 0.0)) throw OutOfRangeError("upper_bound_explicit: c must be > 0");
    if (p.sigma == 0.0)
        throw OutOfRangeError("upper_bound_explicit: undefined for sigma == 0");
    const double e0 = initial_excess > 0.0 ? initial_excess : default_initial_excess(p);
    const double cphi = mixing::c_phi(p.rho_mix);
    const double rate = p.smooth_L * p.sigma * p.sigma * cphi /
                        (2.0 * eta_c * static_cast<double>(p.batch_B) * p.alpha *
                         p.alpha * p.pl_mu * p.pl_mu * p.eps * p.delta);
    return 1.0 + rate * std::log(4.0 * e0 / (p.eps * p.delta));
}

double learnability_transfer(const model::ProblemInstance& p, int K_S, double tau,
                             int T) {
    if (K_S < 0) throw OutOfRangeError("learnability_transfer: K_S must be >= 0");
    if (T < 1) throw OutOfRangeError("learnability_transfer: T must be >= 1");
    if (!(tau >= 0.0)) throw OutOfRangeError("learnability_transfer: tau must be >= 0");
    eps_prime(p); // throws BridgeInfeasibleError when eps <= Lambda delta_W
    return p.delta + static_cast<double>(K_S + 1) * tau / static_cast<double>(T);
}

double regret_bound(double eps, double M, double rho, long T) {
    if (!(M >= 0.0)) throw OutOfRangeError("regret_bound: M must be >= 0");
    if (!(rho >= 0.0 && rho <= 1.0))
        throw OutOfRangeError("regret_bound: rho must lie in [0, 1]");
    if (T < 0) throw OutOfRangeError("regret_bound: T must be >= 0");
    return static_cast<double>(T) * (eps + M * rho);
}

double default_excess_bound_M(const model::ProblemInstance& p) {
    const double span = p.radius_r + p.delta_W;
    return 0.5 * p.smooth_L * span * span + p.zeta / (2.0 * p.alpha * p.pl_mu);
}

FeasibilityFlags feasibility_report(const model::ProblemInstance& p) {
    FeasibilityFlags f{};
    f.shift_budget_lhs = p.delta_W;
    f.shift_budget_rhs = 2.0 * std::sqrt(p.zeta / p.alpha + 2.0 * p.eps) +
                         2.0 * std::sqrt(p.zeta / p.alpha);
    f.shift_budget_ok = f.shift_budget_lhs >= f.shift_budget_rhs;

    f.alignment_lhs = p.zeta / (p.alpha * p.pl_mu);
    f.alignment_rhs = p.eps * p.delta / 2.0;
    f.alignment_ok = f.alignment_lhs <= f.alignment_rhs;

    f.bridge_lhs = p.eps;
    f.bridge_rhs = bridging_lambda(p) * p.delta_W;
    f.bridge_ok = f.bridge_lhs > f.bridge_rhs;

    f.canonical_lhs = static_cast<double>(p.batch_B) * p.grad_bound_G * p.grad_bound_G;
    f.canonical_rhs = p.sigma * p.sigma * mixing::c_phi(p.rho_mix);
    f.canonical_regime_ok = f.canonical_lhs <= f.canonical_rhs;
    return f;
}

BoundReport evaluate_bounds(const model::ProblemInstance& p, int K_S, int T,
                            double eta_c) {
    BoundReport r{};
    r.feasibility = feasibility_report(p);
    r.lb = lower_bound(p);
    r.ub = upper_bound_table(p);
    r.ub_explicit_delta =
        p.sigma > 0.0 ? upper_bound_explicit(p, eta_c, 0.0) : kNaN;
    r.lambda_bridge = bridging_lambda(p);
    r.excess_bound_M = default_excess_bound_M(p);
    if (r.feasibility.bridge_ok) {
        r.eps_prime = p.eps - r.lambda_bridge * p.delta_W;
        // Price tau at eps' with the table-form bound.
        model::ProblemInstance priced = p;
        priced.eps = r.eps_prime;
        const double tau = upper_bound_table(priced);
        r.rho_bound = learnability_transfer(p, K_S, tau, T);
        r.regret = regret_bound(p.eps, r.excess_bound_M, std::min(r.rho_bound, 1.0),
                                T);
    } else {
        r.eps_prime = kNaN;
        r.rho_bound = kNaN;
        r.regret = kNaN;
    }
    return r;
}

} // namespace ttalab::bounds
