#pragma once

#include <cstdint>

#include "ttalab/model.hpp"

namespace ttalab::bounds {

/// Feasibility conditions of the recovery and transfer guarantees, each
/// with the compared values for diagnostics.
struct FeasibilityFlags {
    bool shift_budget_ok;     ///< delta_W >= 2 sqrt(zeta/alpha + 2 eps) + 2 sqrt(zeta/alpha)
    double shift_budget_lhs;  ///< delta_W
    double shift_budget_rhs;

    bool alignment_ok;        ///< zeta / (alpha mu) <= eps delta / 2
    double alignment_lhs;
    double alignment_rhs;

    bool bridge_ok;           ///< eps > Lambda delta_W
    double bridge_lhs;        ///< eps
    double bridge_rhs;        ///< Lambda delta_W

    bool canonical_regime_ok; ///< B G^2 <= sigma^2 C_phi
    double canonical_lhs;
    double canonical_rhs;
};

/// Minimax recovery lower bound
///   sigma^2 C_phi (1 - 2 delta)^2 / (B alpha (sqrt(zeta + 2 alpha eps) + sqrt(zeta))^2).
/// The value is returned even when the shift budget is violated; the
/// violation is reported through feasibility_report (the bound is then
/// vacuous). Throws OutOfRangeError when delta is outside (0, 0.5).
double lower_bound(const model::ProblemInstance& p);

/// Table-form recovery upper bound
///   sigma^2 C_phi log((delta_W + eps) / eps) / (B alpha^2 eps).
double upper_bound_table(const model::ProblemInstance& p);

/// Explicit-delta recovery upper bound
///   1 + L sigma^2 C_phi / (2 c B alpha^2 mu^2 eps delta) * log(4 initial_excess / (eps delta)).
/// Pass initial_excess <= 0 to use the default 2 Lambda delta_W + eps.
double upper_bound_explicit(const model::ProblemInstance& p, double eta_c,
                            double initial_excess);

/// Bridging constant Lambda = L_x + G L_grad_psi / mu.
double bridging_lambda(const model::ProblemInstance& p);

/// Quantization-adjusted target eps' = eps - Lambda delta_W.
/// Throws BridgeInfeasibleError when eps <= Lambda delta_W.
double eps_prime(const model::ProblemInstance& p);

/// Default initial post-shift excess 2 Lambda delta_W + eps.
double default_initial_excess(const model::ProblemInstance& p);

/// Violation-rate transfer: delta + (K_S + 1) tau / T.
/// Requires eps > Lambda delta_W (tau must be priced at eps').
double learnability_transfer(const model::ProblemInstance& p, int K_S, double tau,
                             int T);

/// Dynamic-regret bound T (eps + M rho).
double regret_bound(double eps, double M, double rho, long T);

/// Default almost-sure excess bound M = L/2 (r + delta_W)^2 + zeta/(2 alpha mu).
double default_excess_bound_M(const model::ProblemInstance& p);

FeasibilityFlags feasibility_report(const model::ProblemInstance& p);

/// All bound evaluations for one instance, as emitted by the CLI.
struct BoundReport {
    double lb;
    double ub;
    double ub_explicit_delta;
    double lambda_bridge;
    double eps_prime;  ///< NaN when the bridge is infeasible
    double rho_bound;  ///< transfer value at (K_S, tau, T); NaN when infeasible
    double regret;     ///< T (eps + M rho_bound); NaN when infeasible
    double excess_bound_M;
    FeasibilityFlags feasibility;
};

/// Evaluates every bound. tau for the transfer defaults to the table-form
/// upper bound priced at eps' (when feasible); K_S and T parameterize the
/// stream the report speaks about.
BoundReport evaluate_bounds(const model::ProblemInstance& p, int K_S, int T,
                            double eta_c);

} // namespace ttalab::bounds
