#pragma once

#include <cstdint>

namespace ttalab::model {

/// Bundle of problem constants shared by the loss family, the stream model,
/// the baseline, and the bound evaluators. Immutable after construction;
/// `validate()` enforces the domain of every field.
struct ProblemInstance {
    double alpha;        ///< alignment strength, > 0
    double zeta;         ///< alignment bias, >= 0
    double smooth_L;     ///< smoothness constant, > 0
    double pl_mu;        ///< PL / strong-convexity constant, 0 < mu <= L
    double sigma;        ///< per-sample gradient noise std, >= 0
    double grad_bound_G; ///< gradient-norm bound, > 0
    double lip_x;        ///< data-Lipschitz constant of the losses, > 0
    double lip_grad_psi; ///< data-Lipschitz constant of the proxy gradient, > 0
    double radius_r;     ///< trust-neighborhood radius, > 0
    double delta_W;      ///< shift resolution, > 0
    double eps;          ///< target excess error, > 0
    double delta;        ///< failure budget, in (0, 0.5)
    int batch_B;         ///< batch size, >= 1
    double rho_mix;      ///< geometric mixing decay, in [0, 1)

    /// Throws BadParamsError with a field-specific message on violation.
    void validate() const;
};

/// Default proxy-gradient bias: zeta / (2 delta_W), or 0 when zeta == 0.
double default_bias_xi(const ProblemInstance& p);

/// Data-Lipschitz constant forced by the quadratic family on the
/// neighborhood: L * (r + delta_W).
double derived_lip_x(const ProblemInstance& p);

/// Data-Lipschitz constant of the proxy gradient for the quadratic
/// family: alpha * L (exact).
double derived_lip_grad_psi(const ProblemInstance& p);

/// Gradient-norm bound covering realized proxy gradients at 3 sigma:
/// alpha * L * (r + delta_W) + |xi| + 3 sigma.
double derived_grad_bound(const ProblemInstance& p, double bias_xi);

/// One quadratic task/proxy pair at a fixed distribution location.
///
/// Task loss      l(theta)      = L/2 (theta - m)^2
/// Proxy gradient grad_psi(theta) = alpha L (theta - m) + xi
struct QuadraticInstance {
    ProblemInstance problem;
    double location_m; ///< current distribution location parameter
    double bias_xi;    ///< proxy gradient bias
    double theta_init; ///< theta_1, center of the trust neighborhood

    void validate() const;

    /// Same instance at a different location (the trajectory moves m).
    QuadraticInstance at_location(double m) const {
        QuadraticInstance copy = *this;
        copy.location_m = m;
        return copy;
    }
};

/// Builds a QuadraticInstance with the default bias.
QuadraticInstance make_instance(const ProblemInstance& p, double location_m,
                                double theta_init);

double task_loss(const QuadraticInstance& inst, double theta);
double task_grad(const QuadraticInstance& inst, double theta);
double proxy_grad_mean(const QuadraticInstance& inst, double theta);

struct ProxyOptimum {
    double value;  ///< unconstrained proxy minimizer m - xi / (alpha L)
    bool interior; ///< false when the minimizer is not strictly inside the neighborhood
};

/// Never throws; `interior` reports whether clipping would be required.
ProxyOptimum proxy_optimum_info(const QuadraticInstance& inst) noexcept;

/// Unconstrained proxy minimizer; throws NonInteriorError when it is not
/// strictly interior to the r-neighborhood of theta_init.
double proxy_optimum(const QuadraticInstance& inst);

/// Task loss at theta minus task loss at the proxy optimum. May be
/// negative, but never below -zeta / (2 alpha mu).
double excess_risk(const QuadraticInstance& inst, double theta);

/// The floor -zeta / (2 alpha mu).
double excess_floor(const ProblemInstance& p);

} // namespace ttalab::model
