#pragma once

#include <stdexcept>

#include "itm/ivp.hpp"

namespace itm {

/// Extended scaling group f* = lambda f, eta* = lambda^delta eta,
/// h* = lambda^sigma h, with delta != 1 and sigma != 0.
struct ExtendedScalingGroup {
    double delta = -1.0;
    double sigma = 4.0;
};

/// Target of f' at infinity. When the physical condition is homogeneous
/// (d = 0) the group parameter is read through the h-shifted formula instead
/// of the plain quotient.
struct AsymptoticSpec {
    double d = 1.0;
    bool homogeneous = false;
};

enum class ProbeStatus { Ok, BlowUp, StepFailure };

/// One probe of the transformation function at a trial h*.
/// A failed integration records the sentinel gamma = -1 and status != Ok.
struct GammaEvaluation {
    double h_star = 0.0;
    double lambda = 0.0;
    double gamma = -1.0;
    double skin_friction = 0.0;  // rescaled f''(0) candidate
    ProbeStatus status = ProbeStatus::StepFailure;
};

/// Thrown when a group-parameter formula is handed a non-positive base.
/// Drivers convert this into a failed probe rather than letting it escape.
class ScalingDomainError : public std::runtime_error {
public:
    explicit ScalingDomainError(double base);
    double base() const { return base_; }

private:
    double base_;
};

/// Group parameter from the endpoint slope of the auxiliary IVP:
/// lambda = [f*'(eta_inf)/d]^{1/(1-delta)}, or with d = 0,
/// lambda = [f*'(eta_inf) + h*^{(1-delta)/sigma}]^{1/(1-delta)}.
double lambda_from_endpoint(double fprime_end, double h_star,
                            const ExtendedScalingGroup& group,
                            const AsymptoticSpec& asym);

/// Transformation function Gamma(h*) = lambda^{-sigma} h* - 1.
double gamma_value(double h_star, double lambda, const ExtendedScalingGroup& group);

/// Rescaled f''(0) given the starred value p: lambda^{2 delta - 1} * p.
double rescaled_skin_friction(double lambda, const ExtendedScalingGroup& group, int p);

/// Map a completed starred trajectory back to physical variables:
/// eta = lambda^{-delta} eta*, f = lambda^{-1} f*,
/// f' = lambda^{delta-1} f*', f'' = lambda^{2 delta - 1} f*''.
Trajectory rescale_trajectory(const Trajectory& starred, double lambda,
                              const ExtendedScalingGroup& group);

const char* to_string(ProbeStatus status);

}  // namespace itm
