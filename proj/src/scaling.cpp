#include "itm/scaling.hpp"

#include <cmath>
#include <string>

namespace itm {

namespace {

void check_group(const ExtendedScalingGroup& group) {
    if (group.delta == 1.0) throw std::invalid_argument("scaling: delta must differ from 1");
    if (group.sigma == 0.0) throw std::invalid_argument("scaling: sigma must be nonzero");
}

}  // namespace

ScalingDomainError::ScalingDomainError(double base)
    : std::runtime_error("scaling: non-positive base " + std::to_string(base) +
                         " for the group-parameter root"),
      base_(base) {}

double lambda_from_endpoint(double fprime_end, double h_star,
                            const ExtendedScalingGroup& group,
                            const AsymptoticSpec& asym) {
    check_group(group);
    double base;
    if (asym.homogeneous) {
        base = fprime_end + std::pow(h_star, (1.0 - group.delta) / group.sigma);
    } else {
        if (asym.d == 0.0) {
            throw std::invalid_argument("scaling: d = 0 requires the homogeneous form");
        }
        base = fprime_end / asym.d;
    }
    if (!(base > 0.0) || !std::isfinite(base)) throw ScalingDomainError(base);
    return std::pow(base, 1.0 / (1.0 - group.delta));
}

double gamma_value(double h_star, double lambda, const ExtendedScalingGroup& group) {
    check_group(group);
    if (!(lambda > 0.0)) throw std::invalid_argument("scaling: lambda must be positive");
    return std::pow(lambda, -group.sigma) * h_star - 1.0;
}

double rescaled_skin_friction(double lambda, const ExtendedScalingGroup& group, int p) {
    return std::pow(lambda, 2.0 * group.delta - 1.0) * static_cast<double>(p);
}

Trajectory rescale_trajectory(const Trajectory& starred, double lambda,
                              const ExtendedScalingGroup& group) {
    check_group(group);
    if (!starred.completed()) {
        throw std::invalid_argument("scaling: can only rescale a completed trajectory");
    }
    if (starred.dim != 3) {
        throw std::invalid_argument("scaling: expected a (f, f', f'') trajectory");
    }
    if (!(lambda > 0.0)) throw std::invalid_argument("scaling: lambda must be positive");

    const double eta_scale = std::pow(lambda, -group.delta);
    const double f_scale = 1.0 / lambda;
    const double fp_scale = std::pow(lambda, group.delta - 1.0);
    const double fpp_scale = std::pow(lambda, 2.0 * group.delta - 1.0);

    Trajectory physical;
    physical.dim = 3;
    physical.status = starred.status;
    physical.nodes.reserve(starred.size());
    physical.states.reserve(starred.states.size());
    for (std::size_t i = 0; i < starred.size(); ++i) {
        physical.nodes.push_back(eta_scale * starred.nodes[i]);
        physical.states.push_back(f_scale * starred.value(i, 0));
        physical.states.push_back(fp_scale * starred.value(i, 1));
        physical.states.push_back(fpp_scale * starred.value(i, 2));
    }
    physical.stop_eta = physical.nodes.back();
    return physical;
}

const char* to_string(ProbeStatus status) {
    switch (status) {
        case ProbeStatus::Ok: return "ok";
        case ProbeStatus::BlowUp: return "blowup";
        case ProbeStatus::StepFailure: return "stepfail";
    }
    return "unknown";
}

}  // namespace itm
