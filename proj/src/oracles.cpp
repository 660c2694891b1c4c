#include "itm/oracles.hpp"

#include <cmath>
#include <string>

namespace itm {

std::array<double, 3> blasius_series_eval(double lambda, double eta, int n_terms) {
    if (n_terms < 1 || n_terms > 4) {
        throw std::invalid_argument("series: n_terms must lie in [1, 4]");
    }
    // Nonzero coefficients of f = sum c_k eta^{e_k}: exponents 2, 5, 8, 11.
    constexpr double kFact5 = 120.0;
    constexpr double kFact8 = 40320.0;
    constexpr double kFact11 = 39916800.0;
    const double c[4] = {
        lambda / 2.0,
        -lambda * lambda / (2.0 * kFact5),
        11.0 * lambda * lambda * lambda / (4.0 * kFact8),
        -375.0 * lambda * lambda * lambda * lambda / (8.0 * kFact11),
    };
    const double e[4] = {2.0, 5.0, 8.0, 11.0};

    double f = 0.0, fp = 0.0, fpp = 0.0;
    for (int k = 0; k < n_terms; ++k) {
        f += c[k] * std::pow(eta, e[k]);
        fp += c[k] * e[k] * std::pow(eta, e[k] - 1.0);
        fpp += c[k] * e[k] * (e[k] - 1.0) * std::pow(eta, e[k] - 2.0);
    }
    return {f, fp, fpp};
}

RubelBound rubel_error_bound(const Trajectory& truncated, double M) {
    if (!truncated.completed()) {
        throw std::invalid_argument("rubel: need a completed truncated solution");
    }
    if (truncated.dim != 3) throw std::invalid_argument("rubel: expected 3 components");
    if (std::abs(truncated.nodes.back() - M) > 1e-12 * std::max(1.0, M)) {
        throw std::invalid_argument("rubel: trajectory does not end at M");
    }
    RubelBound bound;
    bound.M = M;
    bound.f_at_M = truncated.back(0);
    bound.fsecond_at_M = truncated.back(2);
    if (!(bound.f_at_M > 0.0)) {
        throw std::invalid_argument("rubel: f_M(M) must be positive");
    }
    bound.bound = M * bound.fsecond_at_M / bound.f_at_M;
    return bound;
}

ShootingResult shooting_oracle(const ProblemSpec& problem, double s_lo, double s_hi,
                               double eta_inf, const IntegratorConfig& integrator,
                               double tol, int max_iter) {
    if (!(s_lo < s_hi)) throw std::invalid_argument("oracle: require s_lo < s_hi");
    if (!(tol > 0.0)) throw std::invalid_argument("oracle: tol must be positive");

    const OdeSystem sys = physical_system(problem);
    const double d = problem.boundary.d;
    int evaluations = 0;

    struct Residual {
        double value = 0.0;
        bool ok = false;
        Trajectory traj;
    };
    auto residual = [&](double s) {
        Residual r;
        const std::array<double, 3> y0 = physical_initial_state(problem, s);
        r.traj = integrate(sys, y0, 0.0, eta_inf, integrator);
        ++evaluations;
        if (!r.traj.completed()) return r;
        r.value = r.traj.back(1) - d;
        r.ok = true;
        return r;
    };

    Residual lo = residual(s_lo);
    Residual hi = residual(s_hi);
    if (!lo.ok || !hi.ok) {
        throw OracleError(OracleError::Kind::BlowUpInsideBracket,
                          "oracle: integration failed at a bracket endpoint");
    }
    if (lo.value == 0.0) return {s_lo, std::move(lo.traj), evaluations};
    if (hi.value == 0.0) return {s_hi, std::move(hi.traj), evaluations};
    if (lo.value * hi.value > 0.0) {
        throw OracleError(OracleError::Kind::InvalidBracket,
                          "oracle: residual does not change sign on [" +
                              std::to_string(s_lo) + ", " + std::to_string(s_hi) + "]");
    }

    double a = s_lo, b = s_hi;
    double ra = lo.value;
    for (int iter = 0; iter < max_iter; ++iter) {
        const double mid = 0.5 * (a + b);
        Residual rm = residual(mid);
        if (!rm.ok) {
            throw OracleError(OracleError::Kind::BlowUpInsideBracket,
                              "oracle: integration failed at s = " + std::to_string(mid) +
                                  "; shrink the bracket");
        }
        if (std::abs(rm.value) <= tol) return {mid, std::move(rm.traj), evaluations};
        if ((rm.value > 0.0) == (ra > 0.0)) {
            a = mid;
            ra = rm.value;
        } else {
            b = mid;
        }
        if (b - a <= 1e-17 * std::max(1.0, std::abs(a))) break;
    }
    throw OracleError(OracleError::Kind::ToleranceNotReached,
                      "oracle: bisection exhausted without |R| <= tol");
}

}  // namespace itm
