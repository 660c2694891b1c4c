#pragma once

#include <array>
#include <stdexcept>

#include "itm/ivp.hpp"
#include "itm/problems.hpp"

namespace itm {

/// Blasius power series around eta = 0 with f''(0) = lambda, truncated after
/// n_terms of the nonzero terms (1 to 4):
///   f = lambda eta^2/2 - lambda^2 eta^5/(2*5!) + 11 lambda^3 eta^8/(4*8!)
///       - 375 lambda^4 eta^11/(8*11!)
/// Returns (f, f', f'') of the partial sum.
std::array<double, 3> blasius_series_eval(double lambda, double eta, int n_terms);

/// A posteriori truncation-error bound for the unit-coefficient truncated
/// formulation f''' + f f'' = 0, f(0) = f'(0) = 0, f'(M) = 1:
/// |f - f_M| <= M f_M''(M) / f_M(M) on [0, M].
struct RubelBound {
    double M = 0.0;
    double f_at_M = 0.0;
    double fsecond_at_M = 0.0;
    double bound = 0.0;
};

/// Reads the endpoint of a completed solution of the truncated problem.
/// Requires the unit-coefficient normalization; throws on f_M(M) <= 0.
RubelBound rubel_error_bound(const Trajectory& truncated, double M);

// ---------------------------------------------------------------------------
// Bisection shooting oracle
// ---------------------------------------------------------------------------

class OracleError : public std::runtime_error {
public:
    enum class Kind { InvalidBracket, BlowUpInsideBracket, ToleranceNotReached };

    OracleError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct ShootingResult {
    double s = 0.0;  // missing initial condition f''(0)
    Trajectory trajectory;
    int evaluations = 0;
};

/// Brute-force reference: bisection on the residual R(s) = f'(eta_inf; s) - d
/// of the original (h = 1) problem. Deliberately bisection, so the oracle
/// shares no failure mode with the transformation path it cross-checks.
ShootingResult shooting_oracle(const ProblemSpec& problem, double s_lo, double s_hi,
                               double eta_inf, const IntegratorConfig& integrator,
                               double tol, int max_iter = 200);

}  // namespace itm
