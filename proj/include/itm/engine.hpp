#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "itm/ivp.hpp"
#include "itm/problems.hpp"
#include "itm/root_finding.hpp"

namespace itm {

// ---------------------------------------------------------------------------
// Non-iterative transformation (Blasius only)
// ---------------------------------------------------------------------------

/// Result of the one-shot transformation: the auxiliary IVP is solved once,
/// the skin friction lambda_j = [f*'(eta_j)]^{-3/2} is read at each checkpoint
/// and the solution is rescaled with the last estimate.
struct TopferResult {
    std::vector<double> checkpoints;
    std::vector<double> lambda_estimates;      // skin-friction estimate per checkpoint
    double lambda_final = 0.0;                 // last estimate, equals f''(0)
    double agreement = 0.0;                    // |lambda_n - lambda_{n-1}|
    bool converged = false;                    // agreement within tolerance
    Trajectory starred_solution;
    Trajectory physical_solution;
};

TopferResult topfer_solve(const IntegratorConfig& integrator,
                          std::vector<double> checkpoints,
                          double agreement_tol = 1e-5);

// ---------------------------------------------------------------------------
// Iterative transformation
// ---------------------------------------------------------------------------

/// One probe of the transformation function: build the auxiliary initial
/// state, integrate to eta_inf, read lambda and Gamma. Integration failures
/// and non-positive lambda bases become status-coded probes (gamma = -1),
/// never exceptions. Pass `starred` to keep the integrated trajectory.
GammaEvaluation evaluate_gamma(const ProblemSpec& problem, double h_star,
                               const IntegratorConfig& integrator, double eta_inf,
                               Trajectory* starred = nullptr);

/// Sakiadis probe through the six-equation sensitivity system; also returns
/// the analytic dGamma/dh*. `starred` receives the (f, f', f'') slice.
std::pair<GammaEvaluation, double> evaluate_gamma_with_derivative(
    const ProblemSpec& problem, double h_star, const IntegratorConfig& integrator,
    double eta_inf, Trajectory* starred = nullptr);

struct SecantSeed {
    double h0 = 0.0;
    double h1 = 0.0;
};
struct NewtonSeed {
    double h0 = 0.0;
};
struct BracketSeed {
    double lo = 0.0;
    double hi = 0.0;
};
using FinderChoice = std::variant<SecantSeed, NewtonSeed, BracketSeed>;

/// Full run of the iterative method: root-find Gamma(h*) = 0 and rescale the
/// final starred trajectory to physical variables.
struct ItmRun {
    ProblemSpec problem;
    std::vector<IterationRecord> records;
    RootStatus finder_status = RootStatus::MaxIterExceeded;
    bool converged = false;
    double final_h_star = 0.0;
    double final_lambda = 0.0;
    double skin_friction = 0.0;
    double eta_inf = 0.0;
    Trajectory starred_solution;
    Trajectory physical_solution;
};

ItmRun itm_solve(const ProblemSpec& problem, const FinderChoice& finder,
                 const IntegratorConfig& integrator, double eta_inf,
                 const RootConfig& root_config);

// ---------------------------------------------------------------------------
// Existence / uniqueness diagnosis
// ---------------------------------------------------------------------------

/// Sampled profile of the transformation function. The number of brackets is
/// the numerical evidence for the number of solutions of the BVP.
struct GammaProfile {
    std::vector<GammaEvaluation> samples;
    std::vector<HBracket> brackets;
    int zero_count_evidence = 0;
};

GammaProfile gamma_profile(const ProblemSpec& problem, double h_min, double h_max,
                           int n_samples, const IntegratorConfig& integrator,
                           double eta_inf, ScanSpacing spacing = ScanSpacing::Logarithmic,
                           bool parallel = true);

/// One regula-falsi solve per scan bracket, ordered by h*. An empty result is
/// the nonexistence diagnosis, not an error.
std::vector<ItmRun> solve_all_branches(const ProblemSpec& problem, double h_min,
                                       double h_max, int n_samples,
                                       const IntegratorConfig& integrator, double eta_inf,
                                       const RootConfig& root_config,
                                       ScanSpacing spacing = ScanSpacing::Logarithmic,
                                       bool parallel = true);

// ---------------------------------------------------------------------------
// Fold-point continuation for Falkner-Skan
// ---------------------------------------------------------------------------

struct ContinuationControl {
    double initial_step = 1e-3;   // first decrement of beta
    double min_step = 1e-12;      // halving floor
    double skin_floor = 1e-5;     // fold declared when both |f''(0)| fall below
    double eta_shrink_threshold = 1e-3;  // switch to the short domain below this
    double eta_inf_far = 20.0;
    double eta_inf_near = 1.0;
    int max_levels = 400;
    double cold_h_min = 0.5;      // cold-start scan range for the first beta
    double cold_h_max = 1e7;
    int cold_samples = 64;
};

enum class ContinuationStatus {
    FoldReached,      // both branch skin frictions below the floor
    Stalled,          // step control bottomed out first
    NoBracketAtStart  // no Gamma zero at start_beta (beta below the fold)
};

const char* to_string(ContinuationStatus status);

struct ContinuationRow {
    double beta = 0.0;
    double h_star_normal = 0.0;
    double h_star_reverse = 0.0;
    double skin_normal = 0.0;
    double skin_reverse = 0.0;

    bool operator==(const ContinuationRow&) const = default;
};

struct ContinuationResult {
    ContinuationStatus status = ContinuationStatus::Stalled;
    std::vector<ContinuationRow> rows;  // beta descending
    double beta_min_estimate = 0.0;
};

/// March beta downward from start_beta, solving both branches (p = +1 normal,
/// p = -1 reverse) at each level, warm-starting each secant from the previous
/// root. The step halves whenever either branch is lost; the truncated
/// boundary shrinks near the fold where the starred layer thins.
ContinuationResult beta_min_continuation(double start_beta,
                                         const ContinuationControl& control,
                                         const IntegratorConfig& integrator,
                                         const RootConfig& root_config);

}  // namespace itm
