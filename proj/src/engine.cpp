#include "itm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itm {

namespace {

GammaEvaluation failed_probe(double h_star, ProbeStatus status) {
    GammaEvaluation eval;
    eval.h_star = h_star;
    eval.lambda = 0.0;
    eval.gamma = -1.0;  // sentinel: a failed probe reads as Gamma = -1
    eval.skin_friction = 0.0;
    eval.status = status;
    return eval;
}

ProbeStatus probe_status(IntegrationStatus status) {
    return status == IntegrationStatus::BlowUp ? ProbeStatus::BlowUp
                                               : ProbeStatus::StepFailure;
}

}  // namespace

// ---------------------------------------------------------------------------
// Non-iterative transformation
// ---------------------------------------------------------------------------

TopferResult topfer_solve(const IntegratorConfig& integrator,
                          std::vector<double> checkpoints, double agreement_tol) {
    if (checkpoints.empty()) throw std::invalid_argument("topfer: no checkpoints");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const double prev = i == 0 ? 0.0 : checkpoints[i - 1];
        if (!(checkpoints[i] > prev)) {
            throw std::invalid_argument("topfer: checkpoints must ascend and be positive");
        }
    }

    const ProblemSpec spec = blasius();
    const OdeSystem sys = auxiliary_system(spec, 1.0);
    const std::array<double, 3> y0 = auxiliary_initial_state(spec, 1.0);

    PiecewiseResult piecewise = integrate_through(sys, y0, 0.0, checkpoints, integrator);
    if (!piecewise.trajectory.completed()) {
        throw std::runtime_error("topfer: auxiliary integration failed before the last checkpoint");
    }

    TopferResult result;
    result.checkpoints = std::move(checkpoints);
    result.starred_solution = std::move(piecewise.trajectory);

    double previous_slope = 0.0;
    for (std::size_t j = 0; j < result.checkpoints.size(); ++j) {
        const double slope = result.starred_solution.value(piecewise.landing_indices[j], 1);
        if (!(slope > 0.0) || slope < previous_slope) {
            throw std::runtime_error("topfer: f*' must increase through the checkpoints");
        }
        previous_slope = slope;
        result.lambda_estimates.push_back(std::pow(slope, -1.5));
    }

    result.lambda_final = result.lambda_estimates.back();
    if (result.lambda_estimates.size() >= 2) {
        const auto n = result.lambda_estimates.size();
        result.agreement =
            std::abs(result.lambda_estimates[n - 1] - result.lambda_estimates[n - 2]);
        result.converged = result.agreement <= agreement_tol;
    } else {
        result.agreement = 0.0;
        result.converged = false;  // a single checkpoint cannot certify agreement
    }

    // lambda_final is the skin friction itself; the group parameter that maps
    // starred to physical variables is its -1/3 power.
    const double group_lambda = std::pow(result.lambda_final, -1.0 / 3.0);
    result.physical_solution =
        rescale_trajectory(result.starred_solution, group_lambda, spec.group);
    return result;
}

// ---------------------------------------------------------------------------
// Gamma probes
// ---------------------------------------------------------------------------

GammaEvaluation evaluate_gamma(const ProblemSpec& problem, double h_star,
                               const IntegratorConfig& integrator, double eta_inf,
                               Trajectory* starred) {
    if (!(h_star > 0.0)) throw std::invalid_argument("engine: h_star must be positive");
    if (!(eta_inf > 0.0)) throw std::invalid_argument("engine: eta_inf must be positive");

    const OdeSystem sys = auxiliary_system(problem, h_star);
    const std::array<double, 3> y0 = auxiliary_initial_state(problem, h_star);
    Trajectory traj = integrate(sys, y0, 0.0, eta_inf, integrator);
    if (!traj.completed()) return failed_probe(h_star, probe_status(traj.status));

    GammaEvaluation eval;
    eval.h_star = h_star;
    try {
        eval.lambda = lambda_from_endpoint(traj.back(1), h_star, problem.group, problem.asym);
    } catch (const ScalingDomainError&) {
        return failed_probe(h_star, ProbeStatus::StepFailure);
    }
    eval.gamma = gamma_value(h_star, eval.lambda, problem.group);
    eval.skin_friction = rescaled_skin_friction(eval.lambda, problem.group, problem.p);
    eval.status = ProbeStatus::Ok;
    if (starred) *starred = std::move(traj);
    return eval;
}

std::pair<GammaEvaluation, double> evaluate_gamma_with_derivative(
    const ProblemSpec& problem, double h_star, const IntegratorConfig& integrator,
    double eta_inf, Trajectory* starred) {
    if (problem.family != Family::Sakiadis || problem.p != -1) {
        throw std::invalid_argument(
            "engine: the sensitivity system exists for Sakiadis with p = -1 only");
    }
    if (!(h_star > 0.0)) throw std::invalid_argument("engine: h_star must be positive");

    const OdeSystem sys = sensitivity_system();
    const std::array<double, 6> u0 = sensitivity_initial_state(h_star);
    Trajectory traj = integrate(sys, u0, 0.0, eta_inf, integrator);
    if (!traj.completed()) {
        return {failed_probe(h_star, probe_status(traj.status)), 0.0};
    }

    GammaEvaluation eval;
    eval.h_star = h_star;
    double derivative = 0.0;
    try {
        eval.lambda =
            lambda_from_endpoint(traj.back(1), h_star, problem.group, problem.asym);
        derivative = gamma_derivative(traj.back(1), traj.back(4), h_star);
    } catch (const ScalingDomainError&) {
        return {failed_probe(h_star, ProbeStatus::StepFailure), 0.0};
    }
    eval.gamma = gamma_value(h_star, eval.lambda, problem.group);
    eval.skin_friction = rescaled_skin_friction(eval.lambda, problem.group, problem.p);
    eval.status = ProbeStatus::Ok;

    if (starred) {
        Trajectory slice;
        slice.dim = 3;
        slice.status = traj.status;
        slice.stop_eta = traj.stop_eta;
        slice.nodes = traj.nodes;
        slice.states.reserve(traj.size() * 3);
        for (std::size_t i = 0; i < traj.size(); ++i) {
            slice.states.push_back(traj.value(i, 0));
            slice.states.push_back(traj.value(i, 1));
            slice.states.push_back(traj.value(i, 2));
        }
        *starred = std::move(slice);
    }
    return {eval, derivative};
}

// ---------------------------------------------------------------------------
// Iterative driver
// ---------------------------------------------------------------------------

ItmRun itm_solve(const ProblemSpec& problem, const FinderChoice& finder,
                 const IntegratorConfig& integrator, double eta_inf,
                 const RootConfig& root_config) {
    ItmRun run;
    run.problem = problem;
    run.eta_inf = eta_inf;

    // Cache the starred trajectory of the most recent Ok probe: every finder
    // stops immediately after probing its root, so the cache holds the final
    // solution when the iteration converges.
    Trajectory cached;
    double cached_h = 0.0;
    GammaEvaluation cached_eval;

    GammaProbe probe = [&](double h) {
        if (!(h > 0.0)) return failed_probe(h, ProbeStatus::StepFailure);
        Trajectory traj;
        GammaEvaluation eval = evaluate_gamma(problem, h, integrator, eta_inf, &traj);
        if (eval.status == ProbeStatus::Ok) {
            cached = std::move(traj);
            cached_h = h;
            cached_eval = eval;
        }
        return eval;
    };

    GammaProbeWithDerivative newton_probe = [&](double h) {
        if (!(h > 0.0)) {
            return std::make_pair(failed_probe(h, ProbeStatus::StepFailure), 0.0);
        }
        Trajectory traj;
        auto [eval, d] =
            evaluate_gamma_with_derivative(problem, h, integrator, eta_inf, &traj);
        if (eval.status == ProbeStatus::Ok) {
            cached = std::move(traj);
            cached_h = h;
            cached_eval = eval;
        }
        return std::make_pair(eval, d);
    };

    RootResult rr;
    if (const auto* secant = std::get_if<SecantSeed>(&finder)) {
        rr = secant_solve(probe, secant->h0, secant->h1, root_config);
    } else if (const auto* newton = std::get_if<NewtonSeed>(&finder)) {
        rr = newton_solve(newton_probe, newton->h0, root_config);
    } else {
        const auto& bracket = std::get<BracketSeed>(finder);
        rr = regula_falsi_solve(probe, bracket.lo, bracket.hi, root_config);
    }

    run.records = std::move(rr.log);
    run.finder_status = rr.status;
    run.final_h_star = rr.root;
    if (rr.status != RootStatus::Converged) return run;

    if (cached_h != rr.root) {
        // Unreachable by construction; refresh honestly if it ever trips.
        GammaEvaluation eval = probe(rr.root);
        run.records.push_back({static_cast<int>(run.records.size()), eval.h_star,
                               eval.gamma, eval.lambda, eval.skin_friction, eval.status});
        if (eval.status != ProbeStatus::Ok) return run;
    }

    run.converged = true;
    run.final_lambda = cached_eval.lambda;
    run.skin_friction = cached_eval.skin_friction;
    run.starred_solution = cached;
    run.physical_solution =
        rescale_trajectory(cached, cached_eval.lambda, problem.group);
    return run;
}

// ---------------------------------------------------------------------------
// Profiles and branches
// ---------------------------------------------------------------------------

GammaProfile gamma_profile(const ProblemSpec& problem, double h_min, double h_max,
                           int n_samples, const IntegratorConfig& integrator,
                           double eta_inf, ScanSpacing spacing, bool parallel) {
    GammaProbe probe = [&](double h) {
        return evaluate_gamma(problem, h, integrator, eta_inf);
    };
    ScanResult scan = bracket_scan(probe, h_min, h_max, n_samples, spacing, parallel);
    GammaProfile profile;
    profile.samples = std::move(scan.samples);
    profile.brackets = std::move(scan.brackets);
    profile.zero_count_evidence = static_cast<int>(profile.brackets.size());
    return profile;
}

std::vector<ItmRun> solve_all_branches(const ProblemSpec& problem, double h_min,
                                       double h_max, int n_samples,
                                       const IntegratorConfig& integrator, double eta_inf,
                                       const RootConfig& root_config, ScanSpacing spacing,
                                       bool parallel) {
    const GammaProfile profile =
        gamma_profile(problem, h_min, h_max, n_samples, integrator, eta_inf, spacing, parallel);

    std::vector<ItmRun> runs;
    for (const HBracket& bracket : profile.brackets) {
        if (bracket.degenerate()) {
            // The sample itself is a root; one confirming probe records it.
            ItmRun run;
            run.problem = problem;
            run.eta_inf = eta_inf;
            Trajectory traj;
            GammaEvaluation eval =
                evaluate_gamma(problem, bracket.lo, integrator, eta_inf, &traj);
            run.records.push_back({0, eval.h_star, eval.gamma, eval.lambda,
                                   eval.skin_friction, eval.status});
            if (eval.status == ProbeStatus::Ok &&
                std::abs(eval.gamma) <= root_config.tol_gamma) {
                run.converged = true;
                run.finder_status = RootStatus::Converged;
                run.final_h_star = eval.h_star;
                run.final_lambda = eval.lambda;
                run.skin_friction = eval.skin_friction;
                run.starred_solution = traj;
                run.physical_solution =
                    rescale_trajectory(traj, eval.lambda, problem.group);
            }
            runs.push_back(std::move(run));
            continue;
        }
        runs.push_back(itm_solve(problem, BracketSeed{bracket.lo, bracket.hi}, integrator,
                                 eta_inf, root_config));
    }
    std::sort(runs.begin(), runs.end(),
              [](const ItmRun& a, const ItmRun& b) { return a.final_h_star < b.final_h_star; });
    return runs;
}

// ---------------------------------------------------------------------------
// Continuation toward the fold
// ---------------------------------------------------------------------------

const char* to_string(ContinuationStatus status) {
    switch (status) {
        case ContinuationStatus::FoldReached: return "fold-reached";
        case ContinuationStatus::Stalled: return "stalled";
        case ContinuationStatus::NoBracketAtStart: return "no-bracket-at-start";
    }
    return "unknown";
}

namespace {

struct BranchState {
    double h_star = 0.0;
    double skin = 0.0;
    bool valid = false;
};

/// Solve one branch at a fresh beta, warm-started from the previous root.
BranchState continue_branch(double beta, int p, double h_prev,
                            const IntegratorConfig& integrator, double eta_inf,
                            const RootConfig& root_config) {
    const ProblemSpec spec = falkner_skan(beta, p);
    const ItmRun run = itm_solve(spec, SecantSeed{h_prev, 1.05 * h_prev}, integrator,
                                 eta_inf, root_config);
    BranchState state;
    if (!run.converged) return state;
    // Guard against hopping onto the other branch: the sign of the skin
    // friction must match the branch selector.
    if (p > 0 ? !(run.skin_friction > 0.0) : !(run.skin_friction < 0.0)) return state;
    state.h_star = run.final_h_star;
    state.skin = run.skin_friction;
    state.valid = true;
    return state;
}

BranchState cold_start_branch(double beta, int p, const ContinuationControl& control,
                              const IntegratorConfig& integrator,
                              const RootConfig& root_config) {
    const ProblemSpec spec = falkner_skan(beta, p);
    const GammaProfile profile =
        gamma_profile(spec, control.cold_h_min, control.cold_h_max, control.cold_samples,
                      integrator, control.eta_inf_far, ScanSpacing::Logarithmic, true);
    BranchState state;
    if (profile.brackets.empty()) return state;
    const HBracket& bracket = profile.brackets.front();
    const ItmRun run =
        itm_solve(spec,
                  bracket.degenerate()
                      ? FinderChoice{BracketSeed{bracket.lo * 0.99, bracket.lo * 1.01}}
                      : FinderChoice{BracketSeed{bracket.lo, bracket.hi}},
                  integrator, control.eta_inf_far, root_config);
    if (!run.converged) return state;
    state.h_star = run.final_h_star;
    state.skin = run.skin_friction;
    state.valid = true;
    return state;
}

}  // namespace

ContinuationResult beta_min_continuation(double start_beta,
                                         const ContinuationControl& control,
                                         const IntegratorConfig& integrator,
                                         const RootConfig& root_config) {
    if (!(start_beta < 0.0)) {
        throw std::invalid_argument("continuation: start_beta must be negative");
    }

    ContinuationResult result;

    BranchState normal = cold_start_branch(start_beta, +1, control, integrator, root_config);
    BranchState reverse = cold_start_branch(start_beta, -1, control, integrator, root_config);
    if (!normal.valid || !reverse.valid) {
        result.status = ContinuationStatus::NoBracketAtStart;
        result.beta_min_estimate = start_beta;
        return result;
    }

    double beta = start_beta;
    result.rows.push_back({beta, normal.h_star, reverse.h_star, normal.skin, reverse.skin});

    double step = control.initial_step;
    for (int level = 0; level < control.max_levels; ++level) {
        if (std::abs(normal.skin) < control.skin_floor &&
            std::abs(reverse.skin) < control.skin_floor) {
            result.status = ContinuationStatus::FoldReached;
            result.beta_min_estimate = beta;
            return result;
        }
        if (step < control.min_step) break;

        const double beta_try = beta - step;
        const bool near_fold = std::abs(normal.skin) < control.eta_shrink_threshold &&
                               std::abs(reverse.skin) < control.eta_shrink_threshold;
        const double eta_inf = near_fold ? control.eta_inf_near : control.eta_inf_far;

        BranchState normal_try =
            continue_branch(beta_try, +1, normal.h_star, integrator, eta_inf, root_config);
        BranchState reverse_try =
            continue_branch(beta_try, -1, reverse.h_star, integrator, eta_inf, root_config);

        if (normal_try.valid && reverse_try.valid) {
            beta = beta_try;
            normal = normal_try;
            reverse = reverse_try;
            result.rows.push_back(
                {beta, normal.h_star, reverse.h_star, normal.skin, reverse.skin});
        } else {
            step *= 0.5;
        }
    }

    result.status = ContinuationStatus::Stalled;
    result.beta_min_estimate = beta;
    return result;
}

}  // namespace itm
