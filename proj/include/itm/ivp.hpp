#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace itm {

/// Outcome of an initial value integration.
///
/// BlowUp and StepFailure are expected outcomes for the transformation-method
/// drivers (a probe that escapes the magnitude cap is rejected, not fatal).
enum class IntegrationStatus { Completed, BlowUp, StepFailure };

/// First-order ODE system y' = rhs(eta, y).
struct OdeSystem {
    std::size_t dimension = 0;
    std::function<void(double, std::span<const double>, std::span<double>)> rhs;
};

/// Dense record of an IVP sweep: every accepted node and its state vector.
struct Trajectory {
    std::size_t dim = 0;
    std::vector<double> nodes;    // strictly increasing abscissae
    std::vector<double> states;   // row-major, nodes.size() * dim
    IntegrationStatus status = IntegrationStatus::Completed;
    double stop_eta = 0.0;        // last node on success, failure point otherwise

    std::size_t size() const { return nodes.size(); }
    bool completed() const { return status == IntegrationStatus::Completed; }

    std::span<const double> state(std::size_t i) const {
        return {states.data() + i * dim, dim};
    }
    double value(std::size_t i, std::size_t comp) const { return states[i * dim + comp]; }
    std::span<const double> back_state() const { return state(nodes.size() - 1); }
    double back(std::size_t comp) const { return back_state()[comp]; }

    /// Piecewise-linear sample of one component; eta clamped to the node range.
    double interpolate(double eta, std::size_t comp) const;
};

/// Classical RK4 with a uniform step (the last step lands exactly on eta_b).
struct FixedRk4 {
    double step = 0.1;
};

/// Embedded Runge-Kutta-Fehlberg 4(5) pair with per-component control
/// err_i <= rel_tol*|y_i| + abs_tol. The higher-order solution is advanced.
struct AdaptiveRkf45 {
    double rel_tol = 1e-6;
    double abs_tol = 1e-6;
    double initial_step = 1e-3;
    double min_step = 1e-12;
    double max_step = 1.0;
};

struct IntegratorConfig {
    std::variant<FixedRk4, AdaptiveRkf45> mode = AdaptiveRkf45{};
    double blowup_threshold = 1e8;  // component-magnitude cap
};

Trajectory integrate_fixed(const OdeSystem& system, std::span<const double> y0,
                           double eta_a, double eta_b, double step,
                           double blowup_threshold = 1e8);

Trajectory integrate_adaptive(const OdeSystem& system, std::span<const double> y0,
                              double eta_a, double eta_b, const AdaptiveRkf45& cfg,
                              double blowup_threshold = 1e8);

/// Dispatch on config.mode.
Trajectory integrate(const OdeSystem& system, std::span<const double> y0,
                     double eta_a, double eta_b, const IntegratorConfig& config);

/// Integrate through a list of interior landing points (ascending, all > eta_a),
/// concatenating the segments into one trajectory with exact nodes at each point.
struct PiecewiseResult {
    Trajectory trajectory;
    std::vector<std::size_t> landing_indices;  // node index of each requested point
};
PiecewiseResult integrate_through(const OdeSystem& system, std::span<const double> y0,
                                  double eta_a, std::span<const double> points,
                                  const IntegratorConfig& config);

/// One-step RK4 defect of a stored trajectory against `system`, normalized per
/// unit abscissa: max over intervals and components of
/// |rk4_step(state_i) - state_{i+1}| / h_i. A consistency measure for
/// rescaled or deserialized trajectories.
double max_ode_defect(const Trajectory& traj, const OdeSystem& system);

}  // namespace itm
