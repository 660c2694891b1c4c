#include "itm/ivp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itm {

namespace {

bool all_finite(std::span<const double> v) {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

bool exceeds_cap(std::span<const double> v, double cap) {
    for (double x : v) {
        if (std::abs(x) > cap) return true;
    }
    return false;
}

void check_inputs(const OdeSystem& system, std::span<const double> y0, double eta_a,
                  double eta_b) {
    if (system.dimension == 0 || !system.rhs) {
        throw std::invalid_argument("ivp: system has no dimension or rhs");
    }
    if (y0.size() != system.dimension) {
        throw std::invalid_argument("ivp: initial state dimension mismatch");
    }
    if (!(eta_a < eta_b)) {
        throw std::invalid_argument("ivp: require eta_a < eta_b");
    }
    if (!all_finite(y0)) {
        throw std::invalid_argument("ivp: non-finite initial state");
    }
}

void push_node(Trajectory& traj, double eta, std::span<const double> y) {
    traj.nodes.push_back(eta);
    traj.states.insert(traj.states.end(), y.begin(), y.end());
}

/// One classical RK4 step; kbuf holds 5*n scratch doubles.
void rk4_step(const OdeSystem& sys, double eta, std::span<const double> y, double h,
              std::span<double> out, std::span<double> kbuf) {
    const std::size_t n = sys.dimension;
    auto k1 = kbuf.subspan(0, n);
    auto k2 = kbuf.subspan(n, n);
    auto k3 = kbuf.subspan(2 * n, n);
    auto k4 = kbuf.subspan(3 * n, n);
    auto tmp = kbuf.subspan(4 * n, n);

    sys.rhs(eta, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    sys.rhs(eta + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    sys.rhs(eta + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    sys.rhs(eta + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

// Runge-Kutta-Fehlberg 4(5) tableau.
constexpr double kC[6] = {0.0, 1.0 / 4.0, 3.0 / 8.0, 12.0 / 13.0, 1.0, 1.0 / 2.0};
constexpr double kA21 = 1.0 / 4.0;
constexpr double kA31 = 3.0 / 32.0, kA32 = 9.0 / 32.0;
constexpr double kA41 = 1932.0 / 2197.0, kA42 = -7200.0 / 2197.0, kA43 = 7296.0 / 2197.0;
constexpr double kA51 = 439.0 / 216.0, kA52 = -8.0, kA53 = 3680.0 / 513.0,
                 kA54 = -845.0 / 4104.0;
constexpr double kA61 = -8.0 / 27.0, kA62 = 2.0, kA63 = -3544.0 / 2565.0,
                 kA64 = 1859.0 / 4104.0, kA65 = -11.0 / 40.0;
constexpr double kB4[6] = {25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0,
                           -1.0 / 5.0, 0.0};
constexpr double kB5[6] = {16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0,
                           -9.0 / 50.0, 2.0 / 55.0};

}  // namespace

double Trajectory::interpolate(double eta, std::size_t comp) const {
    if (nodes.empty()) throw std::out_of_range("trajectory: empty");
    if (eta <= nodes.front()) return value(0, comp);
    if (eta >= nodes.back()) return value(nodes.size() - 1, comp);
    auto it = std::upper_bound(nodes.begin(), nodes.end(), eta);
    const std::size_t hi = static_cast<std::size_t>(it - nodes.begin());
    const std::size_t lo = hi - 1;
    const double w = (eta - nodes[lo]) / (nodes[hi] - nodes[lo]);
    return (1.0 - w) * value(lo, comp) + w * value(hi, comp);
}

Trajectory integrate_fixed(const OdeSystem& system, std::span<const double> y0,
                           double eta_a, double eta_b, double step,
                           double blowup_threshold) {
    check_inputs(system, y0, eta_a, eta_b);
    if (!(step > 0.0)) throw std::invalid_argument("ivp: step must be positive");

    const std::size_t n = system.dimension;
    Trajectory traj;
    traj.dim = n;
    push_node(traj, eta_a, y0);
    if (exceeds_cap(y0, blowup_threshold)) {
        traj.status = IntegrationStatus::BlowUp;
        traj.stop_eta = eta_a;
        return traj;
    }

    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> ynew(n);
    std::vector<double> kbuf(5 * n);
    double eta = eta_a;
    while (true) {
        const double rem = eta_b - eta;
        if (rem <= step * 1e-12) break;
        const bool last = rem <= step * (1.0 + 1e-12);
        const double h = last ? rem : step;
        rk4_step(system, eta, y, h, ynew, kbuf);
        const double eta_new = last ? eta_b : eta + step;
        if (!all_finite(ynew)) {
            traj.status = IntegrationStatus::StepFailure;
            traj.stop_eta = eta_new;
            return traj;
        }
        push_node(traj, eta_new, ynew);
        if (exceeds_cap(ynew, blowup_threshold)) {
            traj.status = IntegrationStatus::BlowUp;
            traj.stop_eta = eta_new;
            return traj;
        }
        eta = eta_new;
        y = ynew;
        if (last) break;
    }
    traj.status = IntegrationStatus::Completed;
    traj.stop_eta = traj.nodes.back();
    return traj;
}

Trajectory integrate_adaptive(const OdeSystem& system, std::span<const double> y0,
                              double eta_a, double eta_b, const AdaptiveRkf45& cfg,
                              double blowup_threshold) {
    check_inputs(system, y0, eta_a, eta_b);
    if (!(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0) ||
        !(cfg.abs_tol > 0.0 && cfg.abs_tol < 1.0)) {
        throw std::invalid_argument("ivp: tolerances must lie in (0, 1)");
    }
    if (!(cfg.min_step > 0.0) || !(cfg.min_step <= cfg.initial_step) ||
        !(cfg.initial_step <= cfg.max_step)) {
        throw std::invalid_argument("ivp: require min_step <= initial_step <= max_step");
    }

    const std::size_t n = system.dimension;
    Trajectory traj;
    traj.dim = n;
    push_node(traj, eta_a, y0);
    if (exceeds_cap(y0, blowup_threshold)) {
        traj.status = IntegrationStatus::BlowUp;
        traj.stop_eta = eta_a;
        return traj;
    }

    std::vector<double> y(y0.begin(), y0.end());
    std::vector<double> k(6 * n), tmp(n), y5(n);
    auto ki = [&](int s) { return std::span<double>(k.data() + s * n, n); };

    double eta = eta_a;
    double h = std::min(cfg.initial_step, eta_b - eta_a);

    while (true) {
        const double rem = eta_b - eta;
        if (rem <= 0.0) break;
        bool last = false;
        if (h >= rem * (1.0 - 1e-12)) {
            h = rem;
            last = true;
        }

        system.rhs(eta, y, ki(0));
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * kA21 * k[i];
        system.rhs(eta + kC[1] * h, tmp, ki(1));
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (kA31 * k[i] + kA32 * k[n + i]);
        system.rhs(eta + kC[2] * h, tmp, ki(2));
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (kA41 * k[i] + kA42 * k[n + i] + kA43 * k[2 * n + i]);
        system.rhs(eta + kC[3] * h, tmp, ki(3));
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (kA51 * k[i] + kA52 * k[n + i] + kA53 * k[2 * n + i] +
                                 kA54 * k[3 * n + i]);
        system.rhs(eta + kC[4] * h, tmp, ki(4));
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (kA61 * k[i] + kA62 * k[n + i] + kA63 * k[2 * n + i] +
                                 kA64 * k[3 * n + i] + kA65 * k[4 * n + i]);
        system.rhs(eta + kC[5] * h, tmp, ki(5));

        double ratio = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            double acc5 = 0.0, acc4 = 0.0;
            for (int s = 0; s < 6; ++s) {
                acc5 += kB5[s] * k[static_cast<std::size_t>(s) * n + i];
                acc4 += kB4[s] * k[static_cast<std::size_t>(s) * n + i];
            }
            y5[i] = y[i] + h * acc5;
            const double err = std::abs(h * (acc5 - acc4));
            if (!std::isfinite(y5[i]) || !std::isfinite(err)) {
                finite = false;
                break;
            }
            const double scale =
                cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i])) + cfg.abs_tol;
            ratio = std::max(ratio, err / scale);
        }

        if (finite && ratio <= 1.0) {
            const double eta_new = last ? eta_b : eta + h;
            push_node(traj, eta_new, y5);
            if (exceeds_cap(y5, blowup_threshold)) {
                traj.status = IntegrationStatus::BlowUp;
                traj.stop_eta = eta_new;
                return traj;
            }
            eta = eta_new;
            y = y5;
            if (last) break;
            const double grow =
                std::min(5.0, 0.9 * std::pow(std::max(ratio, 1e-30), -0.2));
            h = std::clamp(h * std::max(grow, 0.2), cfg.min_step, cfg.max_step);
        } else {
            const double shrink =
                finite ? std::max(0.1, 0.9 * std::pow(ratio, -0.25)) : 0.1;
            h *= shrink;
            if (h < cfg.min_step) {
                traj.status = IntegrationStatus::StepFailure;
                traj.stop_eta = eta;
                return traj;
            }
        }
    }
    traj.status = IntegrationStatus::Completed;
    traj.stop_eta = traj.nodes.back();
    return traj;
}

Trajectory integrate(const OdeSystem& system, std::span<const double> y0, double eta_a,
                     double eta_b, const IntegratorConfig& config) {
    if (const auto* fixed = std::get_if<FixedRk4>(&config.mode)) {
        return integrate_fixed(system, y0, eta_a, eta_b, fixed->step,
                               config.blowup_threshold);
    }
    return integrate_adaptive(system, y0, eta_a, eta_b,
                              std::get<AdaptiveRkf45>(config.mode),
                              config.blowup_threshold);
}

PiecewiseResult integrate_through(const OdeSystem& system, std::span<const double> y0,
                                  double eta_a, std::span<const double> points,
                                  const IntegratorConfig& config) {
    if (points.empty()) throw std::invalid_argument("ivp: no landing points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double prev = i == 0 ? eta_a : points[i - 1];
        if (!(points[i] > prev)) {
            throw std::invalid_argument("ivp: landing points must ascend from eta_a");
        }
    }

    PiecewiseResult result;
    std::vector<double> y(y0.begin(), y0.end());
    double eta = eta_a;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Trajectory seg = integrate(system, y, eta, points[i], config);
        const std::size_t offset = result.trajectory.nodes.size();
        if (offset == 0) {
            result.trajectory = seg;
        } else {
            // drop the duplicated segment start
            result.trajectory.nodes.insert(result.trajectory.nodes.end(),
                                           seg.nodes.begin() + 1, seg.nodes.end());
            result.trajectory.states.insert(result.trajectory.states.end(),
                                            seg.states.begin() + seg.dim,
                                            seg.states.end());
            result.trajectory.status = seg.status;
            result.trajectory.stop_eta = seg.stop_eta;
        }
        if (!seg.completed()) return result;
        result.landing_indices.push_back(result.trajectory.nodes.size() - 1);
        auto back = result.trajectory.back_state();
        y.assign(back.begin(), back.end());
        eta = points[i];
    }
    return result;
}

double max_ode_defect(const Trajectory& traj, const OdeSystem& system) {
    if (traj.dim != system.dimension) {
        throw std::invalid_argument("defect: dimension mismatch");
    }
    std::vector<double> out(traj.dim), kbuf(5 * traj.dim);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double h = traj.nodes[i + 1] - traj.nodes[i];
        rk4_step(system, traj.nodes[i], traj.state(i), h, out, kbuf);
        for (std::size_t c = 0; c < traj.dim; ++c) {
            worst = std::max(worst, std::abs(out[c] - traj.value(i + 1, c)) / h);
        }
    }
    return worst;
}

}  // namespace itm
