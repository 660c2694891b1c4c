// Scratch driver used while calibrating the test fixtures. Not a test.
#include <cmath>
#include <cstdio>

#include "itm/engine.hpp"
#include "itm/oracles.hpp"

using namespace itm;

int main() {
    IntegratorConfig adaptive;  // defaults: rkf45 1e-6/1e-6, cap 1e8

    std::printf("== Blasius auxiliary ==\n");
    {
        auto traj = integrate_fixed(auxiliary_system(blasius(), 1.0),
                                    auxiliary_initial_state(blasius(), 1.0), 0.0, 10.0, 0.01);
        std::printf("fixed 0.01: f*'(10) = %.8f (want 2.085393)\n", traj.back(1));
        auto t2 = topfer_solve(adaptive, {4.0, 6.0});
        std::printf("topfer adaptive {4,6}: l4=%.9f l6=%.9f agree=%.2e\n",
                    t2.lambda_estimates[0], t2.lambda_estimates[1], t2.agreement);
        IntegratorConfig fixed01{FixedRk4{0.1}, 1e8};
        auto t3 = topfer_solve(fixed01, {4.0, 6.0});
        std::printf("topfer fixed 0.1 {4,6}: l4=%.9f l6=%.9f agree=%.2e\n",
                    t3.lambda_estimates[0], t3.lambda_estimates[1], t3.agreement);
        IntegratorConfig tight{AdaptiveRkf45{1e-8, 1e-8, 1e-3, 1e-14, 1.0}, 1e8};
        auto t4 = topfer_solve(tight, {6.0});
        std::printf("topfer adaptive 1e-8 {6}: lambda=%.10f (want 0.332057687)\n",
                    t4.lambda_final);
        auto t5 = topfer_solve(tight, {10.0});
        std::printf("topfer adaptive 1e-8 {10}: lambda=%.12f (want 0.33205733621)\n",
                    t5.lambda_final);
        IntegratorConfig tighter{AdaptiveRkf45{1e-10, 1e-10, 1e-3, 1e-14, 1.0}, 1e8};
        auto t6 = topfer_solve(tighter, {10.0});
        std::printf("topfer adaptive 1e-10 {10}: lambda=%.14f\n", t6.lambda_final);
    }

    std::printf("\n== Sakiadis secant from (2.5, 3.5) ==\n");
    {
        auto run = itm_solve(sakiadis(), SecantSeed{2.5, 3.5}, adaptive, 10.0, RootConfig{});
        for (const auto& rec : run.records) {
            std::printf("j=%2d h*=%.6f lambda=%.6f Gamma=%+.3e f''(0)=%.6f %s\n",
                        rec.index, rec.h_star, rec.lambda, rec.gamma, rec.skin_friction,
                        to_string(rec.status));
        }
        std::printf("final: h*=%.6f lambda=%.6f skin=%.6f probes=%zu conv=%d\n",
                    run.final_h_star, run.final_lambda, run.skin_friction,
                    run.records.size(), run.converged);
    }

    std::printf("\n== Sakiadis newton from 2.5 ==\n");
    {
        auto run = itm_solve(sakiadis(), NewtonSeed{2.5}, adaptive, 10.0, RootConfig{});
        for (const auto& rec : run.records) {
            std::printf("j=%2d h*=%.6f Gamma=%+.3e f''(0)=%.6f\n", rec.index, rec.h_star,
                        rec.gamma, rec.skin_friction);
        }
        std::printf("final: h*=%.6f lambda=%.6f skin=%.6f probes=%zu\n", run.final_h_star,
                    run.final_lambda, run.skin_friction, run.records.size());
        for (double h : {2.0, 2.954391, 4.0}) {
            auto [eval, deriv] = evaluate_gamma_with_derivative(sakiadis(), h, adaptive, 10.0);
            const double eps = 1e-5;
            auto lo = evaluate_gamma(sakiadis(), h - eps, adaptive, 10.0);
            auto hi = evaluate_gamma(sakiadis(), h + eps, adaptive, 10.0);
            const double fd = (hi.gamma - lo.gamma) / (2 * eps);
            std::printf("h*=%.6f dG/dh analytic=%.8f fd=%.8f diff=%.2e\n", h, deriv, fd,
                        std::abs(deriv - fd));
        }
    }

    std::printf("\n== Slip table ==\n");
    for (double c : {0.0, 1.0, 5.0, 10.0, 50.0}) {
        auto run = itm_solve(slip_flow(c), BracketSeed{0.1, 1.0}, adaptive, 10.0, RootConfig{});
        if (!run.converged) {
            std::printf("c=%g NOT CONVERGED status=%s probes=%zu\n", c,
                        to_string(run.finder_status), run.records.size());
            continue;
        }
        const double fp0 = run.physical_solution.value(0, 1);
        std::printf("c=%4.1f h*=%.6f fstar'(inf)=%.6f f'(0)=%.6f f''(0)=%.6f probes=%zu\n",
                    c, run.final_h_star, run.starred_solution.back(1), fp0,
                    run.skin_friction, run.records.size());
    }

    std::printf("\n== Moving surface ==\n");
    {
        auto profile = gamma_profile(moving_surface(-0.25), 1.0, 150.0, 32, adaptive, 10.0);
        std::printf("b=-0.25 [1,150]x32: %d brackets\n", profile.zero_count_evidence);
        auto g1 = evaluate_gamma(moving_surface(-0.25), 1.0, adaptive, 10.0);
        std::printf("Gamma(1) = %.6f (want -0.528765)\n", g1.gamma);
        auto runs = solve_all_branches(moving_surface(-0.25), 1.0, 150.0, 64, adaptive,
                                       10.0, RootConfig{});
        for (const auto& run : runs) {
            std::printf("branch h*=%.6f lambda=%.6f f''(0)=%.6f f'(0)=%.6f probes=%zu\n",
                        run.final_h_star, run.final_lambda, run.skin_friction,
                        run.physical_solution.value(0, 1), run.records.size());
        }
        auto none = gamma_profile(moving_surface(-0.4), 1.0, 150.0, 64, adaptive, 10.0);
        std::printf("b=-0.40 [1,150]x64: %d brackets\n", none.zero_count_evidence);
        auto nearc = solve_all_branches(moving_surface(-0.3541), 1.0, 150.0, 64, adaptive,
                                        10.0, RootConfig{});
        std::printf("b=-0.3541: %zu runs:", nearc.size());
        for (const auto& run : nearc) std::printf(" %.6f", run.skin_friction);
        std::printf("\n");
    }

    std::printf("\n== Falkner-Skan beta=-0.01 ==\n");
    {
        auto normal = itm_solve(falkner_skan(-0.01, +1), SecantSeed{5.0, 10.0}, adaptive,
                                20.0, RootConfig{});
        for (const auto& rec : normal.records) {
            std::printf("j=%d h*=%.6f Gamma=%+.4e skin=%.6f\n", rec.index, rec.h_star,
                        rec.gamma, rec.skin_friction);
        }
        std::printf("normal: h*=%.6f skin=%.6f (want 2.845355, 0.456455)\n",
                    normal.final_h_star, normal.skin_friction);
        auto reverse = itm_solve(falkner_skan(-0.01, -1), SecantSeed{75.0, 150.0}, adaptive,
                                 20.0, RootConfig{});
        std::printf("reverse: h*=%.6f skin=%.6f probes=%zu (want 67.804746, -0.042321)\n",
                    reverse.final_h_star, reverse.skin_friction, reverse.records.size());
        auto g75 = evaluate_gamma(falkner_skan(-0.01, -1), 75.0, adaptive, 20.0);
        std::printf("Gamma(75) = %.6f skin=%.6f (want 0.731890, -0.059237)\n", g75.gamma,
                    g75.skin_friction);
    }

    std::printf("\n== Falkner-Skan reverse sweep (15, 25) ==\n");
    for (double beta : {-0.025, -0.05, -0.1, -0.15, -0.18}) {
        auto run = itm_solve(falkner_skan(beta, -1), SecantSeed{15.0, 25.0}, adaptive, 20.0,
                             RootConfig{});
        std::printf("beta=%-7g skin=%.6f h*=%.6f probes=%zu conv=%d\n", beta,
                    run.skin_friction, run.final_h_star, run.records.size(), run.converged);
    }

    std::printf("\n== FS blow-up fixture scan (beta=-0.15, p=-1) ==\n");
    {
        const ProblemSpec spec = falkner_skan(-0.15, -1);
        for (double h = 100.0; h <= 1e7; h *= 2.0) {
            const OdeSystem sys = auxiliary_system(spec, h);
            const auto y0 = auxiliary_initial_state(spec, h);
            auto traj = integrate(sys, y0, 0.0, 20.0, adaptive);
            if (!traj.completed()) {
                std::printf("first blow-up at h*=%g status=%d stop_eta=%.4f\n", h,
                            static_cast<int>(traj.status), traj.stop_eta);
                break;
            }
        }
    }

    std::printf("\n== Rubel bound ==\n");
    {
        IntegratorConfig tight{AdaptiveRkf45{1e-9, 1e-9, 1e-3, 1e-14, 0.5}, 1e8};
        for (double M : {4.0, 6.0, 8.0}) {
            auto shot = shooting_oracle(falkner_skan(0.0), 0.3, 0.7, M, tight, 1e-10);
            auto bound = rubel_error_bound(shot.trajectory, M);
            std::printf("M=%g s=%.8f f(M)=%.8f f''(M)=%.3e bound=%.3e\n", M, shot.s,
                        bound.f_at_M, bound.fsecond_at_M, bound.bound);
        }
    }

    std::printf("\n== Shooting oracle ==\n");
    {
        IntegratorConfig tight{AdaptiveRkf45{1e-10, 1e-10, 1e-3, 1e-14, 0.5}, 1e8};
        auto bl = shooting_oracle(blasius(), 0.3, 0.4, 10.0, tight, 1e-8);
        std::printf("blasius s=%.8f (want 0.33205733)\n", bl.s);
        auto sk = shooting_oracle(sakiadis(), -0.5, -0.4, 10.0, tight, 1e-8);
        std::printf("sakiadis s=%.8f (want -0.443761)\n", sk.s);
        try {
            auto fs = shooting_oracle(falkner_skan(-0.1, -1), -0.2, -0.05, 20.0, tight, 1e-8);
            std::printf("fs beta=-0.1 reverse s=%.8f evals=%d (want -0.140546)\n", fs.s,
                        fs.evaluations);
        } catch (const OracleError& e) {
            std::printf("fs beta=-0.1 reverse FAILED: %s\n", e.what());
        }
        try {
            auto fsn = shooting_oracle(falkner_skan(-0.01, +1), 0.4, 0.5, 20.0, tight, 1e-8);
            std::printf("fs beta=-0.01 normal s=%.8f (want 0.456455)\n", fsn.s);
        } catch (const OracleError& e) {
            std::printf("fs beta=-0.01 normal FAILED: %s\n", e.what());
        }
    }

    std::printf("\n== Profiles ==\n");
    {
        auto p1 = gamma_profile(sakiadis(-1), 0.5, 10.0, 32, adaptive, 10.0);
        std::printf("sakiadis p=-1 [0.5,10]: %d brackets\n", p1.zero_count_evidence);
        auto p2 = gamma_profile(sakiadis(+1), 0.1, 50.0, 32, adaptive, 10.0);
        int ok = 0, failed = 0;
        for (const auto& s : p2.samples) (s.status == ProbeStatus::Ok ? ok : failed)++;
        std::printf("sakiadis p=+1 [0.1,50]: %d brackets (ok=%d failed=%d)\n",
                    p2.zero_count_evidence, ok, failed);
    }

    std::printf("\n== Continuation from -0.1988 ==\n");
    {
        auto res = beta_min_continuation(-0.1988, ContinuationControl{}, adaptive, RootConfig{});
        std::printf("status=%s levels=%zu beta_min=%.12f\n", to_string(res.status),
                    res.rows.size(), res.beta_min_estimate);
        if (!res.rows.empty()) {
            const auto& first = res.rows.front();
            const auto& last = res.rows.back();
            std::printf("start: beta=%.6f skins=%.6f/%.6f h=%g/%g\n", first.beta,
                        first.skin_normal, first.skin_reverse, first.h_star_normal,
                        first.h_star_reverse);
            std::printf("end:   beta=%.12f skins=%.3e/%.3e h=%g/%g\n", last.beta,
                        last.skin_normal, last.skin_reverse, last.h_star_normal,
                        last.h_star_reverse);
        }
    }

    std::printf("\n== beta=-0.21 diagnosis ==\n");
    {
        auto res = beta_min_continuation(-0.21, ContinuationControl{}, adaptive, RootConfig{});
        std::printf("continuation status=%s\n", to_string(res.status));
        auto run = itm_solve(falkner_skan(-0.21, -1), SecantSeed{15.0, 25.0}, adaptive, 20.0,
                             RootConfig{});
        std::printf("itm_solve: conv=%d status=%s probes=%zu\n", run.converged,
                    to_string(run.finder_status), run.records.size());
    }
    return 0;
}
