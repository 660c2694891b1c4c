#include "itm/root_finding.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace itm {

const char* to_string(RootStatus status) {
    switch (status) {
        case RootStatus::Converged: return "converged";
        case RootStatus::MaxIterExceeded: return "max-iter-exceeded";
        case RootStatus::DegenerateSecant: return "degenerate-secant";
        case RootStatus::FailedProbeRecovery: return "failed-probe-recovery";
        case RootStatus::ZeroDerivative: return "zero-derivative";
        case RootStatus::InvalidBracket: return "invalid-bracket";
    }
    return "unknown";
}

namespace {

constexpr int kMaxProbeRetries = 5;

void check_config(const RootConfig& cfg) {
    if (!(cfg.tol_gamma > 0.0) || !(cfg.tol_rel > 0.0) || !(cfg.tol_abs > 0.0)) {
        throw std::invalid_argument("root: tolerances must be positive");
    }
    if (cfg.max_iter < 2) throw std::invalid_argument("root: max_iter must be >= 2");
}

void append(std::vector<IterationRecord>& log, const GammaEvaluation& eval) {
    log.push_back({static_cast<int>(log.size()), eval.h_star, eval.gamma, eval.lambda,
                   eval.skin_friction, eval.status});
}

bool step_small(double h_new, double h_prev, const RootConfig& cfg) {
    return std::abs(h_new - h_prev) <= cfg.tol_rel * std::abs(h_new) + cfg.tol_abs;
}

/// Probe a candidate; on failure bisect toward `anchor` (the last Ok iterate,
/// or the companion seed when nothing has succeeded yet).
std::optional<GammaEvaluation> probe_with_recovery(const GammaProbe& probe, double h,
                                                   double anchor,
                                                   std::vector<IterationRecord>& log,
                                                   const RootConfig& cfg) {
    for (int attempt = 0; attempt <= kMaxProbeRetries; ++attempt) {
        if (static_cast<int>(log.size()) >= cfg.max_iter) return std::nullopt;
        GammaEvaluation eval = probe(h);
        append(log, eval);
        if (eval.status == ProbeStatus::Ok) return eval;
        h = 0.5 * (anchor + h);
    }
    return std::nullopt;
}

/// Distinguish an exhausted probe budget from an unrecoverable probe.
RootStatus recovery_failure_status(const std::vector<IterationRecord>& log,
                                   const RootConfig& cfg) {
    return static_cast<int>(log.size()) >= cfg.max_iter ? RootStatus::MaxIterExceeded
                                                        : RootStatus::FailedProbeRecovery;
}

}  // namespace

RootResult secant_solve(const GammaProbe& probe, double h0, double h1,
                        const RootConfig& config) {
    check_config(config);
    if (h0 == h1) throw std::invalid_argument("secant: seeds must differ");

    RootResult result;
    auto fail = [&](RootStatus status, double best) {
        result.status = status;
        result.root = best;
        return result;
    };

    auto prev = probe_with_recovery(probe, h0, h1, result.log, config);
    if (!prev) return fail(recovery_failure_status(result.log, config), h0);
    if (std::abs(prev->gamma) <= config.tol_gamma) {
        result.status = RootStatus::Converged;
        result.root = prev->h_star;
        return result;
    }

    auto cur = probe_with_recovery(probe, h1, prev->h_star, result.log, config);
    if (!cur) return fail(recovery_failure_status(result.log, config), prev->h_star);

    while (static_cast<int>(result.log.size()) < config.max_iter) {
        const double denom = cur->gamma - prev->gamma;
        if (denom == 0.0) {
            if (std::abs(cur->gamma) <= config.tol_gamma) {
                result.status = RootStatus::Converged;
                result.root = cur->h_star;
                return result;
            }
            return fail(RootStatus::DegenerateSecant, cur->h_star);
        }
        const double h_next =
            cur->h_star - cur->gamma * (cur->h_star - prev->h_star) / denom;
        if (!std::isfinite(h_next)) return fail(RootStatus::DegenerateSecant, cur->h_star);

        auto next = probe_with_recovery(probe, h_next, cur->h_star, result.log, config);
        if (!next) return fail(recovery_failure_status(result.log, config), cur->h_star);

        if (std::abs(next->gamma) <= config.tol_gamma &&
            step_small(next->h_star, cur->h_star, config)) {
            result.status = RootStatus::Converged;
            result.root = next->h_star;
            return result;
        }
        prev = cur;
        cur = next;
    }
    return fail(RootStatus::MaxIterExceeded, cur->h_star);
}

RootResult newton_solve(const GammaProbeWithDerivative& probe, double h0,
                        const RootConfig& config) {
    check_config(config);

    RootResult result;
    auto fail = [&](RootStatus status, double best) {
        result.status = status;
        result.root = best;
        return result;
    };

    // Wrap the pair-valued probe so the recovery helper can drive it; the
    // derivative of the latest Ok probe is kept on the side.
    double latest_derivative = 0.0;
    GammaProbe scalar = [&](double h) {
        auto [eval, d] = probe(h);
        if (eval.status == ProbeStatus::Ok) latest_derivative = d;
        return eval;
    };

    // With no Ok iterate yet, retries shrink toward the origin.
    auto cur = probe_with_recovery(scalar, h0, 0.5 * h0, result.log, config);
    if (!cur) return fail(recovery_failure_status(result.log, config), h0);
    if (std::abs(cur->gamma) <= config.tol_gamma) {
        result.status = RootStatus::Converged;
        result.root = cur->h_star;
        return result;
    }

    while (static_cast<int>(result.log.size()) < config.max_iter) {
        const double derivative = latest_derivative;
        if (derivative == 0.0) return fail(RootStatus::ZeroDerivative, cur->h_star);
        const double h_next = cur->h_star - cur->gamma / derivative;
        if (!std::isfinite(h_next)) return fail(RootStatus::ZeroDerivative, cur->h_star);

        auto next = probe_with_recovery(scalar, h_next, cur->h_star, result.log, config);
        if (!next) return fail(recovery_failure_status(result.log, config), cur->h_star);

        if (std::abs(next->gamma) <= config.tol_gamma &&
            step_small(next->h_star, cur->h_star, config)) {
            result.status = RootStatus::Converged;
            result.root = next->h_star;
            return result;
        }
        cur = next;
    }
    return fail(RootStatus::MaxIterExceeded, cur->h_star);
}

RootResult regula_falsi_solve(const GammaProbe& probe, double h_lo, double h_hi,
                              const RootConfig& config) {
    check_config(config);
    if (h_lo > h_hi) std::swap(h_lo, h_hi);
    if (h_lo == h_hi) throw std::invalid_argument("regula falsi: empty bracket");

    RootResult result;
    auto fail = [&](RootStatus status, double best) {
        result.status = status;
        result.root = best;
        return result;
    };

    GammaEvaluation lo = probe(h_lo);
    append(result.log, lo);
    if (lo.status != ProbeStatus::Ok) return fail(RootStatus::InvalidBracket, h_lo);
    if (std::abs(lo.gamma) <= config.tol_gamma) {
        result.status = RootStatus::Converged;
        result.root = lo.h_star;
        return result;
    }

    GammaEvaluation hi = probe(h_hi);
    append(result.log, hi);
    if (hi.status != ProbeStatus::Ok) return fail(RootStatus::InvalidBracket, h_hi);
    if (std::abs(hi.gamma) <= config.tol_gamma) {
        result.status = RootStatus::Converged;
        result.root = hi.h_star;
        return result;
    }

    if (lo.gamma * hi.gamma > 0.0) return fail(RootStatus::InvalidBracket, h_lo);

    while (static_cast<int>(result.log.size()) < config.max_iter) {
        double h_new =
            (lo.h_star * hi.gamma - hi.h_star * lo.gamma) / (hi.gamma - lo.gamma);
        if (!(h_new > lo.h_star) || !(h_new < hi.h_star)) {
            h_new = 0.5 * (lo.h_star + hi.h_star);
        }

        GammaEvaluation mid = probe(h_new);
        append(result.log, mid);
        // A failed interior probe retreats toward the lower Ok endpoint.
        int retries = 0;
        while (mid.status != ProbeStatus::Ok && retries < kMaxProbeRetries &&
               static_cast<int>(result.log.size()) < config.max_iter) {
            h_new = 0.5 * (lo.h_star + h_new);
            mid = probe(h_new);
            append(result.log, mid);
            ++retries;
        }
        if (mid.status != ProbeStatus::Ok) {
            return fail(recovery_failure_status(result.log, config), lo.h_star);
        }

        if (std::abs(mid.gamma) <= config.tol_gamma) {
            result.status = RootStatus::Converged;
            result.root = mid.h_star;
            return result;
        }
        if ((mid.gamma > 0.0) == (lo.gamma > 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return fail(RootStatus::MaxIterExceeded, 0.5 * (lo.h_star + hi.h_star));
}

ScanResult bracket_scan(const GammaProbe& probe, double h_min, double h_max,
                        int n_samples, ScanSpacing spacing, bool parallel) {
    if (!(h_min > 0.0)) throw std::invalid_argument("scan: h_min must be positive");
    if (!(h_min < h_max)) throw std::invalid_argument("scan: require h_min < h_max");
    if (n_samples < 2) throw std::invalid_argument("scan: need at least 2 samples");

    std::vector<double> grid(static_cast<std::size_t>(n_samples));
    if (spacing == ScanSpacing::Logarithmic) {
        const double lg_lo = std::log(h_min);
        const double lg_hi = std::log(h_max);
        for (int i = 0; i < n_samples; ++i) {
            grid[static_cast<std::size_t>(i)] =
                std::exp(lg_lo + (lg_hi - lg_lo) * i / (n_samples - 1));
        }
    } else {
        for (int i = 0; i < n_samples; ++i) {
            grid[static_cast<std::size_t>(i)] =
                h_min + (h_max - h_min) * i / (n_samples - 1);
        }
    }
    grid.front() = h_min;
    grid.back() = h_max;

    ScanResult result;
    result.samples.resize(grid.size());

    const auto count = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        result.samples[idx] = probe(grid[idx]);
    }

    for (std::size_t i = 0; i < result.samples.size(); ++i) {
        const auto& s = result.samples[i];
        if (s.status == ProbeStatus::Ok && s.gamma == 0.0) {
            result.brackets.push_back({s.h_star, s.h_star});
        }
        if (i + 1 < result.samples.size()) {
            const auto& t = result.samples[i + 1];
            if (s.status == ProbeStatus::Ok && t.status == ProbeStatus::Ok &&
                s.gamma * t.gamma < 0.0) {
                result.brackets.push_back({s.h_star, t.h_star});
            }
        }
    }
    return result;
}

}  // namespace itm
