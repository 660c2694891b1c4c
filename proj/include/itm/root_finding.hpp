#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "itm/scaling.hpp"

namespace itm {

/// Stopping rules shared by the scalar root-finders:
/// |Gamma| <= tol_gamma and |h_j - h_{j-1}| <= tol_rel |h_j| + tol_abs.
struct RootConfig {
    double tol_gamma = 1e-9;
    double tol_rel = 1e-6;
    double tol_abs = 1e-6;
    int max_iter = 50;  // cap on probe evaluations
};

enum class RootStatus {
    Converged,
    MaxIterExceeded,
    DegenerateSecant,
    FailedProbeRecovery,
    ZeroDerivative,
    InvalidBracket,
};

const char* to_string(RootStatus status);

/// One row of the iteration log. Failed probes are logged too, so the number
/// of records always equals the number of probe invocations.
struct IterationRecord {
    int index = 0;
    double h_star = 0.0;
    double gamma = 0.0;
    double lambda = 0.0;
    double skin_friction = 0.0;
    ProbeStatus status = ProbeStatus::Ok;

    bool operator==(const IterationRecord&) const = default;
};

struct RootResult {
    RootStatus status = RootStatus::MaxIterExceeded;
    double root = 0.0;  // best iterate on failure
    std::vector<IterationRecord> log;
};

using GammaProbe = std::function<GammaEvaluation(double)>;
using GammaProbeWithDerivative = std::function<std::pair<GammaEvaluation, double>(double)>;

/// Secant iteration from the pair (h0, h1). A probe that fails (BlowUp or
/// StepFailure) is replaced by the midpoint toward the last Ok iterate, up to
/// five retries, before giving up with FailedProbeRecovery.
RootResult secant_solve(const GammaProbe& probe, double h0, double h1,
                        const RootConfig& config);

/// Newton iteration h_{j+1} = h_j - Gamma/Gamma' with an externally supplied
/// derivative (the Sakiadis sensitivity path). Same stopping and recovery
/// rules as the secant.
RootResult newton_solve(const GammaProbeWithDerivative& probe, double h0,
                        const RootConfig& config);

/// Classical false position on a validated sign-change bracket. Stops on
/// |Gamma| <= tol_gamma; the bracket invariant is maintained every iteration.
RootResult regula_falsi_solve(const GammaProbe& probe, double h_lo, double h_hi,
                              const RootConfig& config);

enum class ScanSpacing { Logarithmic, Linear };

/// Candidate root interval. lo == hi marks a sample where Gamma was exactly
/// zero.
struct HBracket {
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate() const { return lo == hi; }
};

struct ScanResult {
    std::vector<GammaEvaluation> samples;  // ascending in h*
    std::vector<HBracket> brackets;
};

/// Probe n_samples points across [h_min, h_max] and report every consecutive
/// Ok pair with opposite Gamma signs as a bracket. Failed probes are recorded
/// but never become bracket endpoints; an empty bracket list is meaningful
/// nonexistence evidence. Samples are independent, so the sweep runs with
/// OpenMP when `parallel` is set; results are ordered by h* either way and
/// match the serial sweep bit for bit.
ScanResult bracket_scan(const GammaProbe& probe, double h_min, double h_max,
                        int n_samples, ScanSpacing spacing = ScanSpacing::Logarithmic,
                        bool parallel = true);

}  // namespace itm
