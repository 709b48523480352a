#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "lsqb/bounds.hpp"
#include "lsqb/interval.hpp"
#include "lsqb/models.hpp"

namespace lsqb {

inline constexpr std::uint64_t kDefaultSeed = 20190612;

struct ExperimentSpec {
    DesignModel design;
    NoiseModel noise;
    std::vector<double> theta0;  // empty means all ones
    std::int64_t N = 0;
    double r = 0.1;
    std::int64_t trials = 50000;
    std::uint64_t base_seed = kDefaultSeed;
    bool diagnostics = false;
    unsigned workers = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct TailEstimate {
    std::int64_t trials = 0;          // valid trials
    std::int64_t exceed_count = 0;
    std::int64_t invalid_trials = 0;  // rank-deficient draws, excluded
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;

    double half_width() const { return 0.5 * (ci_high - ci_low); }
    bool operator==(const TailEstimate&) const = default;
};

/// Per-trial proof-event frequencies and identity checks.
struct EventDiagnostics {
    std::int64_t trials = 0;
    double sigma_min = 0.0;  // σ_min used for the event thresholds
    double freq_e_rand = 0.0;
    ProportionInterval e_rand_ci{0.0, 0.0};
    std::vector<double> freq_e2;  // per coordinate
    std::vector<double> freq_e3;
    // ‖θ̂−θ₀‖∞ > λ̃(A)·max_i |(1/N)Σ a_ni v_n| + 1e-9
    std::int64_t inverse_eig_violations = 0;
    // ‖θ̂−θ₀‖₂ > λ̃(A)·‖(1/N)Aᵀv‖₂ + 1e-9
    std::int64_t inverse_eig_l2_violations = 0;
    // |diag + offdiag − ((1/N)Σ a_ni v_n)²| > 1e-10 relative, any coordinate
    std::int64_t identity_violations = 0;
    double max_identity_residual = 0.0;
    TailEstimate tail;
};

TailEstimate run_tail(const ExperimentSpec& spec);

EventDiagnostics run_event_diagnostics(const ExperimentSpec& spec);

// --- sweeps ----------------------------------------------------------------------

enum class AxisKind { N, r, eps };

std::string_view to_string(AxisKind kind);
AxisKind axis_from_string(std::string_view name);

struct Axis {
    AxisKind kind = AxisKind::r;
    std::vector<double> values;
};

/// Bound evaluated for a design/noise pair, with the sample count it implies.
struct ResolvedBound {
    BoundBreakdown bound;
    ProblemParams params;
    std::int64_t N = 0;  // sample count at which the guarantee applies
};

/// For random designs N = n_ceil. For Toeplitz designs σ_min and α depend on N,
/// so the count is iterated until N ≥ n_ceil measured on the N-row matrix, then
/// bisected back towards the last count that fell short.
/// Fixed matrices use their own row count.
ResolvedBound resolve_bound(const DesignModel& design, const NoiseModel& noise, Theorem theorem,
                            const Accuracy& acc, const BoundOptions& options = {});

struct SweepRow {
    AxisKind axis = AxisKind::r;
    double axis_value = 0.0;
    std::int64_t N = 0;  // sample count simulated
    BoundBreakdown bound;
    // Outage bound at this N, for N-axis sweeps of theorems with a closed form.
    std::optional<double> eps_bound;
    TailEstimate tail;
};

/// One tail estimate per axis value plus the matching bound.
///
/// r- and eps-axis rows simulate at N = the bound's sample count; N-axis rows
/// simulate at the axis value and report the bound at (base.r, eps).
std::vector<SweepRow> sweep(const ExperimentSpec& base, const Axis& axis, Theorem theorem,
                            double eps, const BoundOptions& options = {});

/// Smallest N whose 95% upper confidence limit of the tail is at most eps:
/// doubling from `lo` to bracket, then bisection down to `rel_granularity`.
std::int64_t find_empirical_N(const ExperimentSpec& spec, double eps, std::int64_t lo,
                              std::int64_t hi, double rel_granularity = 0.01);

}  // namespace lsqb
