#include "lsqb/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "lsqb/errors.hpp"

namespace lsqb {
namespace {

constexpr double kInequalityTol = 1e-9;
constexpr double kIdentityTol = 1e-10;

struct Counts {
    std::int64_t valid = 0;
    std::int64_t exceed = 0;
    std::int64_t invalid = 0;
    std::int64_t e_rand = 0;
    std::vector<std::int64_t> e2;
    std::vector<std::int64_t> e3;
    std::int64_t inv_inf = 0;
    std::int64_t inv_l2 = 0;
    std::int64_t identity = 0;
    double max_identity_residual = 0.0;

    explicit Counts(std::size_t p) : e2(p, 0), e3(p, 0) {}

    void merge(const Counts& o) {
        valid += o.valid;
        exceed += o.exceed;
        invalid += o.invalid;
        e_rand += o.e_rand;
        for (std::size_t i = 0; i < e2.size(); ++i) {
            e2[i] += o.e2[i];
            e3[i] += o.e3[i];
        }
        inv_inf += o.inv_inf;
        inv_l2 += o.inv_l2;
        identity += o.identity;
        max_identity_residual = std::max(max_identity_residual, o.max_identity_residual);
    }
};

// Shared, read-only state for one experiment.
struct Plan {
    const ExperimentSpec* spec = nullptr;
    std::size_t p = 0;
    std::size_t N = 0;
    std::vector<double> theta0;
    bool diagnostics = false;
    double event_threshold = 0.0;  // σ_min² r² / 8
    double e_rand_threshold = 0.0;  // 2 / σ_min
    double sigma_min = 0.0;
    // Deterministic designs: the matrix, its Cholesky factor and λ̃.
    std::optional<Matrix> fixed_A;
    std::vector<double> fixed_factor;
    bool fixed_singular = false;
    double fixed_lambda_tilde = 0.0;
};

double lambda_tilde_of(std::span<const double> gram_lower, std::size_t p, double inv_n) {
    Matrix G(p, p);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            G(i, j) = gram_lower[i * p + j] * inv_n;
            G(j, i) = G(i, j);
        }
    }
    return sym_extremal_eigs(G).lambda_tilde;
}

class TrialRunner {
public:
    explicit TrialRunner(const Plan& plan)
        : plan_(plan),
          row_(plan.p),
          gram_(plan.p * plan.p),
          rhs_(plan.p),
          sum_av_(plan.p),
          diag_(plan.p),
          offdiag_(plan.p) {}

    void run(std::uint64_t trial, Counts& counts) {
        const auto& spec = *plan_.spec;
        const std::size_t p = plan_.p;
        const std::size_t N = plan_.N;
        Stream noise_stream(SeedSpec{spec.base_seed, trial, StreamRole::noise});
        Stream design_stream(SeedSpec{spec.base_seed, trial, StreamRole::design});
        NoiseSampler sampler(spec.noise);

        std::fill(rhs_.begin(), rhs_.end(), 0.0);
        std::fill(sum_av_.begin(), sum_av_.end(), 0.0);
        std::fill(diag_.begin(), diag_.end(), 0.0);
        std::fill(offdiag_.begin(), offdiag_.end(), 0.0);
        const bool random_design = !plan_.fixed_A.has_value();
        if (random_design) std::fill(gram_.begin(), gram_.end(), 0.0);
        const auto* iid = std::get_if<IidBoundedColumns>(&spec.design.family);

        for (std::size_t n = 0; n < N; ++n) {
            std::span<const double> a;
            if (random_design) {
                draw_iid_row(*iid, design_stream, row_);
                a = row_;
            } else {
                a = plan_.fixed_A->row(n);
            }
            const double v = sampler.next(noise_stream);
            double x = v;
            for (std::size_t i = 0; i < p; ++i) x += a[i] * plan_.theta0[i];
            for (std::size_t i = 0; i < p; ++i) {
                rhs_[i] += a[i] * x;
                if (random_design) {
                    for (std::size_t j = 0; j <= i; ++j) gram_[i * p + j] += a[i] * a[j];
                }
            }
            if (plan_.diagnostics) {
                for (std::size_t i = 0; i < p; ++i) {
                    const double q = a[i] * v;
                    diag_[i] += q * q;
                    // Σ_{l≠n} pairs counted through the running prefix sum.
                    offdiag_[i] += 2.0 * q * sum_av_[i];
                    sum_av_[i] += q;
                }
            }
        }

        double lambda_tilde = plan_.fixed_lambda_tilde;
        std::span<const double> factor;
        if (random_design) {
            double trace = 0.0;
            for (std::size_t i = 0; i < p; ++i) trace += gram_[i * p + i];
            if (plan_.diagnostics) {
                lambda_tilde = lambda_tilde_of(gram_, p, 1.0 / static_cast<double>(N));
            }
            if (!cholesky_in_place(gram_, p, 1e-12 * trace)) {
                ++counts.invalid;
                return;
            }
            factor = gram_;
        } else {
            if (plan_.fixed_singular) {
                ++counts.invalid;
                return;
            }
            factor = plan_.fixed_factor;
        }
        cholesky_solve(factor, p, rhs_);

        double err_inf = 0.0;
        double err_l2_sq = 0.0;
        for (std::size_t i = 0; i < p; ++i) {
            const double e = rhs_[i] - plan_.theta0[i];
            err_inf = std::max(err_inf, std::abs(e));
            err_l2_sq += e * e;
        }
        ++counts.valid;
        if (err_inf > spec.r) ++counts.exceed;

        if (!plan_.diagnostics) return;
        const double inv_n = 1.0 / static_cast<double>(N);
        const double inv_n2 = inv_n * inv_n;
        if (lambda_tilde > plan_.e_rand_threshold) ++counts.e_rand;
        double u_inf = 0.0;
        double u_l2_sq = 0.0;
        bool identity_ok = true;
        for (std::size_t i = 0; i < p; ++i) {
            const double u = sum_av_[i] * inv_n;
            u_inf = std::max(u_inf, std::abs(u));
            u_l2_sq += u * u;
            const double d = diag_[i] * inv_n2;
            const double o = offdiag_[i] * inv_n2;
            if (d > plan_.event_threshold) ++counts.e2[i];
            if (o > plan_.event_threshold) ++counts.e3[i];
            const double scale = std::max({d, std::abs(o), u * u, std::numeric_limits<double>::min()});
            const double residual = std::abs(d + o - u * u) / scale;
            counts.max_identity_residual = std::max(counts.max_identity_residual, residual);
            if (residual > kIdentityTol) identity_ok = false;
        }
        if (!identity_ok) ++counts.identity;
        if (err_inf > lambda_tilde * u_inf + kInequalityTol) ++counts.inv_inf;
        if (std::sqrt(err_l2_sq) > lambda_tilde * std::sqrt(u_l2_sq) + kInequalityTol) ++counts.inv_l2;
    }

private:
    const Plan& plan_;
    std::vector<double> row_;
    std::vector<double> gram_;  // lower triangle, then Cholesky factor
    std::vector<double> rhs_;
    std::vector<double> sum_av_;
    std::vector<double> diag_;
    std::vector<double> offdiag_;
};

Plan make_plan(const ExperimentSpec& spec) {
    spec.validate();
    Plan plan;
    plan.spec = &spec;
    plan.p = static_cast<std::size_t>(spec.design.p());
    plan.N = static_cast<std::size_t>(spec.N);
    plan.theta0 = spec.theta0.empty() ? std::vector<double>(plan.p, 1.0) : spec.theta0;
    plan.diagnostics = spec.diagnostics;

    if (!spec.design.is_random()) {
        plan.fixed_A = sample_design(spec.design, plan.N, SeedSpec{spec.base_seed, 0, StreamRole::design});
        const Matrix G = gram_normalized(*plan.fixed_A);
        plan.fixed_factor = G.entries();
        double trace = 0.0;
        for (std::size_t i = 0; i < plan.p; ++i) trace += G(i, i);
        plan.fixed_singular = !cholesky_in_place(plan.fixed_factor, plan.p, 1e-12 * trace);
        // The factor is of AᵀA/N; rescale so cholesky_solve inverts AᵀA.
        const double root_n = std::sqrt(static_cast<double>(plan.N));
        for (double& v : plan.fixed_factor) v *= root_n;
        plan.fixed_lambda_tilde = sym_extremal_eigs(G).lambda_tilde;
    }
    if (spec.diagnostics) {
        const auto params = implied_problem_params(spec.design, spec.noise, plan.N);
        plan.sigma_min = params.sigma_min;
        plan.event_threshold = params.sigma_min * params.sigma_min * spec.r * spec.r / 8.0;
        plan.e_rand_threshold = 2.0 / params.sigma_min;
    }
    return plan;
}

Counts execute(const Plan& plan) {
    const auto& spec = *plan.spec;
    unsigned workers = spec.workers != 0 ? spec.workers : std::thread::hardware_concurrency();
    workers = std::max(1u, workers);
    const auto total = static_cast<std::uint64_t>(spec.trials);
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));

    std::vector<Counts> partial(workers, Counts(plan.p));
    auto work = [&](unsigned w) {
        TrialRunner runner(plan);
        const std::uint64_t begin = total * w / workers;
        const std::uint64_t end = total * (w + 1) / workers;
        for (std::uint64_t t = begin; t < end; ++t) runner.run(t, partial[w]);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work, w);
    }
    Counts total_counts(plan.p);
    for (const auto& c : partial) total_counts.merge(c);

    if (static_cast<double>(total_counts.invalid) > 0.001 * static_cast<double>(spec.trials)) {
        throw SimulationQualityError("more than 0.1% of trials had a rank-deficient design (" +
                                     std::to_string(total_counts.invalid) + " of " +
                                     std::to_string(spec.trials) + ")");
    }
    if (total_counts.valid == 0) throw SimulationQualityError("no valid trials");
    return total_counts;
}

TailEstimate to_tail(const Counts& c, std::uint64_t seed) {
    TailEstimate t;
    t.trials = c.valid;
    t.exceed_count = c.exceed;
    t.invalid_trials = c.invalid;
    t.p_hat = static_cast<double>(c.exceed) / static_cast<double>(c.valid);
    const auto ci = wilson_interval(c.exceed, c.valid);
    t.ci_low = ci.low;
    t.ci_high = ci.high;
    t.seed = seed;
    return t;
}

}  // namespace

void ExperimentSpec::validate() const {
    const int p = design.p();
    if (p < 1) throw ParameterError("design must have at least one column");
    if (N <= p) throw PreconditionError("experiment needs N > p");
    if (trials < 1) throw ParameterError("trials must be at least 1");
    if (!(r > 0.0)) throw ParameterError("r must be positive");
    if (!theta0.empty() && theta0.size() != static_cast<std::size_t>(p)) {
        throw ParameterError("theta0 must have length p");
    }
    if (const auto* iid = std::get_if<IidBoundedColumns>(&design.family)) {
        for (double s : iid->column_stddevs) {
            if (!(s > 0.0)) throw ParameterError("column standard deviations must be positive");
        }
    }
}

TailEstimate run_tail(const ExperimentSpec& spec) {
    ExperimentSpec plain = spec;
    plain.diagnostics = false;
    const Plan plan = make_plan(plain);
    return to_tail(execute(plan), spec.base_seed);
}

EventDiagnostics run_event_diagnostics(const ExperimentSpec& spec) {
    if (!spec.diagnostics) throw ParameterError("event diagnostics need the diagnostics flag");
    const Plan plan = make_plan(spec);
    const Counts c = execute(plan);
    EventDiagnostics d;
    d.trials = c.valid;
    d.sigma_min = plan.sigma_min;
    const double n = static_cast<double>(c.valid);
    d.freq_e_rand = static_cast<double>(c.e_rand) / n;
    d.e_rand_ci = wilson_interval(c.e_rand, c.valid);
    for (std::size_t i = 0; i < plan.p; ++i) {
        d.freq_e2.push_back(static_cast<double>(c.e2[i]) / n);
        d.freq_e3.push_back(static_cast<double>(c.e3[i]) / n);
    }
    d.inverse_eig_violations = c.inv_inf;
    d.inverse_eig_l2_violations = c.inv_l2;
    d.identity_violations = c.identity;
    d.max_identity_residual = c.max_identity_residual;
    d.tail = to_tail(c, spec.base_seed);
    return d;
}

std::string_view to_string(AxisKind kind) {
    switch (kind) {
        case AxisKind::N: return "N";
        case AxisKind::r: return "r";
        case AxisKind::eps: return "eps";
    }
    return "unknown";
}

AxisKind axis_from_string(std::string_view name) {
    if (name == "N") return AxisKind::N;
    if (name == "r") return AxisKind::r;
    if (name == "eps") return AxisKind::eps;
    throw ParameterError("unknown axis '" + std::string(name) + "' (expected N, r or eps)");
}

ResolvedBound resolve_bound(const DesignModel& design, const NoiseModel& noise, Theorem theorem,
                            const Accuracy& acc, const BoundOptions& options) {
    ResolvedBound out;
    if (design.is_random()) {
        out.params = implied_problem_params(design, noise);
        out.bound = compute_bound(theorem, acc, out.params, options);
        out.N = out.bound.n_ceil;
        return out;
    }
    if (const auto* fixed = std::get_if<FixedMatrix>(&design.family)) {
        out.N = static_cast<std::int64_t>(fixed->matrix.rows());
        out.params = implied_problem_params(design, noise, fixed->matrix.rows());
        out.bound = compute_bound(theorem, acc, out.params, options);
        return out;
    }
    const auto& pilot = std::get<ToeplitzPilot>(design.family);
    const auto limit = static_cast<std::int64_t>(pilot.pilots.size());
    auto settles = [&](std::int64_t N, ResolvedBound& at) {
        at.params = implied_problem_params(design, noise, static_cast<std::size_t>(N));
        at.bound = compute_bound(theorem, acc, at.params, options);
        at.N = N;
        return at.bound.n_ceil <= N;
    };
    std::int64_t bad = pilot.p;
    std::int64_t N = std::max<std::int64_t>(8 * pilot.p, pilot.p + 1);
    for (int iter = 0; iter < 64; ++iter) {
        if (N > limit) throw ParameterError("pilot sequence is shorter than the required sample count");
        if (settles(N, out)) {
            // The jump can overshoot; bisect back towards the last count that did not settle.
            while (N - bad > 1) {
                const std::int64_t mid = bad + (N - bad) / 2;
                ResolvedBound trial;
                if (settles(mid, trial)) {
                    N = mid;
                    out = std::move(trial);
                } else {
                    bad = mid;
                }
            }
            return out;
        }
        bad = N;
        N = out.bound.n_ceil;
    }
    throw Error("sample count for the Toeplitz design did not settle");
}

std::vector<SweepRow> sweep(const ExperimentSpec& base, const Axis& axis, Theorem theorem, double eps,
                            const BoundOptions& options) {
    if (axis.values.empty()) throw ParameterError("sweep axis must not be empty");
    std::vector<SweepRow> rows;
    rows.reserve(axis.values.size());
    for (double value : axis.values) {
        SweepRow row;
        row.axis = axis.kind;
        row.axis_value = value;
        ExperimentSpec spec = base;
        spec.diagnostics = false;
        Accuracy acc{base.r, eps};
        if (axis.kind == AxisKind::r) acc.r = value;
        if (axis.kind == AxisKind::eps) acc.eps = value;
        acc.validate();
        spec.r = acc.r;

        if (axis.kind == AxisKind::N) {
            if (!(value >= 1.0) || value != std::floor(value)) {
                throw ParameterError("N-axis values must be positive integers");
            }
            spec.N = static_cast<std::int64_t>(value);
            ProblemParams params =
                spec.design.is_random()
                    ? implied_problem_params(spec.design, spec.noise)
                    : implied_problem_params(spec.design, spec.noise, static_cast<std::size_t>(spec.N));
            row.bound = compute_bound(theorem, acc, params, options);
            if (theorem == Theorem::fixed_mds) {
                row.eps_bound = eps_fixed_design(acc.r, spec.N, params);
            } else if (theorem == Theorem::main && params.R) {
                const double threshold = 4.0 * std::pow(params.alpha * *params.R, 2) /
                                         std::pow(params.sigma_min * acc.r, 2);
                if (static_cast<double>(spec.N) > threshold) {
                    row.eps_bound = eps_of_n(acc.r, spec.N, params, options).eps_final;
                }
            }
        } else {
            const auto resolved = resolve_bound(spec.design, spec.noise, theorem, acc, options);
            row.bound = resolved.bound;
            spec.N = resolved.N;
        }
        row.N = spec.N;
        row.tail = run_tail(spec);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::int64_t find_empirical_N(const ExperimentSpec& spec, double eps, std::int64_t lo, std::int64_t hi,
                              double rel_granularity) {
    const int p = spec.design.p();
    if (lo <= p) throw ParameterError("search range must start above p");
    if (hi < lo) throw ParameterError("search range is empty");
    if (eps >= 1.0) return lo;

    auto accepts = [&](std::int64_t N) {
        ExperimentSpec s = spec;
        s.N = N;
        s.diagnostics = false;
        // A count at which designs are frequently singular cannot meet the target.
        try {
            return run_tail(s).ci_high <= eps;
        } catch (const SimulationQualityError&) {
            return false;
        }
    };

    std::int64_t good = lo;
    std::int64_t bad = lo - 1;
    while (!accepts(good)) {
        if (good >= hi) throw RangeExhaustedError("no N in the search range reaches the target tail");
        bad = good;
        good = std::min(hi, 2 * good);
    }
    if (bad < lo) return good;
    while (good - bad > std::max<std::int64_t>(
                             1, static_cast<std::int64_t>(rel_granularity * static_cast<double>(good)))) {
        const std::int64_t mid = bad + (good - bad) / 2;
        if (accepts(mid)) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    return good;
}

}  // namespace lsqb
