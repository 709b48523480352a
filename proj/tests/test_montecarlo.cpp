#include <cmath>
#include <random>

#include "doctest.h"
#include "lsqb/errors.hpp"
#include "lsqb/interval.hpp"
#include "lsqb/matrix.hpp"
#include "lsqb/montecarlo.hpp"
#include "oracles.hpp"

using namespace lsqb;

namespace {

ExperimentSpec sign_mean_spec(std::int64_t trials) {
    ExperimentSpec s;
    s.design = DesignModel{FixedMatrix{Matrix(4, 1, {1, 1, 1, 1})}};
    s.noise = NoiseModel{RademacherNoise{1.0}};
    s.N = 4;
    s.r = 0.4;
    s.trials = trials;
    return s;
}

ExperimentSpec fig2_spec(std::int64_t N, std::int64_t trials) {
    ExperimentSpec s;
    s.design = DesignModel{IidBoundedColumns{{std::sqrt(0.2), 1.0}, EntryLaw::scaled_uniform}};
    s.noise = NoiseModel{UniformNoise{1.0}};
    s.N = N;
    s.r = 0.4;
    s.trials = trials;
    return s;
}

}  // namespace

TEST_CASE("exhaustive enumeration of the sign-mean instance") {
    CHECK(oracle::exhaustive_sign_mean_tail(4, 0.4) == doctest::Approx(0.625));
    CHECK(oracle::exhaustive_sign_mean_tail(3, 0.5) == doctest::Approx(0.25));
}

TEST_CASE("tail estimate on the sign-mean instance covers the exact value") {
    const auto t = run_tail(sign_mean_spec(20000));
    CHECK(t.ci_low <= 0.625);
    CHECK(t.ci_high >= 0.625);
    CHECK(t.trials == 20000);
    CHECK(t.invalid_trials == 0);
}

TEST_CASE("single trial gives a degenerate estimate") {
    const auto t = run_tail(sign_mean_spec(1));
    CHECK((t.p_hat == 0.0 || t.p_hat == 1.0));
}

TEST_CASE("results do not depend on the worker count") {
    auto a = fig2_spec(200, 3000);
    auto b = a;
    a.workers = 1;
    b.workers = 3;
    CHECK(run_tail(a) == run_tail(b));
    a.diagnostics = b.diagnostics = true;
    const auto da = run_event_diagnostics(a);
    const auto db = run_event_diagnostics(b);
    CHECK(da.inverse_eig_violations == db.inverse_eig_violations);
    CHECK(da.freq_e2 == db.freq_e2);
    CHECK(da.max_identity_residual == db.max_identity_residual);
}

TEST_CASE("different seeds give different streams") {
    auto a = fig2_spec(50, 2000);
    auto b = a;
    b.base_seed = a.base_seed + 1;
    a.r = b.r = 0.3;
    CHECK(run_tail(a).exceed_count != run_tail(b).exceed_count);
}

TEST_CASE("Wilson interval values") {
    const auto z = wilson_interval(0, 10);
    CHECK(z.low == 0.0);
    CHECK(z.high == doctest::Approx(kZ95 * kZ95 / (10 + kZ95 * kZ95)).epsilon(1e-12));
    const auto h = wilson_interval(5, 10);
    CHECK(h.low + h.high == doctest::Approx(1.0));
    CHECK_THROWS_AS(wilson_interval(3, 0), ParameterError);
    CHECK_THROWS_AS(wilson_interval(11, 10), ParameterError);
}

TEST_CASE("Wilson interval has near-nominal coverage") {
    std::mt19937_64 gen(77);
    std::binomial_distribution<std::int64_t> draw(200, 0.1);
    int covered = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto ci = wilson_interval(draw(gen), 200);
        if (ci.low <= 0.1 && 0.1 <= ci.high) ++covered;
    }
    CHECK(covered >= 930);
}

TEST_CASE("per-trial diagnostics: identity and L2 inequality always hold") {
    auto s = fig2_spec(300, 2000);
    s.diagnostics = true;
    const auto d = run_event_diagnostics(s);
    CHECK(d.identity_violations == 0);
    CHECK(d.max_identity_residual < 1e-10);
    CHECK(d.inverse_eig_l2_violations == 0);
    CHECK(d.freq_e2.size() == 2);
    CHECK(d.tail.trials == 2000);
}

TEST_CASE("the coordinate-wise inverse-eigenvalue inequality can fail for correlated Gram matrices") {
    // C⁻¹ = [[2, .5], [.5, 1]] and u = (1, 1): ‖C⁻¹u‖∞ = 2.5 but λ_max(C⁻¹)·max|u| ≈ 2.207.
    const Matrix Cinv(2, 2, {2.0, 0.5, 0.5, 1.0});
    const std::vector<double> u{1.0, 1.0};
    const auto w = multiply(Cinv, u);
    const double lhs = std::max(std::abs(w[0]), std::abs(w[1]));
    const double rhs = sym_extremal_eigs(Cinv).lambda_max * 1.0;
    CHECK(lhs > rhs);
    // The Euclidean form is always valid.
    CHECK(std::hypot(w[0], w[1]) <= rhs * std::sqrt(2.0) + 1e-12);
}

TEST_CASE("event diagnostics require the diagnostics flag") {
    CHECK_THROWS_AS(run_event_diagnostics(fig2_spec(100, 10)), ParameterError);
}

TEST_CASE("frequently singular designs raise a quality error") {
    ExperimentSpec s;
    s.design = DesignModel{IidBoundedColumns{{1.0, 1.0, 1.0, 1.0}, EntryLaw::scaled_rademacher}};
    s.noise = NoiseModel{GaussianNoise{1.0}};
    s.N = 5;
    s.r = 1.0;
    s.trials = 2000;
    CHECK_THROWS_AS(run_tail(s), SimulationQualityError);
}

TEST_CASE("experiment validation") {
    auto s = fig2_spec(2, 10);
    CHECK_THROWS_AS(run_tail(s), ParameterError);
    s = fig2_spec(100, 0);
    CHECK_THROWS_AS(run_tail(s), ParameterError);
    s = fig2_spec(100, 10);
    s.theta0 = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(run_tail(s), ParameterError);
}

TEST_CASE("r-axis sweeps simulate at the bound's sample count") {
    const auto rows = sweep(fig2_spec(0, 200), Axis{AxisKind::r, {0.8, 1.6}}, Theorem::main, 0.01);
    REQUIRE(rows.size() == 2);
    for (const auto& row : rows) {
        CHECK(row.N == row.bound.n_ceil);
        CHECK(row.tail.trials == 200);
    }
    CHECK(rows[0].bound.n_final >= rows[1].bound.n_final);
}

TEST_CASE("N-axis sweeps report the outage bound") {
    ExperimentSpec s;
    s.design = DesignModel{ToeplitzPilot{random_bpsk_pilots(4000, 1), 4}};
    s.noise = NoiseModel{GaussianNoise{0.1}};
    s.r = 0.05;
    s.trials = 100;
    const auto rows = sweep(s, Axis{AxisKind::N, {500, 2000}}, Theorem::fixed_mds, 0.01);
    REQUIRE(rows[0].eps_bound.has_value());
    CHECK(*rows[1].eps_bound <= *rows[0].eps_bound);
    CHECK(rows[1].N == 2000);
}

TEST_CASE("Toeplitz bounds are resolved at a self-consistent sample count") {
    const DesignModel d{ToeplitzPilot{random_bpsk_pilots(1 << 15, 3), 4}};
    const NoiseModel v{GaussianNoise{0.1}};
    const auto res = resolve_bound(d, v, Theorem::fixed_mds, {0.02, 0.01});
    CHECK(res.N >= res.bound.n_ceil);
    const auto measured = implied_problem_params(d, v, static_cast<std::size_t>(res.N));
    CHECK(res.params.sigma_min == measured.sigma_min);
}

TEST_CASE("empirical N search") {
    const auto s = fig2_spec(0, 1000);
    CHECK(find_empirical_N(s, 1.0, 10, 100) == 10);
    const auto n = find_empirical_N(s, 0.05, 3, 100000);
    auto at = s;
    at.N = n;
    CHECK(run_tail(at).ci_high <= 0.05);
    CHECK_THROWS_AS(find_empirical_N(s, 0.001, 3, 6), RangeExhaustedError);
    CHECK_THROWS_AS(find_empirical_N(s, 0.05, 2, 100), ParameterError);
}
