#include <cmath>
#include <limits>

#include "doctest.h"
#include "lsqb/errors.hpp"
#include "lsqb/infimum.hpp"
#include "oracles.hpp"

using namespace lsqb;

TEST_CASE("infimum_1d finds an interior quadratic minimum") {
    const auto res = infimum_1d([](double s) { return (s - 0.3) * (s - 0.3) + 2.0; }, 0.0, 1.0);
    CHECK(res.value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(res.argmin == doctest::Approx(0.3).epsilon(1e-3));
}

TEST_CASE("infimum_1d brackets minimizers deep near either endpoint") {
    // minimum at 1e-7 and at 1 - 1e-7 respectively
    auto near_lo = [](double s) { return s / 1e-7 + 1e-7 / s; };
    auto near_hi = [](double s) { return (1.0 - s) / 1e-7 + 1e-7 / (1.0 - s); };
    CHECK(infimum_1d(near_lo, 0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(infimum_1d(near_hi, 0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("infimum_1d skips infeasible points and rejects all-infeasible objectives") {
    constexpr double inf = std::numeric_limits<double>::infinity();
    auto partial = [&](double s) { return s < 0.5 ? inf : s; };
    CHECK(infimum_1d(partial, 0.0, 1.0).value == doctest::Approx(0.5).epsilon(1e-5));
    CHECK_THROWS_AS(infimum_1d([&](double) { return inf; }, 0.0, 1.0), NoFinitePointError);
    CHECK_THROWS_AS(infimum_1d([](double) { return std::nan(""); }, 0.0, 1.0), NoFinitePointError);
}

TEST_CASE("infimum_1d rejects an empty interval") {
    CHECK_THROWS_AS(infimum_1d([](double s) { return s; }, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(infimum_1d([](double s) { return s; }, 2.0, 1.0), DomainError);
}

TEST_CASE("golden_section agrees with a dense grid on a smooth convex function") {
    auto f = [](double s) { return std::exp(s) - 3.0 * s; };
    const auto res = golden_section(f, 0.0, 2.0, 1e-10);
    CHECK(res.value == doctest::Approx(oracle::grid_min(f, 0.0, 2.0, 1000000)).epsilon(1e-9));
    CHECK(res.argmin == doctest::Approx(std::log(3.0)).epsilon(1e-5));
}
