#include "doctest.h"
#include "oracles.hpp"

TEST_CASE("sample-count bounds are monotone in r and eps over random parameters") {
    const auto rep = oracle::bound_monotonicity(300, 11);
    INFO(rep.first_failure);
    CHECK(rep.ok());
}

TEST_CASE("outage bounds are monotone in N and r over random parameters") {
    const auto rep = oracle::outage_monotonicity(300, 12);
    INFO(rep.first_failure);
    CHECK(rep.ok());
}

TEST_CASE("beta and gamma domain behaviour over random parameters") {
    const auto rep = oracle::beta_gamma_domain(300, 13);
    INFO(rep.first_failure);
    CHECK(rep.ok());
}
