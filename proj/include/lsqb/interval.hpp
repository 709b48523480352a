#pragma once

#include <cstdint>

namespace lsqb {

struct ProportionInterval {
    double low;
    double high;
};

// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for k successes out of n trials.
ProportionInterval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kZ95);

}  // namespace lsqb
