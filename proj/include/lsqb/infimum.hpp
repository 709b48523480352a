#pragma once

#include <cstddef>
#include <functional>

namespace lsqb {

struct InfimumOptions {
    std::size_t scan_points = 4096;
    double rel_tol = 1e-6;
    // Scan points stay this far (relative to the interval width) from either end.
    double endpoint_guard = 1e-9;
};

struct InfimumResult {
    double value;
    double argmin;
};

// Objective returning a non-finite value (NaN or +inf) marks the point as infeasible.
using Objective = std::function<double(double)>;

/// Infimum of a scalar objective over the open interval (lo, hi).
///
/// A coarse scan brackets the minimum: half of the points are log-spaced in the
/// distance to `lo`, half in the distance to `hi`, so that objectives whose
/// minimizer sits deep near either end are still bracketed. Golden-section search
/// then refines inside the bracketing neighbours. For unimodal objectives the
/// returned value is within `rel_tol` of the true infimum.
///
/// Throws NoFinitePointError if every scan point is infeasible.
InfimumResult infimum_1d(const Objective& objective, double lo, double hi,
                         const InfimumOptions& options = {});

/// Golden-section minimization on the closed bracket [a, b].
InfimumResult golden_section(const Objective& objective, double a, double b, double rel_tol);

}  // namespace lsqb
