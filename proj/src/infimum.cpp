#include "lsqb/infimum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lsqb/errors.hpp"

namespace lsqb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eval(const Objective& f, double x) {
    const double v = f(x);
    return std::isfinite(v) ? v : kInf;
}

// Offsets in (guard, 0.5], log-spaced, ascending.
std::vector<double> log_offsets(std::size_t count, double guard) {
    std::vector<double> out(count);
    const double lg = std::log(guard);
    const double lh = std::log(0.5);
    for (std::size_t k = 0; k < count; ++k) {
        const double t = count == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(count - 1);
        out[k] = std::exp(lg + t * (lh - lg));
    }
    return out;
}

}  // namespace

InfimumResult golden_section(const Objective& objective, double a, double b, double rel_tol) {
    constexpr double inv_phi = 0.6180339887498948482;
    if (a > b) std::swap(a, b);
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = eval(objective, c);
    double fd = eval(objective, d);
    for (int iter = 0; iter < 300; ++iter) {
        const double scale = std::max(std::abs(a) + std::abs(b), std::numeric_limits<double>::min());
        if (b - a <= rel_tol * 0.5 * scale) break;
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = eval(objective, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = eval(objective, d);
        }
    }
    return fc <= fd ? InfimumResult{fc, c} : InfimumResult{fd, d};
}

InfimumResult infimum_1d(const Objective& objective, double lo, double hi,
                         const InfimumOptions& options) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("infimum_1d: empty or unbounded interval");
    }
    const double width = hi - lo;
    const std::size_t half = std::max<std::size_t>(options.scan_points / 2, 2);
    const auto offsets = log_offsets(half, options.endpoint_guard);

    std::vector<double> points;
    points.reserve(2 * half);
    for (double t : offsets) points.push_back(lo + width * t);
    for (auto it = offsets.rbegin(); it != offsets.rend(); ++it) points.push_back(hi - width * *it);
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());

    std::size_t best = points.size();
    double best_value = kInf;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const double v = eval(objective, points[k]);
        if (v < best_value) {
            best_value = v;
            best = k;
        }
    }
    if (best == points.size()) {
        throw NoFinitePointError("infimum_1d: objective is infeasible at every scan point");
    }

    const double left = best > 0 ? points[best - 1] : points[best];
    const double right = best + 1 < points.size() ? points[best + 1] : points[best];
    InfimumResult result{best_value, points[best]};
    if (left < right) {
        const auto refined = golden_section(objective, left, right, options.rel_tol);
        if (refined.value < result.value) result = refined;
    }
    return result;
}

}  // namespace lsqb
