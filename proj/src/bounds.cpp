#include "lsqb/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lsqb/errors.hpp"
#include "lsqb/infimum.hpp"

namespace lsqb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sq(double x) { return x * x; }

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParameterError(std::string(name) + " must be a positive finite number");
    }
}

// Log term clamped at zero: for ε ≥ factor the bounds are vacuous.
double clamped_log(double factor, double eps) { return std::max(0.0, std::log(factor / eps)); }

void finalize(BoundBreakdown& out) {
    const std::array<std::pair<const char*, const std::optional<double>*>, 4> terms{{
        {"n1", &out.n1},
        {"n2", &out.n2},
        {"n3", &out.n3},
        {"n_rand", &out.n_rand},
    }};
    out.n_final = -kInf;
    for (const auto& [name, term] : terms) {
        if (!term->has_value()) continue;
        if (!std::isfinite(**term) || **term < 0.0) {
            throw Error(std::string("bound term ") + name + " is not finite and nonnegative");
        }
        if (**term > out.n_final) {
            out.n_final = **term;
            out.binding = name;
        }
    }
    if (out.n_final > 9.0e18) throw Error("bound exceeds the representable sample count");
    out.n_ceil = static_cast<std::int64_t>(std::floor(out.n_final)) + 1;
}

// σ_min²r²s/8 − γ(s): the slack in the off-diagonal Chernoff exponent.
double offdiag_margin(double s, double r, const ProblemParams& params, double share) {
    return share * sq(params.sigma_min * r) * s - gamma(s, params);
}

InfimumResult max_offdiag_margin(double r, const ProblemParams& params, double share) {
    const double hi = gamma_domain_upper(params);
    auto negated = [&](double s) {
        const double m = offdiag_margin(s, r, params, share);
        return m > 0.0 ? -m : kInf;
    };
    const auto res = infimum_1d(negated, 0.0, hi);
    return {-res.value, res.argmin};
}

}  // namespace

void ProblemParams::validate() const {
    if (p < 1) throw ParameterError("p must be at least 1");
    require_positive(alpha, "alpha");
    require_positive(sigma_min, "sigma_min");
    require_positive(sigma_max, "sigma_max");
    if (sigma_min > sigma_max) throw ParameterError("sigma_min must not exceed sigma_max");
    // Every eigenvalue of M is at most trace(M) ≤ pα².
    if (sigma_max > p * alpha * alpha * (1.0 + 1e-12)) {
        throw ParameterError("sigma_max must not exceed p*alpha^2");
    }
    if (!R && !b) throw ParameterError("at least one of R and b must be given");
    if (R) require_positive(*R, "R");
    if (b) require_positive(*b, "b");
}

double ProblemParams::require_R() const {
    if (!R) throw ParameterError("this bound requires the sub-Gaussian parameter R");
    return *R;
}

double ProblemParams::require_b() const {
    if (!b) throw ParameterError("this bound requires the almost-sure noise bound b");
    return *b;
}

void Accuracy::validate() const {
    require_positive(r, "r");
    if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
}

std::string_view to_string(Theorem t) {
    switch (t) {
        case Theorem::main: return "main";
        case Theorem::main_tau: return "main_tau";
        case Theorem::bounded: return "bounded";
        case Theorem::mds_subgaussian: return "mds_subgaussian";
        case Theorem::mds_bounded: return "mds_bounded";
        case Theorem::fixed_mds: return "fixed_mds";
    }
    return "unknown";
}

Theorem theorem_from_string(std::string_view name) {
    std::string key(name);
    std::replace(key.begin(), key.end(), '-', '_');
    for (Theorem t : {Theorem::main, Theorem::main_tau, Theorem::bounded, Theorem::mds_subgaussian,
                      Theorem::mds_bounded, Theorem::fixed_mds}) {
        if (key == to_string(t)) return t;
    }
    throw ParameterError("unknown theorem/model '" + std::string(name) + "'");
}

std::string_view to_string(BetaForm f) {
    return f == BetaForm::proof ? "proof" : "as_printed";
}

bool operator==(const BoundBreakdown& a, const BoundBreakdown& b) {
    return a.theorem == b.theorem && a.n1 == b.n1 && a.n2 == b.n2 && a.n3 == b.n3 &&
           a.n_rand == b.n_rand && a.n_final == b.n_final && a.n_ceil == b.n_ceil &&
           a.binding == b.binding && a.s_opt_n2 == b.s_opt_n2 && a.s_opt_n3 == b.s_opt_n3 &&
           a.tau_opt == b.tau_opt && a.beta_form == b.beta_form && a.notes == b.notes;
}

double beta_domain_upper(const ProblemParams& params, BetaForm form) {
    const double a2r2 = sq(params.alpha * params.require_R());
    double hi = 1.0 / (2.0 * a2r2);
    if (form == BetaForm::as_printed) hi = std::min(hi, 1.0 / (2.0 * sq(*params.R)));
    return hi;
}

double gamma_domain_upper(const ProblemParams& params) {
    return 1.0 / sq(params.alpha * params.require_R());
}

double beta(double s, const ProblemParams& params, BetaForm form) {
    const double hi = beta_domain_upper(params, form);
    if (!(s > 0.0 && s < hi)) throw DomainError("beta: s outside (0, 1/(2 alpha^2 R^2))");
    const double R = *params.R;
    const double a2r2 = sq(params.alpha * R);
    if (form == BetaForm::proof) {
        return a2r2 * s + sq(a2r2 * s) / (1.0 - 2.0 * a2r2 * s);
    }
    return a2r2 * params.p + sq(a2r2 * s) / (1.0 - 2.0 * sq(R) * s);
}

double gamma(double s, const ProblemParams& params) {
    const double hi = gamma_domain_upper(params);
    if (!(s > 0.0 && s < hi)) throw DomainError("gamma: s outside (0, 1/(alpha^2 R^2))");
    const double x = sq(params.alpha * *params.R) * s;  // α²R²s
    const double x2 = x * x;
    return x2 / 2.0 + x2 * x2 / (4.0 * (1.0 - x2));
}

double n1_main(const Accuracy& acc, const ProblemParams& params) {
    acc.validate();
    params.validate();
    return 4.0 * sq(params.alpha * params.require_R()) / sq(params.sigma_min * acc.r);
}

TermWithWitness n2_main_at_log(double r, double log_term, const ProblemParams& params,
                               const BoundOptions& options) {
    params.validate();
    require_positive(r, "r");
    const double L = std::max(0.0, log_term);
    const double sr = params.sigma_min * r;
    const double hi = beta_domain_upper(params, options.beta_form);
    auto objective = [&](double s) {
        return (8.0 * beta(s, params, options.beta_form) + 2.0 * sr * std::sqrt(2.0 * s * L)) /
               (sq(sr) * s);
    };
    const auto res = infimum_1d(objective, 0.0, hi);
    return {res.value, res.argmin};
}

TermWithWitness n2_main(const Accuracy& acc, const ProblemParams& params,
                        const BoundOptions& options) {
    acc.validate();
    return n2_main_at_log(acc.r, std::log(3.0 * params.p / acc.eps), params, options);
}

TermWithWitness n3_main_at_log(double r, double log_term, const ProblemParams& params) {
    params.validate();
    require_positive(r, "r");
    params.require_R();
    const auto best = max_offdiag_margin(r, params, 1.0 / 8.0);
    const double L = std::max(0.0, log_term);
    return {std::sqrt(L / best.value), best.argmin};
}

TermWithWitness n3_main(const Accuracy& acc, const ProblemParams& params) {
    acc.validate();
    return n3_main_at_log(acc.r, std::log(3.0 * params.p / acc.eps), params);
}

double n_rand(double eps_arg, double factor, const ProblemParams& params) {
    params.validate();
    require_positive(eps_arg, "eps");
    require_positive(factor, "factor");
    const double structural = (6.0 * params.sigma_max + params.sigma_min) *
                              (params.p * sq(params.alpha) + params.sigma_max) /
                              sq(params.sigma_min);
    return (4.0 / 3.0) * structural * clamped_log(factor, eps_arg);
}

BoundBreakdown n_main(const Accuracy& acc, const ProblemParams& params,
                      const BoundOptions& options) {
    BoundBreakdown out;
    out.theorem = Theorem::main;
    out.beta_form = options.beta_form;
    out.n1 = n1_main(acc, params);
    const auto t2 = n2_main(acc, params, options);
    const auto t3 = n3_main(acc, params);
    out.n2 = t2.value;
    out.s_opt_n2 = t2.s_opt;
    out.n3 = t3.value;
    out.s_opt_n3 = t3.s_opt;
    out.n_rand = n_rand(acc.eps, 3.0 * params.p, params);
    if (options.beta_form == BetaForm::as_printed) {
        out.notes.emplace_back("beta evaluated in the as-printed form alpha^2 R^2 p + ...");
    }
    finalize(out);
    return out;
}

double n2_tau(const Accuracy& acc, double tau, const ProblemParams& params,
              const BoundOptions& options, double* s_opt) {
    acc.validate();
    params.validate();
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0, 1)");
    const double L = clamped_log(2.0, acc.eps);
    const double sr = params.sigma_min * acc.r;
    auto objective = [&](double s) {
        return (4.0 * beta(s, params, options.beta_form) + sr * std::sqrt(2.0 * s * L)) /
               (tau * sq(sr) * s);
    };
    const auto res = infimum_1d(objective, 0.0, beta_domain_upper(params, options.beta_form));
    if (s_opt != nullptr) *s_opt = res.argmin;
    return res.value;
}

double n3_tau(const Accuracy& acc, double tau, const ProblemParams& params, double* s_opt) {
    acc.validate();
    params.validate();
    if (!(tau > 0.0 && tau < 1.0)) throw DomainError("tau must lie in (0, 1)");
    const auto best = max_offdiag_margin(acc.r, params, (1.0 - tau) / 4.0);
    if (s_opt != nullptr) *s_opt = best.argmin;
    return std::sqrt(clamped_log(2.0, acc.eps) / best.value);
}

double main_tau_inner_max(const Accuracy& acc, double tau, const ProblemParams& params,
                          const BoundOptions& options) {
    return std::max({n1_main(acc, params), n2_tau(acc, tau, params, options),
                     n3_tau(acc, tau, params), n_rand(acc.eps, 3.0 * params.p, params)});
}

BoundBreakdown n_main_tau(const Accuracy& acc, const ProblemParams& params,
                          const BoundOptions& options) {
    acc.validate();
    params.validate();
    params.require_R();
    auto inner = [&](double tau) { return main_tau_inner_max(acc, tau, params, options); };

    double best_tau = 0.01;
    double best_value = kInf;
    for (int k = 1; k <= 99; ++k) {
        const double tau = 0.01 * k;
        const double v = inner(tau);
        if (v < best_value) {
            best_value = v;
            best_tau = tau;
        }
    }
    const double left = std::max(0.005, best_tau - 0.01);
    const double right = std::min(0.995, best_tau + 0.01);
    const auto refined = golden_section(inner, left, right, 1e-6);
    if (refined.value < best_value) {
        best_value = refined.value;
        best_tau = refined.argmin;
    }

    BoundBreakdown out;
    out.theorem = Theorem::main_tau;
    out.beta_form = options.beta_form;
    out.tau_opt = best_tau;
    out.n1 = n1_main(acc, params);
    double s2 = 0.0;
    double s3 = 0.0;
    out.n2 = n2_tau(acc, best_tau, params, options, &s2);
    out.n3 = n3_tau(acc, best_tau, params, &s3);
    out.s_opt_n2 = s2;
    out.s_opt_n3 = s3;
    out.n_rand = n_rand(acc.eps, 3.0 * params.p, params);
    out.notes.emplace_back("tau-split terms use log(2/eps) as printed, without a factor of p");
    if (options.beta_form == BetaForm::as_printed) {
        out.notes.emplace_back("beta evaluated in the as-printed form alpha^2 R^2 p + ...");
    }
    finalize(out);
    return out;
}

OutageBreakdown eps_of_n(double r, std::int64_t N, const ProblemParams& params,
                         const BoundOptions& options) {
    params.validate();
    require_positive(r, "r");
    const double R = params.require_R();
    const double sr2 = sq(params.sigma_min * r);
    const double threshold = 4.0 * sq(params.alpha * R) / sr2;
    const double n = static_cast<double>(N);
    if (!(n > threshold)) {
        throw PreconditionError("precondition violated: N > 4α²R²/(σ_min²r²) = " +
                                std::to_string(threshold));
    }
    const double scale = 3.0 * params.p;
    OutageBreakdown out;

    // ε₂: only s with σ²r²sN ≥ 8β(s) keep the one-sided Chernoff step valid.
    auto exponent2 = [&](double s) {
        const double gap = sr2 * s * n - 8.0 * beta(s, params, options.beta_form);
        if (gap < 0.0) return kInf;
        return -sq(gap) / (8.0 * s * sr2);
    };
    try {
        const auto res = infimum_1d(exponent2, 0.0, beta_domain_upper(params, options.beta_form));
        out.eps2 = std::min(1.0, scale * std::exp(res.value));
        out.s_opt2 = res.argmin;
    } catch (const NoFinitePointError&) {
        out.eps2 = 1.0;
        out.feasible2 = false;
    }

    try {
        const auto best = max_offdiag_margin(r, params, 1.0 / 8.0);
        out.eps3 = std::min(1.0, scale * std::exp(-n * n * best.value));
        out.s_opt3 = best.argmin;
    } catch (const NoFinitePointError&) {
        out.eps3 = 1.0;
        out.feasible3 = false;
    }

    const double structural = (6.0 * params.sigma_max + params.sigma_min) *
                              (params.p * sq(params.alpha) + params.sigma_max);
    out.eps_rand = std::min(1.0, scale * std::exp(-0.75 * n * sq(params.sigma_min) / structural));
    out.eps_final = std::max({out.eps2, out.eps3, out.eps_rand});
    return out;
}

BoundBreakdown n_bounded(const Accuracy& acc, const ProblemParams& params) {
    acc.validate();
    params.validate();
    const double b = params.require_b();
    const double factor = 3.0 * params.p;
    BoundBreakdown out;
    out.theorem = Theorem::bounded;
    out.n1 = 2.0 * sq(params.alpha * b) / sq(acc.r * params.sigma_min) * clamped_log(factor, acc.eps);
    out.n_rand = n_rand(acc.eps, factor, params);
    finalize(out);
    return out;
}

BoundBreakdown n_mds_subgaussian(const Accuracy& acc, const ProblemParams& params) {
    acc.validate();
    params.validate();
    const double R = params.require_R();
    const double factor = 2.0 * params.p;
    BoundBreakdown out;
    out.theorem = Theorem::mds_subgaussian;
    out.n1 = 8.0 * sq(params.alpha * R) / sq(acc.r * params.sigma_min) * clamped_log(factor, acc.eps);
    out.n_rand = n_rand(acc.eps, factor, params);
    finalize(out);
    return out;
}

BoundBreakdown n_mds_bounded(const Accuracy& acc, const ProblemParams& params) {
    acc.validate();
    params.validate();
    const double b = params.require_b();
    const double factor = 2.0 * params.p;
    BoundBreakdown out;
    out.theorem = Theorem::mds_bounded;
    out.n1 = 8.0 * sq(params.alpha * b) / sq(acc.r * params.sigma_min) * clamped_log(factor, acc.eps);
    out.n_rand = n_rand(acc.eps, factor, params);
    finalize(out);
    return out;
}

BoundBreakdown n_fixed_design(const Accuracy& acc, const ProblemParams& params) {
    acc.validate();
    params.validate();
    const double R = params.require_R();
    BoundBreakdown out;
    out.theorem = Theorem::fixed_mds;
    out.n1 = 8.0 * sq(params.alpha * R) / sq(acc.r * params.sigma_min) *
             clamped_log(2.0 * params.p, acc.eps);
    out.notes.emplace_back("sigma_min and alpha measured on the realized design matrix");
    finalize(out);
    return out;
}

double eps_fixed_design(double r, std::int64_t N, const ProblemParams& params) {
    params.validate();
    require_positive(r, "r");
    const double R = params.require_R();
    const double exponent =
        static_cast<double>(N) * sq(r * params.sigma_min) / (8.0 * sq(params.alpha * R));
    return std::min(1.0, 2.0 * params.p * std::exp(-exponent));
}

BoundBreakdown compute_bound(Theorem theorem, const Accuracy& acc, const ProblemParams& params,
                             const BoundOptions& options) {
    switch (theorem) {
        case Theorem::main: return n_main(acc, params, options);
        case Theorem::main_tau: return n_main_tau(acc, params, options);
        case Theorem::bounded: return n_bounded(acc, params);
        case Theorem::mds_subgaussian: return n_mds_subgaussian(acc, params);
        case Theorem::mds_bounded: return n_mds_bounded(acc, params);
        case Theorem::fixed_mds: return n_fixed_design(acc, params);
    }
    throw ParameterError("unknown theorem");
}

double l2_radius(double r2, int p) {
    require_positive(r2, "r2");
    if (p < 1) throw ParameterError("p must be at least 1");
    return r2 / std::sqrt(static_cast<double>(p));
}

}  // namespace lsqb
