#include "lsqb/json_out.hpp"

namespace lsqb {

using nlohmann::json;

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json params_to_json(const ProblemParams& params) {
    return json{{"p", params.p},
                {"alpha", params.alpha},
                {"R", opt(params.R)},
                {"b", opt(params.b)},
                {"sigma_min", params.sigma_min},
                {"sigma_max", params.sigma_max}};
}

json bound_to_json(const BoundBreakdown& bound, const ProblemParams& params, const Accuracy& acc) {
    return json{
        {"model", std::string(to_string(bound.theorem))},
        {"terms", {{"n1", opt(bound.n1)}, {"n2", opt(bound.n2)}, {"n3", opt(bound.n3)}, {"n_rand", opt(bound.n_rand)}}},
        {"n_final", bound.n_final},
        {"n_ceil", bound.n_ceil},
        {"binding", bound.binding},
        {"witnesses", {{"s_opt_n2", opt(bound.s_opt_n2)}, {"s_opt_n3", opt(bound.s_opt_n3)}, {"tau_opt", opt(bound.tau_opt)}}},
        {"metadata", {{"beta_form", std::string(to_string(bound.beta_form))}, {"notes", bound.notes}}},
        {"params", params_to_json(params)},
        {"accuracy", {{"r", acc.r}, {"eps", acc.eps}}},
    };
}

json outage_to_json(const OutageBreakdown& o, const ProblemParams& params, double r, std::int64_t N,
                    BetaForm form) {
    return json{
        {"terms", {{"eps2", o.eps2}, {"eps3", o.eps3}, {"eps_rand", o.eps_rand}}},
        {"feasible", {{"eps2", o.feasible2}, {"eps3", o.feasible3}, {"eps_rand", o.feasible_rand}}},
        {"eps_final", o.eps_final},
        {"witnesses", {{"s_opt2", opt(o.s_opt2)}, {"s_opt3", opt(o.s_opt3)}}},
        {"metadata", {{"beta_form", std::string(to_string(form))}}},
        {"params", params_to_json(params)},
        {"r", r},
        {"N", N},
    };
}

json diagnostics_to_json(const EventDiagnostics& d) {
    return json{
        {"trials", d.trials},
        {"sigma_min", d.sigma_min},
        {"freq_e_rand", d.freq_e_rand},
        {"e_rand_ci", {d.e_rand_ci.low, d.e_rand_ci.high}},
        {"freq_e2", d.freq_e2},
        {"freq_e3", d.freq_e3},
        {"inverse_eig_violations", d.inverse_eig_violations},
        {"inverse_eig_l2_violations", d.inverse_eig_l2_violations},
        {"identity_violations", d.identity_violations},
        {"max_identity_residual", d.max_identity_residual},
        {"tail", {{"p_hat", d.tail.p_hat}, {"ci_low", d.tail.ci_low}, {"ci_high", d.tail.ci_high},
                  {"trials", d.tail.trials}, {"seed", d.tail.seed}}},
    };
}

}  // namespace lsqb
