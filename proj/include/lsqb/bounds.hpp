#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lsqb {

/// Constants that parameterize every sample-complexity bound.
///
/// `alpha` bounds every design entry almost surely; `sigma_min` and
/// `sigma_max` are the extremal eigenvalues of M = E(AᵀA)/N; `R` is the
/// sub-Gaussian noise parameter and `b` an almost-sure noise bound. At least
/// one of `R`, `b` must be present.
struct ProblemParams {
    int p = 1;
    double alpha = 1.0;
    std::optional<double> R;
    std::optional<double> b;
    double sigma_min = 1.0;
    double sigma_max = 1.0;

    // Throws ParameterError when an invariant is violated.
    void validate() const;
    double require_R() const;
    double require_b() const;
};

/// Target accuracy: L∞ radius `r` reached with outage probability below `eps`.
struct Accuracy {
    double r = 1.0;
    double eps = 0.05;

    void validate() const;
};

enum class Theorem { main, main_tau, bounded, mds_subgaussian, mds_bounded, fixed_mds };

std::string_view to_string(Theorem t);
// Accepts both "mds_subgaussian" and the CLI spelling "mds-subgaussian".
Theorem theorem_from_string(std::string_view name);

// Which algebraic form of β(s) to evaluate. `proof` is α²R²s + α⁴R⁴s²/(1−2α²R²s),
// the form the Chernoff argument derives; `as_printed` is α²R²p + α⁴R⁴s²/(1−2R²s).
enum class BetaForm { proof, as_printed };

std::string_view to_string(BetaForm f);

struct BoundOptions {
    BetaForm beta_form = BetaForm::proof;
};

/// A computed bound N(r, ε) with its per-term contributions.
///
/// Terms that do not apply to the selected theorem are empty. `n_final` is the
/// maximum of the applicable terms and `binding` names the first term (in the
/// order n1, n2, n3, n_rand) attaining it. `n_ceil` is the smallest integer
/// strictly greater than `n_final`, since the guarantees hold for N > N(r, ε).
struct BoundBreakdown {
    Theorem theorem = Theorem::main;
    std::optional<double> n1;
    std::optional<double> n2;
    std::optional<double> n3;
    std::optional<double> n_rand;
    double n_final = 0.0;
    std::int64_t n_ceil = 1;
    std::string binding;
    std::optional<double> s_opt_n2;
    std::optional<double> s_opt_n3;
    std::optional<double> tau_opt;
    BetaForm beta_form = BetaForm::proof;
    std::vector<std::string> notes;
};

bool operator==(const BoundBreakdown& a, const BoundBreakdown& b);

/// Outage bound ε(r, N); each term is clipped to at most 1.
struct OutageBreakdown {
    double eps2 = 1.0;
    double eps3 = 1.0;
    double eps_rand = 1.0;
    double eps_final = 1.0;
    bool feasible2 = true;
    bool feasible3 = true;
    bool feasible_rand = true;
    std::optional<double> s_opt2;
    std::optional<double> s_opt3;
};

// --- building blocks -------------------------------------------------------

/// Log-MGF bound on α²v² for sub-Gaussian v; domain 0 < s < 1/(2α²R²).
double beta(double s, const ProblemParams& params, BetaForm form = BetaForm::proof);

/// Log-MGF bound on α²v₁v₂ for independent sub-Gaussian v₁, v₂; domain 0 < s < 1/(α²R²).
double gamma(double s, const ProblemParams& params);

double beta_domain_upper(const ProblemParams& params, BetaForm form = BetaForm::proof);
double gamma_domain_upper(const ProblemParams& params);

// --- main bound terms --------------------------------------------------------

struct TermWithWitness {
    double value;
    std::optional<double> s_opt;
};

double n1_main(const Accuracy& acc, const ProblemParams& params);

TermWithWitness n2_main(const Accuracy& acc, const ProblemParams& params,
                        const BoundOptions& options = {});

TermWithWitness n3_main(const Accuracy& acc, const ProblemParams& params);

// Variants taking the log term log(3p/ε) directly. They allow evaluating the
// formal limit ε → 3p, where the log term is zero.
TermWithWitness n2_main_at_log(double r, double log_term, const ProblemParams& params,
                               const BoundOptions& options = {});
TermWithWitness n3_main_at_log(double r, double log_term, const ProblemParams& params);

/// Matrix-Bernstein sample count making P(λ_min(AᵀA/N) ≤ σ_min/2) small:
/// (4/3)(6σ_max+σ_min)(pα²+σ_max)/σ_min² · log(factor/eps_arg).
/// `factor` is 3p for the main and bounded-noise bounds, 2p for the two MDS
/// bounds and p for the bare eigenvalue event.
double n_rand(double eps_arg, double factor, const ProblemParams& params);

BoundBreakdown n_main(const Accuracy& acc, const ProblemParams& params,
                      const BoundOptions& options = {});

// --- τ-split variant ---------------------------------------------------------

double n2_tau(const Accuracy& acc, double tau, const ProblemParams& params,
              const BoundOptions& options = {}, double* s_opt = nullptr);
double n3_tau(const Accuracy& acc, double tau, const ProblemParams& params,
              double* s_opt = nullptr);

// max{N₁, N₂(τ), N₃(τ), N_rand} at a fixed τ.
double main_tau_inner_max(const Accuracy& acc, double tau, const ProblemParams& params,
                          const BoundOptions& options = {});

BoundBreakdown n_main_tau(const Accuracy& acc, const ProblemParams& params,
                          const BoundOptions& options = {});

// --- outage form ---------------------------------------------------------------

OutageBreakdown eps_of_n(double r, std::int64_t N, const ProblemParams& params,
                         const BoundOptions& options = {});

// --- bounded-noise, MDS and fixed-design bounds ------------------------------------

BoundBreakdown n_bounded(const Accuracy& acc, const ProblemParams& params);
BoundBreakdown n_mds_subgaussian(const Accuracy& acc, const ProblemParams& params);
BoundBreakdown n_mds_bounded(const Accuracy& acc, const ProblemParams& params);

/// Fixed design: `params.sigma_min` and `params.alpha` must be measured on the
/// actual matrix. No matrix-concentration term.
BoundBreakdown n_fixed_design(const Accuracy& acc, const ProblemParams& params);

/// Outage bound implied by the fixed-design theorem: 2p·exp(−N r²σ_min²/(8α²R²)), clipped to 1.
double eps_fixed_design(double r, std::int64_t N, const ProblemParams& params);

/// Dispatch on the theorem tag.
BoundBreakdown compute_bound(Theorem theorem, const Accuracy& acc, const ProblemParams& params,
                             const BoundOptions& options = {});

/// L∞ radius whose guarantee implies an L₂ guarantee at radius `r2`.
double l2_radius(double r2, int p);

}  // namespace lsqb
