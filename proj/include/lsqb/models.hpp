#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "lsqb/bounds.hpp"
#include "lsqb/matrix.hpp"
#include "lsqb/rng.hpp"

namespace lsqb {

// --- noise laws ----------------------------------------------------------------

struct NoiseModel;

struct GaussianNoise {
    double sigma = 1.0;
    bool operator==(const GaussianNoise&) const = default;
};

// Two zero-mean Gaussians; the high-variance one is drawn with probability weight_large.
struct GaussianMixtureNoise {
    double sigma_small = 0.05;
    double sigma_large = 0.3;
    double weight_large = 0.1;
    bool operator==(const GaussianMixtureNoise&) const = default;
};

struct UniformNoise {
    double half_width = 1.0;
    bool operator==(const UniformNoise&) const = default;
};

struct UniformPlusGaussianNoise {
    double half_width = 1.0;
    double sigma = 1.0;
    bool operator==(const UniformPlusGaussianNoise&) const = default;
};

struct RademacherNoise {
    double scale = 1.0;
    bool operator==(const RademacherNoise&) const = default;
};

/// Interference through an FIR channel plus receiver noise:
/// v_n = Σ_i h_i j_{n-i} + w_n with j_n = η·(±1) i.i.d. and j_n = 0 for n < 0.
struct FirMdsNoise {
    std::vector<double> taps;
    double jammer_scale = 1.0;
    std::shared_ptr<const NoiseModel> receiver;
    bool operator==(const FirMdsNoise& other) const;
};

struct NoiseModel {
    std::variant<GaussianNoise, GaussianMixtureNoise, UniformNoise, UniformPlusGaussianNoise,
                 RademacherNoise, FirMdsNoise>
        law;
    bool operator==(const NoiseModel&) const = default;
};

NoiseModel fir_mds(std::vector<double> taps, double jammer_scale, NoiseModel receiver);

/// Draws noise values one at a time; keeps the FIR history for FirMds laws.
class NoiseSampler {
public:
    explicit NoiseSampler(const NoiseModel& model);
    ~NoiseSampler();
    NoiseSampler(NoiseSampler&&) noexcept;
    NoiseSampler& operator=(NoiseSampler&&) noexcept;

    double next(Stream& stream);

private:
    const NoiseModel* model_;
    std::vector<double> history_;  // most recent jammer values, history_[0] = j_{n-1}
    std::unique_ptr<NoiseSampler> receiver_;
};

std::vector<double> sample_noise(const NoiseModel& model, std::size_t n, const SeedSpec& seed);

/// A valid (not necessarily minimal) sub-Gaussian parameter for the law.
double subgaussian_param(const NoiseModel& model);

/// Almost-sure bound |v| ≤ b, when the law has one.
std::optional<double> noise_bound(const NoiseModel& model);

/// log E exp(s v) for the Gaussian mixture law.
double mixture_log_mgf(const GaussianMixtureNoise& m, double s);

// --- design families -----------------------------------------------------------

enum class EntryLaw { scaled_rademacher, scaled_uniform };

/// Independent zero-mean entries with column variances σ_i²; M = diag(σ_i²).
struct IidBoundedColumns {
    std::vector<double> column_stddevs;
    EntryLaw entry_law = EntryLaw::scaled_uniform;
    bool operator==(const IidBoundedColumns&) const = default;
};

/// Convolution design from BPSK training symbols; row n is (s_n, s_{n-1}, …, s_{n-p+1})
/// with s_i = 0 for i < 0.
struct ToeplitzPilot {
    std::vector<double> pilots;
    int p = 1;
    bool operator==(const ToeplitzPilot&) const = default;
};

struct FixedMatrix {
    Matrix matrix;
    bool operator==(const FixedMatrix&) const = default;
};

struct DesignModel {
    std::variant<IidBoundedColumns, ToeplitzPilot, FixedMatrix> family;
    bool operator==(const DesignModel&) const = default;

    int p() const;
    bool is_random() const { return std::holds_alternative<IidBoundedColumns>(family); }
};

/// Almost-sure entry bound of an i.i.d. column design.
double iid_alpha(const IidBoundedColumns& d);

/// Fills one design row of an i.i.d. column family.
void draw_iid_row(const IidBoundedColumns& d, Stream& stream, std::span<double> row);

/// N×p design. Deterministic families ignore the seed.
Matrix sample_design(const DesignModel& model, std::size_t N, const SeedSpec& seed);

/// ±1 symbols drawn from the pilot stream of `base_seed`; prefixes agree across counts.
std::vector<double> random_bpsk_pilots(std::size_t count, std::uint64_t base_seed);

/// Problem constants implied by a design/noise pair. Fixed designs are
/// materialized with `N_hint` rows and measured.
ProblemParams implied_problem_params(const DesignModel& design, const NoiseModel& noise,
                                     std::optional<std::size_t> N_hint = std::nullopt);

}  // namespace lsqb
