#include "lsqb/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lsqb/errors.hpp"

namespace lsqb {
namespace {

constexpr double kSqrt3 = 1.7320508075688772935;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double taps_l1(const FirMdsNoise& f) {
    double sum = 0.0;
    for (double h : f.taps) sum += std::abs(h);
    return sum;
}

const NoiseModel& receiver_of(const FirMdsNoise& f) {
    if (!f.receiver) throw ParameterError("FIR noise requires a receiver noise law");
    return *f.receiver;
}

// Smallest R on a geometric grid with log E e^{sv} ≤ s²R²/2 over the s-grid.
double mixture_envelope(const GaussianMixtureNoise& m) {
    const double variance = (1.0 - m.weight_large) * m.sigma_small * m.sigma_small +
                            m.weight_large * m.sigma_large * m.sigma_large;
    const double r0 = std::sqrt(variance);
    if (r0 == 0.0) return 0.0;
    constexpr int kPoints = 10000;
    const double lo = std::log(1e-3 / r0);
    const double hi = std::log(1e3 / r0);
    double required_sq = variance;
    for (int k = 0; k < kPoints; ++k) {
        const double s = std::exp(lo + (hi - lo) * k / (kPoints - 1));
        required_sq = std::max(required_sq, 2.0 * mixture_log_mgf(m, s) / (s * s));
    }
    constexpr double kRatio = 1.0001;
    const double steps = std::ceil(std::log(std::sqrt(required_sq) / r0) / std::log(kRatio));
    double R = r0 * std::pow(kRatio, std::max(0.0, steps));
    while (R * R < required_sq) R *= kRatio;
    // Each component is σ-sub-Gaussian, so the larger σ is always a valid parameter.
    return std::min(R, std::max(m.sigma_small, m.sigma_large));
}

}  // namespace

bool FirMdsNoise::operator==(const FirMdsNoise& other) const {
    if (taps != other.taps || jammer_scale != other.jammer_scale) return false;
    if (!receiver || !other.receiver) return receiver == other.receiver;
    return *receiver == *other.receiver;
}

NoiseModel fir_mds(std::vector<double> taps, double jammer_scale, NoiseModel receiver) {
    return NoiseModel{FirMdsNoise{std::move(taps), jammer_scale,
                                  std::make_shared<const NoiseModel>(std::move(receiver))}};
}

NoiseSampler::NoiseSampler(const NoiseModel& model) : model_(&model) {
    if (const auto* fir = std::get_if<FirMdsNoise>(&model.law)) {
        if (fir->taps.empty()) throw ParameterError("FIR noise needs at least one tap");
        history_.assign(fir->taps.size() - 1, 0.0);
        receiver_ = std::make_unique<NoiseSampler>(receiver_of(*fir));
    }
}

NoiseSampler::~NoiseSampler() = default;
NoiseSampler::NoiseSampler(NoiseSampler&&) noexcept = default;
NoiseSampler& NoiseSampler::operator=(NoiseSampler&&) noexcept = default;

double NoiseSampler::next(Stream& stream) {
    return std::visit(
        overloaded{
            [&](const GaussianNoise& g) { return g.sigma * stream.normal(); },
            [&](const GaussianMixtureNoise& m) {
                const bool large = stream.uniform01() < m.weight_large;
                return (large ? m.sigma_large : m.sigma_small) * stream.normal();
            },
            [&](const UniformNoise& u) { return u.half_width * stream.uniform_pm1(); },
            [&](const UniformPlusGaussianNoise& u) {
                const double a = u.half_width * stream.uniform_pm1();
                return a + u.sigma * stream.normal();
            },
            [&](const RademacherNoise& r) { return r.scale * stream.sign(); },
            [&](const FirMdsNoise& f) {
                const double jammer = f.jammer_scale * stream.sign();
                double v = f.taps[0] * jammer;
                for (std::size_t i = 1; i < f.taps.size(); ++i) v += f.taps[i] * history_[i - 1];
                if (!history_.empty()) {
                    std::rotate(history_.rbegin(), history_.rbegin() + 1, history_.rend());
                    history_[0] = jammer;
                }
                return v + receiver_->next(stream);
            },
        },
        model_->law);
}

std::vector<double> sample_noise(const NoiseModel& model, std::size_t n, const SeedSpec& seed) {
    if (n == 0) throw ParameterError("sample_noise: n must be at least 1");
    Stream stream(seed);
    NoiseSampler sampler(model);
    std::vector<double> out(n);
    for (auto& v : out) v = sampler.next(stream);
    return out;
}

double mixture_log_mgf(const GaussianMixtureNoise& m, double s) {
    const double a = std::log1p(-m.weight_large) + 0.5 * s * s * m.sigma_small * m.sigma_small;
    const double b = std::log(m.weight_large) + 0.5 * s * s * m.sigma_large * m.sigma_large;
    const double hi = std::max(a, b);
    return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

double subgaussian_param(const NoiseModel& model) {
    return std::visit(
        overloaded{
            [](const GaussianNoise& g) { return g.sigma; },
            [](const GaussianMixtureNoise& m) { return mixture_envelope(m); },
            [](const UniformNoise& u) { return u.half_width; },
            [](const UniformPlusGaussianNoise& u) {
                return std::sqrt(u.half_width * u.half_width + u.sigma * u.sigma);
            },
            [](const RademacherNoise& r) { return r.scale; },
            [](const FirMdsNoise& f) {
                return f.jammer_scale * taps_l1(f) + subgaussian_param(receiver_of(f));
            },
        },
        model.law);
}

std::optional<double> noise_bound(const NoiseModel& model) {
    return std::visit(
        overloaded{
            [](const GaussianNoise& g) -> std::optional<double> {
                if (g.sigma == 0.0) return 0.0;
                return std::nullopt;
            },
            [](const GaussianMixtureNoise&) -> std::optional<double> { return std::nullopt; },
            [](const UniformNoise& u) -> std::optional<double> { return u.half_width; },
            [](const UniformPlusGaussianNoise& u) -> std::optional<double> {
                if (u.sigma == 0.0) return u.half_width;
                return std::nullopt;
            },
            [](const RademacherNoise& r) -> std::optional<double> { return r.scale; },
            [](const FirMdsNoise& f) -> std::optional<double> {
                const auto inner = noise_bound(receiver_of(f));
                if (!inner) return std::nullopt;
                return f.jammer_scale * taps_l1(f) + *inner;
            },
        },
        model.law);
}

int DesignModel::p() const {
    return std::visit(overloaded{
                          [](const IidBoundedColumns& d) { return static_cast<int>(d.column_stddevs.size()); },
                          [](const ToeplitzPilot& d) { return d.p; },
                          [](const FixedMatrix& d) { return static_cast<int>(d.matrix.cols()); },
                      },
                      family);
}

double iid_alpha(const IidBoundedColumns& d) {
    double alpha = 0.0;
    for (double s : d.column_stddevs) alpha = std::max(alpha, s);
    return d.entry_law == EntryLaw::scaled_uniform ? kSqrt3 * alpha : alpha;
}

void draw_iid_row(const IidBoundedColumns& d, Stream& stream, std::span<double> row) {
    if (d.entry_law == EntryLaw::scaled_uniform) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            row[i] = kSqrt3 * d.column_stddevs[i] * stream.uniform_pm1();
        }
    } else {
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = d.column_stddevs[i] * stream.sign();
    }
}

Matrix sample_design(const DesignModel& model, std::size_t N, const SeedSpec& seed) {
    const int p = model.p();
    if (p < 1) throw ParameterError("design must have at least one column");
    if (N <= static_cast<std::size_t>(p)) throw PreconditionError("design needs N > p rows");
    return std::visit(
        overloaded{
            [&](const IidBoundedColumns& d) {
                Matrix A(N, d.column_stddevs.size());
                Stream stream(seed);
                for (std::size_t n = 0; n < N; ++n) draw_iid_row(d, stream, A.row(n));
                return A;
            },
            [&](const ToeplitzPilot& d) {
                if (d.pilots.size() < N) {
                    throw ParameterError("Toeplitz design needs at least N pilot symbols");
                }
                Matrix A(N, static_cast<std::size_t>(d.p));
                for (std::size_t n = 0; n < N; ++n) {
                    for (std::size_t t = 0; t < static_cast<std::size_t>(d.p) && t <= n; ++t) {
                        A(n, t) = d.pilots[n - t];
                    }
                }
                return A;
            },
            [&](const FixedMatrix& d) {
                if (d.matrix.rows() != N) {
                    throw ParameterError("fixed design has a different number of rows than N");
                }
                return d.matrix;
            },
        },
        model.family);
}

std::vector<double> random_bpsk_pilots(std::size_t count, std::uint64_t base_seed) {
    Stream stream(SeedSpec{base_seed, 0, StreamRole::pilot});
    std::vector<double> out(count);
    for (auto& s : out) s = stream.sign();
    return out;
}

ProblemParams implied_problem_params(const DesignModel& design, const NoiseModel& noise,
                                     std::optional<std::size_t> N_hint) {
    ProblemParams params;
    params.p = design.p();
    if (const auto* iid = std::get_if<IidBoundedColumns>(&design.family)) {
        if (iid->column_stddevs.empty()) throw ParameterError("design needs at least one column");
        double lo = iid->column_stddevs.front();
        double hi = lo;
        for (double s : iid->column_stddevs) {
            lo = std::min(lo, s);
            hi = std::max(hi, s);
        }
        params.alpha = iid_alpha(*iid);
        params.sigma_min = lo * lo;
        params.sigma_max = hi * hi;
    } else {
        std::size_t N = 0;
        if (const auto* fixed = std::get_if<FixedMatrix>(&design.family)) {
            N = N_hint.value_or(fixed->matrix.rows());
        } else {
            if (!N_hint) throw ParameterError("a Toeplitz design needs N to be materialized");
            N = *N_hint;
        }
        const Matrix A = sample_design(design, N, SeedSpec{});
        const auto spectrum = sym_extremal_eigs(gram_normalized(A));
        if (spectrum.singular) throw RankDeficientError("fixed design has a singular Gram matrix");
        params.alpha = max_abs_entry(A);
        params.sigma_min = spectrum.lambda_min;
        params.sigma_max = spectrum.lambda_max;
    }
    const double R = subgaussian_param(noise);
    if (R > 0.0) params.R = R;
    if (const auto b = noise_bound(noise); b && *b > 0.0) params.b = *b;
    params.validate();
    return params;
}

}  // namespace lsqb
