#include "lsqb/presets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lsqb/errors.hpp"
#include "lsqb/svg.hpp"

namespace lsqb {
namespace {

constexpr std::size_t kPilotLength = std::size_t{1} << 17;
constexpr std::uint64_t kPilotSeed = kDefaultSeed;

DesignModel iid_design(std::vector<double> stddevs, EntryLaw law = EntryLaw::scaled_uniform) {
    return DesignModel{IidBoundedColumns{std::move(stddevs), law}};
}

std::vector<double> geometric_taps(double ratio, int count) {
    std::vector<double> taps;
    for (int i = 0; i < count; ++i) taps.push_back(std::pow(ratio, i));
    return taps;
}

// Jammer path 0.05 plus Gaussian receiver 0.05 gives R = 0.1.
NoiseModel pilot_noise() {
    auto taps = geometric_taps(0.8, 4);
    double l1 = 0.0;
    for (double h : taps) l1 += std::abs(h);
    return fir_mds(std::move(taps), 0.05 / l1, NoiseModel{GaussianNoise{0.05}});
}

DesignModel pilot_design() {
    return DesignModel{ToeplitzPilot{random_bpsk_pilots(kPilotLength, kPilotSeed), 8}};
}

std::string axis_label(AxisKind kind) {
    switch (kind) {
        case AxisKind::N: return "N";
        case AxisKind::r: return "r";
        case AxisKind::eps: return "eps";
    }
    return "?";
}

}  // namespace

GaussianMixtureNoise mixture_with_parameter(double target_R, double sigma_small, double weight_large) {
    auto param = [&](double sigma_large) {
        return subgaussian_param(NoiseModel{GaussianMixtureNoise{sigma_small, sigma_large, weight_large}});
    };
    double lo = sigma_small;
    if (param(lo) > target_R) throw ParameterError("target R is below the small component's parameter");
    double hi = std::max(2.0 * target_R, 2.0 * sigma_small);
    while (param(hi) <= target_R) hi *= 2.0;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (param(mid) <= target_R ? lo : hi) = mid;
    }
    return GaussianMixtureNoise{sigma_small, lo, weight_large};
}

std::vector<std::string> figure_ids() { return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6"}; }

FigurePreset figure_preset(std::string_view id) {
    FigurePreset f;
    f.id = std::string(id);
    if (id == "fig1") {
        f.title = "Required N versus eps (p=8, R=0.1, r=0.01, mixture noise)";
        f.axis = {AxisKind::eps, {0.2, 0.1, 0.05, 0.02, 0.01}};
        f.r = 0.01;
        f.variants.push_back({"main", iid_design(std::vector<double>(8, 1.0)),
                              NoiseModel{mixture_with_parameter(0.1, 0.05, 0.1)}, Theorem::main});
    } else if (id == "fig2") {
        f.title = "Tail probability and bound versus r (p=2, uniform noise, eps=0.01)";
        f.axis = {AxisKind::r, {0.2, 0.4, 0.8, 1.6}};
        f.eps = 0.01;
        f.variants.push_back(
            {"main", iid_design({std::sqrt(0.2), 1.0}), NoiseModel{UniformNoise{1.0}}, Theorem::main});
    } else if (id == "fig3") {
        f.title = "Main bound versus MDS bound (p=4, R=10, eps=0.05)";
        // Past r ≈ 4 the main bound is pinned by its matrix term, whose log(3p/eps)
        // exceeds the MDS bound's log(2p/eps), so the grid stops below that.
        f.axis = {AxisKind::r, {0.5, 1.0, 2.0, 3.0, 3.5}};
        f.eps = 0.05;
        // a² + σ² = 100 with the uniform part dominant
        const NoiseModel noise{UniformPlusGaussianNoise{8.0, 6.0}};
        const auto design = iid_design(std::vector<double>(4, 1.0), EntryLaw::scaled_rademacher);
        f.variants.push_back({"main", design, noise, Theorem::main});
        f.variants.push_back({"mds_subgaussian", design, noise, Theorem::mds_subgaussian});
    } else if (id == "fig4") {
        f.title = "Bound versus r for condition numbers 1, 4, 16 (p=4, R=10, eps=0.05)";
        f.axis = {AxisKind::r, {2.0, 4.0, 8.0}};
        f.eps = 0.05;
        for (double kappa : {1.0, 4.0, 16.0}) {
            std::ostringstream label;
            label << "kappa" << kappa;
            f.variants.push_back({label.str(), iid_design({1.0 / std::sqrt(kappa), 1.0, 1.0, 1.0}, EntryLaw::scaled_rademacher),
                                  NoiseModel{UniformPlusGaussianNoise{8.0, 6.0}}, Theorem::main});
        }
    } else if (id == "fig5") {
        f.title = "Pilot-based estimation under FIR interference versus r (p=8, R=0.1, eps=0.01)";
        f.axis = {AxisKind::r, {0.04, 0.02, 0.01, 0.005}};
        f.eps = 0.01;
        f.variants.push_back({"fixed_mds", pilot_design(), pilot_noise(), Theorem::fixed_mds});
    } else if (id == "fig6") {
        f.title = "Outage versus N for pilot-based estimation (p=8, R=0.1, r=0.01)";
        f.axis = {AxisKind::N, {1000, 2000, 4000, 8000, 16000}};
        f.r = 0.01;
        f.eps = 0.01;
        f.variants.push_back({"fixed_mds", pilot_design(), pilot_noise(), Theorem::fixed_mds});
    } else {
        throw ParameterError("unknown figure '" + std::string(id) + "' (expected fig1..fig6)");
    }
    return f;
}

Reproduction run_reproduction(const FigurePreset& preset, const ReproduceOptions& options) {
    Reproduction out;
    out.preset = preset;
    const bool n_axis = preset.axis.kind == AxisKind::N;

    out.curves.columns.push_back(axis_label(preset.axis.kind));
    for (const auto& v : preset.variants) {
        if (n_axis) {
            out.curves.columns.push_back("eps_bound_" + v.label);
            out.curves.columns.push_back("p_hat_" + v.label);
        } else {
            out.curves.columns.push_back("n_bound_" + v.label);
            out.curves.columns.push_back("n_empirical_" + v.label);
            out.curves.columns.push_back("p_hat_" + v.label);
        }
    }

    for (const auto& v : preset.variants) {
        ExperimentSpec base;
        base.design = v.design;
        base.noise = v.noise;
        base.r = preset.r;
        base.trials = options.trials;
        base.base_seed = options.base_seed;
        base.workers = options.workers;
        VariantResult vr;
        vr.variant = v;
        vr.rows = sweep(base, preset.axis, v.theorem, preset.eps);
        for (const auto& row : vr.rows) {
            std::optional<std::int64_t> found;
            if (!n_axis && options.empirical_search) {
                ExperimentSpec s = base;
                s.r = row.axis == AxisKind::r ? row.axis_value : preset.r;
                const double eps = row.axis == AxisKind::eps ? row.axis_value : preset.eps;
                std::int64_t hi = 4 * row.N;
                if (const auto* t = std::get_if<ToeplitzPilot>(&v.design.family)) {
                    hi = std::min<std::int64_t>(hi, static_cast<std::int64_t>(t->pilots.size()));
                }
                try {
                    found = find_empirical_N(s, eps, v.design.p() + 1, hi);
                } catch (const RangeExhaustedError&) {
                    found.reset();
                }
            }
            vr.empirical_N.push_back(found);
        }
        out.variants.push_back(std::move(vr));
    }

    const std::size_t npts = preset.axis.values.size();
    for (std::size_t k = 0; k < npts; ++k) {
        std::vector<std::optional<double>> line{preset.axis.values[k]};
        for (const auto& vr : out.variants) {
            const auto& row = vr.rows[k];
            if (n_axis) {
                line.push_back(row.eps_bound);
            } else {
                line.push_back(row.bound.n_final);
                line.push_back(vr.empirical_N[k] ? std::optional<double>(static_cast<double>(*vr.empirical_N[k]))
                                                 : std::nullopt);
            }
            line.push_back(row.tail.p_hat);
        }
        out.curves.rows.push_back(std::move(line));
    }

    std::vector<PlotSeries> series;
    for (const auto& vr : out.variants) {
        PlotSeries bound{"bound " + vr.variant.label, {}, {}};
        PlotSeries emp{(n_axis ? "p_hat " : "empirical ") + vr.variant.label, {}, {}};
        for (std::size_t k = 0; k < npts; ++k) {
            const double x = preset.axis.values[k];
            const auto& row = vr.rows[k];
            if (n_axis) {
                if (row.eps_bound) {
                    bound.x.push_back(x);
                    bound.y.push_back(*row.eps_bound);
                }
                emp.x.push_back(x);
                emp.y.push_back(row.tail.p_hat);
            } else {
                bound.x.push_back(x);
                bound.y.push_back(row.bound.n_final);
                if (vr.empirical_N[k]) {
                    emp.x.push_back(x);
                    emp.y.push_back(static_cast<double>(*vr.empirical_N[k]));
                }
            }
        }
        series.push_back(std::move(bound));
        series.push_back(std::move(emp));
    }
    out.svg = render_line_plot(preset.title, axis_label(preset.axis.kind), n_axis ? "outage probability" : "N",
                               series);
    return out;
}

std::vector<std::string> write_reproduction(const Reproduction& result, const std::string& out_dir) {
    std::vector<std::string> paths;
    const std::string prefix = out_dir + "/" + result.preset.id;
    for (const auto& vr : result.variants) {
        std::vector<ResultRow> rows;
        for (const auto& r : vr.rows) rows.push_back(to_result_row(r));
        std::ostringstream csv;
        write_result_csv(csv, rows);
        paths.push_back(prefix + "_" + vr.variant.label + ".csv");
        write_text_file(paths.back(), csv.str());
    }
    std::ostringstream curves;
    write_curve_csv(curves, result.curves);
    paths.push_back(prefix + "_curves.csv");
    write_text_file(paths.back(), curves.str());
    paths.push_back(prefix + ".svg");
    write_text_file(paths.back(), result.svg);
    return paths;
}

}  // namespace lsqb
