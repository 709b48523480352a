#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lsqb/montecarlo.hpp"
#include "lsqb/table.hpp"

namespace lsqb {

/// One curve of a figure: a design/noise pair evaluated under one bound.
struct PresetVariant {
    std::string label;
    DesignModel design;
    NoiseModel noise;
    Theorem theorem = Theorem::main;
};

/// Parameters for one figure reconstruction. `r` and `eps` are the values held
/// fixed when they are not the axis.
struct FigurePreset {
    std::string id;
    std::string title;
    Axis axis;
    double r = 0.1;
    double eps = 0.01;
    std::vector<PresetVariant> variants;
};

std::vector<std::string> figure_ids();

// Throws ParameterError for an unknown id.
FigurePreset figure_preset(std::string_view id);

/// Mixture with the given small-component law whose numeric sub-Gaussian
/// parameter is at most `target_R`, with sigma_large as large as possible.
GaussianMixtureNoise mixture_with_parameter(double target_R, double sigma_small, double weight_large);

struct ReproduceOptions {
    std::int64_t trials = 50000;
    std::uint64_t base_seed = kDefaultSeed;
    unsigned workers = 0;
    // Search for the smallest N meeting the target tail at each r/eps point.
    bool empirical_search = true;
};

struct VariantResult {
    PresetVariant variant;
    std::vector<SweepRow> rows;
    std::vector<std::optional<std::int64_t>> empirical_N;  // empty when the search failed or was skipped
};

struct Reproduction {
    FigurePreset preset;
    std::vector<VariantResult> variants;
    CurveTable curves;
    std::string svg;
};

Reproduction run_reproduction(const FigurePreset& preset, const ReproduceOptions& options);

/// Writes <id>_<label>.csv per variant, <id>_curves.csv and <id>.svg into `out_dir`,
/// which must exist. Returns the written paths.
std::vector<std::string> write_reproduction(const Reproduction& result, const std::string& out_dir);

}  // namespace lsqb
