#include "lsqb/config.hpp"

#include <charconv>
#include <cstdlib>
#include <initializer_list>
#include <set>

#include "lsqb/errors.hpp"
#include "lsqb/table.hpp"

namespace lsqb {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void expect_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items()) {
        if (!keys.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    return j.at(key);
}

double number(const json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
    return v.get<double>();
}

std::vector<double> numbers(const json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_array()) throw ConfigError(where + ": '" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError(where + ": '" + key + "' must contain only numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::string text(const json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_string()) throw ConfigError(where + ": '" + key + "' must be a string");
    return v.get<std::string>();
}

std::uint64_t unsigned_integer(const json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ConfigError(where + ": '" + key + "' must be a nonnegative integer");
    }
    return v.get<std::uint64_t>();
}

}  // namespace

std::uint64_t default_seed() {
    const char* env = std::getenv(kSeedEnvVar);
    if (env == nullptr || *env == '\0') return kDefaultSeed;
    std::uint64_t v = 0;
    const std::string s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParameterError(std::string(kSeedEnvVar) + " must be an unsigned 64-bit integer");
    }
    return v;
}

json noise_to_json(const NoiseModel& model) {
    return std::visit(
        overloaded{
            [](const GaussianNoise& g) { return json{{"kind", "gaussian"}, {"sigma", g.sigma}}; },
            [](const GaussianMixtureNoise& m) {
                return json{{"kind", "gaussian_mixture"},
                            {"sigma_small", m.sigma_small},
                            {"sigma_large", m.sigma_large},
                            {"weight_large", m.weight_large}};
            },
            [](const UniformNoise& u) { return json{{"kind", "uniform"}, {"half_width", u.half_width}}; },
            [](const UniformPlusGaussianNoise& u) {
                return json{{"kind", "uniform_plus_gaussian"}, {"half_width", u.half_width}, {"sigma", u.sigma}};
            },
            [](const RademacherNoise& r) { return json{{"kind", "rademacher"}, {"scale", r.scale}}; },
            [](const FirMdsNoise& f) {
                return json{{"kind", "fir_mds"},
                            {"taps", f.taps},
                            {"jammer_scale", f.jammer_scale},
                            {"receiver", noise_to_json(*f.receiver)}};
            },
        },
        model.law);
}

NoiseModel noise_from_json(const json& j) {
    const std::string where = "noise";
    expect_object(j, where);
    const std::string kind = text(j, "kind", where);
    auto nonneg = [&](const char* key) {
        const double v = number(j, key, where);
        if (!(v >= 0.0)) throw ConfigError(where + ": '" + key + "' must be nonnegative");
        return v;
    };
    if (kind == "gaussian") {
        reject_unknown(j, {"kind", "sigma"}, where);
        return NoiseModel{GaussianNoise{nonneg("sigma")}};
    }
    if (kind == "gaussian_mixture") {
        reject_unknown(j, {"kind", "sigma_small", "sigma_large", "weight_large"}, where);
        const double w = number(j, "weight_large", where);
        if (!(w > 0.0 && w < 1.0)) throw ConfigError(where + ": weight_large must lie in (0, 1)");
        return NoiseModel{GaussianMixtureNoise{nonneg("sigma_small"), nonneg("sigma_large"), w}};
    }
    if (kind == "uniform") {
        reject_unknown(j, {"kind", "half_width"}, where);
        return NoiseModel{UniformNoise{nonneg("half_width")}};
    }
    if (kind == "uniform_plus_gaussian") {
        reject_unknown(j, {"kind", "half_width", "sigma"}, where);
        return NoiseModel{UniformPlusGaussianNoise{nonneg("half_width"), nonneg("sigma")}};
    }
    if (kind == "rademacher") {
        reject_unknown(j, {"kind", "scale"}, where);
        return NoiseModel{RademacherNoise{nonneg("scale")}};
    }
    if (kind == "fir_mds") {
        reject_unknown(j, {"kind", "taps", "jammer_scale", "receiver"}, where);
        auto taps = numbers(j, "taps", where);
        if (taps.empty()) throw ConfigError(where + ": taps must not be empty");
        return fir_mds(std::move(taps), nonneg("jammer_scale"), noise_from_json(field(j, "receiver", where)));
    }
    throw ConfigError(where + ": unknown kind '" + kind + "'");
}

json design_to_json(const DesignModel& model) {
    return std::visit(
        overloaded{
            [](const IidBoundedColumns& d) {
                return json{{"kind", "iid_bounded_columns"},
                            {"column_stddevs", d.column_stddevs},
                            {"entry_law", d.entry_law == EntryLaw::scaled_uniform ? "scaled-uniform"
                                                                                  : "scaled-rademacher"}};
            },
            [](const ToeplitzPilot& d) {
                return json{{"kind", "toeplitz_pilot"}, {"p", d.p}, {"pilots", d.pilots}};
            },
            [](const FixedMatrix& d) {
                return json{{"kind", "fixed_matrix"},
                            {"rows", d.matrix.rows()},
                            {"cols", d.matrix.cols()},
                            {"entries", d.matrix.entries()}};
            },
        },
        model.family);
}

DesignModel design_from_json(const json& j) {
    const std::string where = "design";
    expect_object(j, where);
    const std::string kind = text(j, "kind", where);
    if (kind == "iid_bounded_columns") {
        reject_unknown(j, {"kind", "column_stddevs", "entry_law"}, where);
        IidBoundedColumns d;
        d.column_stddevs = numbers(j, "column_stddevs", where);
        if (d.column_stddevs.empty()) throw ConfigError(where + ": column_stddevs must not be empty");
        for (double s : d.column_stddevs) {
            if (!(s > 0.0)) throw ConfigError(where + ": column_stddevs must be positive");
        }
        const std::string law = j.contains("entry_law") ? text(j, "entry_law", where) : "scaled-uniform";
        if (law == "scaled-uniform") {
            d.entry_law = EntryLaw::scaled_uniform;
        } else if (law == "scaled-rademacher") {
            d.entry_law = EntryLaw::scaled_rademacher;
        } else {
            throw ConfigError(where + ": entry_law must be scaled-uniform or scaled-rademacher");
        }
        return DesignModel{d};
    }
    if (kind == "toeplitz_pilot") {
        reject_unknown(j, {"kind", "p", "pilots", "pilot_count", "pilot_seed"}, where);
        ToeplitzPilot d;
        d.p = static_cast<int>(unsigned_integer(j, "p", where));
        if (d.p < 1) throw ConfigError(where + ": p must be at least 1");
        if (j.contains("pilots")) {
            if (j.contains("pilot_count") || j.contains("pilot_seed")) {
                throw ConfigError(where + ": give either pilots or pilot_count/pilot_seed");
            }
            d.pilots = numbers(j, "pilots", where);
            for (double s : d.pilots) {
                if (s != 1.0 && s != -1.0) throw ConfigError(where + ": pilots must be +1 or -1");
            }
        } else {
            d.pilots = random_bpsk_pilots(unsigned_integer(j, "pilot_count", where),
                                          unsigned_integer(j, "pilot_seed", where));
        }
        return DesignModel{d};
    }
    if (kind == "fixed_matrix") {
        reject_unknown(j, {"kind", "rows", "cols", "entries"}, where);
        const auto rows = unsigned_integer(j, "rows", where);
        const auto cols = unsigned_integer(j, "cols", where);
        try {
            return DesignModel{FixedMatrix{Matrix(rows, cols, numbers(j, "entries", where))}};
        } catch (const ParameterError& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
    throw ConfigError(where + ": unknown kind '" + kind + "'");
}

RunConfig parse_run_config(const json& j) {
    const std::string where = "config";
    expect_object(j, where);
    reject_unknown(j,
                   {"schema_version", "design", "noise", "theta0", "r", "eps", "trials", "base_seed", "workers",
                    "axis", "bound", "beta_form", "output"},
                   where);
    RunConfig c;
    c.schema_version = text(j, "schema_version", where);
    if (c.schema_version != kSchemaVersion) {
        throw ConfigError("unsupported schema_version '" + c.schema_version + "' (expected " +
                          kSchemaVersion + ")");
    }
    auto& e = c.experiment;
    e.design = design_from_json(field(j, "design", where));
    e.noise = noise_from_json(field(j, "noise", where));
    if (j.contains("theta0")) e.theta0 = numbers(j, "theta0", where);
    e.r = number(j, "r", where);
    c.eps = number(j, "eps", where);
    e.trials = j.contains("trials") ? static_cast<std::int64_t>(unsigned_integer(j, "trials", where)) : 50000;
    e.base_seed = j.contains("base_seed") ? unsigned_integer(j, "base_seed", where) : default_seed();
    e.workers = j.contains("workers") ? static_cast<unsigned>(unsigned_integer(j, "workers", where)) : 0;

    const auto& axis = field(j, "axis", where);
    expect_object(axis, "axis");
    reject_unknown(axis, {"name", "values"}, "axis");
    c.axis.kind = axis_from_string(text(axis, "name", "axis"));
    c.axis.values = numbers(axis, "values", "axis");
    if (c.axis.values.empty()) throw ConfigError("axis: values must not be empty");

    c.bound = theorem_from_string(text(j, "bound", where));
    if (j.contains("beta_form")) {
        const auto form = text(j, "beta_form", where);
        if (form == "proof") {
            c.options.beta_form = BetaForm::proof;
        } else if (form == "as_printed") {
            c.options.beta_form = BetaForm::as_printed;
        } else {
            throw ConfigError("beta_form must be proof or as_printed");
        }
    }

    const auto& out = field(j, "output", where);
    expect_object(out, "output");
    reject_unknown(out, {"csv", "svg", "diagnostics"}, "output");
    c.csv_path = text(out, "csv", "output");
    if (out.contains("svg")) c.svg_path = text(out, "svg", "output");
    if (out.contains("diagnostics")) c.diagnostics_path = text(out, "diagnostics", "output");

    Accuracy{e.r, c.eps}.validate();
    if (e.trials < 1) throw ConfigError("trials must be at least 1");
    return c;
}

RunConfig load_run_config(const std::string& path) {
    const std::string raw = read_text_file(path);
    json j;
    try {
        j = json::parse(raw);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_run_config(j);
}

json run_config_to_json(const RunConfig& c) {
    json j{{"schema_version", c.schema_version},
           {"design", design_to_json(c.experiment.design)},
           {"noise", noise_to_json(c.experiment.noise)},
           {"r", c.experiment.r},
           {"eps", c.eps},
           {"trials", c.experiment.trials},
           {"base_seed", c.experiment.base_seed},
           {"workers", c.experiment.workers},
           {"axis", {{"name", std::string(to_string(c.axis.kind))}, {"values", c.axis.values}}},
           {"bound", std::string(to_string(c.bound))},
           {"beta_form", std::string(to_string(c.options.beta_form))}};
    if (!c.experiment.theta0.empty()) j["theta0"] = c.experiment.theta0;
    json out{{"csv", c.csv_path}};
    if (c.svg_path) out["svg"] = *c.svg_path;
    if (c.diagnostics_path) out["diagnostics"] = *c.diagnostics_path;
    j["output"] = out;
    return j;
}

}  // namespace lsqb
