// lsqbound: sample-complexity calculator and Monte-Carlo checker for least squares.
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lsqb/bounds.hpp"
#include "lsqb/config.hpp"
#include "lsqb/errors.hpp"
#include "lsqb/json_out.hpp"
#include "lsqb/montecarlo.hpp"
#include "lsqb/presets.hpp"
#include "lsqb/svg.hpp"
#include "lsqb/table.hpp"

namespace {

using namespace lsqb;

struct ParamFlags {
    int p = 0;
    double alpha = 0.0;
    std::optional<double> R;
    std::optional<double> b;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    bool beta_as_printed = false;

    void attach(CLI::App& cmd) {
        cmd.add_option("--p", p, "parameter dimension")->required();
        cmd.add_option("--alpha", alpha, "almost-sure bound on design entries")->required();
        cmd.add_option("--R", R, "sub-Gaussian noise parameter");
        cmd.add_option("--b", b, "almost-sure noise bound");
        cmd.add_option("--sigma-min", sigma_min, "smallest eigenvalue of E(A^T A)/N")->required();
        cmd.add_option("--sigma-max", sigma_max, "largest eigenvalue of E(A^T A)/N")->required();
        cmd.add_flag("--beta-as-printed", beta_as_printed, "use the alternative algebraic form of beta(s)");
    }

    ProblemParams params() const {
        ProblemParams out{p, alpha, R, b, sigma_min, sigma_max};
        out.validate();
        return out;
    }

    BoundOptions options() const {
        return BoundOptions{beta_as_printed ? BetaForm::as_printed : BetaForm::proof};
    }
};

void write_simulation(const RunConfig& config, const std::vector<SweepRow>& rows) {
    std::vector<ResultRow> table;
    for (const auto& r : rows) table.push_back(to_result_row(r));
    std::ostringstream csv;
    write_result_csv(csv, table);
    write_text_file(config.csv_path, csv.str());

    if (config.svg_path) {
        PlotSeries tail{"p_hat", {}, {}};
        PlotSeries bound{config.axis.kind == AxisKind::N ? "outage bound" : "bound N", {}, {}};
        for (const auto& r : rows) {
            tail.x.push_back(r.axis_value);
            tail.y.push_back(r.tail.p_hat);
            const auto y = config.axis.kind == AxisKind::N ? r.eps_bound : std::optional<double>(r.bound.n_final);
            if (y) {
                bound.x.push_back(r.axis_value);
                bound.y.push_back(*y);
            }
        }
        write_text_file(*config.svg_path,
                        render_line_plot("Simulation: " + std::string(to_string(config.bound)),
                                         std::string(to_string(config.axis.kind)), "value", {tail, bound}));
    }

    if (config.diagnostics_path) {
        nlohmann::json all = nlohmann::json::array();
        for (const auto& r : rows) {
            ExperimentSpec spec = config.experiment;
            spec.N = r.N;
            spec.r = config.axis.kind == AxisKind::r ? r.axis_value : config.experiment.r;
            spec.diagnostics = true;
            auto d = diagnostics_to_json(run_event_diagnostics(spec));
            d["axis_value"] = r.axis_value;
            d["N"] = r.N;
            all.push_back(std::move(d));
        }
        write_text_file(*config.diagnostics_path, all.dump(2) + "\n");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-sample guarantees for linear least squares"};
    app.require_subcommand(1);

    auto* bound_n = app.add_subcommand("bound-n", "required sample count N(r, eps) as JSON");
    std::string model = "main";
    double r = 0.0, eps = 0.0;
    ParamFlags pf;
    bound_n->add_option("--model", model, "main|main-tau|bounded|mds-subgaussian|mds-bounded|fixed-mds");
    bound_n->add_option("--r", r, "L-infinity error radius")->required();
    bound_n->add_option("--eps", eps, "outage probability")->required();
    pf.attach(*bound_n);

    auto* bound_eps = app.add_subcommand("bound-eps", "outage bound eps(r, N) as JSON");
    double er = 0.0;
    std::int64_t en = 0;
    ParamFlags ef;
    bound_eps->add_option("--r", er, "L-infinity error radius")->required();
    bound_eps->add_option("--n", en, "sample count")->required();
    ef.attach(*bound_eps);

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo sweep from a run config");
    std::string config_path;
    std::optional<std::int64_t> sim_trials;
    std::optional<std::string> sim_csv;
    simulate->add_option("--config", config_path, "run config JSON file")->required();
    simulate->add_option("--trials", sim_trials, "override the trial count");
    simulate->add_option("--csv", sim_csv, "override the CSV output path");

    auto* reproduce = app.add_subcommand("reproduce", "run a figure preset and write CSV + SVG");
    std::string figure, out_dir;
    std::int64_t rep_trials = 50000;
    bool no_search = false;
    reproduce->add_option("figure", figure, "fig1..fig6")->required();
    reproduce->add_option("--out-dir", out_dir, "existing output directory")->required();
    reproduce->add_option("--trials", rep_trials, "trials per point (default 50000)");
    reproduce->add_flag("--no-empirical-search", no_search, "skip the empirical-N search");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*bound_n) {
            const Accuracy acc{r, eps};
            acc.validate();
            const auto params = pf.params();
            const auto bound = compute_bound(theorem_from_string(model), acc, params, pf.options());
            std::cout << bound_to_json(bound, params, acc).dump(2) << "\n";
        } else if (*bound_eps) {
            const auto params = ef.params();
            const auto out = eps_of_n(er, en, params, ef.options());
            std::cout << outage_to_json(out, params, er, en, ef.options().beta_form).dump(2) << "\n";
        } else if (*simulate) {
            auto config = load_run_config(config_path);
            if (sim_trials) {
                if (*sim_trials < 1) throw ParameterError("--trials must be at least 1");
                config.experiment.trials = *sim_trials;
            }
            if (sim_csv) config.csv_path = *sim_csv;
            const auto rows = sweep(config.experiment, config.axis, config.bound, config.eps, config.options);
            write_simulation(config, rows);
        } else if (*reproduce) {
            if (rep_trials < 1) throw ParameterError("--trials must be at least 1");
            ReproduceOptions opts;
            opts.trials = rep_trials;
            opts.base_seed = default_seed();
            opts.empirical_search = !no_search;
            const auto result = run_reproduction(figure_preset(figure), opts);
            for (const auto& path : write_reproduction(result, out_dir)) std::cout << path << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
