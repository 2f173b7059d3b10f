#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "srs/convergence.hpp"
#include "srs/csv.hpp"
#include "srs/dataset.hpp"
#include "srs/errors.hpp"
#include "srs/evaluation.hpp"
#include "srs/information.hpp"
#include "srs/joint_distribution.hpp"
#include "srs/population.hpp"
#include "srs/srs.hpp"

namespace {

using nlohmann::json;

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw srs::IoError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw srs::IoError("write failed: " + path);
}

srs::Scenario parse_scenario(const std::string& name) {
    auto s = srs::scenario_from_string(name);
    if (!s) throw srs::ArgumentError("unknown scenario: " + name);
    return *s;
}

std::string join_ints(const std::vector<int>& xs, char sep) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i > 0) out += sep;
        out += std::to_string(xs[i]);
    }
    return out;
}

struct GenerateArgs {
    std::string scenario = "chaining";
    int p = 0, r = 0, n = 0;
    double noise = 0.1;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& a) {
    srs::GeneratorSpec spec;
    spec.scenario = parse_scenario(a.scenario);
    spec.p = a.p;
    spec.r = a.r;
    spec.n = a.n;
    spec.noise = a.noise;
    spec.seed = a.seed;
    srs::Dataset ds = srs::generate(spec);
    srs::save_csv(ds, a.out);

    json echo{{"command", "generate"},
              {"scenario", a.scenario},
              {"p", a.p},
              {"r", a.r},
              {"n", a.n},
              {"noise", a.noise},
              {"seed", a.seed},
              {"out", a.out}};
    write_json(echo, a.out + ".meta.json");
    std::cout << "wrote " << a.out << " (" << ds.n << " rows, " << ds.p
              << " features)\n";
    return 0;
}

struct RunArgs {
    std::string data;
    std::string scenario;
    int p = 0, r = 0;
    double noise = 0.1;
    int q = 0, T = 0, k = 0;
    double alpha = 0.0;
    int probe_count = 1;
    std::string probe_rule = "strict_max";
    std::string probe_kind = "permuted_copy";
    double probe_quantile = 0.9;
    double probe_margin = 1.0;
    double probe_floor = 0.0;
    int min_rows = 2;
    std::uint64_t seed = 0;
    std::string out_prefix;
};

int cmd_run(const RunArgs& a) {
    srs::SrsConfig cfg;
    cfg.q = a.q;
    cfg.T = a.T;
    cfg.alpha = a.alpha;
    cfg.K = a.k > 0 ? a.k : a.q;
    cfg.probe_count = a.probe_count;
    cfg.probe_rule = srs::probe_rule_from_string(a.probe_rule);
    cfg.probe_kind = srs::probe_kind_from_string(a.probe_kind);
    cfg.probe_quantile = a.probe_quantile;
    cfg.probe_margin = a.probe_margin;
    cfg.probe_floor = a.probe_floor;
    cfg.min_rows = a.min_rows;
    cfg.seed = a.seed;

    srs::SrsResult result;
    std::vector<int> truth;
    bool have_truth = false;
    std::string mode;
    const auto started = std::chrono::steady_clock::now();
    if (!a.data.empty()) {
        mode = "finite";
        srs::Dataset ds = srs::load_csv(a.data);
        if (ds.relevant_truth) {
            truth = *ds.relevant_truth;
            have_truth = !truth.empty();
        }
        result = srs::run_srs(ds, cfg);
    } else if (!a.scenario.empty()) {
        mode = "population";
        srs::PopulationModel pop = srs::PopulationModel::for_scenario(
            parse_scenario(a.scenario), a.p, a.r, a.noise);
        for (int f = 0; f < a.r; ++f) truth.push_back(f);
        have_truth = a.r > 0;
        result = srs::run_srs(pop, cfg);
    } else {
        throw srs::ArgumentError("run needs either --data or --scenario");
    }
    // Timing goes to stderr so the artifacts stay byte-identical across runs.
    std::cerr << "run took "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                               started)
                     .count()
              << " s\n";

    srs::write_history_csv(result, a.out_prefix + "_history.csv",
                           have_truth ? &truth : nullptr);
    srs::write_importances_csv(result, a.out_prefix + "_importance.csv");

    json summary{{"command", "run"},
                 {"mode", mode},
                 {"config",
                  {{"q", cfg.q},
                   {"T", cfg.T},
                   {"alpha", cfg.alpha},
                   {"K", cfg.K},
                   {"probe_count", cfg.probe_count},
                   {"probe_rule", srs::to_string(cfg.probe_rule)},
                   {"probe_kind", srs::to_string(cfg.probe_kind)},
                   {"probe_quantile", cfg.probe_quantile},
                   {"probe_margin", cfg.probe_margin},
                   {"probe_floor", cfg.probe_floor},
                   {"min_rows", cfg.min_rows},
                   {"seed", cfg.seed}}},
                 {"found", result.found},
                 {"found_count", result.found.size()}};
    if (!a.data.empty()) summary["data"] = a.data;
    if (!a.scenario.empty()) {
        summary["scenario"] = a.scenario;
        summary["p"] = a.p;
        summary["r"] = a.r;
        summary["noise"] = a.noise;
    }
    if (have_truth) {
        const auto curve = srs::f1_curve(result, truth);
        srs::CsvWriter f1_csv(a.out_prefix + "_f1.csv");
        f1_csv.row({"iteration", "f1"});
        for (const auto& [iter, f1] : curve)
            f1_csv.row({std::to_string(iter), srs::format_double(f1)});
        summary["final_f1"] =
            srs::f1_against_truth(result.found, truth).f1;
    }
    write_json(summary, a.out_prefix + "_summary.json");
    std::cout << "found " << result.found.size() << " features: ["
              << join_ints(result.found, ' ') << "]\n";
    return 0;
}

struct ConvergeArgs {
    bool tables = false;
    std::string scenario;
    int p = 0, q = 0, r = 0;
    std::string advance = "multi";
    int curve_horizon = 0;
    int simulate = 0;
    int jobs = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::string curve_prefix;
};

int cmd_converge(const ConvergeArgs& a) {
    std::vector<srs::ScenarioSpec> configs;
    const srs::ChainAdvance advance = srs::chain_advance_from_string(a.advance);
    if (a.tables) {
        // Several reference configurations absorb only after 10^9 or more
        // iterations; simulating them is out of reach by construction.
        if (a.simulate > 0)
            throw srs::ArgumentError(
                "--simulate does not apply to --tables; simulate one --scenario "
                "configuration instead");
        configs = srs::default_table_configs();
    } else if (!a.scenario.empty()) {
        srs::ScenarioSpec spec;
        spec.scenario = parse_scenario(a.scenario);
        spec.p = a.p;
        spec.q = a.q;
        spec.r = a.r;
        configs.push_back(spec);
    } else {
        throw srs::ArgumentError("converge needs --tables or --scenario");
    }
    for (auto& spec : configs) spec.advance = advance;

    const std::vector<srs::TableRow> rows = srs::reproduce_tables(configs);

    srs::Rng rng(a.seed);
    std::vector<std::vector<std::string>> sim_cells;
    if (a.simulate > 0) {
        for (const auto& config : configs) {
            srs::ScenarioSpec spec = config;
            std::vector<std::string> cells;
            for (double alpha : {0.0, 1.0}) {
                spec.alpha = alpha;
                const auto sim =
                    srs::simulate_process(spec, a.simulate, rng, 0, a.jobs);
                cells.push_back(srs::format_double(sim.mean_time));
                cells.push_back(srs::format_double(sim.std_error));
            }
            sim_cells.push_back(std::move(cells));
        }
    }

    srs::CsvWriter csv(a.out);
    std::vector<std::string> header{"scenario", "p", "q", "r", "rs", "srs"};
    if (a.simulate > 0)
        for (const char* extra : {"rs_sim_mean", "rs_sim_se", "srs_sim_mean", "srs_sim_se"})
            header.push_back(extra);
    csv.row(header);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const srs::TableRow& row = rows[i];
        std::vector<std::string> cells{srs::to_string(row.scenario),
                                       std::to_string(row.p),
                                       std::to_string(row.q),
                                       std::to_string(row.r),
                                       srs::format_table_value(row.rs_time),
                                       srs::format_table_value(row.srs_time)};
        if (a.simulate > 0)
            for (const auto& cell : sim_cells[i]) cells.push_back(cell);
        csv.row(cells);
    }

    if (a.curve_horizon > 0 && !a.curve_prefix.empty()) {
        for (const auto& config : configs) {
            srs::ScenarioSpec spec = config;
            for (double alpha : {0.0, 1.0}) {
                spec.alpha = alpha;
                const auto curve = srs::expected_found_curve(
                    srs::build_chain(spec), a.curve_horizon);
                char name[64];
                std::snprintf(name, sizeof(name), "_%s_p%d_q%d_r%d_%s.csv",
                              srs::to_string(spec.scenario), spec.p, spec.q, spec.r,
                              alpha == 0.0 ? "rs" : "srs");
                srs::write_curve_csv(curve, a.curve_prefix + name);
            }
        }
    }

    json echo{{"command", "converge"}, {"advance", a.advance},
              {"simulate", a.simulate}, {"seed", a.seed},
              {"curve_horizon", a.curve_horizon}, {"out", a.out}};
    if (a.tables) {
        echo["tables"] = true;
    } else {
        echo["scenario"] = a.scenario;
        echo["p"] = a.p;
        echo["q"] = a.q;
        echo["r"] = a.r;
    }
    write_json(echo, a.out + ".meta.json");
    std::cout << "wrote " << a.out << " (" << rows.size() << " configurations)\n";
    return 0;
}

struct OracleArgs {
    std::string dist;
    std::string data;
    int q = 0;
    std::string out;
};

int cmd_oracle(const OracleArgs& a) {
    srs::JointDistribution d = [&a] {
        if (!a.dist.empty()) return srs::load_distribution(a.dist);
        if (a.data.empty())
            throw srs::ArgumentError("oracle needs either --dist or --data");
        srs::Dataset ds = srs::load_csv(a.data);
        std::vector<int> all;
        for (int f = 0; f < ds.p; ++f) all.push_back(f);
        return srs::to_distribution(ds, all);
    }();

    const int p = d.variable_count();
    const int q = a.q > 0 ? a.q : p;
    if (q > p) throw srs::ArgumentError("q exceeds the variable count");

    srs::CsvWriter csv(a.out);
    csv.row({"variable", "name", "relevance", "degree", "witness", "importance"});
    for (int x = 0; x < p; ++x) {
        const srs::RelevanceReport report = srs::relevance_class(d, x);
        csv.row({std::to_string(x), d.variable_names()[static_cast<std::size_t>(x)],
                 srs::to_string(report.relevance),
                 report.degree ? std::to_string(*report.degree) : "",
                 join_ints(report.witness_conditioning, ';'),
                 srs::format_double(srs::asymptotic_importance(d, x, q))});
    }

    json echo{{"command", "oracle"}, {"q", q}, {"out", a.out}};
    if (!a.dist.empty()) echo["dist"] = a.dist;
    if (!a.data.empty()) echo["data"] = a.data;
    write_json(echo, a.out + ".meta.json");
    std::cout << "wrote " << a.out << " (" << p << " variables)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sequential random subspace feature selection toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* generate = app.add_subcommand("generate", "Write a synthetic dataset");
    generate->set_config("--config");
    generate->add_option("--scenario", gen.scenario,
                         "chaining | clique | marginal | madelon_like");
    generate->add_option("--p", gen.p, "total features")->required();
    generate->add_option("--r", gen.r, "relevant features")->required();
    generate->add_option("--n", gen.n, "rows")->required();
    generate->add_option("--noise", gen.noise, "label flip probability");
    generate->add_option("--seed", gen.seed, "rng seed");
    generate->add_option("--out", gen.out, "output CSV path")->required();

    RunArgs run;
    CLI::App* runc = app.add_subcommand("run", "Run the selection algorithm");
    runc->set_config("--config");
    runc->add_option("--data", run.data, "dataset CSV (finite-sample mode)");
    runc->add_option("--scenario", run.scenario,
                     "population-exact mode scenario (alternative to --data)");
    runc->add_option("--p", run.p, "population mode: total features");
    runc->add_option("--r", run.r, "population mode: relevant features");
    runc->add_option("--noise", run.noise, "population mode: label flip probability");
    runc->add_option("--q", run.q, "memory budget (subspace size)")->required();
    runc->add_option("--T", run.T, "iterations")->required();
    runc->add_option("--alpha", run.alpha, "budget fraction refilled from F");
    runc->add_option("--k", run.k, "tree candidates per node (0 means q)");
    runc->add_option("--probe-count", run.probe_count, "probes per iteration");
    runc->add_option("--probe-rule", run.probe_rule, "strict_max | quantile");
    runc->add_option("--probe-kind", run.probe_kind, "permuted_copy | uniform");
    runc->add_option("--probe-quantile", run.probe_quantile, "quantile rule level");
    runc->add_option("--probe-margin", run.probe_margin, "importance margin multiplier");
    runc->add_option("--probe-floor", run.probe_floor, "absolute acceptance floor, bits");
    runc->add_option("--min-rows", run.min_rows, "node size floor for finite-sample trees");
    runc->add_option("--seed", run.seed, "rng seed");
    runc->add_option("--out-prefix", run.out_prefix, "output path prefix")->required();

    ConvergeArgs conv;
    CLI::App* converge = app.add_subcommand("converge", "Analytic convergence tables");
    converge->set_config("--config");
    converge->add_flag("--tables", conv.tables, "emit the default configuration table");
    converge->add_option("--scenario", conv.scenario, "chaining | clique | marginal");
    converge->add_option("--p", conv.p, "total features");
    converge->add_option("--q", conv.q, "subspace size");
    converge->add_option("--r", conv.r, "relevant features");
    converge->add_option("--advance", conv.advance,
                         "chaining advance convention: multi | single");
    converge->add_option("--curve-horizon", conv.curve_horizon,
                         "also write expected-found curves up to this t");
    converge->add_option("--simulate", conv.simulate,
                         "Monte Carlo replicates to append (0 disables, needs --scenario)");
    converge->add_option("--jobs", conv.jobs, "simulation worker threads");
    converge->add_option("--seed", conv.seed, "simulation rng seed");
    converge->add_option("--out", conv.out, "output table CSV")->required();
    converge->add_option("--curve-prefix", conv.curve_prefix,
                         "path prefix for curve CSVs");

    OracleArgs ora;
    CLI::App* oracle = app.add_subcommand("oracle", "Exact relevance report");
    oracle->set_config("--config");
    oracle->add_option("--dist", ora.dist, "distribution table file");
    oracle->add_option("--data", ora.data, "small dataset CSV to tabulate");
    oracle->add_option("--q", ora.q, "importance subspace size (0 means all)");
    oracle->add_option("--out", ora.out, "output report CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen);
        if (runc->parsed()) return cmd_run(run);
        if (converge->parsed()) return cmd_converge(conv);
        if (oracle->parsed()) return cmd_oracle(ora);
    } catch (const srs::ArgumentError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const srs::CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const srs::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const srs::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
