#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srs/dataset.hpp"
#include "srs/random.hpp"

namespace srs {

// Counting convention for the chaining chain: whether one iteration may
// discover several consecutive chain variables. multi_step reproduces the
// reference expected times (301 rather than 303 at p=1e4, q=100, r=3).
enum class ChainAdvance { multi_step, single_step };

std::string to_string(ChainAdvance a);
ChainAdvance chain_advance_from_string(const std::string& s);

struct ScenarioSpec {
    Scenario scenario = Scenario::chaining;
    int p = 0;
    int q = 0;
    int r = 0;
    double alpha = 0.0; // analytic chains accept exactly 0 or 1
    ChainAdvance advance = ChainAdvance::multi_step;
};

// States count found relevant variables, 0..r; state r is absorbing and
// transitions never move down.
struct MarkovChainModel {
    int r = 0;
    std::vector<std::vector<double>> transition; // (r+1) x (r+1), row-stochastic
};

// Exact transition matrix for the scenario's discovery process under the
// idealized analysis (K = q, every offered relevant pattern detected).
MarkovChainModel build_chain(const ScenarioSpec& spec);

// Expected first passage from state 0 to state r, by back-substitution.
double expected_absorption_time(const MarkovChainModel& model);

// E[state at t] for t = 0..T.
std::vector<double> expected_found_curve(const MarkovChainModel& model, int T);

// Classical asymptotic estimates. Chaining: (p/q)^r for alpha=0, r*p/q for
// alpha=1. Clique: r*H_r*C(p,q)/C(p-r,q-r) for alpha=0, that over r for
// alpha=1. The marginal scenario has no such form and is rejected.
double closed_form_estimate(const ScenarioSpec& spec);

struct SimulationResult {
    double mean_time = 0.0;
    double std_error = 0.0;
    std::vector<std::int64_t> times;      // per-replicate absorption times
    std::vector<double> mean_found_curve; // index t, length horizon + 1
};

// Direct stochastic simulation of the subspace draw and discovery rules; the
// independent check on build_chain. Fractional alpha is allowed here.
// horizon 0 sizes the curve to the slowest replicate; results do not depend
// on jobs.
SimulationResult simulate_process(const ScenarioSpec& spec, int replicates, Rng& rng,
                                  int horizon = 0, int jobs = 1);

struct TableRow {
    Scenario scenario = Scenario::chaining;
    int p = 0;
    int q = 0;
    int r = 0;
    double rs_time = 0.0;
    double srs_time = 0.0;
};

// Expected absorption times at alpha 0 and 1 for each configuration.
std::vector<TableRow> reproduce_tables(const std::vector<ScenarioSpec>& configs);

// The fifteen reference configurations (five per scenario).
std::vector<ScenarioSpec> default_table_configs();

// CSV: scenario,p,q,r,rs,srs with table-style value rendering.
void write_table_csv(const std::vector<TableRow>& rows, const std::string& path);

// CSV: t,expected_found.
void write_curve_csv(const std::vector<double>& curve, const std::string& path);

} // namespace srs
