#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srs/dataset.hpp"
#include "srs/population.hpp"
#include "srs/random.hpp"
#include "srs/tree.hpp"

namespace srs {

// Exact-mode acceptance threshold: a feature joins F when its per-tree
// importance exceeds this many bits.
inline constexpr double kAcceptTolerance = 1e-10;

enum class ProbeRule { strict_max, quantile };
enum class ProbeKind { permuted_copy, uniform };

std::string to_string(ProbeRule rule);
std::string to_string(ProbeKind kind);
ProbeRule probe_rule_from_string(const std::string& s);
ProbeKind probe_kind_from_string(const std::string& s);

struct SrsConfig {
    int q = 0;          // memory budget (subspace size)
    int T = 0;          // iterations
    double alpha = 0.0; // fraction of the budget refilled from F
    int K = 1;          // candidate features per tree node
    int probe_count = 1;
    ProbeRule probe_rule = ProbeRule::strict_max;
    ProbeKind probe_kind = ProbeKind::permuted_copy;
    double probe_quantile = 0.9; // only used by ProbeRule::quantile
    // Acceptance needs importance > probe_margin * threshold and also
    // > probe_floor bits. The defaults reproduce the bare rule "beat the
    // probe"; it is permissive on wide noisy data, where a stricter margin
    // (2-3), more probes (10-20) and a larger min_rows sharpen the test.
    double probe_margin = 1.0;
    double probe_floor = 0.0;
    // Node-size floor for the finite-sample trees. 2 grows trees fully; on
    // wide data with a few thousand rows, deep lucky splits on noise columns
    // accumulate enough impurity decrease to bury weak genuine signals, so
    // benchmark runs raise this (the exact-mode run ignores it).
    int min_rows = 2;
    std::uint64_t seed = 0;
};

struct SubspaceDraw {
    std::vector<int> r_part; // re-offered members of F, ascending
    std::vector<int> c_part; // fresh draw from V minus R, ascending
    std::vector<int> all;    // union, ascending, size q
};

struct IterationRecord {
    int iteration = 0;
    std::vector<int> subspace;
    std::vector<int> accepted;  // newly added to F this iteration
    int found_size_after = 0;
};

struct SrsResult {
    SrsConfig config;
    int p = 0;
    std::vector<int> found;            // discovery order, no duplicates
    std::vector<DecisionTree> trees;   // one per iteration
    std::vector<IterationRecord> history;
    std::vector<double> importances;   // size p, ensemble average, probes excluded
};

// Step 2(a): R is min(floor(alpha*q), |F|) members of F, C fills the budget
// from V minus R. C may re-draw members of F that are not in R.
SubspaceDraw select_subspace(const std::vector<int>& found, int p, int q, double alpha,
                             Rng& rng);

struct ProbeOutcome {
    DecisionTree tree;                  // the kept tree, grown on Q alone
    std::vector<int> accepted;          // subspace features over the threshold
    double threshold = 0.0;             // probe importance the rule produced
    std::vector<double> probe_importances;
};

// Grows the kept tree on the subspace, then a second tree on the subspace
// plus probe_count synthetic columns (K scaled so real features keep their
// per-node candidacy odds). A feature is accepted when its importance in the
// kept tree exceeds max(probe_margin * rule(probe importances), probe_floor).
ProbeOutcome probe_test(const Dataset& ds, const std::vector<int>& subspace,
                        const SrsConfig& cfg, Rng& rng);

// Finite-sample run (Algorithm 1 with the probe test as the significance
// check). Requires probe_count >= 1.
SrsResult run_srs(const Dataset& ds, const SrsConfig& cfg);

// Exact-mode run: trees are grown on the population table restricted to the
// subspace, and acceptance is importance > kAcceptTolerance. Probe settings
// are ignored.
SrsResult run_srs(const PopulationModel& pop, const SrsConfig& cfg);

// Plurality vote of the ensemble over every row.
std::vector<int> predict_ensemble(const SrsResult& result, const Dataset& ds);

// CSV: iteration, found_size, accepted_count and, when truth is supplied,
// f1 of the cumulative found set.
void write_history_csv(const SrsResult& result, const std::string& path,
                       const std::vector<int>* truth = nullptr);

// CSV: feature, importance for every feature index.
void write_importances_csv(const SrsResult& result, const std::string& path);

} // namespace srs
