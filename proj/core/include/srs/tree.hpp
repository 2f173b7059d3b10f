#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "srs/dataset.hpp"
#include "srs/population.hpp"
#include "srs/random.hpp"

namespace srs {

// One feature column offered to the tree builder. `id` is the caller's
// feature index; synthetic columns (probes) use ids at and above the real
// feature count.
struct FeatureColumn {
    int id = 0;
    int arity = 2;
    const std::uint8_t* values = nullptr;
};

// Row-weighted training view. `row_weights` may be null (unit weights).
struct TrainingData {
    int n_rows = 0;
    int n_classes = 2;
    const int* labels = nullptr;
    const double* row_weights = nullptr;
    std::vector<FeatureColumn> features;
};

struct TreeNode {
    int feature = -1;     // split feature id; -1 marks a leaf
    int first_child = -1; // children occupy [first_child, first_child + child_count)
    int child_count = 0;  // equals the split feature's arity
    double weight = 0.0;  // node mass as a fraction of the root
    double impurity = 0.0; // label entropy in bits
    int majority = 0;      // plurality class, ties to the smallest index
    std::vector<double> label_weights;

    bool is_leaf() const { return feature < 0; }
};

// Multiway classification tree. Grown fully developed: a node stops only
// when it is label-pure, has fewer than min_rows rows, or no offered feature
// varies within it. With k = 1 this is a totally randomized tree.
struct DecisionTree {
    std::vector<TreeNode> nodes;
    std::vector<int> feature_ids; // features offered at build time, ascending
    int real_feature_count = 0;   // ids at or above this are synthetic probes
    int n_classes = 2;

    // Routes a sample (one value per real feature). Splits on synthetic ids
    // and branches with no training mass fall back to that node's majority.
    int predict(const std::vector<int>& x) const;
    int predict_row(const Dataset& ds, int row) const;
};

// At every node, draws min(k, #non-constant offered features) candidates
// without replacement and splits on the one with the largest entropy
// decrease; exact ties are broken uniformly with `rng`. 1 <= k <= number of
// offered features.
DecisionTree build_tree(const TrainingData& data, int k, int min_rows, Rng& rng);

// Finite-sample wrapper: offers `subspace` (ascending dataset feature
// indices), stops below 2 rows.
DecisionTree build_tree(const Dataset& ds, const std::vector<int>& subspace, int k,
                        Rng& rng);

// Infinite-sample wrapper: rows are the joint assignments of the subspace
// with exact probabilities as weights, so impurities and gains are population
// quantities.
DecisionTree build_tree(const PopulationModel& pop, const std::vector<int>& subspace,
                        int k, Rng& rng);

// Mean decrease of impurity inside one tree: for every split,
// p(t) * (i(t) - sum_children p(child)/p(t) * i(child)), accumulated per
// feature id. Nonnegative; the total equals root impurity minus the
// weighted leaf impurity.
std::map<int, double> mdi_importance(const DecisionTree& tree);

// Plurality vote over trees; ties resolve to the smallest class index.
int predict_ensemble(const std::vector<DecisionTree>& trees, const std::vector<int>& x);

// One line per node: id, leaf/split marker, children, label weights.
std::string tree_to_text(const DecisionTree& tree);

} // namespace srs
