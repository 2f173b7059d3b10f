#include "srs/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "srs/csv.hpp"
#include "srs/errors.hpp"

namespace srs {

namespace {

int weighted_majority(const std::vector<double>& label_weights) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(label_weights.size()); ++c)
        if (label_weights[static_cast<std::size_t>(c)] >
            label_weights[static_cast<std::size_t>(best)])
            best = c;
    return best;
}

double entropy_of(const double* w, int count) {
    double s = 0.0;
    for (int i = 0; i < count; ++i) s += w[i];
    if (s <= 0.0) return 0.0;
    double acc = 0.0;
    for (int i = 0; i < count; ++i)
        if (w[i] > 0.0) acc += w[i] * std::log2(w[i]);
    return std::log2(s) - acc / s;
}

constexpr double kGainTie = 1e-12;

struct Builder {
    const TrainingData& data;
    int k;
    int min_rows;
    Rng& rng;
    std::vector<TreeNode>& nodes;

    std::vector<int> rows;    // row indices, partitioned in place per subtree
    std::vector<int> scratch; // partition buffer
    std::vector<int> pool;    // per-node candidate features
    std::vector<double> hist; // per-candidate (value, class) weights
    double root_weight = 1.0;

    double row_weight(int row) const {
        return data.row_weights ? data.row_weights[static_cast<std::size_t>(row)] : 1.0;
    }

    // Fills nodes[slot] from rows [begin, end). Child slots are reserved
    // before recursing so that a split's children stay contiguous.
    void build(int begin, int end, int slot) {
        {
            TreeNode node;
            node.label_weights.assign(static_cast<std::size_t>(data.n_classes), 0.0);
            for (int i = begin; i < end; ++i) {
                const int row = rows[static_cast<std::size_t>(i)];
                node.label_weights[static_cast<std::size_t>(
                    data.labels[static_cast<std::size_t>(row)])] += row_weight(row);
            }
            double total = 0.0;
            for (double w : node.label_weights) total += w;
            node.weight = total / root_weight;
            node.impurity = entropy_of(node.label_weights.data(), data.n_classes);
            node.majority = weighted_majority(node.label_weights);
            nodes[static_cast<std::size_t>(slot)] = std::move(node);
        }

        int live_classes = 0;
        for (double w : nodes[static_cast<std::size_t>(slot)].label_weights)
            if (w > 0.0) ++live_classes;
        if (live_classes <= 1 || end - begin < min_rows) return;

        // Candidate pool: offered features that vary within this node.
        pool.clear();
        for (int f = 0; f < static_cast<int>(data.features.size()); ++f) {
            const std::uint8_t* col = data.features[static_cast<std::size_t>(f)].values;
            const std::uint8_t first = col[rows[static_cast<std::size_t>(begin)]];
            for (int i = begin + 1; i < end; ++i) {
                if (col[rows[static_cast<std::size_t>(i)]] != first) {
                    pool.push_back(f);
                    break;
                }
            }
        }
        if (pool.empty()) return;

        const int draw = std::min<int>(k, static_cast<int>(pool.size()));
        partial_shuffle(pool, draw, rng);

        const double node_total =
            nodes[static_cast<std::size_t>(slot)].weight * root_weight;
        const double node_impurity = nodes[static_cast<std::size_t>(slot)].impurity;
        int best_feature = -1;
        double best_gain = -1.0;
        int tie_count = 0;
        for (int c = 0; c < draw; ++c) {
            const int f = pool[static_cast<std::size_t>(c)];
            const FeatureColumn& fc = data.features[static_cast<std::size_t>(f)];
            hist.assign(static_cast<std::size_t>(fc.arity) *
                            static_cast<std::size_t>(data.n_classes),
                        0.0);
            for (int i = begin; i < end; ++i) {
                const int row = rows[static_cast<std::size_t>(i)];
                hist[static_cast<std::size_t>(fc.values[row]) *
                         static_cast<std::size_t>(data.n_classes) +
                     static_cast<std::size_t>(
                         data.labels[static_cast<std::size_t>(row)])] += row_weight(row);
            }
            double children_term = 0.0;
            for (int v = 0; v < fc.arity; ++v) {
                const double* cw =
                    hist.data() + static_cast<std::size_t>(v) *
                                      static_cast<std::size_t>(data.n_classes);
                double child_total = 0.0;
                for (int cc = 0; cc < data.n_classes; ++cc) child_total += cw[cc];
                if (child_total > 0.0)
                    children_term +=
                        child_total / node_total * entropy_of(cw, data.n_classes);
            }
            const double gain = node_impurity - children_term;
            if (gain > best_gain + kGainTie) {
                best_gain = gain;
                best_feature = f;
                tie_count = 1;
            } else if (gain > best_gain - kGainTie) {
                ++tie_count;
                if (rng.next_below(static_cast<std::uint64_t>(tie_count)) == 0)
                    best_feature = f;
            }
        }

        const FeatureColumn& split = data.features[static_cast<std::size_t>(best_feature)];

        // Counting partition of the node's rows by split value (stable).
        std::vector<int> bounds(static_cast<std::size_t>(split.arity) + 1, 0);
        for (int i = begin; i < end; ++i)
            ++bounds[static_cast<std::size_t>(
                         split.values[rows[static_cast<std::size_t>(i)]]) + 1];
        for (int v = 0; v < split.arity; ++v)
            bounds[static_cast<std::size_t>(v) + 1] += bounds[static_cast<std::size_t>(v)];
        std::vector<int> cursor(bounds.begin(), bounds.end() - 1);
        if (static_cast<int>(scratch.size()) < end) scratch.resize(rows.size());
        for (int i = begin; i < end; ++i) {
            const int row = rows[static_cast<std::size_t>(i)];
            scratch[static_cast<std::size_t>(
                begin + cursor[split.values[row]]++)] = row;
        }
        std::copy(scratch.begin() + begin, scratch.begin() + end, rows.begin() + begin);

        const int first_child = static_cast<int>(nodes.size());
        nodes[static_cast<std::size_t>(slot)].feature = split.id;
        nodes[static_cast<std::size_t>(slot)].child_count = split.arity;
        nodes[static_cast<std::size_t>(slot)].first_child = first_child;
        const int parent_majority = nodes[static_cast<std::size_t>(slot)].majority;
        for (int v = 0; v < split.arity; ++v) {
            TreeNode placeholder;
            placeholder.label_weights.assign(static_cast<std::size_t>(data.n_classes), 0.0);
            placeholder.majority = parent_majority;
            nodes.push_back(std::move(placeholder));
        }
        for (int v = 0; v < split.arity; ++v) {
            const int s = begin + bounds[static_cast<std::size_t>(v)];
            const int e = begin + bounds[static_cast<std::size_t>(v) + 1];
            if (s < e) build(s, e, first_child + v);
            // An empty span leaves the weight-0 placeholder leaf in place.
        }
    }
};

} // namespace

DecisionTree build_tree(const TrainingData& data, int k, int min_rows, Rng& rng) {
    if (data.n_rows < 1) throw ArgumentError("tree needs at least one row");
    if (data.features.empty()) throw ArgumentError("tree needs at least one feature");
    if (k < 1 || k > static_cast<int>(data.features.size()))
        throw ArgumentError("k must be in [1, number of offered features]");
    if (data.n_classes < 2) throw ArgumentError("need at least two classes");

    DecisionTree tree;
    tree.n_classes = data.n_classes;
    for (const auto& f : data.features) tree.feature_ids.push_back(f.id);
    std::sort(tree.feature_ids.begin(), tree.feature_ids.end());
    // Every offered feature counts as real until the caller marks probes.
    tree.real_feature_count = tree.feature_ids.back() + 1;

    Builder builder{data, k, std::max(min_rows, 1), rng, tree.nodes};
    builder.rows.resize(static_cast<std::size_t>(data.n_rows));
    for (int i = 0; i < data.n_rows; ++i) builder.rows[static_cast<std::size_t>(i)] = i;
    double total = 0.0;
    for (int i = 0; i < data.n_rows; ++i) total += builder.row_weight(i);
    if (total <= 0.0) throw ArgumentError("total row weight must be positive");
    builder.root_weight = total;
    tree.nodes.emplace_back();
    builder.build(0, data.n_rows, 0);
    return tree;
}

DecisionTree build_tree(const Dataset& ds, const std::vector<int>& subspace, int k,
                        Rng& rng) {
    if (subspace.empty()) throw ArgumentError("subspace must not be empty");
    for (std::size_t i = 0; i < subspace.size(); ++i) {
        if (subspace[i] < 0 || subspace[i] >= ds.p)
            throw ArgumentError("subspace feature out of range");
        if (i > 0 && subspace[i] <= subspace[i - 1])
            throw ArgumentError("subspace must be ascending");
    }
    TrainingData data;
    data.n_rows = ds.n;
    data.n_classes = ds.output_arity;
    data.labels = ds.labels.data();
    for (int f : subspace) {
        data.features.push_back(FeatureColumn{
            f, ds.arities[static_cast<std::size_t>(f)],
            ds.columns.data() + static_cast<std::size_t>(f) * static_cast<std::size_t>(ds.n)});
    }
    DecisionTree tree = build_tree(data, k, 2, rng);
    tree.real_feature_count = ds.p;
    return tree;
}

DecisionTree build_tree(const PopulationModel& pop, const std::vector<int>& subspace,
                        int k, Rng& rng) {
    if (subspace.empty()) throw ArgumentError("subspace must not be empty");
    const JointDistribution joint = pop.joint_over(subspace);

    // Expand the joint table into weighted (x, y) rows; zero-mass rows drop.
    const std::size_t q = subspace.size();
    std::vector<std::vector<std::uint8_t>> cols(q);
    std::vector<int> labels;
    std::vector<double> weights;
    std::vector<int> values;
    int y = 0;
    for (std::size_t idx = 0; idx < joint.table_size(); ++idx) {
        const double w = joint.probabilities()[idx];
        if (w == 0.0) continue;
        joint.decode(idx, values, y);
        for (std::size_t j = 0; j < q; ++j)
            cols[j].push_back(static_cast<std::uint8_t>(values[j]));
        labels.push_back(y);
        weights.push_back(w);
    }
    if (labels.empty()) throw ArgumentError("population table has no mass");

    TrainingData data;
    data.n_rows = static_cast<int>(labels.size());
    data.n_classes = joint.output_arity();
    data.labels = labels.data();
    data.row_weights = weights.data();
    for (std::size_t j = 0; j < q; ++j)
        data.features.push_back(
            FeatureColumn{subspace[j], joint.arity(static_cast<int>(j)), cols[j].data()});

    DecisionTree tree = build_tree(data, k, 0, rng);
    tree.real_feature_count = pop.feature_count();
    return tree;
}

int DecisionTree::predict(const std::vector<int>& x) const {
    int cur = 0;
    while (true) {
        const TreeNode& node = nodes[static_cast<std::size_t>(cur)];
        if (node.is_leaf()) return node.majority;
        if (node.feature >= real_feature_count) return node.majority; // probe split
        const int v = x[static_cast<std::size_t>(node.feature)];
        if (v < 0 || v >= node.child_count) return node.majority;
        const TreeNode& child = nodes[static_cast<std::size_t>(node.first_child + v)];
        if (child.weight <= 0.0) return node.majority; // unseen category
        cur = node.first_child + v;
    }
}

int DecisionTree::predict_row(const Dataset& ds, int row) const {
    std::vector<int> x(static_cast<std::size_t>(ds.p));
    for (int j = 0; j < ds.p; ++j) x[static_cast<std::size_t>(j)] = ds.value(row, j);
    return predict(x);
}

std::map<int, double> mdi_importance(const DecisionTree& tree) {
    std::map<int, double> importance;
    for (const TreeNode& node : tree.nodes) {
        if (node.is_leaf()) continue;
        double children_term = 0.0;
        for (int v = 0; v < node.child_count; ++v) {
            const TreeNode& child =
                tree.nodes[static_cast<std::size_t>(node.first_child + v)];
            children_term += child.weight * child.impurity;
        }
        const double contribution = node.weight * node.impurity - children_term;
        importance[node.feature] += contribution > 0.0 ? contribution : 0.0;
    }
    return importance;
}

int predict_ensemble(const std::vector<DecisionTree>& trees, const std::vector<int>& x) {
    if (trees.empty()) throw ArgumentError("empty ensemble");
    std::vector<int> votes(static_cast<std::size_t>(trees.front().n_classes), 0);
    for (const DecisionTree& t : trees) {
        const int c = t.predict(x);
        if (c >= static_cast<int>(votes.size()))
            votes.resize(static_cast<std::size_t>(c) + 1, 0);
        ++votes[static_cast<std::size_t>(c)];
    }
    int best = 0;
    for (int c = 1; c < static_cast<int>(votes.size()); ++c)
        if (votes[static_cast<std::size_t>(c)] > votes[static_cast<std::size_t>(best)])
            best = c;
    return best;
}

std::string tree_to_text(const DecisionTree& tree) {
    std::ostringstream out;
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const TreeNode& node = tree.nodes[i];
        out << i;
        if (node.is_leaf()) {
            out << " leaf";
        } else {
            out << " split f" << node.feature << " children " << node.first_child << ".."
                << node.first_child + node.child_count - 1;
        }
        out << " weight " << format_double(node.weight) << " counts";
        for (double w : node.label_weights) out << ' ' << format_double(w);
        out << '\n';
    }
    return out.str();
}

} // namespace srs
