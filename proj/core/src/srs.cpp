#include "srs/srs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

#include "srs/csv.hpp"
#include "srs/errors.hpp"
#include "srs/evaluation.hpp"

namespace srs {

std::string to_string(ProbeRule rule) {
    return rule == ProbeRule::strict_max ? "strict_max" : "quantile";
}

std::string to_string(ProbeKind kind) {
    return kind == ProbeKind::permuted_copy ? "permuted_copy" : "uniform";
}

ProbeRule probe_rule_from_string(const std::string& s) {
    if (s == "strict_max") return ProbeRule::strict_max;
    if (s == "quantile") return ProbeRule::quantile;
    throw ArgumentError("unknown probe rule: " + s);
}

ProbeKind probe_kind_from_string(const std::string& s) {
    if (s == "permuted_copy") return ProbeKind::permuted_copy;
    if (s == "uniform") return ProbeKind::uniform;
    throw ArgumentError("unknown probe kind: " + s);
}

SubspaceDraw select_subspace(const std::vector<int>& found, int p, int q, double alpha,
                             Rng& rng) {
    if (p < 1) throw ArgumentError("need at least one feature");
    if (q < 1 || q > p) throw ArgumentError("subspace size must be in [1, p]");
    if (alpha < 0.0 || alpha > 1.0) throw ArgumentError("alpha must be in [0, 1]");

    SubspaceDraw draw;
    const int r_cap = static_cast<int>(std::floor(alpha * q + 1e-9));
    const int r_size = std::min<int>(r_cap, static_cast<int>(found.size()));
    if (r_size > 0) {
        std::vector<int> positions = sample_without_replacement(
            static_cast<int>(found.size()), r_size, rng);
        for (int pos : positions)
            draw.r_part.push_back(found[static_cast<std::size_t>(pos)]);
        std::sort(draw.r_part.begin(), draw.r_part.end());
    }

    const int c_size = q - r_size;
    if (c_size > 0) {
        std::vector<int> positions = sample_without_replacement(p - r_size, c_size, rng);
        // Positions index the ascending complement of R; walk both in step.
        int shift = 0;
        for (int pos : positions) {
            int value = pos + shift;
            while (shift < r_size &&
                   draw.r_part[static_cast<std::size_t>(shift)] <= value) {
                ++shift;
                ++value;
            }
            draw.c_part.push_back(value);
        }
    }

    draw.all.resize(static_cast<std::size_t>(q));
    std::merge(draw.r_part.begin(), draw.r_part.end(), draw.c_part.begin(),
               draw.c_part.end(), draw.all.begin());
    return draw;
}

namespace {

double rule_threshold(const SrsConfig& cfg, std::vector<double> probe_imps) {
    if (probe_imps.empty()) return 0.0;
    if (cfg.probe_rule == ProbeRule::strict_max)
        return *std::max_element(probe_imps.begin(), probe_imps.end());
    std::sort(probe_imps.begin(), probe_imps.end());
    const int c = static_cast<int>(probe_imps.size());
    int idx = static_cast<int>(std::ceil(cfg.probe_quantile * c)) - 1;
    idx = std::clamp(idx, 0, c - 1);
    return probe_imps[static_cast<std::size_t>(idx)];
}

void validate_common(const SrsConfig& cfg, int p) {
    if (cfg.q < 1 || cfg.q > p)
        throw ArgumentError("subspace size must be in [1, feature count]");
    if (cfg.T < 0) throw ArgumentError("iteration count must be nonnegative");
    if (cfg.alpha < 0.0 || cfg.alpha > 1.0)
        throw ArgumentError("alpha must be in [0, 1]");
    if (cfg.K < 1 || cfg.K > cfg.q)
        throw ArgumentError("candidate count must be in [1, q]");
}

// Shared Algorithm-1 driver; `step` grows one tree on the subspace and
// reports which subspace features passed the relevance check.
SrsResult run_loop(
    int p, const SrsConfig& cfg,
    const std::function<std::pair<DecisionTree, std::vector<int>>(
        const std::vector<int>&, Rng&)>& step) {
    SrsResult result;
    result.config = cfg;
    result.p = p;
    result.importances.assign(static_cast<std::size_t>(p), 0.0);

    Rng rng(cfg.seed);
    std::vector<char> member(static_cast<std::size_t>(p), 0);
    for (int t = 1; t <= cfg.T; ++t) {
        SubspaceDraw draw = select_subspace(result.found, p, cfg.q, cfg.alpha, rng);
        auto [tree, accepted] = step(draw.all, rng);

        IterationRecord rec;
        rec.iteration = t;
        rec.subspace = std::move(draw.all);
        for (int f : accepted) {
            if (!member[static_cast<std::size_t>(f)]) {
                member[static_cast<std::size_t>(f)] = 1;
                result.found.push_back(f);
                rec.accepted.push_back(f);
            }
        }
        rec.found_size_after = static_cast<int>(result.found.size());
        result.history.push_back(std::move(rec));

        for (const auto& [fid, value] : mdi_importance(tree))
            if (fid < p) result.importances[static_cast<std::size_t>(fid)] += value;
        result.trees.push_back(std::move(tree));
    }
    if (cfg.T > 0)
        for (double& v : result.importances) v /= cfg.T;
    return result;
}

} // namespace

ProbeOutcome probe_test(const Dataset& ds, const std::vector<int>& subspace,
                        const SrsConfig& cfg, Rng& rng) {
    if (subspace.empty()) throw ArgumentError("subspace must not be empty");
    if (cfg.probe_count < 1)
        throw ArgumentError("finite-sample runs need at least one probe");

    const int q = static_cast<int>(subspace.size());
    std::vector<std::vector<std::uint8_t>> probe_cols(
        static_cast<std::size_t>(cfg.probe_count));
    std::vector<int> probe_arities(static_cast<std::size_t>(cfg.probe_count));
    for (int j = 0; j < cfg.probe_count; ++j) {
        const int source = subspace[static_cast<std::size_t>(
            rng.next_below(static_cast<std::uint64_t>(q)))];
        const int arity = ds.arities[static_cast<std::size_t>(source)];
        probe_arities[static_cast<std::size_t>(j)] = arity;
        auto& col = probe_cols[static_cast<std::size_t>(j)];
        col.resize(static_cast<std::size_t>(ds.n));
        if (cfg.probe_kind == ProbeKind::permuted_copy) {
            std::vector<int> perm = random_permutation(ds.n, rng);
            for (int i = 0; i < ds.n; ++i)
                col[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
                    ds.value(perm[static_cast<std::size_t>(i)], source));
        } else {
            for (int i = 0; i < ds.n; ++i)
                col[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(
                    rng.next_below(static_cast<std::uint64_t>(arity)));
        }
    }

    TrainingData data;
    data.n_rows = ds.n;
    data.n_classes = ds.output_arity;
    data.labels = ds.labels.data();
    for (int f : subspace)
        data.features.push_back(FeatureColumn{
            f, ds.arities[static_cast<std::size_t>(f)],
            ds.columns.data() + static_cast<std::size_t>(f) * static_cast<std::size_t>(ds.n)});

    const int min_rows = std::max(cfg.min_rows, 2);

    // the kept tree sees only real features, so synthetic splits never enter
    // the ensemble and candidate draws keep their K-of-q meaning
    ProbeOutcome outcome;
    outcome.tree = build_tree(data, cfg.K, min_rows, rng);
    outcome.tree.real_feature_count = ds.p;

    // null calibration happens on a second tree where the probes compete with
    // the subspace; K is scaled so a real feature is drawn at a node with the
    // same probability as in the kept tree
    TrainingData probe_data = data;
    for (int j = 0; j < cfg.probe_count; ++j)
        probe_data.features.push_back(
            FeatureColumn{ds.p + j, probe_arities[static_cast<std::size_t>(j)],
                          probe_cols[static_cast<std::size_t>(j)].data()});
    const int probe_k = static_cast<int>(std::llround(
        static_cast<double>(cfg.K) * (q + cfg.probe_count) / q));
    DecisionTree probe_tree =
        build_tree(probe_data, std::max(cfg.K, probe_k), min_rows, rng);

    const std::map<int, double> imp = mdi_importance(outcome.tree);
    auto importance_of = [&imp](int fid) {
        auto it = imp.find(fid);
        return it == imp.end() ? 0.0 : it->second;
    };
    const std::map<int, double> probe_imp = mdi_importance(probe_tree);
    for (int j = 0; j < cfg.probe_count; ++j) {
        auto it = probe_imp.find(ds.p + j);
        outcome.probe_importances.push_back(it == probe_imp.end() ? 0.0 : it->second);
    }
    outcome.threshold = rule_threshold(cfg, outcome.probe_importances);

    const double cut =
        std::max(cfg.probe_margin * outcome.threshold, cfg.probe_floor);
    for (int f : subspace)
        if (importance_of(f) > cut) outcome.accepted.push_back(f);
    return outcome;
}

SrsResult run_srs(const Dataset& ds, const SrsConfig& cfg) {
    if (ds.n < 1 || ds.p < 1) throw ArgumentError("dataset must not be empty");
    validate_common(cfg, ds.p);
    if (cfg.probe_count < 1)
        throw ArgumentError("finite-sample runs need at least one probe");
    if (cfg.probe_margin <= 0.0) throw ArgumentError("probe margin must be positive");
    if (cfg.probe_floor < 0.0) throw ArgumentError("probe floor must be nonnegative");
    if (cfg.probe_rule == ProbeRule::quantile &&
        (cfg.probe_quantile <= 0.0 || cfg.probe_quantile > 1.0))
        throw ArgumentError("probe quantile must be in (0, 1]");
    if (cfg.min_rows < 0) throw ArgumentError("min_rows must be nonnegative");

    return run_loop(ds.p, cfg,
                    [&ds, &cfg](const std::vector<int>& subspace, Rng& rng) {
                        ProbeOutcome out = probe_test(ds, subspace, cfg, rng);
                        return std::make_pair(std::move(out.tree),
                                              std::move(out.accepted));
                    });
}

SrsResult run_srs(const PopulationModel& pop, const SrsConfig& cfg) {
    validate_common(cfg, pop.feature_count());

    return run_loop(
        pop.feature_count(), cfg,
        [&pop, &cfg](const std::vector<int>& subspace, Rng& rng) {
            DecisionTree tree = build_tree(pop, subspace, cfg.K, rng);
            const std::map<int, double> imp = mdi_importance(tree);
            std::vector<int> accepted;
            for (int f : subspace) {
                auto it = imp.find(f);
                if (it != imp.end() && it->second > kAcceptTolerance)
                    accepted.push_back(f);
            }
            return std::make_pair(std::move(tree), std::move(accepted));
        });
}

std::vector<int> predict_ensemble(const SrsResult& result, const Dataset& ds) {
    if (result.trees.empty()) throw ArgumentError("empty ensemble");
    if (ds.p != result.p)
        throw ArgumentError("dataset feature count does not match the ensemble");
    std::vector<int> out(static_cast<std::size_t>(ds.n));
    std::vector<int> x(static_cast<std::size_t>(ds.p));
    for (int i = 0; i < ds.n; ++i) {
        for (int j = 0; j < ds.p; ++j) x[static_cast<std::size_t>(j)] = ds.value(i, j);
        out[static_cast<std::size_t>(i)] = predict_ensemble(result.trees, x);
    }
    return out;
}

void write_history_csv(const SrsResult& result, const std::string& path,
                       const std::vector<int>* truth) {
    CsvWriter csv(path);
    std::vector<std::string> header{"iteration", "found_size", "accepted_count"};
    if (truth) header.push_back("f1");
    csv.row(header);

    std::vector<std::pair<int, double>> curve;
    if (truth) curve = f1_curve(result, *truth);
    for (std::size_t i = 0; i < result.history.size(); ++i) {
        const IterationRecord& rec = result.history[i];
        std::vector<std::string> cells{std::to_string(rec.iteration),
                                       std::to_string(rec.found_size_after),
                                       std::to_string(static_cast<int>(rec.accepted.size()))};
        if (truth) cells.push_back(format_double(curve[i].second));
        csv.row(cells);
    }
}

void write_importances_csv(const SrsResult& result, const std::string& path) {
    CsvWriter csv(path);
    csv.row({"feature", "importance"});
    for (int f = 0; f < result.p; ++f)
        csv.row({std::to_string(f),
                 format_double(result.importances[static_cast<std::size_t>(f)])});
}

} // namespace srs
