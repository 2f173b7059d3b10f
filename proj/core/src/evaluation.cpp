#include "srs/evaluation.hpp"

#include <algorithm>
#include <unordered_set>

#include "srs/errors.hpp"
#include "srs/srs.hpp"

namespace srs {

SelectionScore f1_against_truth(const std::vector<int>& found,
                                const std::vector<int>& truth) {
    if (truth.empty()) throw ArgumentError("truth set must not be empty");
    std::unordered_set<int> truth_set(truth.begin(), truth.end());
    std::unordered_set<int> seen;
    int hits = 0;
    for (int f : found)
        if (seen.insert(f).second && truth_set.count(f)) ++hits;

    SelectionScore score;
    score.found_count = static_cast<int>(seen.size());
    score.truth_count = static_cast<int>(truth_set.size());
    if (score.found_count > 0)
        score.precision = static_cast<double>(hits) / score.found_count;
    score.recall = static_cast<double>(hits) / score.truth_count;
    if (score.precision + score.recall > 0.0)
        score.f1 = 2.0 * score.precision * score.recall /
                   (score.precision + score.recall);
    return score;
}

std::vector<std::pair<int, double>> f1_curve(const SrsResult& result,
                                             const std::vector<int>& truth) {
    std::vector<std::pair<int, double>> curve;
    std::vector<int> cumulative;
    for (const IterationRecord& rec : result.history) {
        cumulative.insert(cumulative.end(), rec.accepted.begin(), rec.accepted.end());
        curve.emplace_back(rec.iteration, f1_against_truth(cumulative, truth).f1);
    }
    return curve;
}

double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels) {
    if (predictions.empty() || predictions.size() != labels.size())
        throw ArgumentError("predictions and labels must have equal nonzero length");
    int hits = 0;
    for (std::size_t i = 0; i < predictions.size(); ++i)
        if (predictions[i] == labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(predictions.size());
}

} // namespace srs
