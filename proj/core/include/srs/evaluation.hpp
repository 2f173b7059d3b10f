#pragma once

#include <vector>

namespace srs {

struct SrsResult;

struct SelectionScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    int found_count = 0;
    int truth_count = 0;
};

// Precision and recall of a found set against the ground-truth relevant set.
// An empty found set scores 0 across the board.
SelectionScore f1_against_truth(const std::vector<int>& found,
                                const std::vector<int>& truth);

// F1 of the cumulative found set after each recorded iteration.
std::vector<std::pair<int, double>> f1_curve(const SrsResult& result,
                                             const std::vector<int>& truth);

// Fraction of exact matches.
double accuracy(const std::vector<int>& predictions, const std::vector<int>& labels);

} // namespace srs
