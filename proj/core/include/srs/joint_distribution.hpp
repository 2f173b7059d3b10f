#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace srs {

// Fully specified discrete joint distribution over input variables
// X_0..X_{p-1} and an output Y. Probabilities are stored densely, one entry
// per joint assignment, with Y varying fastest and X_0 slowest.
//
// Probabilities below kZeroFloor are treated as exact zeros; the table must
// sum to one within kSumTolerance.
class JointDistribution {
public:
    static constexpr double kZeroFloor = 1e-300;
    static constexpr double kSumTolerance = 1e-12;

    JointDistribution() = default;
    JointDistribution(std::vector<std::string> variable_names,
                      std::vector<int> arities,
                      int output_arity,
                      std::vector<double> probabilities);

    int variable_count() const { return static_cast<int>(arities_.size()); }
    int arity(int var) const { return arities_[var]; }
    const std::vector<int>& arities() const { return arities_; }
    int output_arity() const { return output_arity_; }
    const std::vector<std::string>& variable_names() const { return names_; }
    const std::vector<double>& probabilities() const { return table_; }
    std::size_t table_size() const { return table_.size(); }

    // Flat index of a joint assignment. `values` holds one value per input
    // variable, in variable order.
    std::size_t index_of(const std::vector<int>& values, int y) const;

    double probability(const std::vector<int>& values, int y) const {
        return table_[index_of(values, y)];
    }

    // Marginal over a subset of the input variables (ascending indices into
    // this distribution); Y is always kept.
    JointDistribution marginal(const std::vector<int>& keep_vars) const;

    // True when every cell carries positive mass.
    bool strictly_positive() const;

    // Decodes flat index -> per-variable values + y. Used by table scans.
    void decode(std::size_t index, std::vector<int>& values_out, int& y_out) const;

private:
    std::vector<std::string> names_;
    std::vector<int> arities_;
    int output_arity_ = 0;
    std::vector<double> table_;
    std::vector<std::size_t> strides_; // stride per input variable
};

// Text round trip. Format: optional '#' comment lines, then a header of
// whitespace-separated name:arity tokens (last token is the output), then one
// line per joint assignment: one value per variable followed by the
// probability. Every assignment must appear exactly once.
JointDistribution load_distribution(const std::string& path);
void save_distribution(const JointDistribution& d, const std::string& path);

} // namespace srs
