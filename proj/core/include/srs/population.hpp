#pragma once

#include <vector>

#include "srs/dataset.hpp"
#include "srs/joint_distribution.hpp"

namespace srs {

// Infinite-sample view of a generator scenario: an explicit joint table over
// the r relevant variables plus Y, padded with p - r independent uniform
// noise features. Trees grown against it use exact probabilities as sample
// weights, which makes "importance greater than zero" an exact statement.
class PopulationModel {
public:
    PopulationModel(JointDistribution core, int p_total, int noise_arity = 2);

    static PopulationModel for_scenario(Scenario scenario, int p, int r, double noise);

    int feature_count() const { return p_total_; }
    int relevant_count() const { return core_.variable_count(); }
    int output_arity() const { return core_.output_arity(); }
    int arity(int feature) const {
        return feature < relevant_count() ? core_.arity(feature) : noise_arity_;
    }
    const JointDistribution& core() const { return core_; }

    // Exact joint distribution over a feature subset (ascending indices) and
    // Y. Relevant features come from the marginalized core table; noise
    // features multiply in as independent uniforms.
    JointDistribution joint_over(const std::vector<int>& features) const;

private:
    JointDistribution core_;
    int p_total_ = 0;
    int noise_arity_ = 2;
};

} // namespace srs
