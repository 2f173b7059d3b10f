#include "srs/population.hpp"

#include <string>

#include "srs/errors.hpp"

namespace srs {

PopulationModel::PopulationModel(JointDistribution core, int p_total, int noise_arity)
    : core_(std::move(core)), p_total_(p_total), noise_arity_(noise_arity) {
    if (p_total_ < core_.variable_count())
        throw ArgumentError("population needs p >= number of core variables");
    if (noise_arity_ < 2) throw ArgumentError("noise arity must be at least 2");
}

PopulationModel PopulationModel::for_scenario(Scenario scenario, int p, int r,
                                              double noise) {
    if (p < 1) throw ArgumentError("p must be positive");
    if (r < 0 || r > p) throw ArgumentError("r must be in [0, p]");
    return PopulationModel(scenario_core_distribution(scenario, r, noise), p);
}

JointDistribution PopulationModel::joint_over(const std::vector<int>& features) const {
    const int r = relevant_count();
    std::vector<int> core_part;
    int noise_count = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        const int f = features[i];
        if (f < 0 || f >= p_total_) throw ArgumentError("feature index out of range");
        if (i > 0 && f <= features[i - 1])
            throw ArgumentError("feature indices must be ascending");
        if (f < r) core_part.push_back(f);
        else ++noise_count;
    }

    JointDistribution base = core_.marginal(core_part);

    std::vector<std::string> names;
    std::vector<int> arities;
    for (int f : features) {
        names.push_back("x" + std::to_string(f));
        arities.push_back(arity(f));
    }

    // Relevant features sort before noise features, so the combined table is
    // base-assignment-major with noise cells fanned out underneath, each
    // carrying an equal share of the base cell's mass.
    std::size_t noise_cells = 1;
    for (int i = 0; i < noise_count; ++i)
        noise_cells *= static_cast<std::size_t>(noise_arity_);
    const double share = 1.0 / static_cast<double>(noise_cells);
    const int ay = core_.output_arity();

    const auto& base_table = base.probabilities();
    const std::size_t base_assignments = base_table.size() / static_cast<std::size_t>(ay);
    std::vector<double> probs(base_assignments * noise_cells * static_cast<std::size_t>(ay));
    std::size_t out = 0;
    for (std::size_t b = 0; b < base_assignments; ++b) {
        for (std::size_t nc = 0; nc < noise_cells; ++nc) {
            for (int y = 0; y < ay; ++y)
                probs[out++] = base_table[b * static_cast<std::size_t>(ay) +
                                          static_cast<std::size_t>(y)] * share;
        }
    }
    return JointDistribution(std::move(names), std::move(arities), ay, std::move(probs));
}

} // namespace srs
