#include "srs/information.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>

#include <gtest/gtest.h>

#include "srs/dataset.hpp"
#include "srs/errors.hpp"
#include "srs/population.hpp"

using namespace srs;

namespace {

JointDistribution xor_distribution() {
    std::vector<double> probs(8, 0.0);
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1)
            probs[static_cast<std::size_t>(((x0 * 2) + x1) * 2 + (x0 ^ x1))] = 0.25;
    return JointDistribution({"X0", "X1"}, {2, 2}, 2, probs);
}

} // namespace

TEST(Entropy, KnownValues) {
    EXPECT_DOUBLE_EQ(entropy_bits({0.5, 0.5}), 1.0);
    EXPECT_DOUBLE_EQ(entropy_bits({1.0}), 0.0);
    EXPECT_DOUBLE_EQ(entropy_bits({0.25, 0.25, 0.25, 0.25}), 2.0);
    // unnormalized weights are normalized internally
    EXPECT_DOUBLE_EQ(entropy_bits({2.0, 2.0}), 1.0);
    // zero weights contribute nothing
    EXPECT_DOUBLE_EQ(entropy_bits({0.5, 0.5, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(entropy_bits({}), 0.0);
    EXPECT_DOUBLE_EQ(entropy_bits({0.0, 0.0}), 0.0);
    EXPECT_NEAR(entropy_bits({0.9, 0.1}), 0.4689955935892812, 1e-12);
}

TEST(Cmi, XorPair) {
    const JointDistribution d = xor_distribution();
    // marginally independent, jointly determined
    EXPECT_NEAR(conditional_mutual_information(d, 0, {}), 0.0, 1e-12);
    EXPECT_NEAR(conditional_mutual_information(d, 1, {}), 0.0, 1e-12);
    EXPECT_NEAR(conditional_mutual_information(d, 0, {1}), 1.0, 1e-12);
    EXPECT_NEAR(conditional_mutual_information(d, 1, {0}), 1.0, 1e-12);
}

TEST(Cmi, NonNegativeAndSymmetricZero) {
    const JointDistribution d = scenario_core_distribution(Scenario::chaining, 3, 0.1);
    for (int x = 0; x < 3; ++x) {
        EXPECT_GE(conditional_mutual_information(d, x, {}), 0.0);
        std::vector<int> others;
        for (int o = 0; o < 3; ++o)
            if (o != x) others.push_back(o);
        EXPECT_GE(conditional_mutual_information(d, x, others), 0.0);
    }
}

TEST(Cmi, RejectsBadConditioning) {
    const JointDistribution d = xor_distribution();
    EXPECT_THROW(conditional_mutual_information(d, 0, {0}), ArgumentError);
    EXPECT_THROW(conditional_mutual_information(d, 0, {2}), ArgumentError);
    EXPECT_THROW(conditional_mutual_information(d, 2, {}), ArgumentError);
}

TEST(Relevance, XorIsStronglyRelevantDegreeOne) {
    const JointDistribution d = xor_distribution();
    for (int x = 0; x < 2; ++x) {
        const RelevanceReport rep = relevance_class(d, x);
        EXPECT_EQ(rep.relevance, RelevanceClass::strongly_relevant);
        ASSERT_TRUE(rep.degree.has_value());
        EXPECT_EQ(*rep.degree, 1);
        EXPECT_EQ(rep.witness_conditioning, std::vector<int>{1 - x});
    }
}

TEST(Relevance, ChainingDegreesAreGraded) {
    const JointDistribution d = scenario_core_distribution(Scenario::chaining, 3, 0.0);
    for (int x = 0; x < 3; ++x) {
        const RelevanceReport rep = relevance_class(d, x);
        ASSERT_TRUE(rep.degree.has_value()) << "X" << x;
        EXPECT_EQ(*rep.degree, x);
    }
    // X2's minimal witness is the full prefix
    const RelevanceReport last = relevance_class(d, 2);
    EXPECT_EQ(last.witness_conditioning, (std::vector<int>{0, 1}));
}

TEST(Relevance, CliqueAndMarginalDegrees) {
    const JointDistribution clique = scenario_core_distribution(Scenario::clique, 3, 0.0);
    for (int x = 0; x < 3; ++x) {
        const RelevanceReport rep = relevance_class(clique, x);
        ASSERT_TRUE(rep.degree.has_value());
        EXPECT_EQ(*rep.degree, 2);
        EXPECT_EQ(rep.relevance, RelevanceClass::strongly_relevant);
    }
    const JointDistribution marginal =
        scenario_core_distribution(Scenario::marginal, 3, 0.0);
    for (int x = 0; x < 3; ++x) {
        const RelevanceReport rep = relevance_class(marginal, x);
        ASSERT_TRUE(rep.degree.has_value());
        EXPECT_EQ(*rep.degree, 0);
    }
}

TEST(Relevance, NoiseVariableIsIrrelevant) {
    PopulationModel pop(xor_distribution(), 3);
    const JointDistribution d = pop.joint_over({0, 1, 2});
    const RelevanceReport rep = relevance_class(d, 2);
    EXPECT_EQ(rep.relevance, RelevanceClass::irrelevant);
    EXPECT_FALSE(rep.degree.has_value());
    EXPECT_TRUE(rep.witness_conditioning.empty());
}

TEST(Relevance, WeaklyRelevantCopy) {
    // Y = X0, X1 a noisy copy of X0: informative alone, useless given X0.
    std::vector<double> probs(8, 0.0);
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1)
            probs[static_cast<std::size_t>(((x0 * 2) + x1) * 2 + x0)] =
                0.5 * ((x1 == x0) ? 0.75 : 0.25);
    const JointDistribution d({"X0", "X1"}, {2, 2}, 2, probs);
    EXPECT_EQ(relevance_class(d, 0).relevance, RelevanceClass::strongly_relevant);
    const RelevanceReport copy = relevance_class(d, 1);
    EXPECT_EQ(copy.relevance, RelevanceClass::weakly_relevant);
    ASSERT_TRUE(copy.degree.has_value());
    EXPECT_EQ(*copy.degree, 0);
}

TEST(Relevance, CapacityLimit) {
    const JointDistribution d = scenario_core_distribution(Scenario::chaining, 3, 0.0);
    EXPECT_THROW(relevance_class(d, 0, kIndependenceTolerance, 2), CapacityError);
    EXPECT_THROW(markov_boundary(d, kIndependenceTolerance, 2), CapacityError);
    EXPECT_THROW(asymptotic_importance(d, 0, 3, kIndependenceTolerance, 2),
                 CapacityError);
    EXPECT_THROW(degree_histogram(d, kIndependenceTolerance, 2), CapacityError);
}

TEST(MarkovBoundary, KnownSets) {
    EXPECT_EQ(markov_boundary(xor_distribution()).members, (std::vector<int>{0, 1}));
    const JointDistribution chain = scenario_core_distribution(Scenario::chaining, 3, 0.0);
    EXPECT_EQ(markov_boundary(chain).members, (std::vector<int>{0, 1, 2}));

    PopulationModel pop(xor_distribution(), 4);
    const MarkovBoundaryResult with_noise = markov_boundary(pop.joint_over({0, 1, 2, 3}));
    EXPECT_EQ(with_noise.members, (std::vector<int>{0, 1}));
}

TEST(MarkovBoundary, UniqueForStrictlyPositive) {
    const JointDistribution noisy = scenario_core_distribution(Scenario::chaining, 3, 0.1);
    ASSERT_TRUE(noisy.strictly_positive());
    EXPECT_TRUE(markov_boundary(noisy).unique);
}

TEST(AsymptoticImportance, XorBySubspaceSize) {
    const JointDistribution d = xor_distribution();
    // degree 1 variables carry nothing in single-feature subspaces
    EXPECT_NEAR(asymptotic_importance(d, 0, 1), 0.0, 1e-12);
    EXPECT_NEAR(asymptotic_importance(d, 1, 1), 0.0, 1e-12);
    EXPECT_NEAR(asymptotic_importance(d, 0, 2), 0.5, 1e-12);
    EXPECT_NEAR(asymptotic_importance(d, 1, 2), 0.5, 1e-12);
}

TEST(AsymptoticImportance, SumsToJointInformation) {
    // At q = p the importances decompose I(V; Y) exactly.
    const JointDistribution d = scenario_core_distribution(Scenario::chaining, 3, 0.05);
    const double joint_info = conditional_mutual_information(d, 0, {}) +
                              conditional_mutual_information(d, 1, {0}) +
                              conditional_mutual_information(d, 2, {0, 1});
    double total = 0.0;
    for (int x = 0; x < 3; ++x) total += asymptotic_importance(d, x, 3);
    EXPECT_NEAR(total, joint_info, 1e-10);
}

TEST(AsymptoticImportance, PositiveIffDegreeBelowQ) {
    const JointDistribution d = scenario_core_distribution(Scenario::clique, 3, 0.0);
    // clique degrees are all r-1 = 2
    for (int x = 0; x < 3; ++x) {
        EXPECT_NEAR(asymptotic_importance(d, x, 1), 0.0, 1e-12);
        EXPECT_NEAR(asymptotic_importance(d, x, 2), 0.0, 1e-12);
        EXPECT_GT(asymptotic_importance(d, x, 3), 0.01);
    }
    EXPECT_THROW(asymptotic_importance(d, 0, 0), ArgumentError);
    EXPECT_THROW(asymptotic_importance(d, 0, 4), ArgumentError);
}

TEST(DegreeHistogram, ChainingCountsOnePerDegree) {
    const JointDistribution d = scenario_core_distribution(Scenario::chaining, 3, 0.0);
    const std::map<int, int> hist = degree_histogram(d);
    const std::map<int, int> expected{{0, 1}, {1, 1}, {2, 1}};
    EXPECT_EQ(hist, expected);

    const std::map<int, int> clique_hist =
        degree_histogram(scenario_core_distribution(Scenario::clique, 4, 0.0));
    EXPECT_EQ(clique_hist, (std::map<int, int>{{3, 4}}));
}

TEST(DistributionIo, RoundTrip) {
    const JointDistribution d = scenario_core_distribution(Scenario::chaining, 3, 0.1);
    const std::string path =
        (std::filesystem::temp_directory_path() / "srs_info_roundtrip.dist").string();
    save_distribution(d, path);
    const JointDistribution back = load_distribution(path);
    ASSERT_EQ(back.variable_count(), d.variable_count());
    EXPECT_EQ(back.variable_names(), d.variable_names());
    EXPECT_EQ(back.arities(), d.arities());
    EXPECT_EQ(back.output_arity(), d.output_arity());
    ASSERT_EQ(back.table_size(), d.table_size());
    std::vector<int> values(static_cast<std::size_t>(d.variable_count()));
    int y = 0;
    for (std::size_t idx = 0; idx < d.table_size(); ++idx) {
        d.decode(idx, values, y);
        EXPECT_NEAR(back.probability(values, y), d.probability(values, y), 1e-12);
    }
    std::filesystem::remove(path);
}

TEST(DistributionIo, LoadRejectsGarbage) {
    const std::string path =
        (std::filesystem::temp_directory_path() / "srs_info_bad.dist").string();
    {
        std::FILE* f = std::fopen(path.c_str(), "w");
        ASSERT_NE(f, nullptr);
        std::fputs("X0:2 Y:2\n0 zzz 0.5\n", f);
        std::fclose(f);
    }
    EXPECT_THROW(load_distribution(path), ParseError);
    EXPECT_THROW(load_distribution(path + ".does_not_exist"), IoError);
    std::filesystem::remove(path);
}

TEST(Distribution, ValidatesConstruction) {
    EXPECT_THROW(JointDistribution({"A"}, {2}, 2, {0.5, 0.5, 0.1, 0.0, 0.0}),
                 ArgumentError);
    EXPECT_THROW(JointDistribution({"A"}, {2}, 2, {0.7, 0.7, -0.2, -0.2}),
                 ArgumentError);
    EXPECT_THROW(JointDistribution({"A"}, {1}, 2, {0.5, 0.5}), ArgumentError);
    EXPECT_THROW(JointDistribution({"A", "B"}, {2}, 2, {0.25, 0.25, 0.25, 0.25}),
                 ArgumentError);
}

TEST(Distribution, MarginalDropsVariables) {
    PopulationModel pop(xor_distribution(), 3);
    const JointDistribution d3 = pop.joint_over({0, 1, 2});
    const JointDistribution d2 = d3.marginal({0, 1});
    EXPECT_EQ(d2.variable_count(), 2);
    EXPECT_NEAR(conditional_mutual_information(d2, 0, {1}), 1.0, 1e-12);
    EXPECT_THROW(d3.marginal({1, 0}), ArgumentError);
}
