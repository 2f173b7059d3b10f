#include "srs/dataset.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "srs/errors.hpp"
#include "srs/information.hpp"

using namespace srs;

namespace {

// Empirical tables carry O(1/n) sampling noise, so relevance checks on
// generated data use a loose dependence threshold instead of the library
// default.
constexpr double kEmpiricalTolerance = 0.01;

GeneratorSpec make_spec(Scenario s, int p, int r, int n, double noise,
                        std::uint64_t seed) {
    GeneratorSpec spec;
    spec.scenario = s;
    spec.p = p;
    spec.r = r;
    spec.n = n;
    spec.noise = noise;
    spec.seed = seed;
    return spec;
}

std::filesystem::path temp_path(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST(Generate, ShapeAndTruth) {
    const Dataset ds = generate(make_spec(Scenario::chaining, 10, 3, 50, 0.1, 7));
    EXPECT_EQ(ds.n, 50);
    EXPECT_EQ(ds.p, 10);
    EXPECT_EQ(ds.arities, std::vector<int>(10, 2));
    EXPECT_EQ(ds.output_arity, 2);
    EXPECT_EQ(ds.columns.size(), 500u);
    EXPECT_EQ(ds.labels.size(), 50u);
    ASSERT_TRUE(ds.relevant_truth.has_value());
    EXPECT_EQ(*ds.relevant_truth, (std::vector<int>{0, 1, 2}));
    for (int i = 0; i < ds.n; ++i) {
        EXPECT_GE(ds.labels[static_cast<std::size_t>(i)], 0);
        EXPECT_LT(ds.labels[static_cast<std::size_t>(i)], 2);
        for (int j = 0; j < ds.p; ++j) EXPECT_LT(ds.value(i, j), 2);
    }
}

TEST(Generate, DeterministicPerSeed) {
    const GeneratorSpec spec = make_spec(Scenario::clique, 12, 4, 200, 0.1, 99);
    const Dataset a = generate(spec);
    const Dataset b = generate(spec);
    EXPECT_EQ(a.columns, b.columns);
    EXPECT_EQ(a.labels, b.labels);

    GeneratorSpec other = spec;
    other.seed = 100;
    const Dataset c = generate(other);
    EXPECT_NE(a.labels, c.labels);
}

TEST(Generate, ZeroRelevantMeansIndependentLabels) {
    const Dataset ds = generate(make_spec(Scenario::chaining, 5, 0, 20000, 0.0, 3));
    ASSERT_TRUE(ds.relevant_truth.has_value());
    EXPECT_TRUE(ds.relevant_truth->empty());
    std::vector<int> vars{0, 1, 2, 3, 4};
    const JointDistribution d = to_distribution(ds, vars);
    for (int x = 0; x < 5; ++x)
        EXPECT_LT(conditional_mutual_information(d, x, {}), kEmpiricalTolerance);
}

TEST(Generate, ChainingRecoversGradedDegrees) {
    const Dataset ds = generate(make_spec(Scenario::chaining, 6, 3, 60000, 0.0, 11));
    const JointDistribution d = to_distribution(ds, {0, 1, 2});
    for (int x = 0; x < 3; ++x) {
        const RelevanceReport rep = relevance_class(d, x, kEmpiricalTolerance);
        ASSERT_TRUE(rep.degree.has_value()) << "X" << x;
        EXPECT_EQ(*rep.degree, x) << "X" << x;
    }
    // noise columns stay independent of the label
    const JointDistribution with_noise = to_distribution(ds, {0, 1, 2, 3, 4});
    for (int x = 3; x < 5; ++x)
        EXPECT_EQ(relevance_class(with_noise, x, kEmpiricalTolerance).relevance,
                  RelevanceClass::irrelevant);
}

TEST(Generate, CliqueNeedsTheFullBlock) {
    const Dataset ds = generate(make_spec(Scenario::clique, 5, 3, 60000, 0.0, 13));
    const JointDistribution d = to_distribution(ds, {0, 1, 2});
    for (int x = 0; x < 3; ++x) {
        const RelevanceReport rep = relevance_class(d, x, kEmpiricalTolerance);
        ASSERT_TRUE(rep.degree.has_value());
        EXPECT_EQ(*rep.degree, 2);
    }
}

TEST(Generate, MarginalIsVisibleAlone) {
    const Dataset ds = generate(make_spec(Scenario::marginal, 5, 3, 60000, 0.0, 17));
    const JointDistribution d = to_distribution(ds, {0, 1, 2});
    for (int x = 0; x < 3; ++x) {
        const RelevanceReport rep = relevance_class(d, x, kEmpiricalTolerance);
        ASSERT_TRUE(rep.degree.has_value());
        EXPECT_EQ(*rep.degree, 0);
    }
}

TEST(Generate, MadelonLikeFrontLoadsTheSignal) {
    const Dataset ds =
        generate(make_spec(Scenario::madelon_like, 20, 10, 60000, 0.0, 19));
    const JointDistribution head = to_distribution(ds, {0, 1, 2});
    // The first variable dominates the depth profile, so it is marginally
    // visible; later ones carry progressively less.
    const double i0 = conditional_mutual_information(head, 0, {});
    const double i1 = conditional_mutual_information(head, 1, {});
    EXPECT_GT(i0, 0.02);
    EXPECT_GT(i0, i1);
    // noise columns are independent of the label
    const JointDistribution tail = to_distribution(ds, {15, 16, 17});
    for (int x = 0; x < 3; ++x)
        EXPECT_LT(conditional_mutual_information(tail, x, {}), kEmpiricalTolerance);
}

TEST(Generate, RejectsBadSpecs) {
    EXPECT_THROW(generate(make_spec(Scenario::chaining, 0, 0, 10, 0.0, 1)),
                 ArgumentError);
    EXPECT_THROW(generate(make_spec(Scenario::chaining, 5, 6, 10, 0.0, 1)),
                 ArgumentError);
    EXPECT_THROW(generate(make_spec(Scenario::chaining, 5, 2, 0, 0.0, 1)),
                 ArgumentError);
    EXPECT_THROW(generate(make_spec(Scenario::chaining, 5, 2, 10, 0.7, 1)),
                 ArgumentError);
    EXPECT_THROW(generate(make_spec(Scenario::chaining, 5, 2, 10, -0.1, 1)),
                 ArgumentError);
}

TEST(CoreDistribution, MatchesEmpiricalFrequencies) {
    const JointDistribution core = scenario_core_distribution(Scenario::chaining, 3, 0.1);
    const Dataset ds = generate(make_spec(Scenario::chaining, 3, 3, 200000, 0.1, 23));
    const JointDistribution emp = to_distribution(ds, {0, 1, 2});
    std::vector<int> values(3);
    int y = 0;
    for (std::size_t idx = 0; idx < core.table_size(); ++idx) {
        core.decode(idx, values, y);
        EXPECT_NEAR(emp.probability(values, y), core.probability(values, y), 0.01);
    }
}

TEST(CoreDistribution, Validation) {
    EXPECT_THROW(scenario_core_distribution(Scenario::madelon_like, 3, 0.0),
                 ArgumentError);
    EXPECT_THROW(scenario_core_distribution(Scenario::chaining, -1, 0.0),
                 ArgumentError);
    EXPECT_THROW(scenario_core_distribution(Scenario::chaining, 3, 0.9),
                 ArgumentError);
    EXPECT_THROW(scenario_core_distribution(Scenario::chaining, 21, 0.0),
                 CapacityError);
}

TEST(ToDistribution, ExactOnTinyData) {
    Dataset ds;
    ds.n = 4;
    ds.p = 2;
    ds.arities = {2, 2};
    ds.output_arity = 2;
    ds.columns = {0, 0, 1, 1, /* second column */ 0, 1, 0, 1};
    ds.labels = {0, 1, 1, 0};
    const JointDistribution d = to_distribution(ds, {0, 1});
    EXPECT_NEAR(d.probability({0, 0}, 0), 0.25, 1e-12);
    EXPECT_NEAR(d.probability({0, 1}, 1), 0.25, 1e-12);
    EXPECT_NEAR(d.probability({1, 0}, 1), 0.25, 1e-12);
    EXPECT_NEAR(d.probability({1, 1}, 0), 0.25, 1e-12);
    EXPECT_NEAR(conditional_mutual_information(d, 0, {1}), 1.0, 1e-12);

    EXPECT_THROW(to_distribution(ds, {1, 0}), ArgumentError);
    EXPECT_THROW(to_distribution(ds, {0, 5}), ArgumentError);
    EXPECT_THROW(to_distribution(ds, {0, 1}, 1), CapacityError);
}

TEST(CsvIo, RoundTripWithTruth) {
    const Dataset ds = generate(make_spec(Scenario::clique, 7, 3, 120, 0.2, 29));
    const std::string path = temp_path("srs_dataset_roundtrip.csv").string();
    save_csv(ds, path);
    ASSERT_TRUE(std::filesystem::exists(path + ".truth"));
    const Dataset back = load_csv(path);
    EXPECT_EQ(back.n, ds.n);
    EXPECT_EQ(back.p, ds.p);
    EXPECT_EQ(back.arities, ds.arities);
    EXPECT_EQ(back.output_arity, ds.output_arity);
    EXPECT_EQ(back.columns, ds.columns);
    EXPECT_EQ(back.labels, ds.labels);
    ASSERT_TRUE(back.relevant_truth.has_value());
    EXPECT_EQ(*back.relevant_truth, *ds.relevant_truth);
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".truth");
}

TEST(CsvIo, PlainHeadersInferArity) {
    const std::string path = temp_path("srs_dataset_plain.csv").string();
    {
        std::ofstream out(path);
        out << "a,b,label\n0,2,1\n1,0,0\n1,1,1\n";
    }
    const Dataset ds = load_csv(path);
    EXPECT_EQ(ds.n, 3);
    EXPECT_EQ(ds.p, 2);
    EXPECT_EQ(ds.arities, (std::vector<int>{2, 3}));
    EXPECT_EQ(ds.output_arity, 2);
    EXPECT_FALSE(ds.relevant_truth.has_value());
    EXPECT_EQ(ds.value(0, 1), 2);
    std::filesystem::remove(path);
}

TEST(CsvIo, Failures) {
    EXPECT_THROW(load_csv("/nonexistent/srs_nope.csv"), IoError);

    const std::string path = temp_path("srs_dataset_bad.csv").string();
    {
        std::ofstream out(path);
        out << "a,label\n0,zzz\n";
    }
    EXPECT_THROW(load_csv(path), ParseError);
    {
        std::ofstream out(path);
        out << "a,label\n0,1,1\n";
    }
    EXPECT_THROW(load_csv(path), ParseError);
    {
        std::ofstream out(path);
        out << "a:2,label\n0,1\n3,0\n";
    }
    EXPECT_THROW(load_csv(path), ParseError);
    std::filesystem::remove(path);
}

TEST(ScenarioNames, RoundTrip) {
    for (Scenario s : {Scenario::chaining, Scenario::clique, Scenario::marginal,
                       Scenario::madelon_like}) {
        const auto parsed = scenario_from_string(to_string(s));
        ASSERT_TRUE(parsed.has_value());
        EXPECT_EQ(*parsed, s);
    }
    EXPECT_FALSE(scenario_from_string("bogus").has_value());
}
