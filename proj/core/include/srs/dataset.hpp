#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "srs/joint_distribution.hpp"
#include "srs/random.hpp"

namespace srs {

// Discrete supervised dataset. Feature values are stored column-major so the
// tree builder can scan one candidate feature over a node's rows contiguously.
struct Dataset {
    int n = 0; // samples
    int p = 0; // features
    std::vector<int> arities;
    int output_arity = 2;
    std::vector<std::uint8_t> columns; // columns[j * n + i] = value of feature j, sample i
    std::vector<int> labels;
    std::optional<std::vector<int>> relevant_truth; // ascending feature indices

    std::uint8_t value(int i, int j) const {
        return columns[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(i)];
    }
    std::uint8_t& value(int i, int j) {
        return columns[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(i)];
    }
};

enum class Scenario {
    chaining,
    clique,
    marginal,
    madelon_like,
};

const char* to_string(Scenario s);
std::optional<Scenario> scenario_from_string(const std::string& name);

// All generated features are binary, labels binary, relevant features occupy
// indices 0..r-1. `noise` is a label/bit corruption probability in [0, 0.5].
struct GeneratorSpec {
    Scenario scenario = Scenario::chaining;
    int p = 0;
    int r = 0;
    int n = 0;
    double noise = 0.0;
    std::uint64_t seed = 0;
};

// Sampled dataset realizing the requested scenario:
//  chaining     Y = parity of a random prefix X_1..X_J, P(J = j) proportional
//               to 2^-j; X_i then has degree i-1 with the preceding variables
//               as its only minimal conditioning.
//  clique       Y = parity(X_1..X_r); every X_i has degree r-1.
//  marginal     Y = majority(X_1..X_r) (coin on ties); every X_i is both
//               marginally and strongly relevant.
//  madelon_like prefix parity again but with a front-loaded depth profile
//               (heavy head, slow tail) and a light uniform redraw applied to
//               the observed informative columns; a finite-sample benchmark
//               rather than an exact-oracle target.
// r = 0 produces independent uniform labels for any scenario.
Dataset generate(const GeneratorSpec& spec);

// Exact population table for the relevant block (variables X_1..X_r plus Y)
// of the chaining / clique / marginal constructions above.
JointDistribution scenario_core_distribution(Scenario scenario, int r, double noise);

// Empirical joint frequency table over `variables` (ascending feature
// indices) and the label.
JointDistribution to_distribution(const Dataset& ds, const std::vector<int>& variables,
                                  int limit = 12);

// CSV round trip. Header cells are name:arity tokens, last column the label;
// plain names are accepted on load (arity inferred as max value + 1). When a
// "<path>.truth" sidecar exists (one feature index per line) it populates
// relevant_truth; save_csv writes the sidecar iff truth is present.
Dataset load_csv(const std::string& path);
void save_csv(const Dataset& ds, const std::string& path);

} // namespace srs
