#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srs/joint_distribution.hpp"

namespace srs {

// Dependence below this (in bits) counts as independence.
inline constexpr double kIndependenceTolerance = 1e-10;

// Exhaustive relevance search is limited to this many input variables
// (2^12 = 4096 conditioning subsets) unless the caller raises the limit.
inline constexpr int kDefaultExhaustiveLimit = 12;

// Shannon entropy, base 2, of a (not necessarily normalized) weight vector.
// 0*log 0 contributes nothing.
double entropy_bits(const std::vector<double>& weights);

// I(X ; Y | B), in bits, computed exactly from the joint table. `conditioning`
// holds ascending variable indices, excluding `x`. Never negative; exactly 0
// when the conditional factorization holds exactly.
double conditional_mutual_information(const JointDistribution& d, int x,
                                      const std::vector<int>& conditioning);

enum class RelevanceClass {
    irrelevant,
    weakly_relevant,
    strongly_relevant,
};

const char* to_string(RelevanceClass c);

struct RelevanceReport {
    int variable = 0;
    RelevanceClass relevance = RelevanceClass::irrelevant;
    // Size of the smallest conditioning set that exposes dependence; absent
    // for irrelevant variables.
    std::optional<int> degree;
    // One minimal witness (smallest cardinality, then lexicographic).
    std::vector<int> witness_conditioning;
};

// Exhaustive classification of one variable. Enumerates all subsets of
// V \ {x} in order of cardinality, then lexicographically, so the witness is
// deterministic. Throws CapacityError when variable_count() exceeds `limit`.
RelevanceReport relevance_class(const JointDistribution& d, int x,
                                double tolerance = kIndependenceTolerance,
                                int limit = kDefaultExhaustiveLimit);

struct MarkovBoundaryResult {
    std::vector<int> members; // the strongly relevant variables, ascending
    // Uniqueness of the boundary is only guaranteed for strictly positive
    // distributions; false means the result may be one of several minimal sets.
    bool unique = true;
};

MarkovBoundaryResult markov_boundary(const JointDistribution& d,
                                     double tolerance = kIndependenceTolerance,
                                     int limit = kDefaultExhaustiveLimit);

// Infinite-ensemble importance of x for totally randomized trees grown on
// random q-subspaces:
//
//   sum_{k=0}^{q-1} 1/(C(p,k) (p-k)) sum_{|B|=k, B subseteq V\{x}} I(X;Y|B)
//
// Strictly positive iff the degree of x is below q.
double asymptotic_importance(const JointDistribution& d, int x, int q,
                             double tolerance = kIndependenceTolerance,
                             int limit = kDefaultExhaustiveLimit);

// degree -> number of relevant variables with that degree.
std::map<int, int> degree_histogram(const JointDistribution& d,
                                    double tolerance = kIndependenceTolerance,
                                    int limit = kDefaultExhaustiveLimit);

} // namespace srs
