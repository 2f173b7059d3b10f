#include "srs/random.hpp"

#include <set>
#include <utility>

#include "srs/errors.hpp"

namespace srs {

std::vector<int> sample_without_replacement(int n, int k, Rng& rng) {
    if (k < 0 || k > n) throw ArgumentError("sample size must be in [0, n]");
    std::set<int> chosen;
    for (int j = n - k; j < n; ++j) {
        const int t = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(j) + 1));
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return std::vector<int>(chosen.begin(), chosen.end());
}

void partial_shuffle(std::vector<int>& pool, int k, Rng& rng) {
    const int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) throw ArgumentError("shuffle prefix must be in [0, size]");
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(n - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
    }
}

std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    partial_shuffle(perm, n, rng);
    return perm;
}

} // namespace srs
