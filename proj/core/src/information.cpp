#include "srs/information.hpp"

#include <algorithm>
#include <cmath>

#include "srs/errors.hpp"

namespace srs {

double entropy_bits(const std::vector<double>& weights) {
    double s = 0.0;
    for (double w : weights) s += w;
    if (s <= 0.0) return 0.0;
    double acc = 0.0;
    for (double w : weights) {
        if (w > 0.0) acc += w * std::log2(w);
    }
    return std::log2(s) - acc / s;
}

namespace {

// Per-cell variable values for every row of the dense table, so repeated
// subset scans avoid re-decoding.
struct TableDigits {
    std::vector<int> digits; // cell-major: p values then y
    int p = 0;

    explicit TableDigits(const JointDistribution& d) : p(d.variable_count()) {
        digits.resize(d.table_size() * static_cast<std::size_t>(p + 1));
        std::vector<int> values;
        int y = 0;
        for (std::size_t idx = 0; idx < d.table_size(); ++idx) {
            d.decode(idx, values, y);
            std::size_t base = idx * static_cast<std::size_t>(p + 1);
            for (int i = 0; i < p; ++i)
                digits[base + static_cast<std::size_t>(i)] = values[static_cast<std::size_t>(i)];
            digits[base + static_cast<std::size_t>(p)] = y;
        }
    }

    int value(std::size_t cell, int var) const {
        return digits[cell * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(var)];
    }
    int output(std::size_t cell) const {
        return digits[cell * static_cast<std::size_t>(p + 1) + static_cast<std::size_t>(p)];
    }
};

// I(X;Y|B) from precomputed digits. Accumulates the (B, X, Y) marginal and
// sums p * log2(p * p_b / (p_bx * p_by)) over its support.
double cmi_impl(const JointDistribution& d, const TableDigits& digits, int x,
                const std::vector<int>& conditioning) {
    const int ax = d.arity(x);
    const int ay = d.output_arity();

    std::size_t nb = 1;
    for (int v : conditioning) nb *= static_cast<std::size_t>(d.arity(v));
    const std::size_t nbx = nb * static_cast<std::size_t>(ax);
    const std::size_t nby = nb * static_cast<std::size_t>(ay);

    std::vector<double> p_bxy(nbx * static_cast<std::size_t>(ay), 0.0);
    const auto& table = d.probabilities();
    for (std::size_t cell = 0; cell < table.size(); ++cell) {
        const double w = table[cell];
        if (w == 0.0) continue;
        std::size_t b = 0;
        for (int v : conditioning) {
            b = b * static_cast<std::size_t>(d.arity(v)) +
                static_cast<std::size_t>(digits.value(cell, v));
        }
        const std::size_t xi = static_cast<std::size_t>(digits.value(cell, x));
        const std::size_t yi = static_cast<std::size_t>(digits.output(cell));
        p_bxy[(b * static_cast<std::size_t>(ax) + xi) * static_cast<std::size_t>(ay) + yi] += w;
    }

    std::vector<double> p_b(nb, 0.0), p_bx(nbx, 0.0), p_by(nby, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
        for (int xi = 0; xi < ax; ++xi) {
            const std::size_t bx = b * static_cast<std::size_t>(ax) + static_cast<std::size_t>(xi);
            for (int yi = 0; yi < ay; ++yi) {
                const double w = p_bxy[bx * static_cast<std::size_t>(ay) + static_cast<std::size_t>(yi)];
                if (w == 0.0) continue;
                p_b[b] += w;
                p_bx[bx] += w;
                p_by[b * static_cast<std::size_t>(ay) + static_cast<std::size_t>(yi)] += w;
            }
        }
    }

    double info = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        for (int xi = 0; xi < ax; ++xi) {
            const std::size_t bx = b * static_cast<std::size_t>(ax) + static_cast<std::size_t>(xi);
            for (int yi = 0; yi < ay; ++yi) {
                const double w = p_bxy[bx * static_cast<std::size_t>(ay) + static_cast<std::size_t>(yi)];
                if (w == 0.0) continue;
                const double ratio = (w * p_b[b]) /
                    (p_bx[bx] * p_by[b * static_cast<std::size_t>(ay) + static_cast<std::size_t>(yi)]);
                info += w * std::log2(ratio);
            }
        }
    }
    return info > 0.0 ? info : 0.0;
}

void check_cmi_args(const JointDistribution& d, int x, const std::vector<int>& conditioning) {
    if (x < 0 || x >= d.variable_count())
        throw ArgumentError("variable index out of range");
    for (std::size_t i = 0; i < conditioning.size(); ++i) {
        const int v = conditioning[i];
        if (v < 0 || v >= d.variable_count())
            throw ArgumentError("conditioning variable out of range");
        if (v == x) throw ArgumentError("conditioning set must exclude the variable itself");
        if (i > 0 && v <= conditioning[i - 1])
            throw ArgumentError("conditioning set must be ascending");
    }
}

void check_limit(const JointDistribution& d, int limit) {
    if (d.variable_count() > limit)
        throw CapacityError("exhaustive search supports at most " + std::to_string(limit) +
                            " variables, got " + std::to_string(d.variable_count()));
}

// Visits subsets of `others` of size k in lexicographic order. Returns false
// when the visitor asked to stop.
template <typename Visit>
bool for_each_combination(const std::vector<int>& others, int k, Visit visit) {
    const int n = static_cast<int>(others.size());
    if (k > n) return true;
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
    std::vector<int> subset(static_cast<std::size_t>(k));
    while (true) {
        for (int i = 0; i < k; ++i)
            subset[static_cast<std::size_t>(i)] = others[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
        if (!visit(subset)) return false;
        int i = k - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
}

std::vector<int> other_variables(const JointDistribution& d, int x) {
    std::vector<int> others;
    others.reserve(static_cast<std::size_t>(d.variable_count() - 1));
    for (int v = 0; v < d.variable_count(); ++v)
        if (v != x) others.push_back(v);
    return others;
}

} // namespace

double conditional_mutual_information(const JointDistribution& d, int x,
                                      const std::vector<int>& conditioning) {
    check_cmi_args(d, x, conditioning);
    TableDigits digits(d);
    return cmi_impl(d, digits, x, conditioning);
}

const char* to_string(RelevanceClass c) {
    switch (c) {
        case RelevanceClass::irrelevant: return "irrelevant";
        case RelevanceClass::weakly_relevant: return "weakly_relevant";
        case RelevanceClass::strongly_relevant: return "strongly_relevant";
    }
    return "?";
}

RelevanceReport relevance_class(const JointDistribution& d, int x, double tolerance,
                                int limit) {
    check_cmi_args(d, x, {});
    check_limit(d, limit);
    TableDigits digits(d);
    const std::vector<int> others = other_variables(d, x);

    RelevanceReport report;
    report.variable = x;

    const bool strong = cmi_impl(d, digits, x, others) > tolerance;

    for (int k = 0; k <= static_cast<int>(others.size()); ++k) {
        bool found = !for_each_combination(others, k, [&](const std::vector<int>& b) {
            if (cmi_impl(d, digits, x, b) > tolerance) {
                report.degree = k;
                report.witness_conditioning = b;
                return false;
            }
            return true;
        });
        if (found) break;
    }

    if (!report.degree.has_value())
        report.relevance = RelevanceClass::irrelevant;
    else if (strong)
        report.relevance = RelevanceClass::strongly_relevant;
    else
        report.relevance = RelevanceClass::weakly_relevant;
    return report;
}

MarkovBoundaryResult markov_boundary(const JointDistribution& d, double tolerance,
                                     int limit) {
    check_limit(d, limit);
    TableDigits digits(d);
    MarkovBoundaryResult result;
    result.unique = d.strictly_positive();
    for (int x = 0; x < d.variable_count(); ++x) {
        if (cmi_impl(d, digits, x, other_variables(d, x)) > tolerance)
            result.members.push_back(x);
    }
    return result;
}

double asymptotic_importance(const JointDistribution& d, int x, int q,
                             double tolerance, int limit) {
    check_cmi_args(d, x, {});
    check_limit(d, limit);
    const int p = d.variable_count();
    if (q < 1 || q > p) throw ArgumentError("q must be in [1, p]");
    (void)tolerance;

    TableDigits digits(d);
    const std::vector<int> others = other_variables(d, x);

    // Coefficient 1/(C(p,k) (p-k)): the probability that a branch of a
    // totally randomized tree conditions on one given k-subset and then
    // splits x. Accumulated per subset size.
    double total = 0.0;
    double log_choose = 0.0; // log C(p, k), updated incrementally
    for (int k = 0; k < q; ++k) {
        if (k > 0)
            log_choose += std::log(static_cast<double>(p - k + 1)) -
                          std::log(static_cast<double>(k));
        double sum_k = 0.0;
        for_each_combination(others, k, [&](const std::vector<int>& b) {
            sum_k += cmi_impl(d, digits, x, b);
            return true;
        });
        total += sum_k * std::exp(-log_choose) / static_cast<double>(p - k);
    }
    return total;
}

std::map<int, int> degree_histogram(const JointDistribution& d, double tolerance,
                                    int limit) {
    check_limit(d, limit);
    std::map<int, int> histogram;
    for (int x = 0; x < d.variable_count(); ++x) {
        RelevanceReport r = relevance_class(d, x, tolerance, limit);
        if (r.degree.has_value()) histogram[*r.degree] += 1;
    }
    return histogram;
}

} // namespace srs
