#include "srs/joint_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "srs/csv.hpp"
#include "srs/errors.hpp"

namespace srs {

JointDistribution::JointDistribution(std::vector<std::string> variable_names,
                                     std::vector<int> arities,
                                     int output_arity,
                                     std::vector<double> probabilities)
    : names_(std::move(variable_names)),
      arities_(std::move(arities)),
      output_arity_(output_arity),
      table_(std::move(probabilities)) {
    if (names_.size() != arities_.size())
        throw ArgumentError("variable name and arity counts differ");
    if (output_arity_ < 2)
        throw ArgumentError("output arity must be at least 2");
    std::size_t expect = static_cast<std::size_t>(output_arity_);
    for (int a : arities_) {
        if (a < 2) throw ArgumentError("variable arity must be at least 2");
        expect *= static_cast<std::size_t>(a);
    }
    if (table_.size() != expect)
        throw ArgumentError("probability table has " + std::to_string(table_.size()) +
                            " entries, expected " + std::to_string(expect));

    double sum = 0.0;
    for (double& v : table_) {
        if (v < 0.0)
            throw ArgumentError("negative probability in table");
        if (v < kZeroFloor) v = 0.0;
        sum += v;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance)
        throw ArgumentError("probabilities sum to " + format_double(sum) + ", not 1");

    strides_.assign(arities_.size(), 1);
    std::size_t s = static_cast<std::size_t>(output_arity_);
    for (int i = variable_count() - 1; i >= 0; --i) {
        strides_[static_cast<std::size_t>(i)] = s;
        s *= static_cast<std::size_t>(arities_[static_cast<std::size_t>(i)]);
    }
}

std::size_t JointDistribution::index_of(const std::vector<int>& values, int y) const {
    std::size_t idx = static_cast<std::size_t>(y);
    for (std::size_t i = 0; i < strides_.size(); ++i)
        idx += strides_[i] * static_cast<std::size_t>(values[i]);
    return idx;
}

void JointDistribution::decode(std::size_t index, std::vector<int>& values_out,
                               int& y_out) const {
    y_out = static_cast<int>(index % static_cast<std::size_t>(output_arity_));
    index /= static_cast<std::size_t>(output_arity_);
    values_out.resize(arities_.size());
    for (int i = variable_count() - 1; i >= 0; --i) {
        const auto a = static_cast<std::size_t>(arities_[static_cast<std::size_t>(i)]);
        values_out[static_cast<std::size_t>(i)] = static_cast<int>(index % a);
        index /= a;
    }
}

JointDistribution JointDistribution::marginal(const std::vector<int>& keep_vars) const {
    for (std::size_t i = 0; i < keep_vars.size(); ++i) {
        if (keep_vars[i] < 0 || keep_vars[i] >= variable_count())
            throw ArgumentError("marginal: variable index out of range");
        if (i > 0 && keep_vars[i] <= keep_vars[i - 1])
            throw ArgumentError("marginal: variable indices must be ascending");
    }
    std::vector<std::string> names;
    std::vector<int> arities;
    std::size_t size = static_cast<std::size_t>(output_arity_);
    for (int v : keep_vars) {
        names.push_back(names_[static_cast<std::size_t>(v)]);
        arities.push_back(arities_[static_cast<std::size_t>(v)]);
        size *= static_cast<std::size_t>(arities_[static_cast<std::size_t>(v)]);
    }

    // Stride layout of the result, then accumulate source cells into it.
    std::vector<std::size_t> out_strides(keep_vars.size(), 1);
    std::size_t s = static_cast<std::size_t>(output_arity_);
    for (int i = static_cast<int>(keep_vars.size()) - 1; i >= 0; --i) {
        out_strides[static_cast<std::size_t>(i)] = s;
        s *= static_cast<std::size_t>(arities[static_cast<std::size_t>(i)]);
    }
    std::vector<double> probs(size, 0.0);
    std::vector<int> values;
    int y = 0;
    for (std::size_t idx = 0; idx < table_.size(); ++idx) {
        if (table_[idx] == 0.0) continue;
        decode(idx, values, y);
        std::size_t out = static_cast<std::size_t>(y);
        for (std::size_t i = 0; i < keep_vars.size(); ++i)
            out += out_strides[i] *
                   static_cast<std::size_t>(values[static_cast<std::size_t>(keep_vars[i])]);
        probs[out] += table_[idx];
    }
    return JointDistribution(std::move(names), std::move(arities), output_arity_,
                             std::move(probs));
}

bool JointDistribution::strictly_positive() const {
    for (double v : table_)
        if (v <= 0.0) return false;
    return true;
}

namespace {

// name:arity token, e.g. "X1:2".
std::pair<std::string, int> parse_header_token(const std::string& token, long line) {
    auto pos = token.rfind(':');
    if (pos == std::string::npos || pos == 0 || pos + 1 >= token.size())
        throw ParseError("header token '" + token + "' is not name:arity", line);
    int arity = 0;
    try {
        arity = std::stoi(token.substr(pos + 1));
    } catch (const std::exception&) {
        throw ParseError("bad arity in header token '" + token + "'", line);
    }
    return {token.substr(0, pos), arity};
}

} // namespace

JointDistribution load_distribution(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open distribution file: " + path);

    std::string lineText;
    long lineNo = 0;

    // Header.
    std::vector<std::string> names;
    std::vector<int> arities;
    int output_arity = 0;
    while (std::getline(in, lineText)) {
        ++lineNo;
        std::istringstream ss(lineText);
        std::string tok;
        std::vector<std::string> tokens;
        while (ss >> tok) tokens.push_back(tok);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        if (tokens.size() < 2)
            throw ParseError("header needs at least one variable and the output", lineNo);
        for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
            auto [name, arity] = parse_header_token(tokens[i], lineNo);
            names.push_back(name);
            arities.push_back(arity);
        }
        auto [yname, yarity] = parse_header_token(tokens.back(), lineNo);
        (void)yname;
        output_arity = yarity;
        break;
    }
    if (output_arity == 0) throw ParseError("missing header line", lineNo);

    const int p = static_cast<int>(arities.size());
    std::size_t size = static_cast<std::size_t>(output_arity);
    for (int a : arities) {
        if (a < 2) throw ParseError("arity must be at least 2", lineNo);
        size *= static_cast<std::size_t>(a);
    }

    std::vector<double> probs(size, 0.0);
    std::vector<char> seen(size, 0);
    std::vector<int> values(static_cast<std::size_t>(p));

    // Strides mirror the JointDistribution layout: y fastest.
    std::vector<std::size_t> strides(static_cast<std::size_t>(p), 1);
    std::size_t s = static_cast<std::size_t>(output_arity);
    for (int i = p - 1; i >= 0; --i) {
        strides[static_cast<std::size_t>(i)] = s;
        s *= static_cast<std::size_t>(arities[static_cast<std::size_t>(i)]);
    }

    while (std::getline(in, lineText)) {
        ++lineNo;
        std::istringstream ss(lineText);
        std::string first;
        if (!(ss >> first)) continue;
        if (first[0] == '#') continue;
        ss.clear();
        ss.seekg(0);

        std::size_t idx = 0;
        for (int i = 0; i < p; ++i) {
            long v;
            if (!(ss >> v)) throw ParseError("expected value for variable " + names[static_cast<std::size_t>(i)], lineNo);
            if (v < 0 || v >= arities[static_cast<std::size_t>(i)])
                throw ParseError("value out of range for " + names[static_cast<std::size_t>(i)], lineNo);
            idx += strides[static_cast<std::size_t>(i)] * static_cast<std::size_t>(v);
        }
        long y;
        if (!(ss >> y)) throw ParseError("expected output value", lineNo);
        if (y < 0 || y >= output_arity)
            throw ParseError("output value out of range", lineNo);
        idx += static_cast<std::size_t>(y);
        double prob;
        if (!(ss >> prob)) throw ParseError("expected probability", lineNo);
        std::string extra;
        if (ss >> extra) throw ParseError("trailing content '" + extra + "'", lineNo);
        if (seen[idx]) throw ParseError("duplicate assignment", lineNo);
        seen[idx] = 1;
        probs[idx] = prob;
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (!seen[i]) throw ParseError("missing assignment (table incomplete): " +
                                       std::to_string(size - static_cast<std::size_t>(
                                           std::count(seen.begin(), seen.end(), 1))) +
                                       " rows absent");

    return JointDistribution(std::move(names), std::move(arities), output_arity,
                             std::move(probs));
}

void save_distribution(const JointDistribution& d, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    for (int i = 0; i < d.variable_count(); ++i)
        out << d.variable_names()[static_cast<std::size_t>(i)] << ':' << d.arity(i) << ' ';
    out << "y:" << d.output_arity() << '\n';
    std::vector<int> values;
    int y = 0;
    for (std::size_t idx = 0; idx < d.table_size(); ++idx) {
        d.decode(idx, values, y);
        for (int v : values) out << v << ' ';
        out << y << ' ' << format_double(d.probabilities()[idx]) << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

} // namespace srs
