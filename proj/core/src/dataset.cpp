#include "srs/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "srs/errors.hpp"

namespace srs {

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::chaining: return "chaining";
        case Scenario::clique: return "clique";
        case Scenario::marginal: return "marginal";
        case Scenario::madelon_like: return "madelon_like";
    }
    return "?";
}

std::optional<Scenario> scenario_from_string(const std::string& name) {
    if (name == "chaining") return Scenario::chaining;
    if (name == "clique") return Scenario::clique;
    if (name == "marginal") return Scenario::marginal;
    if (name == "madelon_like" || name == "madelon") return Scenario::madelon_like;
    return std::nullopt;
}

namespace {

void check_spec(const GeneratorSpec& spec) {
    if (spec.p < 1) throw ArgumentError("p must be positive");
    if (spec.n < 1) throw ArgumentError("n must be positive");
    if (spec.r < 0 || spec.r > spec.p) throw ArgumentError("r must be in [0, p]");
    if (spec.noise < 0.0 || spec.noise > 0.5)
        throw ArgumentError("noise must be in [0, 0.5]");
}

// P(J = j) for the chaining prefix mixture, j in [1, r]; proportional to 2^-j
// so that every variable stays strongly relevant (no weight cancellation).
std::vector<double> chaining_weights(int r) {
    std::vector<double> w(static_cast<std::size_t>(r));
    double norm = 1.0 - std::ldexp(1.0, -r); // 1 - 2^-r
    for (int j = 1; j <= r; ++j)
        w[static_cast<std::size_t>(j - 1)] = std::ldexp(1.0, -j) / norm;
    return w;
}

double flip_channel(double p_one, double noise) {
    return p_one * (1.0 - noise) + (1.0 - p_one) * noise;
}

// madelon depth profile: a heavy head makes the entry variable easy to spot
// from a couple thousand rows, a short plateau keeps the second and third
// steps within finite-sample reach once their predecessors are retained, and
// a geometric tail grades the remaining depths.
constexpr double kMadelonHeadWeights[3] = {0.36, 0.16, 0.16};
constexpr double kMadelonTailDecay = 0.7;
// observed informative columns are redrawn uniformly with this probability,
// independent of the label flip, so the block is never perfectly clean
constexpr double kMadelonRedraw = 0.02;

std::vector<double> madelon_weights(int r) {
    std::vector<double> w(static_cast<std::size_t>(r), 0.0);
    double used = 0.0;
    for (int j = 0; j < r && j < 3; ++j) {
        w[static_cast<std::size_t>(j)] = kMadelonHeadWeights[j];
        used += kMadelonHeadWeights[j];
    }
    if (r <= 3) {
        for (double& x : w) x /= used;
        return w;
    }
    double cur = 1.0, tail = 0.0;
    for (int j = 3; j < r; ++j) {
        cur *= kMadelonTailDecay;
        w[static_cast<std::size_t>(j)] = cur;
        tail += cur;
    }
    for (int j = 3; j < r; ++j) w[static_cast<std::size_t>(j)] *= (1.0 - used) / tail;
    return w;
}

} // namespace

Dataset generate(const GeneratorSpec& spec) {
    check_spec(spec);
    Rng rng(spec.seed);

    Dataset ds;
    ds.n = spec.n;
    ds.p = spec.p;
    ds.arities.assign(static_cast<std::size_t>(spec.p), 2);
    ds.output_arity = 2;
    ds.columns.assign(static_cast<std::size_t>(spec.p) * static_cast<std::size_t>(spec.n), 0);
    ds.labels.assign(static_cast<std::size_t>(spec.n), 0);
    std::vector<int> truth(static_cast<std::size_t>(spec.r));
    for (int j = 0; j < spec.r; ++j) truth[static_cast<std::size_t>(j)] = j;
    ds.relevant_truth = std::move(truth);

    const int r = spec.r;
    const double noise = spec.noise;

    std::vector<double> weights;
    if (r > 0) {
        if (spec.scenario == Scenario::chaining) weights = chaining_weights(r);
        if (spec.scenario == Scenario::madelon_like) weights = madelon_weights(r);
    }

    for (int i = 0; i < spec.n; ++i) {
        int y = 0;
        if (r == 0) {
            y = static_cast<int>(rng.next_below(2));
        } else {
            int parity = 0, sum = 0;
            std::vector<int> prefix_parity(static_cast<std::size_t>(r));
            for (int j = 0; j < r; ++j) {
                int bit = static_cast<int>(rng.next_below(2));
                ds.value(i, j) = static_cast<std::uint8_t>(bit);
                parity ^= bit;
                sum += bit;
                prefix_parity[static_cast<std::size_t>(j)] = parity;
            }
            switch (spec.scenario) {
                case Scenario::chaining:
                case Scenario::madelon_like: {
                    double u = rng.next_double();
                    int branch = r - 1;
                    double acc = 0.0;
                    for (int j = 0; j < r; ++j) {
                        acc += weights[static_cast<std::size_t>(j)];
                        if (u < acc) { branch = j; break; }
                    }
                    y = prefix_parity[static_cast<std::size_t>(branch)];
                    if (spec.scenario == Scenario::madelon_like) {
                        for (int j = 0; j < r; ++j)
                            if (rng.next_double() < kMadelonRedraw)
                                ds.value(i, j) = static_cast<std::uint8_t>(rng.next_below(2));
                    }
                    break;
                }
                case Scenario::clique:
                    y = parity;
                    break;
                case Scenario::marginal:
                    if (2 * sum > r) y = 1;
                    else if (2 * sum < r) y = 0;
                    else y = static_cast<int>(rng.next_below(2));
                    break;
            }
            if (noise > 0.0 && rng.next_double() < noise) y ^= 1;
        }
        ds.labels[static_cast<std::size_t>(i)] = y;
        for (int j = r; j < spec.p; ++j)
            ds.value(i, j) = static_cast<std::uint8_t>(rng.next_below(2));
    }
    return ds;
}

JointDistribution scenario_core_distribution(Scenario scenario, int r, double noise) {
    if (r < 0) throw ArgumentError("r must be nonnegative");
    if (noise < 0.0 || noise > 0.5) throw ArgumentError("noise must be in [0, 0.5]");
    if (scenario == Scenario::madelon_like)
        throw ArgumentError("no closed population form for madelon_like");
    if (r > 20) throw CapacityError("population table limited to r <= 20");

    std::vector<std::string> names(static_cast<std::size_t>(r));
    for (int j = 0; j < r; ++j) names[static_cast<std::size_t>(j)] = "x" + std::to_string(j);
    std::vector<int> arities(static_cast<std::size_t>(r), 2);

    const std::size_t cells = std::size_t{1} << r;
    std::vector<double> probs(cells * 2, 0.0);
    const double cell_mass = 1.0 / static_cast<double>(cells);
    std::vector<double> weights = r > 0 ? chaining_weights(r) : std::vector<double>{};

    for (std::size_t a = 0; a < cells; ++a) {
        double p_one = 0.5;
        if (r > 0) {
            switch (scenario) {
                case Scenario::chaining: {
                    p_one = 0.0;
                    int parity = 0;
                    for (int j = 0; j < r; ++j) {
                        parity ^= static_cast<int>((a >> (r - 1 - j)) & 1U);
                        if (parity) p_one += weights[static_cast<std::size_t>(j)];
                    }
                    break;
                }
                case Scenario::clique: {
                    int parity = 0;
                    for (int j = 0; j < r; ++j) parity ^= static_cast<int>((a >> j) & 1U);
                    p_one = parity ? 1.0 : 0.0;
                    break;
                }
                case Scenario::marginal: {
                    int sum = 0;
                    for (int j = 0; j < r; ++j) sum += static_cast<int>((a >> j) & 1U);
                    p_one = 2 * sum > r ? 1.0 : (2 * sum < r ? 0.0 : 0.5);
                    break;
                }
                default:
                    break;
            }
        }
        p_one = flip_channel(p_one, noise);
        // bit r-1-j of `a` is the value of variable j (variable 0 is the
        // slowest stride, matching JointDistribution's layout)
        probs[a * 2 + 0] = cell_mass * (1.0 - p_one);
        probs[a * 2 + 1] = cell_mass * p_one;
    }
    return JointDistribution(std::move(names), std::move(arities), 2, std::move(probs));
}

JointDistribution to_distribution(const Dataset& ds, const std::vector<int>& variables,
                                  int limit) {
    if (static_cast<int>(variables.size()) > limit)
        throw CapacityError("empirical table limited to " + std::to_string(limit) +
                            " variables");
    for (std::size_t i = 0; i < variables.size(); ++i) {
        if (variables[i] < 0 || variables[i] >= ds.p)
            throw ArgumentError("feature index out of range");
        if (i > 0 && variables[i] <= variables[i - 1])
            throw ArgumentError("feature indices must be ascending");
    }
    if (ds.n < 1) throw ArgumentError("empty dataset");

    std::vector<std::string> names;
    std::vector<int> arities;
    std::size_t cells = static_cast<std::size_t>(ds.output_arity);
    for (int v : variables) {
        names.push_back("x" + std::to_string(v));
        arities.push_back(ds.arities[static_cast<std::size_t>(v)]);
        cells *= static_cast<std::size_t>(ds.arities[static_cast<std::size_t>(v)]);
    }
    std::vector<double> probs(cells, 0.0);
    const double w = 1.0 / static_cast<double>(ds.n);
    for (int i = 0; i < ds.n; ++i) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < variables.size(); ++k)
            idx = idx * static_cast<std::size_t>(arities[k]) +
                  static_cast<std::size_t>(ds.value(i, variables[k]));
        idx = idx * static_cast<std::size_t>(ds.output_arity) +
              static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(i)]);
        probs[idx] += w;
    }
    return JointDistribution(std::move(names), std::move(arities), ds.output_arity,
                             std::move(probs));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

int parse_int_cell(const std::string& cell, long line) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(cell, &pos);
    } catch (const std::exception&) {
        throw ParseError("cell '" + cell + "' is not an integer", line);
    }
    while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
    if (pos != cell.size())
        throw ParseError("cell '" + cell + "' is not an integer", line);
    return v;
}

} // namespace

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file: " + path, 1);
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2) throw ParseError("header needs a feature and a label column", 1);

    const int p = static_cast<int>(header.size()) - 1;
    std::vector<int> declared(static_cast<std::size_t>(p) + 1, 0);
    for (std::size_t c = 0; c < header.size(); ++c) {
        auto pos = header[c].rfind(':');
        if (pos != std::string::npos && pos + 1 < header[c].size()) {
            int a = parse_int_cell(header[c].substr(pos + 1), 1);
            if (a < 2 || a > 255) throw ParseError("arity out of range in header", 1);
            declared[c] = a;
        }
    }

    Dataset ds;
    ds.p = p;
    std::vector<std::vector<std::uint8_t>> rows;
    std::vector<int> labels;
    std::vector<int> maxv(static_cast<std::size_t>(p) + 1, 0);
    long lineNo = 1;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        const std::vector<std::string> cells = split_csv_line(line);
        if (static_cast<int>(cells.size()) != p + 1)
            throw ParseError("row has " + std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(p + 1), lineNo);
        std::vector<std::uint8_t> row(static_cast<std::size_t>(p));
        for (int j = 0; j <= p; ++j) {
            int v = parse_int_cell(cells[static_cast<std::size_t>(j)], lineNo);
            if (v < 0) throw ParseError("negative value", lineNo);
            const int declared_arity = declared[static_cast<std::size_t>(j)];
            if (declared_arity && v >= declared_arity)
                throw ParseError("value " + std::to_string(v) + " exceeds declared arity",
                                 lineNo);
            if (j < p) {
                if (v > 255) throw ParseError("feature value exceeds 255", lineNo);
                row[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(v);
            } else {
                labels.push_back(v);
            }
            maxv[static_cast<std::size_t>(j)] = std::max(maxv[static_cast<std::size_t>(j)], v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("no data rows in " + path, lineNo);

    ds.n = static_cast<int>(rows.size());
    ds.arities.resize(static_cast<std::size_t>(p));
    for (int j = 0; j < p; ++j) {
        const int declared_arity = declared[static_cast<std::size_t>(j)];
        ds.arities[static_cast<std::size_t>(j)] =
            declared_arity ? declared_arity : std::max(2, maxv[static_cast<std::size_t>(j)] + 1);
    }
    ds.output_arity = declared[static_cast<std::size_t>(p)]
                          ? declared[static_cast<std::size_t>(p)]
                          : std::max(2, maxv[static_cast<std::size_t>(p)] + 1);
    ds.columns.assign(static_cast<std::size_t>(p) * static_cast<std::size_t>(ds.n), 0);
    for (int i = 0; i < ds.n; ++i)
        for (int j = 0; j < p; ++j)
            ds.value(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    ds.labels = std::move(labels);

    std::ifstream truth_in(path + ".truth");
    if (truth_in) {
        std::vector<int> truth;
        long truthLine = 0;
        std::string t;
        while (std::getline(truth_in, t)) {
            ++truthLine;
            if (t.empty()) continue;
            int v = parse_int_cell(t, truthLine);
            if (v < 0 || v >= p) throw ParseError("truth index out of range", truthLine);
            truth.push_back(v);
        }
        std::sort(truth.begin(), truth.end());
        truth.erase(std::unique(truth.begin(), truth.end()), truth.end());
        ds.relevant_truth = std::move(truth);
    }
    return ds;
}

void save_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    for (int j = 0; j < ds.p; ++j)
        out << 'f' << j << ':' << ds.arities[static_cast<std::size_t>(j)] << ',';
    out << "label:" << ds.output_arity << '\n';
    for (int i = 0; i < ds.n; ++i) {
        for (int j = 0; j < ds.p; ++j)
            out << static_cast<int>(ds.value(i, j)) << ',';
        out << ds.labels[static_cast<std::size_t>(i)] << '\n';
    }
    if (!out) throw IoError("write failed: " + path);

    if (ds.relevant_truth.has_value()) {
        std::ofstream truth_out(path + ".truth", std::ios::binary);
        if (!truth_out) throw IoError("cannot open file for writing: " + path + ".truth");
        for (int v : *ds.relevant_truth) truth_out << v << '\n';
        if (!truth_out) throw IoError("write failed: " + path + ".truth");
    }
}

} // namespace srs
