#include "srs/convergence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "srs/csv.hpp"
#include "srs/errors.hpp"

namespace srs {

std::string to_string(ChainAdvance a) {
    return a == ChainAdvance::multi_step ? "multi" : "single";
}

ChainAdvance chain_advance_from_string(const std::string& s) {
    if (s == "multi") return ChainAdvance::multi_step;
    if (s == "single") return ChainAdvance::single_step;
    throw ArgumentError("unknown advance convention: " + s);
}

namespace {

// log C(n, k); impossible selections yield -inf so exp() gives 0.
double log_choose(double n, double k) {
    if (k < 0.0 || n < 0.0 || k > n)
        return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

void validate_spec(const ScenarioSpec& spec, bool chain_alpha) {
    if (spec.scenario == Scenario::madelon_like)
        throw ArgumentError("no analytic model for the madelon-like scenario");
    if (spec.p < 1) throw ArgumentError("p must be positive");
    if (spec.q < 1 || spec.q > spec.p) throw ArgumentError("q must be in [1, p]");
    if (spec.r < 0 || spec.r > spec.q)
        throw ArgumentError("r must be in [0, q]");
    if (chain_alpha) {
        if (spec.alpha != 0.0 && spec.alpha != 1.0)
            throw ArgumentError("analytic chains support alpha 0 or 1 only");
    } else if (spec.alpha < 0.0 || spec.alpha > 1.0) {
        throw ArgumentError("alpha must be in [0, 1]");
    }
}

double harmonic(int r) {
    double h = 0.0;
    for (int k = 1; k <= r; ++k) h += 1.0 / k;
    return h;
}

} // namespace

MarkovChainModel build_chain(const ScenarioSpec& spec) {
    validate_spec(spec, true);
    const int p = spec.p, q = spec.q, r = spec.r;
    const bool keep = spec.alpha == 1.0;

    MarkovChainModel model;
    model.r = r;
    model.transition.assign(static_cast<std::size_t>(r) + 1,
                            std::vector<double>(static_cast<std::size_t>(r) + 1, 0.0));
    auto& tr = model.transition;
    tr[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)] = 1.0;

    if (spec.scenario == Scenario::chaining) {
        // From state i the retained prefix (alpha=1) or the full prefix
        // (alpha=0) plus the next chain variables must appear in the draw.
        for (int i = 0; i < r; ++i) {
            const double denom = keep ? log_choose(p - i, q - i) : log_choose(p, q);
            auto reach = [&](int m) { // P(X_1..X_m all offered | state i)
                return std::exp(log_choose(p - m, q - m) - denom);
            };
            auto& row = tr[static_cast<std::size_t>(i)];
            if (spec.advance == ChainAdvance::multi_step) {
                for (int j = i + 1; j < r; ++j)
                    row[static_cast<std::size_t>(j)] =
                        std::max(0.0, reach(j) - reach(j + 1));
                row[static_cast<std::size_t>(r)] = reach(r);
            } else {
                row[static_cast<std::size_t>(i) + 1] = reach(i + 1);
            }
            double leave = 0.0;
            for (int j = i + 1; j <= r; ++j) leave += row[static_cast<std::size_t>(j)];
            row[static_cast<std::size_t>(i)] = std::max(0.0, 1.0 - leave);
        }
    } else if (spec.scenario == Scenario::clique) {
        // All r members must be offered at once; each success reveals one
        // uniformly chosen member, a coupon-collector step.
        for (int i = 0; i < r; ++i) {
            const double denom = keep ? log_choose(p - i, q - i) : log_choose(p, q);
            const double success = std::exp(log_choose(p - r, q - r) - denom);
            const double advance = success * (r - i) / r;
            tr[static_cast<std::size_t>(i)][static_cast<std::size_t>(i) + 1] = advance;
            tr[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0 - advance;
        }
    } else {
        // Marginal: every offered missing variable is discovered, so the
        // advance count is hypergeometric.
        for (int i = 0; i < r; ++i) {
            const int m = r - i;
            const int n_pool = p - (keep ? i : 0);
            const int k_draw = q - (keep ? i : 0);
            auto& row = tr[static_cast<std::size_t>(i)];
            const double denom = log_choose(n_pool, k_draw);
            double leave = 0.0;
            for (int k = 1; k <= m; ++k) {
                const double pk = std::exp(log_choose(m, k) +
                                           log_choose(n_pool - m, k_draw - k) - denom);
                row[static_cast<std::size_t>(i + k)] = pk;
                leave += pk;
            }
            row[static_cast<std::size_t>(i)] = std::max(0.0, 1.0 - leave);
        }
    }
    return model;
}

double expected_absorption_time(const MarkovChainModel& model) {
    const int r = model.r;
    if (static_cast<int>(model.transition.size()) != r + 1)
        throw ArgumentError("transition matrix size does not match state count");
    std::vector<double> expect(static_cast<std::size_t>(r) + 1, 0.0);
    for (int i = r - 1; i >= 0; --i) {
        const auto& row = model.transition[static_cast<std::size_t>(i)];
        if (static_cast<int>(row.size()) != r + 1)
            throw ArgumentError("transition matrix is not square");
        double leave = 0.0;
        double carried = 0.0;
        for (int j = i + 1; j <= r; ++j) {
            leave += row[static_cast<std::size_t>(j)];
            carried += row[static_cast<std::size_t>(j)] * expect[static_cast<std::size_t>(j)];
        }
        if (leave <= 0.0)
            throw ArgumentError("chain cannot leave state " + std::to_string(i));
        expect[static_cast<std::size_t>(i)] = (1.0 + carried) / leave;
    }
    return expect[0];
}

std::vector<double> expected_found_curve(const MarkovChainModel& model, int T) {
    if (T < 0) throw ArgumentError("horizon must be nonnegative");
    const int r = model.r;
    std::vector<double> dist(static_cast<std::size_t>(r) + 1, 0.0);
    dist[0] = 1.0;
    std::vector<double> curve(static_cast<std::size_t>(T) + 1, 0.0);
    std::vector<double> next(dist.size());
    for (int t = 1; t <= T; ++t) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int i = 0; i <= r; ++i) {
            const double mass = dist[static_cast<std::size_t>(i)];
            if (mass == 0.0) continue;
            const auto& row = model.transition[static_cast<std::size_t>(i)];
            for (int j = i; j <= r; ++j)
                next[static_cast<std::size_t>(j)] += mass * row[static_cast<std::size_t>(j)];
        }
        dist.swap(next);
        double mean = 0.0;
        for (int j = 1; j <= r; ++j) mean += j * dist[static_cast<std::size_t>(j)];
        curve[static_cast<std::size_t>(t)] = mean;
    }
    return curve;
}

double closed_form_estimate(const ScenarioSpec& spec) {
    validate_spec(spec, true);
    if (spec.r == 0) return 0.0;
    const double p = spec.p, q = spec.q, r = spec.r;
    if (spec.scenario == Scenario::chaining)
        return spec.alpha == 0.0 ? std::pow(p / q, r) : r * p / q;
    if (spec.scenario == Scenario::clique) {
        const double base = r * harmonic(spec.r) *
                            std::exp(log_choose(p, q) - log_choose(p - r, q - r));
        return spec.alpha == 0.0 ? base : base / r;
    }
    throw ArgumentError("no closed-form estimate for the marginal scenario");
}

namespace {

struct SimWorkspace {
    std::vector<char> found;
    std::vector<char> retained;
    std::vector<char> present;
    std::vector<int> found_list;
};

std::int64_t simulate_one(const ScenarioSpec& spec, Rng& rng, SimWorkspace& ws,
                          std::vector<double>* curve) {
    const int p = spec.p, q = spec.q, r = spec.r;
    if (r == 0) return 0;
    const int r_cap = static_cast<int>(std::floor(spec.alpha * q + 1e-9));

    ws.found.assign(static_cast<std::size_t>(r), 0);
    ws.retained.assign(static_cast<std::size_t>(r), 0);
    ws.present.assign(static_cast<std::size_t>(r), 0);
    ws.found_list.clear();
    int i = 0;
    std::int64_t t = 0;
    while (i < r) {
        ++t;
        const int r_size = std::min(r_cap, i);
        if (r_size == i) {
            ws.retained = ws.found;
        } else {
            std::fill(ws.retained.begin(), ws.retained.end(), 0);
            if (r_size > 0) {
                std::vector<int> positions = sample_without_replacement(i, r_size, rng);
                for (int pos : positions)
                    ws.retained[static_cast<std::size_t>(
                        ws.found_list[static_cast<std::size_t>(pos)])] = 1;
            }
        }

        // Sequential hypergeometric scan: the non-retained relevant variables
        // are exchangeable with the rest of the pool.
        const int pool_n = p - r_size;
        const int pool_k = q - r_size;
        int scanned = 0, hits = 0;
        for (int k = 0; k < r; ++k) {
            if (ws.retained[static_cast<std::size_t>(k)]) {
                ws.present[static_cast<std::size_t>(k)] = 1;
                continue;
            }
            const bool in = rng.next_below(static_cast<std::uint64_t>(pool_n - scanned)) <
                            static_cast<std::uint64_t>(pool_k - hits);
            ws.present[static_cast<std::size_t>(k)] = in ? 1 : 0;
            if (in) ++hits;
            ++scanned;
        }

        if (spec.scenario == Scenario::chaining) {
            int m = 0;
            while (m < r && ws.present[static_cast<std::size_t>(m)]) ++m;
            int target = i;
            if (spec.advance == ChainAdvance::multi_step)
                target = std::max(i, m);
            else if (m >= i + 1)
                target = i + 1;
            for (int j = i; j < target; ++j) {
                ws.found[static_cast<std::size_t>(j)] = 1;
                ws.found_list.push_back(j);
            }
            i = target;
        } else if (spec.scenario == Scenario::clique) {
            bool all = true;
            for (int k = 0; k < r && all; ++k)
                all = ws.present[static_cast<std::size_t>(k)] != 0;
            if (all) {
                const int pick =
                    static_cast<int>(rng.next_below(static_cast<std::uint64_t>(r)));
                if (!ws.found[static_cast<std::size_t>(pick)]) {
                    ws.found[static_cast<std::size_t>(pick)] = 1;
                    ws.found_list.push_back(pick);
                    ++i;
                }
            }
        } else {
            for (int k = 0; k < r; ++k) {
                if (ws.present[static_cast<std::size_t>(k)] &&
                    !ws.found[static_cast<std::size_t>(k)]) {
                    ws.found[static_cast<std::size_t>(k)] = 1;
                    ws.found_list.push_back(k);
                    ++i;
                }
            }
        }

        if (curve) {
            if (static_cast<std::int64_t>(curve->size()) <= t)
                curve->resize(static_cast<std::size_t>(t) + 1, 0.0);
            (*curve)[static_cast<std::size_t>(t)] += i;
        }
    }
    return t;
}

} // namespace

SimulationResult simulate_process(const ScenarioSpec& spec, int replicates, Rng& rng,
                                  int horizon, int jobs) {
    validate_spec(spec, false);
    if (replicates < 1) throw ArgumentError("need at least one replicate");
    if (horizon < 0) throw ArgumentError("horizon must be nonnegative");
    if (jobs < 1) jobs = 1;

    // Per-replicate seeds come from one base draw, so the outcome is a pure
    // function of the caller's rng state no matter how many threads run.
    const std::uint64_t base = rng.next_u64();

    constexpr int kChunk = 256;
    const int chunks = (replicates + kChunk - 1) / kChunk;
    SimulationResult result;
    result.times.assign(static_cast<std::size_t>(replicates), 0);
    std::vector<std::vector<double>> chunk_curves(static_cast<std::size_t>(chunks));

    std::atomic<int> next_chunk{0};
    auto worker = [&]() {
        SimWorkspace ws;
        while (true) {
            const int c = next_chunk.fetch_add(1);
            if (c >= chunks) break;
            auto& curve = chunk_curves[static_cast<std::size_t>(c)];
            const int lo = c * kChunk;
            const int hi = std::min(replicates, lo + kChunk);
            for (int rep = lo; rep < hi; ++rep) {
                Rng rep_rng(splitmix64(base + static_cast<std::uint64_t>(rep)));
                result.times[static_cast<std::size_t>(rep)] =
                    simulate_one(spec, rep_rng, ws, &curve);
            }
        }
    };

    const int thread_count = std::min(jobs, chunks);
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int j = 0; j < thread_count; ++j) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }

    double sum = 0.0;
    std::int64_t max_time = 0;
    for (std::int64_t time : result.times) {
        sum += static_cast<double>(time);
        max_time = std::max(max_time, time);
    }
    result.mean_time = sum / replicates;
    if (replicates > 1) {
        double ss = 0.0;
        for (std::int64_t time : result.times) {
            const double d = static_cast<double>(time) - result.mean_time;
            ss += d * d;
        }
        result.std_error = std::sqrt(ss / (replicates - 1)) / std::sqrt(replicates);
    }

    const std::int64_t length =
        horizon > 0 ? horizon : max_time; // curve indices 0..length
    result.mean_found_curve.assign(static_cast<std::size_t>(length) + 1, 0.0);
    std::vector<double> raw(static_cast<std::size_t>(length) + 1, 0.0);
    for (const auto& curve : chunk_curves)
        for (std::size_t t = 0; t < curve.size() && t <= static_cast<std::size_t>(length); ++t)
            raw[t] += curve[t];
    // Replicates absorbed before t sit at r; counting sort over times.
    std::vector<double> absorbed(static_cast<std::size_t>(length) + 1, 0.0);
    for (std::int64_t time : result.times)
        if (time + 1 <= length) absorbed[static_cast<std::size_t>(time) + 1] += 1.0;
    double acc = 0.0;
    for (std::int64_t t = 1; t <= length; ++t) {
        acc += absorbed[static_cast<std::size_t>(t)];
        result.mean_found_curve[static_cast<std::size_t>(t)] =
            (raw[static_cast<std::size_t>(t)] + spec.r * acc) / replicates;
    }
    return result;
}

std::vector<TableRow> reproduce_tables(const std::vector<ScenarioSpec>& configs) {
    std::vector<TableRow> rows;
    for (const ScenarioSpec& config : configs) {
        ScenarioSpec spec = config;
        TableRow row;
        row.scenario = spec.scenario;
        row.p = spec.p;
        row.q = spec.q;
        row.r = spec.r;
        spec.alpha = 0.0;
        row.rs_time = expected_absorption_time(build_chain(spec));
        spec.alpha = 1.0;
        row.srs_time = expected_absorption_time(build_chain(spec));
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScenarioSpec> default_table_configs() {
    std::vector<ScenarioSpec> configs;
    auto add = [&configs](Scenario s, int p, int q, int r) {
        ScenarioSpec spec;
        spec.scenario = s;
        spec.p = p;
        spec.q = q;
        spec.r = r;
        configs.push_back(spec);
    };
    add(Scenario::chaining, 10000, 100, 1);
    add(Scenario::chaining, 10000, 100, 2);
    add(Scenario::chaining, 10000, 100, 3);
    add(Scenario::chaining, 10000, 100, 5);
    add(Scenario::chaining, 100000, 100, 3);
    add(Scenario::clique, 10000, 100, 1);
    add(Scenario::clique, 10000, 100, 2);
    add(Scenario::clique, 10000, 100, 3);
    add(Scenario::clique, 10000, 100, 4);
    add(Scenario::clique, 10000, 1000, 4);
    add(Scenario::marginal, 10000, 100, 10);
    add(Scenario::marginal, 10000, 100, 50);
    add(Scenario::marginal, 10000, 100, 90);
    add(Scenario::marginal, 10000, 100, 100);
    add(Scenario::marginal, 25000, 100, 50);
    return configs;
}

void write_table_csv(const std::vector<TableRow>& rows, const std::string& path) {
    CsvWriter csv(path);
    csv.row({"scenario", "p", "q", "r", "rs", "srs"});
    for (const TableRow& row : rows)
        csv.row({to_string(row.scenario), std::to_string(row.p), std::to_string(row.q),
                 std::to_string(row.r), format_table_value(row.rs_time),
                 format_table_value(row.srs_time)});
}

void write_curve_csv(const std::vector<double>& curve, const std::string& path) {
    CsvWriter csv(path);
    csv.row({"t", "expected_found"});
    for (std::size_t t = 0; t < curve.size(); ++t)
        csv.row({std::to_string(t), format_double(curve[t])});
}

} // namespace srs
