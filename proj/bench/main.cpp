/*
 * Copyright 2026 The abtree Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "abtree/bulk.hpp"
#include "abtree/counters.hpp"
#include "abtree/par_join.hpp"
#include "abtree/par_split.hpp"
#include "abtree/parallel.hpp"
#include "abtree/seq_ops.hpp"
#include "abtree/set_ops.hpp"
#include "abtree/tree.hpp"
#include "keygen.hpp"

namespace {

using namespace abtree;
using namespace abtree::bench;

struct ExperimentConfig {
    std::string algo = "bulk_auto";
    KeyDist dist = KeyDist::uniform;
    KeyGenParams dist_params;
    std::uint64_t tree_size = 100000;
    std::uint64_t bulk_size = 1000;
    std::uint64_t iterations = 10;
    int workers = 4;
    std::uint64_t seed = 1;
    int pieces = 31;
    bool extended_counters = false;
    bool pj_join = false;
    bool no_wall = false;
};

struct MetricsRow {
    std::uint64_t iteration = 0;
    std::int64_t wall_us = 0;
    CounterSnapshot counters;
    int tree_rank = 0;
};

void emit_header(std::ostream& os, const ExperimentConfig& cfg) {
    os << "algo,dist,tree_size,bulk_size,iterations,workers,seed,iteration";
    if (!cfg.no_wall) {
        os << ",wall_us";
    }
    os << ",visited_nodes,node_splits,stack_pops,stack_combines,pj_iterations,"
          "tree_rank";
    if (cfg.extended_counters) {
        os << ",bchain_splits,node_fuses,join_descents,stack_pushes,"
              "ppj_rounds,pj_steals";
    }
    os << "\n";
}

void emit_row(std::ostream& os, const ExperimentConfig& cfg,
              const MetricsRow& row) {
    os << cfg.algo << ',' << dist_name(cfg.dist) << ',' << cfg.tree_size << ','
       << cfg.bulk_size << ',' << cfg.iterations << ',' << cfg.workers << ','
       << cfg.seed << ',' << row.iteration;
    if (!cfg.no_wall) {
        os << ',' << row.wall_us;
    }
    const CounterSnapshot& c = row.counters;
    os << ',' << c.visited_nodes << ',' << c.node_splits << ',' << c.stack_pops
       << ',' << c.stack_combines << ',' << c.pj_iterations << ','
       << row.tree_rank;
    if (cfg.extended_counters) {
        os << ',' << c.bchain_splits << ',' << c.node_fuses << ','
           << c.join_descents << ',' << c.stack_pushes << ',' << c.ppj_rounds
           << ',' << c.pj_steals;
    }
    os << "\n";
}

std::int64_t elapsed_us(std::chrono::steady_clock::time_point from) {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::steady_clock::now() - from)
        .count();
}

// Exactly n distinct keys of the distribution (draws extra rounds when
// duplicates eat into a batch).
std::vector<key_type> distinct_from_dist(const ExperimentConfig& cfg,
                                         std::uint64_t n, KeyGenState& state) {
    std::vector<key_type> keys;
    while (keys.size() < n) {
        std::vector<key_type> more = gen_keys(
            cfg.dist, n - keys.size() + 16, cfg.seed, state, cfg.dist_params);
        keys.insert(keys.end(), more.begin(), more.end());
        keys = sorted_unique(std::move(keys));
    }
    keys.resize(n);
    return keys;
}

ABTree initial_tree(const ExperimentConfig& cfg, KeyGenState& state) {
    return build_from_sorted(distinct_from_dist(cfg, cfg.tree_size, state),
                             cfg.workers);
}

// Separators drawn uniformly over the tree's occupied key range. Piece
// sizes then mirror the key density: normal-key trees yield tall middle
// pieces and thin tails, uniform trees yield balanced pieces, and no
// distribution degenerates into all-empty pieces.
std::vector<key_type> draw_separators(const ExperimentConfig& cfg,
                                      const ABTree& tree,
                                      std::mt19937_64& sep_rng) {
    const key_type lo = tree.select_ith(1);
    const key_type hi = tree.select_ith(tree.size());
    const std::uint64_t want = std::min<std::uint64_t>(
        static_cast<std::uint64_t>(cfg.pieces) - 1, hi - lo);
    std::uniform_int_distribution<std::uint64_t> d(lo, hi);
    std::vector<key_type> seps;
    while (seps.size() < want) {
        while (seps.size() < want + 4) {
            seps.push_back(d(sep_rng));
        }
        std::sort(seps.begin(), seps.end());
        seps.erase(std::unique(seps.begin(), seps.end()), seps.end());
    }
    seps.resize(want);
    return seps;
}

int run_join_family(const ExperimentConfig& cfg, std::ostream& os) {
    KeyGenState state;
    ABTree tree = initial_tree(cfg, state);
    std::mt19937_64 sep_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    emit_header(os, cfg);
    for (std::uint64_t it = 0; it < cfg.iterations; ++it) {
        const std::vector<key_type> seps =
            draw_separators(cfg, tree, sep_rng);
        std::vector<ABTree> parts =
            par_split(std::move(tree), seps, cfg.workers);
        WorkCounters wc;
        MetricsRow row;
        row.iteration = it;
        const auto t0 = std::chrono::steady_clock::now();
        if (cfg.algo == "sj") {
            ABTree acc = std::move(parts.front());
            for (std::size_t i = 1; i < parts.size(); ++i) {
                acc = join2(std::move(acc), std::move(parts[i]), &wc);
            }
            tree = std::move(acc);
        } else if (cfg.algo == "ppj") {
            tree = pairwise_par_join(std::move(parts), cfg.workers, &wc);
        } else {
            const int pw = std::max(
                1, std::min<int>(cfg.workers,
                                 static_cast<int>(parts.size())));
            run_parallel(pw, [&](int id) {
                const auto [lo, hi] = split_range(parts.size(), pw, id);
                for (std::uint64_t i = lo; i < hi; ++i) {
                    preprocess_spines(parts[i], &wc);
                }
            });
            tree = lightweight_par_join(std::move(parts), cfg.workers,
                                        cfg.seed * 1000003 + it, &wc);
        }
        row.wall_us = elapsed_us(t0);
        row.counters = wc.snapshot();
        row.tree_rank = tree.rank();
        emit_row(os, cfg, row);
    }
    const ValidationReport rep = tree.validate();
    if (!rep.ok) {
        std::cerr << "validate failed on the final tree\n";
        return 1;
    }
    std::cerr << "validate: ok (size=" << tree.size() << ")\n";
    return 0;
}

int run_split_family(const ExperimentConfig& cfg, std::ostream& os) {
    KeyGenState state;
    ABTree tree = initial_tree(cfg, state);
    std::mt19937_64 sep_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    emit_header(os, cfg);
    for (std::uint64_t it = 0; it < cfg.iterations; ++it) {
        const std::vector<key_type> seps =
            draw_separators(cfg, tree, sep_rng);
        WorkCounters wc;
        MetricsRow row;
        row.iteration = it;
        std::vector<ABTree> parts;
        const auto t0 = std::chrono::steady_clock::now();
        if (cfg.algo == "seq_split") {
            ABTree rest = std::move(tree);
            for (const key_type s : seps) {
                auto halves = split_at(std::move(rest), s, &wc);
                parts.push_back(std::move(halves.first));
                rest = std::move(halves.second);
            }
            parts.push_back(std::move(rest));
        } else {
            parts = par_split(std::move(tree), seps, cfg.workers, &wc);
        }
        row.wall_us = elapsed_us(t0);
        row.counters = wc.snapshot();
        for (const ABTree& p : parts) {
            row.tree_rank = std::max(row.tree_rank, p.rank());
        }
        emit_row(os, cfg, row);
        // Rebuild the input for the next iteration; not measured.
        tree = pairwise_par_join(std::move(parts), cfg.workers);
    }
    const ValidationReport rep = tree.validate();
    if (!rep.ok) {
        std::cerr << "validate failed on the final tree\n";
        return 1;
    }
    std::cerr << "validate: ok (size=" << tree.size() << ")\n";
    return 0;
}

int run_bulk_family(const ExperimentConfig& cfg, std::ostream& os) {
    KeyGenState state;
    ABTree tree = initial_tree(cfg, state);
    SeparatorStrategy strategy = SeparatorStrategy::automatic;
    if (cfg.algo == "bulk_uniform") {
        strategy = SeparatorStrategy::uniform;
    } else if (cfg.algo == "bulk_double") {
        strategy = SeparatorStrategy::double_binary;
    }
    BulkConfig bulk_cfg;
    bulk_cfg.lightweight_join = cfg.pj_join;
    emit_header(os, cfg);
    for (std::uint64_t it = 0; it < cfg.iterations; ++it) {
        const UpdateBatch batch = UpdateBatch::from_keys(
            sorted_unique(gen_keys(cfg.dist, cfg.bulk_size, cfg.seed, state,
                                   cfg.dist_params)),
            OpKind::insert);
        WorkCounters wc;
        MetricsRow row;
        row.iteration = it;
        bulk_cfg.join_seed = cfg.seed * 1000003 + it;
        const auto t0 = std::chrono::steady_clock::now();
        tree = bulk_update(std::move(tree), batch, cfg.workers, strategy, &wc,
                           bulk_cfg);
        row.wall_us = elapsed_us(t0);
        row.counters = wc.snapshot();
        row.tree_rank = tree.rank();
        emit_row(os, cfg, row);
    }
    const ValidationReport rep = tree.validate();
    if (!rep.ok) {
        std::cerr << "validate failed on the final tree\n";
        return 1;
    }
    std::cerr << "validate: ok (size=" << tree.size() << ")\n";
    return 0;
}

int run_set_family(const ExperimentConfig& cfg, std::ostream& os) {
    KeyGenState state;
    ABTree tree = initial_tree(cfg, state);
    emit_header(os, cfg);
    ABTree last = tree.clone();
    for (std::uint64_t it = 0; it < cfg.iterations; ++it) {
        ABTree operand = build_from_sorted(
            sorted_unique(gen_keys(cfg.dist, cfg.bulk_size, cfg.seed, state,
                                   cfg.dist_params)),
            cfg.workers);
        WorkCounters wc;
        MetricsRow row;
        row.iteration = it;
        const auto t0 = std::chrono::steady_clock::now();
        if (cfg.algo == "set_union") {
            tree = set_union(std::move(tree), std::move(operand), cfg.workers,
                             &wc);
            row.tree_rank = tree.rank();
        } else if (cfg.algo == "set_intersection") {
            // Reads both inputs; the main tree carries over unchanged.
            last = set_intersection(tree, operand, cfg.workers, &wc);
            row.tree_rank = last.rank();
        } else if (cfg.algo == "set_difference") {
            tree = set_difference(std::move(tree), operand, cfg.workers, &wc);
            row.tree_rank = tree.rank();
        } else {
            tree = set_symmetric_difference(std::move(tree),
                                            std::move(operand), cfg.workers,
                                            &wc);
            row.tree_rank = tree.rank();
        }
        row.wall_us = elapsed_us(t0);
        row.counters = wc.snapshot();
        emit_row(os, cfg, row);
    }
    const ValidationReport rep = tree.validate();
    const ValidationReport rep2 = last.validate();
    if (!rep.ok || !rep2.ok) {
        std::cerr << "validate failed on the final tree\n";
        return 1;
    }
    std::cerr << "validate: ok (size=" << tree.size() << ")\n";
    return 0;
}

int default_workers() {
    if (const char* env = std::getenv("ABTREE_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) {
            return static_cast<int>(v);
        }
    }
    return 4;
}

}  // namespace

int main(int argc, char** argv) {
    ExperimentConfig cfg;
    cfg.workers = default_workers();
    std::string dist = "uniform";
    std::string out_path;

    CLI::App app{
        "(a,b)-tree experiment harness: splits, joins, bulk updates and set "
        "operations over generated key distributions, one CSV row per "
        "iteration"};
    app.add_option("--algo", cfg.algo,
                   "experiment: sj | ppj | pj | seq_split | par_split | "
                   "bulk_uniform | bulk_double | bulk_auto | set_union | "
                   "set_intersection | set_difference | "
                   "set_symmetric_difference")
        ->check(CLI::IsMember({"sj", "ppj", "pj", "seq_split", "par_split",
                               "bulk_uniform", "bulk_double", "bulk_auto",
                               "set_union", "set_intersection",
                               "set_difference", "set_symmetric_difference"}));
    app.add_option("--dist", dist,
                   "key distribution: uniform | skewed_uniform | normal | "
                   "increasing_uniform")
        ->check(CLI::IsMember({"uniform", "skewed_uniform", "normal",
                               "increasing_uniform"}));
    const auto positive_u64 = CLI::Range(
        std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max(), "POSITIVE");
    const auto positive_int =
        CLI::Range(1, std::numeric_limits<int>::max(), "POSITIVE");
    app.add_option("--tree-size", cfg.tree_size, "initial tree size")
        ->check(positive_u64);
    app.add_option("--bulk-size", cfg.bulk_size,
                   "batch / operand size per iteration")
        ->check(positive_u64);
    app.add_option("--iterations", cfg.iterations, "iteration count")
        ->check(positive_u64);
    app.add_option("--workers", cfg.workers,
                   "worker threads (default from ABTREE_WORKERS or 4)")
        ->check(positive_int);
    app.add_option("--seed", cfg.seed, "generator seed");
    app.add_option("--pieces", cfg.pieces,
                   "pieces for split/join experiments (separators = pieces-1)")
        ->check(CLI::Range(2, 4096));
    app.add_flag("--counters", cfg.extended_counters,
                 "emit the extended counter columns");
    app.add_flag("--pj-join", cfg.pj_join,
                 "bulk experiments join pieces with the randomized local "
                 "join instead of pairwise rounds");
    app.add_flag("--no-wall", cfg.no_wall,
                 "omit the wall-clock column (bit-stable output)");
    app.add_option("--out", out_path, "CSV output path (default stdout)");
    app.add_option("--skew-div", cfg.dist_params.skew_div,
                   "skewed_uniform window = domain / skew-div")
        ->check(CLI::PositiveNumber);
    app.add_option("--normal-mean", cfg.dist_params.normal_mean,
                   "normal distribution mean in key space");
    app.add_option("--normal-stddev", cfg.dist_params.normal_stddev,
                   "normal distribution standard deviation")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    cfg.dist = parse_dist(dist);

    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "cannot open output path: " << out_path << "\n";
            return 1;
        }
    }
    std::ostream& os = out_path.empty() ? std::cout : file;

    try {
        if (cfg.algo == "sj" || cfg.algo == "ppj" || cfg.algo == "pj") {
            return run_join_family(cfg, os);
        }
        if (cfg.algo == "seq_split" || cfg.algo == "par_split") {
            return run_split_family(cfg, os);
        }
        if (cfg.algo == "bulk_uniform" || cfg.algo == "bulk_double" ||
            cfg.algo == "bulk_auto") {
            return run_bulk_family(cfg, os);
        }
        return run_set_family(cfg, os);
    } catch (const std::exception& e) {
        std::cerr << "experiment failed: " << e.what() << "\n";
        return 1;
    }
}
