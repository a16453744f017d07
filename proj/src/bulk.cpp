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
#include "abtree/bulk.hpp"

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "abtree/node.hpp"
#include "abtree/par_join.hpp"
#include "abtree/par_split.hpp"
#include "abtree/parallel.hpp"
#include "abtree/seq_ops.hpp"

namespace abtree {

namespace {

void require_sorted(const UpdateBatch& batch, const char* who) {
    for (std::size_t i = 1; i < batch.ops.size(); ++i) {
        if (batch.ops[i].key <= batch.ops[i - 1].key) {
            throw std::invalid_argument(
                std::string(who) + ": batch keys must be strictly ascending");
        }
    }
}

// Pieces induced by a strictly ascending separator set. The lower bound of
// the piece closing at separators[i] is its predecessor separator, found by
// binary search.
SeparatorPartition partition_from(std::vector<key_type> separators) {
    SeparatorPartition part;
    part.separators = std::move(separators);
    const std::vector<key_type>& s = part.separators;
    part.pieces.resize(s.size() + 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        PieceRange& r = part.pieces[i];
        r.has_upper = true;
        r.upper = s[i];
        const auto it = std::lower_bound(s.begin(), s.end(), s[i]);
        if (it != s.begin()) {
            r.has_lower = true;
            r.lower = *(it - 1);
        }
    }
    if (!s.empty()) {
        part.pieces.back().has_lower = true;
        part.pieces.back().lower = s.back();
    }
    return part;
}

// Batch keys at 1-based positions c, 2c, ... with c = ceil(n/p); positions
// past the last key are dropped so the trailing piece keeps at least one key.
std::vector<key_type> uniform_separators(const UpdateBatch& batch, int p) {
    std::vector<key_type> seps;
    const std::uint64_t n = batch.ops.size();
    if (n == 0 || p <= 1) {
        return seps;
    }
    const std::uint64_t c = (n + p - 1) / p;
    for (int i = 1; i < p; ++i) {
        const std::uint64_t pos = static_cast<std::uint64_t>(i) * c;
        if (pos >= n) {
            break;
        }
        seps.push_back(batch.ops[pos - 1].key);
    }
    return seps;
}

void fold_into(WorkCounters* c, const WorkCounters& phase) {
    const CounterSnapshot s = phase.snapshot();
    bump(c, &WorkCounters::visited_nodes, s.visited_nodes);
    bump(c, &WorkCounters::node_splits, s.node_splits);
    bump(c, &WorkCounters::bchain_splits, s.bchain_splits);
    bump(c, &WorkCounters::node_fuses, s.node_fuses);
    bump(c, &WorkCounters::join_descents, s.join_descents);
    bump(c, &WorkCounters::stack_pops, s.stack_pops);
    bump(c, &WorkCounters::stack_pushes, s.stack_pushes);
    bump(c, &WorkCounters::stack_combines, s.stack_combines);
    bump(c, &WorkCounters::ppj_rounds, s.ppj_rounds);
    bump(c, &WorkCounters::pj_iterations, s.pj_iterations);
    bump(c, &WorkCounters::pj_steals, s.pj_steals);
}

}  // namespace

UpdateBatch UpdateBatch::from_keys(const std::vector<key_type>& keys,
                                   OpKind kind) {
    UpdateBatch b;
    b.ops.reserve(keys.size());
    for (const key_type k : keys) {
        b.ops.push_back({k, kind});
    }
    require_sorted(b, "UpdateBatch::from_keys");
    return b;
}

SeparatorPartition select_uniform(const UpdateBatch& batch, int p) {
    if (p < 1) {
        throw std::invalid_argument("select_uniform: need p >= 1");
    }
    return partition_from(uniform_separators(batch, p));
}

SeparatorPartition select_double_binary(const UpdateBatch& batch,
                                        const ABTree& t, int p) {
    if (p < 1) {
        throw std::invalid_argument("select_double_binary: need p >= 1");
    }
    if (!t.augmented()) {
        throw std::invalid_argument(
            "select_double_binary: tree lacks size augmentation");
    }
    const std::vector<key_type> from_batch = uniform_separators(batch, p);
    std::vector<key_type> from_tree;
    const std::uint64_t m = t.size();
    if (m > 0 && p > 1) {
        const std::uint64_t c = (m + p - 1) / p;
        for (int i = 1; i < p; ++i) {
            const std::uint64_t pos = static_cast<std::uint64_t>(i) * c;
            if (pos >= m) {
                break;
            }
            from_tree.push_back(t.select_ith(pos));
        }
    }
    std::vector<key_type> merged;
    merged.reserve(from_batch.size() + from_tree.size());
    std::merge(from_batch.begin(), from_batch.end(), from_tree.begin(),
               from_tree.end(), std::back_inserter(merged));
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return partition_from(std::move(merged));
}

ABTree bulk_update(ABTree t, const UpdateBatch& batch, int workers,
                   SeparatorStrategy strategy, WorkCounters* c,
                   const BulkConfig& config) {
    require_sorted(batch, "bulk_update");
    if (batch.empty()) {
        return t;
    }
    workers = std::max(1, workers);
    if (strategy == SeparatorStrategy::automatic) {
        strategy = (t.augmented() && batch.size() < t.size())
                       ? SeparatorStrategy::double_binary
                       : SeparatorStrategy::uniform;
    }
    const SeparatorPartition part =
        strategy == SeparatorStrategy::double_binary
            ? select_double_binary(batch, t, workers)
            : select_uniform(batch, workers);

    const int a = t.m_a;
    const int b = t.m_b;
    const bool aug = t.m_augmented;
    WorkCounters* sc = config.phases != nullptr ? &config.phases->split : c;
    WorkCounters* uc = config.phases != nullptr ? &config.phases->update : c;
    WorkCounters* jc = config.phases != nullptr ? &config.phases->join : c;

    std::vector<ABTree> pieces =
        par_split(std::move(t), part.separators, workers, sc);
    const std::size_t k = pieces.size();

    // Batch slice of piece i: ops[cut[i], cut[i + 1]) holds exactly the keys
    // in the piece's range.
    std::vector<std::size_t> cut(k + 1, 0);
    cut[k] = batch.ops.size();
    for (std::size_t i = 0; i < part.separators.size(); ++i) {
        const auto it = std::upper_bound(
            batch.ops.begin(), batch.ops.end(), part.separators[i],
            [](key_type v, const BatchOp& op) { return v < op.key; });
        cut[i + 1] = static_cast<std::size_t>(it - batch.ops.begin());
    }

    const int uw = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), k));
    run_parallel(uw, [&](int id) {
        const auto [lo, hi] = split_range(k, uw, id);
        std::vector<key_type> ins;
        std::vector<key_type> ers;
        for (std::uint64_t i = lo; i < hi; ++i) {
            ins.clear();
            ers.clear();
            for (std::size_t j = cut[i]; j < cut[i + 1]; ++j) {
                (batch.ops[j].kind == OpKind::insert ? ins : ers)
                    .push_back(batch.ops[j].key);
            }
            union_sorted(pieces[i], ins, uc);
            erase_sorted(pieces[i], ers, uc);
        }
    });

    std::uint64_t total = 0;
    for (const ABTree& piece : pieces) {
        total += piece.size();
    }
    ABTree out(a, b, aug);
    if (total > 0) {
        if (config.lightweight_join) {
            const int pw = static_cast<int>(
                std::min<std::size_t>(static_cast<std::size_t>(workers), k));
            run_parallel(pw, [&](int id) {
                const auto [lo, hi] = split_range(k, pw, id);
                for (std::uint64_t i = lo; i < hi; ++i) {
                    preprocess_spines(pieces[i], jc);
                }
            });
            out = lightweight_par_join(std::move(pieces), workers,
                                       config.join_seed, jc);
        } else {
            out = pairwise_par_join(std::move(pieces), workers, jc);
        }
    }
    if (config.phases != nullptr && c != nullptr) {
        fold_into(c, config.phases->split);
        fold_into(c, config.phases->update);
        fold_into(c, config.phases->join);
    }
    return out;
}

std::vector<key_type> bulk_search(const ABTree& t,
                                  const std::vector<key_type>& keys,
                                  int workers, WorkCounters* c) {
    std::vector<key_type> out;
    if (keys.empty() || t.empty()) {
        return out;
    }
    constexpr key_type kNoBound = std::numeric_limits<key_type>::max();
    struct Entry {
        const Node* node;
        key_type ub;  // inclusive upper bound of the node's key range
    };
    const int w = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(std::max(1, workers)), keys.size()));
    std::vector<std::vector<key_type>> found(w);
    run_parallel(w, [&](int id) {
        const auto [lo, hi] = split_range(keys.size(), w, id);
        std::vector<Entry> path;
        path.push_back({t.root(), kNoBound});
        bump(c, &WorkCounters::visited_nodes);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const key_type v = keys[i];
            while (path.size() > 1 && v > path.back().ub) {
                path.pop_back();
                bump(c, &WorkCounters::visited_nodes);
            }
            while (!path.back().node->leaf) {
                const Node* n = path.back().node;
                const int idx = route_child(n, v);
                const key_type ub =
                    idx < n->degree() - 1 ? n->keys[idx] : path.back().ub;
                path.push_back({n->children[idx], ub});
                bump(c, &WorkCounters::visited_nodes);
            }
            const std::vector<key_type>& lk = path.back().node->keys;
            if (std::binary_search(lk.begin(), lk.end(), v)) {
                found[id].push_back(v);
            }
        }
    });
    for (const std::vector<key_type>& part : found) {
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace abtree
