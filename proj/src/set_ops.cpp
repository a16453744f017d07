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
#include "abtree/set_ops.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "abtree/bulk.hpp"
#include "abtree/node.hpp"
#include "abtree/parallel.hpp"

namespace abtree {

namespace {

// Depth-first append of every element below n; recursion depth is the rank.
void walk_subtree(const Node* n, std::vector<key_type>& out, std::size_t& pos,
                  WorkCounters* c) {
    bump(c, &WorkCounters::visited_nodes);
    if (n->leaf) {
        std::copy(n->keys.begin(), n->keys.end(), out.begin() + pos);
        pos += n->keys.size();
        return;
    }
    for (const Node* child : n->children) {
        walk_subtree(child, out, pos, c);
    }
}

// Leaf holding the 0-based element index `target`, with the offset of that
// element inside the leaf; descends by exact subtree sizes.
const Node* leaf_at(const ABTree& t, std::uint64_t target, std::size_t& offset,
                    WorkCounters* c) {
    const Node* n = t.root();
    std::uint64_t r = target;
    bump(c, &WorkCounters::visited_nodes);
    while (!n->leaf) {
        for (const Node* child : n->children) {
            const std::uint64_t sz = node_size(child);
            if (r < sz) {
                n = child;
                break;
            }
            r -= sz;
        }
        bump(c, &WorkCounters::visited_nodes);
    }
    offset = static_cast<std::size_t>(r);
    return n;
}

// Leftmost leaf of the subtree right of `n` among its ancestors' children.
const Node* next_leaf(const Node* n, WorkCounters* c) {
    const Node* p = n->parent;
    while (p != nullptr && child_index(p, n) == p->degree() - 1) {
        n = p;
        p = p->parent;
        bump(c, &WorkCounters::visited_nodes);
    }
    if (p == nullptr) {
        return nullptr;
    }
    const Node* down = p->children[child_index(p, n) + 1];
    bump(c, &WorkCounters::visited_nodes);
    while (!down->leaf) {
        down = down->children.front();
        bump(c, &WorkCounters::visited_nodes);
    }
    return down;
}

std::uint64_t ceil_div(std::uint64_t n, std::uint64_t d) {
    return (n + d - 1) / d;
}

}  // namespace

std::vector<key_type> to_sorted(const ABTree& t, int workers,
                                WorkCounters* c) {
    std::vector<key_type> out(t.size());
    if (t.empty()) {
        return out;
    }
    const std::uint64_t n = t.size();
    const int w = static_cast<int>(std::min<std::uint64_t>(
        static_cast<std::uint64_t>(std::max(1, workers)), n));
    if (!t.augmented() || w == 1) {
        std::size_t pos = 0;
        walk_subtree(t.root(), out, pos, c);
        return out;
    }
    run_parallel(w, [&](int id) {
        const auto [lo, hi] = split_range(n, w, id);
        if (lo == hi) {
            return;
        }
        std::size_t off = 0;
        const Node* leaf = leaf_at(t, lo, off, c);
        std::uint64_t pos = lo;
        while (pos < hi) {
            const std::vector<key_type>& ks = leaf->keys;
            while (off < ks.size() && pos < hi) {
                out[pos++] = ks[off++];
            }
            if (pos == hi) {
                break;
            }
            leaf = next_leaf(leaf, c);
            off = 0;
        }
    });
    return out;
}

ABTree build_from_sorted(const std::vector<key_type>& seq, int workers,
                         int a, int b, bool augmented) {
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i] <= seq[i - 1]) {
            throw std::invalid_argument(
                "build_from_sorted: keys must be strictly ascending");
        }
    }
    ABTree out(a, b, augmented);
    const std::uint64_t n = seq.size();
    if (n == 0) {
        return out;
    }
    workers = std::max(1, workers);
    const std::uint64_t ub = static_cast<std::uint64_t>(b);

    // Leaf level: ceil(n / b) leaves filled as evenly as possible. b >= 2a
    // keeps every share within [a, b] once two or more nodes are needed.
    const std::uint64_t leaves = ceil_div(n, ub);
    std::vector<Node*> level(leaves);
    std::vector<key_type> maxes(leaves);
    const int lw = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), leaves));
    run_parallel(lw, [&](int id) {
        const auto [nlo, nhi] = split_range(leaves, lw, id);
        for (std::uint64_t i = nlo; i < nhi; ++i) {
            const auto [klo, khi] = split_range(n, static_cast<int>(leaves),
                                                static_cast<int>(i));
            level[i] = make_leaf(std::vector<key_type>(seq.begin() + klo,
                                                       seq.begin() + khi));
            maxes[i] = seq[khi - 1];
        }
    });

    int rank = 1;
    while (level.size() > 1) {
        const std::uint64_t m = level.size();
        const std::uint64_t parents = ceil_div(m, ub);
        std::vector<Node*> up(parents);
        std::vector<key_type> upmax(parents);
        const int pw = static_cast<int>(std::min<std::uint64_t>(
            static_cast<std::uint64_t>(workers), parents));
        run_parallel(pw, [&](int id) {
            const auto [plo, phi] = split_range(parents, pw, id);
            for (std::uint64_t j = plo; j < phi; ++j) {
                const auto [clo, chi] = split_range(m, static_cast<int>(parents),
                                                    static_cast<int>(j));
                std::vector<Node*> ch(level.begin() + clo, level.begin() + chi);
                std::vector<key_type> rt;
                rt.reserve(chi - clo - 1);
                for (std::uint64_t i = clo; i + 1 < chi; ++i) {
                    rt.push_back(maxes[i]);
                }
                up[j] = make_internal(std::move(ch), std::move(rt));
                upmax[j] = maxes[chi - 1];
            }
        });
        level = std::move(up);
        maxes = std::move(upmax);
        ++rank;
    }
    out.m_root = level[0];
    out.m_rank = rank;
    out.m_size = n;
    out.m_min_bound = seq.front();
    out.m_max_bound = seq.back();
    return out;
}

ABTree set_union(ABTree u, ABTree t, int workers, WorkCounters* c) {
    if (u.empty()) {
        return t;
    }
    if (t.empty()) {
        return u;
    }
    const bool u_small = u.size() <= t.size();
    ABTree& small = u_small ? u : t;
    ABTree& big = u_small ? t : u;
    const UpdateBatch batch =
        UpdateBatch::from_keys(to_sorted(small, workers, c), OpKind::insert);
    return bulk_update(std::move(big), batch, workers,
                       SeparatorStrategy::automatic, c);
}

ABTree set_intersection(const ABTree& u, const ABTree& t, int workers,
                        WorkCounters* c) {
    if (u.empty() || t.empty()) {
        return ABTree(u.a(), u.b(), u.augmented());
    }
    const bool u_small = u.size() <= t.size();
    const ABTree& small = u_small ? u : t;
    const ABTree& big = u_small ? t : u;
    const std::vector<key_type> hits =
        bulk_search(big, to_sorted(small, workers, c), workers, c);
    return build_from_sorted(hits, workers, u.a(), u.b(), u.augmented());
}

ABTree set_difference(ABTree t, const ABTree& u, int workers,
                      WorkCounters* c) {
    if (t.empty() || u.empty()) {
        return t;
    }
    std::vector<key_type> doomed;
    if (t.size() >= u.size()) {
        doomed = to_sorted(u, workers, c);
    } else {
        // Narrow the batch to keys actually present; |t ∩ u| <= |t| < |u|.
        doomed = to_sorted(set_intersection(t, u, workers, c), workers, c);
    }
    const UpdateBatch batch = UpdateBatch::from_keys(doomed, OpKind::erase);
    return bulk_update(std::move(t), batch, workers,
                       SeparatorStrategy::automatic, c);
}

ABTree set_symmetric_difference(ABTree u, ABTree t, int workers,
                                WorkCounters* c) {
    ABTree only_u = set_difference(u.clone(), t, workers, c);
    ABTree only_t = set_difference(std::move(t), u, workers, c);
    return set_union(std::move(only_u), std::move(only_t), workers, c);
}

}  // namespace abtree
