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
#include "abtree/par_split.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "abtree/node.hpp"
#include "abtree/parallel.hpp"
#include "abtree/spine_index.hpp"

namespace abtree {

SplitTask locate_leaf_le(const ABTree& t, key_type s, WorkCounters* c) {
    if (t.empty()) {
        throw std::invalid_argument("locate_leaf_le: empty tree");
    }
    SplitTask task;
    task.separator = s;
    std::vector<PathStep>& path = task.path;
    int back_lvl = -1;  // deepest level with a child left of the descent
    Node* n = t.m_root;
    while (true) {
        bump(c, &WorkCounters::visited_nodes);
        if (n->leaf) {
            const int idx = static_cast<int>(
                std::upper_bound(n->keys.begin(), n->keys.end(), s) -
                n->keys.begin());
            path.push_back({n, idx});
            break;
        }
        const int j = route_child(n, s);
        if (j > 0) {
            back_lvl = static_cast<int>(path.size());
        }
        path.push_back({n, j});
        n = n->children[j];
    }
    if (path.back().idx == 0) {
        // The covering leaf holds no key <= s, so its whole subtree under
        // the deepest left alternative is > s; the predecessor is the
        // maximum of the subtree one child to the left.
        if (back_lvl < 0) {
            task.below_min = true;  // path already pins the leftmost leaf
        } else {
            path.resize(back_lvl + 1);
            PathStep& turn = path[back_lvl];
            turn.idx -= 1;
            Node* m = turn.node->children[turn.idx];
            while (!m->leaf) {
                bump(c, &WorkCounters::visited_nodes);
                path.push_back({m, m->degree() - 1});
                m = m->children.back();
            }
            bump(c, &WorkCounters::visited_nodes);
            // every key of this leaf is <= s
            path.push_back({m, static_cast<int>(m->keys.size())});
        }
    }
    task.leaf = path.back().node;
    return task;
}

namespace {

// Number of leading levels whose nodes the two paths share.
std::size_t common_depth(const std::vector<PathStep>& a,
                         const std::vector<PathStep>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::size_t l = 0;
    while (l < n && a[l].node == b[l].node) {
        ++l;
    }
    return l;
}

// The fork's children strictly between the two descent slots, as a tree.
ABTree central_piece(const ABTree& src, const Node* fork, int lidx, int ridx,
                     int child_rank) {
    const int count = ridx - lidx - 1;
    if (count <= 0) {
        return ABTree(src.m_a, src.m_b, src.m_augmented);
    }
    if (count == 1) {
        return wrap_fragment(src, fork->children[lidx + 1], child_rank);
    }
    std::vector<Node*> kids(fork->children.begin() + lidx + 1,
                            fork->children.begin() + ridx);
    std::vector<key_type> routers(fork->keys.begin() + lidx + 1,
                                  fork->keys.begin() + ridx - 1);
    return wrap_fragment(src, make_internal(std::move(kids), std::move(routers)),
                         child_rank + 1);
}

// Keys in (sl, sr]: everything right of L's path, left of R's path, plus the
// fork children between the two descents, joined in rank-monotone order
// left + central first, then + right.
ABTree middle_piece(const ABTree& src, const SplitTask& L, const SplitTask& R,
                    key_type sl, key_type sr, WorkCounters* c) {
    if (L.leaf == R.leaf) {
        // both separators cut inside one leaf
        ABTree piece(src.m_a, src.m_b, src.m_augmented);
        const int lo = L.path.back().idx;
        const int hi = R.path.back().idx;
        if (hi > lo) {
            std::vector<key_type> elems(L.leaf->keys.begin() + lo,
                                        L.leaf->keys.begin() + hi);
            piece = wrap_fragment(src, make_leaf(std::move(elems)), 1);
        }
        return piece;
    }
    const std::size_t f = common_depth(L.path, R.path) - 1;
    const Node* q = L.path[f].node;
    const int li = L.path[f].idx;
    const int ri = R.path[f].idx;
    assert(li < ri);
    const int child_rank = static_cast<int>(L.path.size() - 1 - f);

    ABTree left = build_right_of(src, L.path, f + 1, sl, c);
    ABTree central = central_piece(src, q, li, ri, child_rank);
    ABTree right = build_left_of(src, R.path, f + 1, sr, c);

    ABTree piece = std::move(left);
    if (!central.empty()) {
        piece = piece.empty() ? std::move(central)
                              : join2_with_splitter(std::move(piece),
                                                    std::move(central),
                                                    q->keys[li], c);
    }
    if (!right.empty()) {
        piece = piece.empty() ? std::move(right)
                              : join2_with_splitter(std::move(piece),
                                                    std::move(right),
                                                    q->keys[ri - 1], c);
    }
    return piece;
}

// The fully parallel phase: one worker per piece. Requires a non-empty tree
// and at least one separator. Consumes t's nodes; t is hollowed out.
std::vector<ABTree> split_few(ABTree& t, const std::vector<key_type>& seps,
                              int workers, WorkCounters* c) {
    const std::size_t q = seps.size() + 1;
    std::vector<SplitTask> tasks(seps.size());
    const int lw = static_cast<int>(
        std::min<std::size_t>(workers, seps.size()));
    run_parallel(lw, [&](int id) {
        const auto [lo, hi] = split_range(seps.size(), lw, id);
        for (std::uint64_t i = lo; i < hi; ++i) {
            tasks[i] = locate_leaf_le(t, seps[i], c);
            tasks[i].worker = id;
        }
    });
    for (std::size_t j = 1; j < tasks.size(); ++j) {
        const std::size_t d = common_depth(tasks[j - 1].path, tasks[j].path);
        tasks[j].fork = tasks[j].path[d - 1].node;
    }

    std::vector<ABTree> out(q);
    const int bw = static_cast<int>(std::min<std::size_t>(workers, q));
    run_parallel(bw, [&](int id) {
        const auto [lo, hi] = split_range(q, bw, id);
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (i == 0) {
                out[i] = build_left_of(t, tasks[0].path, 0, seps[0], c);
            } else if (i == q - 1) {
                out[i] =
                    build_right_of(t, tasks[q - 2].path, 0, seps[q - 2], c);
            } else {
                out[i] = middle_piece(t, tasks[i - 1], tasks[i], seps[i - 1],
                                      seps[i], c);
            }
            if (!out[i].empty()) {
                if (i > 0) {
                    out[i].m_min_bound = seps[i - 1] + 1;
                }
                if (i < q - 1) {
                    out[i].m_max_bound = seps[i];
                }
            }
        }
    });

    // Barrier passed: every piece stands on fresh or relinked nodes only.
    // Release the consumed path nodes; levels shared with the previous path
    // belong to that path's worker, so each node is freed exactly once.
    run_parallel(lw, [&](int id) {
        const auto [lo, hi] = split_range(tasks.size(), lw, id);
        for (std::uint64_t j = lo; j < hi; ++j) {
            const std::size_t keep =
                j == 0 ? 0 : common_depth(tasks[j - 1].path, tasks[j].path);
            for (std::size_t l = keep; l < tasks[j].path.size(); ++l) {
                Node* n = tasks[j].path[l].node;
                n->children.clear();
                delete n;
            }
        }
    });
    t.m_root = nullptr;
    t.m_size = 0;
    t.m_spines.reset();
    return out;
}

void require_ascending_seps(const std::vector<key_type>& seps) {
    for (std::size_t i = 1; i < seps.size(); ++i) {
        if (seps[i] <= seps[i - 1]) {
            throw std::invalid_argument(
                "par_split: separators must be strictly ascending");
        }
    }
}

}  // namespace

std::vector<ABTree> par_split(ABTree t, const std::vector<key_type>& seps,
                              int workers, WorkCounters* c) {
    require_ascending_seps(seps);
    const std::size_t k = seps.size() + 1;
    std::vector<ABTree> out;
    if (k == 1) {
        out.push_back(std::move(t));
        return out;
    }
    if (t.empty()) {
        for (std::size_t i = 0; i < k; ++i) {
            out.emplace_back(t.m_a, t.m_b, t.m_augmented);
        }
        return out;
    }
    const int p = std::max(1, workers);
    if (k <= static_cast<std::size_t>(p)) {
        return split_few(t, seps, p, c);
    }

    // More pieces than workers: split parallel at the share boundaries,
    // then each worker walks its share with sequential split_at calls.
    std::vector<std::pair<std::uint64_t, std::uint64_t>> shares(p);
    std::vector<key_type> coarse;
    for (int w = 0; w < p; ++w) {
        shares[w] = split_range(k, p, w);
        if (w > 0) {
            coarse.push_back(seps[shares[w].first - 1]);
        }
    }
    std::vector<ABTree> coarse_trees;
    if (coarse.empty()) {
        coarse_trees.push_back(std::move(t));
    } else {
        coarse_trees = split_few(t, coarse, p, c);
    }

    out = std::vector<ABTree>(k);
    run_parallel(p, [&](int id) {
        const auto [lo, hi] = shares[id];
        ABTree cur = std::move(coarse_trees[id]);
        for (std::uint64_t j = lo + 1; j < hi; ++j) {
            auto parts = split_at(std::move(cur), seps[j - 1], c);
            out[j - 1] = std::move(parts.first);
            cur = std::move(parts.second);
        }
        out[hi - 1] = std::move(cur);
    });
    return out;
}

}  // namespace abtree
