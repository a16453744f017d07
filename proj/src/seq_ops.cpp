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
#include "abtree/seq_ops.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "abtree/finger.hpp"
#include "abtree/node.hpp"
#include "abtree/spine_index.hpp"

namespace abtree {

namespace {

// Detaches the root from a handle and resets the handle without destroying
// the structure.
Node* take_root(ABTree& t) {
    Node* r = t.m_root;
    t.m_root = nullptr;
    t.clear();
    return r;
}

/**
 * Re-splits overflowing nodes from q upward after a join attached new
 * content below. keep == right means the surviving half stays the right one
 * (right-spine host), keep == left the mirror. For augmented trees the walk
 * continues to the root recomputing sizes (ancestor totals grew by the
 * incoming tree); otherwise it stops at the first non-overflowing node.
 */
void ascend_fix(ABTree& t, Node* q, KeepSide keep, WorkCounters* c) {
    while (q != nullptr) {
        Node* parent = q->parent;
        if (t.m_augmented) {
            recompute_size(q);
        }
        if (q->degree() > t.m_b) {
            NodeSplit s = node_split(q, keep);
            bump(c, &WorkCounters::node_splits);
            if (parent == nullptr) {
                t.m_root = make_internal({s.left, s.right}, {s.splitter});
                t.m_rank += 1;
                return;
            }
            Node* survivor = keep == KeepSide::right ? s.right : s.left;
            const int j = child_index(parent, survivor);
            if (keep == KeepSide::right) {
                parent->children.insert(parent->children.begin() + j, s.left);
                parent->keys.insert(parent->keys.begin() + j, s.splitter);
            } else {
                parent->children.insert(parent->children.begin() + j + 1, s.right);
                parent->keys.insert(parent->keys.begin() + j, s.splitter);
            }
        } else if (!t.m_augmented) {
            return;
        }
        q = parent;
    }
}

}  // namespace

ABTree join2_with_splitter(ABTree left, ABTree right, key_type splitter,
                           WorkCounters* c) {
    assert(!left.empty() && !right.empty());
    assert(left.m_a == right.m_a && left.m_b == right.m_b);
    const int a = left.m_a;
    const int b = left.m_b;
    const bool aug = left.m_augmented;
    const std::uint64_t total = left.m_size + right.m_size;
    const key_type lo = left.m_min_bound;
    const key_type hi = right.m_max_bound;

    if (left.m_rank == right.m_rank) {
        const int r = left.m_rank;
        Node* lr = take_root(left);
        Node* rr = take_root(right);
        ABTree t(a, b, aug);
        if (lr->degree() >= a && rr->degree() >= a) {
            // Both old roots are legal as non-root nodes.
            t.m_root = make_internal({lr, rr}, {splitter});
            t.m_rank = r + 1;
        } else {
            Node* fused = node_fuse(lr, rr, splitter, KeepSide::right);
            bump(c, &WorkCounters::node_fuses);
            delete lr;
            if (fused->degree() > b) {
                NodeSplit s = node_split(fused, KeepSide::right);
                bump(c, &WorkCounters::node_splits);
                t.m_root = make_internal({s.left, s.right}, {s.splitter});
                t.m_rank = r + 1;
            } else {
                fused->parent = nullptr;
                t.m_root = fused;
                t.m_rank = r;
            }
        }
        t.m_size = total;
        t.m_min_bound = lo;
        t.m_max_bound = hi;
        return t;
    }

    if (left.m_rank > right.m_rank) {
        const int delta = left.m_rank - right.m_rank;
        left.m_spines.reset();
        Node* n = left.m_root;
        for (int i = 0; i < delta; ++i) {
            n = n->children.back();
            bump(c, &WorkCounters::join_descents);
        }
        Node* p = n->parent;
        Node* rr = take_root(right);
        if (rr->degree() < a) {
            // Too thin to stand alone as a non-root node.
            node_fuse(n, rr, splitter, KeepSide::left);
            bump(c, &WorkCounters::node_fuses);
            delete rr;
            ascend_fix(left, n, KeepSide::right, c);
        } else {
            p->children.push_back(rr);
            p->keys.push_back(splitter);
            rr->parent = p;
            ascend_fix(left, p, KeepSide::right, c);
        }
        left.m_size = total;
        left.m_max_bound = hi;
        return left;
    }

    const int delta = right.m_rank - left.m_rank;
    right.m_spines.reset();
    Node* n = right.m_root;
    for (int i = 0; i < delta; ++i) {
        n = n->children.front();
        bump(c, &WorkCounters::join_descents);
    }
    Node* p = n->parent;
    Node* lr = take_root(left);
    if (lr->degree() < a) {
        node_fuse(lr, n, splitter, KeepSide::right);
        bump(c, &WorkCounters::node_fuses);
        delete lr;
        ascend_fix(right, n, KeepSide::left, c);
    } else {
        p->children.insert(p->children.begin(), lr);
        p->keys.insert(p->keys.begin(), splitter);
        lr->parent = p;
        ascend_fix(right, p, KeepSide::left, c);
    }
    right.m_size = total;
    right.m_min_bound = lo;
    return right;
}

ABTree join2(ABTree left, ABTree right, WorkCounters* c) {
    if (left.empty()) {
        return right;
    }
    if (right.empty()) {
        return left;
    }
    if (left.m_a != right.m_a || left.m_b != right.m_b ||
        left.m_augmented != right.m_augmented) {
        throw std::invalid_argument("join2: mismatched tree parameters");
    }
    const key_type lmax = subtree_max(left.m_root);
    const key_type rmin = subtree_min(right.m_root);
    if (lmax >= rmin) {
        throw std::invalid_argument("join2: key ranges overlap");
    }
    return join2_with_splitter(std::move(left), std::move(right), lmax, c);
}

ABTree join2_bounded(ABTree left, ABTree right, WorkCounters* c) {
    if (left.empty()) {
        return right;
    }
    if (right.empty()) {
        return left;
    }
    assert(left.m_max_bound < right.m_min_bound);
    return join2_with_splitter(std::move(left), std::move(right),
                               left.m_max_bound, c);
}

std::vector<PathStep> locate_path(const ABTree& t, key_type x,
                                  WorkCounters* c) {
    std::vector<PathStep> path;
    Node* n = t.m_root;
    while (n != nullptr) {
        bump(c, &WorkCounters::visited_nodes);
        if (n->leaf) {
            const int idx = static_cast<int>(
                std::upper_bound(n->keys.begin(), n->keys.end(), x) -
                n->keys.begin());
            path.push_back({n, idx});
            return path;
        }
        const int idx = route_child(n, x);
        path.push_back({n, idx});
        n = n->children[idx];
    }
    return path;
}

// Wraps a fragment (an off-path slice of one path node) into a handle. The
// handle bounds are left at their defaults: fragment joins pass explicit
// splitters and the caller sets the final bounds.
ABTree wrap_fragment(const ABTree& src, Node* root, int rank) {
    ABTree f(src.m_a, src.m_b, src.m_augmented);
    root->parent = nullptr;
    f.m_root = root;
    f.m_rank = rank;
    f.m_size = src.m_augmented ? node_size(root) : count_subtree(root);
    return f;
}

ABTree build_left_of(const ABTree& src, const std::vector<PathStep>& path,
                     std::size_t from, key_type x, WorkCounters* c) {
    ABTree acc(src.m_a, src.m_b, src.m_augmented);
    if (path.empty()) {
        return acc;
    }
    const PathStep& leaf_step = path.back();
    if (leaf_step.idx > 0) {
        std::vector<key_type> elems(
            leaf_step.node->keys.begin(),
            leaf_step.node->keys.begin() + leaf_step.idx);
        acc = wrap_fragment(src, make_leaf(std::move(elems)), 1);
    }
    for (std::size_t i = path.size() - 1; i > from; --i) {
        const std::size_t lvl = i - 1;
        const Node* q = path[lvl].node;
        const int idx = path[lvl].idx;
        if (idx == 0) {
            continue;
        }
        const int child_rank = static_cast<int>(path.size() - 1 - lvl);
        Node* frag_root;
        int frag_rank;
        if (idx == 1) {
            frag_root = q->children[0];
            frag_rank = child_rank;
        } else {
            std::vector<Node*> kids(q->children.begin(),
                                    q->children.begin() + idx);
            std::vector<key_type> routers(q->keys.begin(),
                                          q->keys.begin() + idx - 1);
            frag_root = make_internal(std::move(kids), std::move(routers));
            frag_rank = child_rank + 1;
        }
        ABTree frag = wrap_fragment(src, frag_root, frag_rank);
        if (acc.empty()) {
            acc = std::move(frag);
        } else {
            // Router idx-1 sits between the fragment and the descent child
            // that everything collected so far came from.
            acc = join2_with_splitter(std::move(frag), std::move(acc),
                                      q->keys[idx - 1], c);
        }
    }
    if (!acc.empty()) {
        acc.m_min_bound = src.m_min_bound;
        acc.m_max_bound = std::min(x, src.m_max_bound);
    }
    return acc;
}

ABTree build_right_of(const ABTree& src, const std::vector<PathStep>& path,
                      std::size_t from, key_type x, WorkCounters* c) {
    ABTree acc(src.m_a, src.m_b, src.m_augmented);
    if (path.empty()) {
        return acc;
    }
    const PathStep& leaf_step = path.back();
    if (leaf_step.idx < static_cast<int>(leaf_step.node->keys.size())) {
        std::vector<key_type> elems(
            leaf_step.node->keys.begin() + leaf_step.idx,
            leaf_step.node->keys.end());
        acc = wrap_fragment(src, make_leaf(std::move(elems)), 1);
    }
    for (std::size_t i = path.size() - 1; i > from; --i) {
        const std::size_t lvl = i - 1;
        const Node* q = path[lvl].node;
        const int idx = path[lvl].idx;
        const int d = q->degree();
        if (idx == d - 1) {
            continue;
        }
        const int child_rank = static_cast<int>(path.size() - 1 - lvl);
        Node* frag_root;
        int frag_rank;
        if (idx == d - 2) {
            frag_root = q->children[d - 1];
            frag_rank = child_rank;
        } else {
            std::vector<Node*> kids(q->children.begin() + idx + 1,
                                    q->children.end());
            std::vector<key_type> routers(q->keys.begin() + idx + 1,
                                          q->keys.end());
            frag_root = make_internal(std::move(kids), std::move(routers));
            frag_rank = child_rank + 1;
        }
        ABTree frag = wrap_fragment(src, frag_root, frag_rank);
        if (acc.empty()) {
            acc = std::move(frag);
        } else {
            acc = join2_with_splitter(std::move(acc), std::move(frag),
                                      q->keys[idx], c);
        }
    }
    if (!acc.empty()) {
        acc.m_min_bound = std::max(x + 1, src.m_min_bound);
        acc.m_max_bound = src.m_max_bound;
    }
    return acc;
}

std::pair<ABTree, ABTree> split_at(ABTree t, key_type x, WorkCounters* c) {
    ABTree lo(t.m_a, t.m_b, t.m_augmented);
    ABTree hi(t.m_a, t.m_b, t.m_augmented);
    if (t.empty()) {
        return {std::move(lo), std::move(hi)};
    }
    if (x >= t.m_max_bound) {
        t.m_spines.reset();
        return {std::move(t), std::move(hi)};
    }
    if (x < t.m_min_bound) {
        t.m_spines.reset();
        return {std::move(lo), std::move(t)};
    }
    const std::vector<PathStep> path = locate_path(t, x, c);
    lo = build_left_of(t, path, 0, x, c);
    hi = build_right_of(t, path, 0, x, c);
    for (const PathStep& step : path) {
        step.node->children.clear();
        delete step.node;
    }
    t.m_root = nullptr;
    t.clear();
    return {std::move(lo), std::move(hi)};
}

namespace {

void require_ascending(const std::vector<key_type>& seq, const char* who) {
    for (std::size_t i = 1; i < seq.size(); ++i) {
        if (seq[i] <= seq[i - 1]) {
            throw std::invalid_argument(
                std::string(who) + ": batch must be strictly ascending");
        }
    }
}

}  // namespace

std::uint64_t union_sorted(ABTree& t, const std::vector<key_type>& seq,
                           WorkCounters* c) {
    require_ascending(seq, "union_sorted");
    if (seq.empty()) {
        return 0;
    }
    std::uint64_t added = 0;
    std::size_t i = 0;
    if (t.empty()) {
        t.insert(seq[0]);
        added = 1;
        i = 1;
    }
    FingerCursor cur(t, c);
    for (; i < seq.size(); ++i) {
        cur.seek(seq[i]);
        if (cur.insert_at_cursor(seq[i])) {
            ++added;
        }
    }
    cur.finish();
    if (added > 0) {
        t.m_spines.reset();
    }
    return added;
}

std::uint64_t erase_sorted(ABTree& t, const std::vector<key_type>& seq,
                           WorkCounters* c) {
    require_ascending(seq, "erase_sorted");
    if (seq.empty() || t.empty()) {
        return 0;
    }
    std::uint64_t removed = 0;
    FingerCursor cur(t, c);
    for (const key_type v : seq) {
        cur.seek(v);
        if (cur.erase_at_cursor(v)) {
            ++removed;
            if (t.empty()) {
                break;
            }
        }
    }
    cur.finish();
    if (removed > 0) {
        t.m_spines.reset();
    }
    return removed;
}

void preprocess_spines(ABTree& t, WorkCounters* c) {
    auto spines = std::make_unique<SpineIndex>();
    if (t.m_root == nullptr) {
        t.m_spines = std::move(spines);
        return;
    }
    for (int side = 0; side < 2; ++side) {
        const bool right_spine = side == 0;
        std::vector<Node*> walk;
        for (Node* n = t.m_root;;
             n = right_spine ? n->children.back() : n->children.front()) {
            walk.push_back(n);
            bump(c, &WorkCounters::visited_nodes);
            if (n->leaf) {
                break;
            }
        }
        // Bottom-up, so a parent absorbs its child's splitter (degree +1)
        // before its own turn.
        for (std::size_t i = walk.size(); i-- > 0;) {
            Node* n = walk[i];
            if (n->degree() < t.m_b) {
                continue;
            }
            NodeSplit s =
                node_split(n, right_spine ? KeepSide::right : KeepSide::left);
            bump(c, &WorkCounters::node_splits);
            Node* parent = n->parent;
            if (parent == nullptr) {
                t.m_root = make_internal({s.left, s.right}, {s.splitter});
                t.m_rank += 1;
            } else {
                const int j = child_index(parent, n);
                if (right_spine) {
                    parent->children.insert(parent->children.begin() + j,
                                            s.left);
                    parent->keys.insert(parent->keys.begin() + j, s.splitter);
                } else {
                    parent->children.insert(parent->children.begin() + j + 1,
                                            s.right);
                    parent->keys.insert(parent->keys.begin() + j, s.splitter);
                }
            }
        }
    }
    for (int side = 0; side < 2; ++side) {
        std::vector<Node*> slots(t.m_rank, nullptr);
        Node* n = t.m_root;
        for (int r = t.m_rank; r >= 1; --r) {
            slots[r - 1] = n;
            if (!n->leaf) {
                n = side == 0 ? n->children.back() : n->children.front();
            }
        }
        (side == 0 ? spines->right : spines->left)
            .reset_single(std::move(slots));
    }
    t.m_spines = std::move(spines);
}

}  // namespace abtree
