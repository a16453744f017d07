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
#include "abtree/finger.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace abtree {

namespace {
constexpr key_type kNoBound = std::numeric_limits<key_type>::max();
}

void FingerCursor::seek(key_type v) {
    assert(m_tree.m_root != nullptr);
    if (m_path.empty()) {
        m_path.push_back({m_tree.m_root, kNoBound});
        bump(m_counters, &WorkCounters::visited_nodes);
        descend(v);
        return;
    }
    // Climb to the lowest ancestor whose range still covers v. The root
    // entry covers everything and is never popped.
    while (m_path.size() > 1 && v > m_path.back().ub) {
        exit_top();
    }
    descend(v);
}

void FingerCursor::descend(key_type v) {
    while (!m_path.back().node->leaf) {
        Node* n = m_path.back().node;
        const int idx = route_child(n, v);
        const key_type ub =
            idx < n->degree() - 1 ? n->keys[idx] : m_path.back().ub;
        m_path.push_back({n->children[idx], ub});
        bump(m_counters, &WorkCounters::visited_nodes);
    }
}

void FingerCursor::exit_top() {
    Node* n = m_path.back().node;
    m_path.pop_back();
    if (m_tree.m_augmented) {
        recompute_size(n);
    }
    bump(m_counters, &WorkCounters::visited_nodes);
}

void FingerCursor::finish() {
    while (!m_path.empty()) {
        Node* n = m_path.back().node;
        m_path.pop_back();
        if (m_tree.m_augmented) {
            recompute_size(n);
        }
    }
}

bool FingerCursor::insert_at_cursor(key_type v) {
    assert(at_leaf());
    Node* leaf = m_path.back().node;
    auto it = std::lower_bound(leaf->keys.begin(), leaf->keys.end(), v);
    if (it != leaf->keys.end() && *it == v) {
        return false;
    }
    leaf->keys.insert(it, v);
    m_tree.m_size += 1;
    if (m_tree.m_size == 1) {
        m_tree.m_min_bound = m_tree.m_max_bound = v;
    } else {
        m_tree.m_min_bound = std::min(m_tree.m_min_bound, v);
        m_tree.m_max_bound = std::max(m_tree.m_max_bound, v);
    }
    split_cascade(v);
    return true;
}

void FingerCursor::split_cascade(key_type inserted) {
    // Splits run over a contiguous bottom prefix of the path, so every
    // recomputed half reads exact children (off-path nodes are exact, the
    // on-path child was just recomputed by its own split or is the leaf).
    for (int level = static_cast<int>(m_path.size()) - 1; level >= 0; --level) {
        Node* n = m_path[level].node;
        if (n->degree() <= m_tree.m_b) {
            break;
        }
        NodeSplit s = node_split(n, KeepSide::right);
        bump(m_counters, &WorkCounters::node_splits);
        // Which half is the cursor under now?
        bool went_left;
        if (level == static_cast<int>(m_path.size()) - 1) {
            went_left = inserted <= s.splitter;
        } else {
            went_left = m_path[level + 1].node->parent == s.left;
        }
        if (level == 0) {
            Node* new_root = make_internal({s.left, s.right}, {s.splitter});
            m_tree.m_root = new_root;
            m_tree.m_rank += 1;
            m_path.insert(m_path.begin(), {new_root, kNoBound});
            level += 1;
        } else {
            Node* p = m_path[level - 1].node;
            const int j = child_index(p, n);
            p->children.insert(p->children.begin() + j, s.left);
            p->keys.insert(p->keys.begin() + j, s.splitter);
        }
        if (went_left) {
            m_path[level] = {s.left, s.splitter};
        }
    }
}

bool FingerCursor::erase_at_cursor(key_type v) {
    assert(at_leaf());
    Node* leaf = m_path.back().node;
    auto it = std::lower_bound(leaf->keys.begin(), leaf->keys.end(), v);
    if (it == leaf->keys.end() || *it != v) {
        return false;
    }
    leaf->keys.erase(it);
    m_tree.m_size -= 1;
    const bool was_min = v == m_tree.m_min_bound;
    const bool was_max = v == m_tree.m_max_bound;

    if (m_tree.m_size == 0) {
        // v was the last element; the leaf is the root.
        m_path.clear();
        m_tree.clear();
        return true;
    }
    underflow_cascade();

    // v being the tree minimum (maximum) means the cursor leaf was the
    // leftmost (rightmost) leaf, and rebalancing kept the surviving content
    // in the path's leaf object, so the new extreme is right here.
    Node* surviving = m_path.back().node;
    if (was_min) {
        m_tree.m_min_bound = surviving->keys.front();
    }
    if (was_max) {
        m_tree.m_max_bound = surviving->keys.back();
    }
    return true;
}

void FingerCursor::underflow_cascade() {
    for (int level = static_cast<int>(m_path.size()) - 1; level > 0; --level) {
        Node* n = m_path[level].node;
        if (n->degree() >= m_tree.m_a) {
            break;
        }
        Node* p = m_path[level - 1].node;
        const int j = child_index(p, n);
        if (j > 0) {
            Node* sib = p->children[j - 1];
            if (sib->degree() > m_tree.m_a) {
                // Borrow the left sibling's last child/element.
                if (n->leaf) {
                    n->keys.insert(n->keys.begin(), sib->keys.back());
                    sib->keys.pop_back();
                } else {
                    Node* moved = sib->children.back();
                    sib->children.pop_back();
                    n->children.insert(n->children.begin(), moved);
                    moved->parent = n;
                    n->keys.insert(n->keys.begin(), p->keys[j - 1]);
                    p->keys[j - 1] = sib->keys.back();
                    sib->keys.pop_back();
                }
                if (n->leaf) {
                    p->keys[j - 1] = sib->keys.back();
                }
                recompute_size(sib);
                recompute_size(n);
                return;
            }
            // Fuse with the left sibling; the path node survives.
            node_fuse(sib, n, p->keys[j - 1], KeepSide::right);
            bump(m_counters, &WorkCounters::node_fuses);
            p->children.erase(p->children.begin() + (j - 1));
            p->keys.erase(p->keys.begin() + (j - 1));
            delete sib;
        } else {
            Node* sib = p->children[1];
            if (sib->degree() > m_tree.m_a) {
                // Borrow the right sibling's first child/element. This can
                // only raise n's true upper bound, so the stale path bound
                // stays conservative.
                if (n->leaf) {
                    n->keys.push_back(sib->keys.front());
                    sib->keys.erase(sib->keys.begin());
                    p->keys[0] = n->keys.back();
                } else {
                    Node* moved = sib->children.front();
                    sib->children.erase(sib->children.begin());
                    n->children.push_back(moved);
                    moved->parent = n;
                    n->keys.push_back(p->keys[0]);
                    p->keys[0] = sib->keys.front();
                    sib->keys.erase(sib->keys.begin());
                }
                recompute_size(sib);
                recompute_size(n);
                return;
            }
            // Fuse with the right sibling; the path node survives.
            node_fuse(n, sib, p->keys[0], KeepSide::left);
            bump(m_counters, &WorkCounters::node_fuses);
            p->children.erase(p->children.begin() + 1);
            p->keys.erase(p->keys.begin());
            delete sib;
        }
    }
    // A fuse at the top may leave a degree-1 internal root.
    while (!m_tree.m_root->leaf && m_tree.m_root->degree() == 1) {
        Node* old = m_tree.m_root;
        m_tree.m_root = old->children[0];
        m_tree.m_root->parent = nullptr;
        old->children.clear();
        delete old;
        m_tree.m_rank -= 1;
        assert(m_path.front().node == old);
        m_path.erase(m_path.begin());
        m_path.front().ub = kNoBound;
    }
}

}  // namespace abtree
