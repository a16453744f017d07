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
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abtree/counters.hpp"
#include "abtree/node.hpp"

namespace abtree {

struct SpineIndex;  // defined in spine_index.hpp

struct ValidationReport {
    bool ok = true;
    // "rule: detail (path=i/j/k)" strings, capped to keep reports readable.
    std::vector<std::string> violations;
};

/**
 * Handle of a weak (a,b)-tree over uint64 keys with set semantics
 * (duplicate-free). Invariants:
 *   - b >= 2a, a >= 2;
 *   - every non-root node has degree in [a, b], the root has degree
 *     min(2, size) .. b;
 *   - all leaves sit at the same depth; rank(tree) = nodes on a root-to-leaf
 *     path (0 for the empty tree);
 *   - every node carries a parent pointer (root's is null);
 *   - when m_augmented is set, internal nodes carry exact subtree sizes.
 *
 * m_min_bound / m_max_bound are conservative key bounds: min_bound <= every
 * stored key <= max_bound whenever the tree is non-empty. They are exact
 * after pure insert/build/join workflows and may become loose (never wrong)
 * after deletions or subtree stealing; join preconditions and splitter
 * selection only ever need this one-sided guarantee.
 *
 * Members are public working state, shared with the operation modules and
 * the tests. Use the accessors in application code.
 */
class ABTree {
  public:
    ABTree() : ABTree(4, 8, true) {}
    ABTree(int a, int b, bool augmented = true);
    ~ABTree();

    ABTree(const ABTree&) = delete;
    ABTree& operator=(const ABTree&) = delete;
    ABTree(ABTree&& other) noexcept;
    ABTree& operator=(ABTree&& other) noexcept;

    // Deep copy of the structure; the spine index is not cloned.
    ABTree clone() const;

    // Wraps an existing node structure, computing size/rank/bounds by one
    // walk. Performs no validation, so corrupted structures can be wrapped
    // and then inspected with validate().
    static ABTree adopt_root(Node* root, int a, int b, bool augmented);

    bool insert(key_type x);             // false if already present
    bool erase(key_type x);              // false if absent
    bool contains(key_type x) const;
    std::optional<key_type> search(key_type x) const;
    // 1-based order statistic; requires augmentation.
    key_type select_ith(std::uint64_t i) const;

    ValidationReport validate() const;

    std::uint64_t size() const { return m_size; }
    bool empty() const { return m_size == 0; }
    int rank() const { return m_rank; }
    int a() const { return m_a; }
    int b() const { return m_b; }
    bool augmented() const { return m_augmented; }
    Node* root() { return m_root; }
    const Node* root() const { return m_root; }

    void clear();

    // Working state (see class comment).
    int m_a = 4;
    int m_b = 8;
    bool m_augmented = true;
    Node* m_root = nullptr;
    std::uint64_t m_size = 0;
    int m_rank = 0;
    key_type m_min_bound = 0;
    key_type m_max_bound = 0;
    std::unique_ptr<SpineIndex> m_spines;  // built by preprocess_spines
};

// Child slot an exact or predecessor search for x descends into:
// the first child whose router is >= x, else the last child.
int route_child(const Node* n, key_type x);
// Index of child c in parent p->children; asserts presence.
int child_index(const Node* p, const Node* c);

}  // namespace abtree
