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

#include <vector>

#include "abtree/counters.hpp"
#include "abtree/tree.hpp"

namespace abtree {

/**
 * A root-to-leaf finger into a tree. seek() moves the cursor to the leaf
 * covering a key by climbing to the lowest covering ancestor and descending
 * again, so a sorted sequence of k operations on an m-element tree enters
 * O(k * (1 + log(m/k))) nodes total (each enter bumps visited_nodes).
 *
 * The path only records upper bounds, so between finish() calls the sought
 * keys must be ascending; the first seek on a fresh cursor is unrestricted
 * (it descends from the root).
 *
 * Each path entry carries the inclusive upper bound of the node's key range.
 * Rebalancing keeps the path valid: splits repair the entry of the half the
 * cursor went to, deletion fuses/borrows always keep the path node object
 * alive, and bounds only ever go stale towards smaller values, which merely
 * costs an extra climb later, never a wrong descent.
 *
 * Subtree sizes of augmented trees are recomputed from the children whenever
 * the cursor exits a node (and by the rebalancing itself), so on-path nodes
 * are stale only while the cursor is below them; finish() flushes the rest.
 * Callers must invoke finish() before using the tree again.
 */
class FingerCursor {
  public:
    FingerCursor(ABTree& tree, WorkCounters* counters)
        : m_tree(tree), m_counters(counters) {}

    // Move the cursor to the leaf whose key range covers v.
    void seek(key_type v);
    // Insert/erase v at the current leaf. seek(v) must have run before.
    bool insert_at_cursor(key_type v);
    bool erase_at_cursor(key_type v);
    // Pop the whole path, flushing subtree-size recomputation to the root.
    void finish();

    bool at_leaf() const { return !m_path.empty() && m_path.back().node->leaf; }

  private:
    struct PathEntry {
        Node* node;
        key_type ub;  // inclusive upper bound of the node's key range
    };

    ABTree& m_tree;
    WorkCounters* m_counters;
    std::vector<PathEntry> m_path;

    void descend(key_type v);
    void exit_top();
    void split_cascade(key_type inserted);
    void underflow_cascade();
};

}  // namespace abtree
