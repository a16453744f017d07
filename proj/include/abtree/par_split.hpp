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
#include "abtree/seq_ops.hpp"
#include "abtree/tree.hpp"

namespace abtree {

/**
 * One separator's share of a multi-way split: the leaf holding the greatest
 * key <= separator, the full root-to-leaf path to it, and the fork where
 * that path parts from the previous separator's path.
 *
 * Invariants: leaf == path.back().node; path.back().idx is the first
 * position in the leaf whose key exceeds the separator; fork lies on this
 * path and on the previous one (nullptr for the first separator, whose
 * notional fork sits above the root).
 */
struct SplitTask {
    int worker = 0;
    key_type separator = 0;
    Node* leaf = nullptr;
    Node* fork = nullptr;
    std::vector<PathStep> path;
    bool below_min = false;  // no key <= separator; path pins the leftmost leaf
};

/**
 * Predecessor locate: the leaf with the greatest key <= s plus the descent
 * path to it. When s is below every key there is no predecessor; the
 * returned path pins the leftmost leaf and below_min is set (a split there
 * produces an empty left part). The recorded child indices cut the tree
 * exactly at s: everything left of the path is <= s, everything right > s.
 * Throws std::invalid_argument on an empty tree.
 */
SplitTask locate_leaf_le(const ABTree& t, key_type s, WorkCounters* c = nullptr);

/**
 * Splits t into seps.size() + 1 trees; tree i holds the keys in
 * (seps[i-1], seps[i]], reading the missing end separators as -infinity and
 * +infinity. Empty outputs are legal. seps must be strictly ascending
 * (std::invalid_argument otherwise).
 *
 * Workers never write to a node of t: pieces are assembled from freshly
 * built nodes plus relinked off-path subtrees, and the consumed path nodes
 * are released only after every piece stands (one barrier), each node by
 * exactly one worker. With more pieces than workers the split first runs
 * parallel at the worker-share boundaries, then each worker finishes its
 * share with sequential split_at calls. The output element sets do not
 * depend on the worker count or scheduling; with augmentation on, every
 * output carries exact subtree sizes.
 *
 * Work is O(k * rank(t)) nodes visited for k pieces.
 */
std::vector<ABTree> par_split(ABTree t, const std::vector<key_type>& seps,
                              int workers, WorkCounters* c = nullptr);

}  // namespace abtree
