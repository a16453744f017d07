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
 * All elements in ascending order. With size augmentation each worker
 * computes its contiguous slot of the output by rank arithmetic, descends to
 * its first leaf, and walks leaf successors; without augmentation the walk
 * is sequential. The sequence never depends on the worker count.
 */
std::vector<key_type> to_sorted(const ABTree& t, int workers,
                                WorkCounters* c = nullptr);

/**
 * Tree holding exactly the given strictly ascending keys. The shape is a
 * deterministic function of the length and (a, b) alone: each level packs
 * ceil(count / b) nodes filled as evenly as possible (b >= 2a keeps every
 * degree legal), routers are exact subtree maxima, subtree sizes are exact.
 * Workers build disjoint node runs per level, so the shape is independent of
 * the worker count. Throws std::invalid_argument on an unsorted sequence.
 */
ABTree build_from_sorted(const std::vector<key_type>& seq, int workers,
                         int a = 4, int b = 8, bool augmented = true);

/**
 * Set union: the smaller tree (ties toward u) is read out in sorted order
 * and bulk-inserted into the larger, which is consumed and returned. The
 * result carries the larger tree's parameters.
 */
ABTree set_union(ABTree u, ABTree t, int workers, WorkCounters* c = nullptr);

/**
 * Set intersection: the smaller tree's elements (ties toward u) are probed
 * in the larger by a bulk search and the hits are rebuilt into a fresh tree
 * carrying u's parameters. Both inputs are only read.
 */
ABTree set_intersection(const ABTree& u, const ABTree& t, int workers,
                        WorkCounters* c = nullptr);

/**
 * Set difference t minus u. Consumes t (the survivors are rebuilt in place
 * through bulk deletion); callers needing t afterwards pass a clone. When u
 * is larger than t the deleted keys are first narrowed to the intersection,
 * which bounds the batch by |t|.
 */
ABTree set_difference(ABTree t, const ABTree& u, int workers,
                      WorkCounters* c = nullptr);

// Symmetric difference via (u minus t) union (t minus u); consumes both.
ABTree set_symmetric_difference(ABTree u, ABTree t, int workers,
                                WorkCounters* c = nullptr);

}  // namespace abtree
