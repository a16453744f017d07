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

#include <cstdint>
#include <utility>
#include <vector>

#include "abtree/counters.hpp"
#include "abtree/tree.hpp"

namespace abtree {

/**
 * Joins two key-disjoint trees (every key of left < every key of right) into
 * one. Checks the precondition by an O(rank) min/max walk and throws
 * std::invalid_argument on overlap or on mismatched (a, b, augmented)
 * parameters. The shorter tree is attached onto the taller one's inner
 * spine; the join_descents counter grows by exactly the rank difference.
 * Subtree sizes are maintained for augmented trees (an O(rank) ancestor
 * walk; this is why the work-optimal joins give the flag up). The result
 * carries no spine index.
 */
ABTree join2(ABTree left, ABTree right, WorkCounters* c = nullptr);

/**
 * join2 without the overlap walk, for callers whose handles already carry
 * separating bounds: requires left.m_max_bound < right.m_min_bound (checked
 * by assert only) and uses left.m_max_bound as the splitter.
 */
ABTree join2_bounded(ABTree left, ABTree right, WorkCounters* c = nullptr);

/**
 * Join core with an explicit splitter (>= every left key, < every right
 * key; both trees non-empty). The handle bounds are not read.
 */
ABTree join2_with_splitter(ABTree left, ABTree right, key_type splitter,
                           WorkCounters* c = nullptr);

/**
 * Splits a tree at x: first tree of the pair holds the elements <= x, the
 * second the elements > x. The input is consumed; off-path subtrees are
 * relinked into the outputs, the O(rank) path fragments are rejoined in
 * increasing-rank order. For non-augmented trees the output sizes come from
 * one extra counting walk.
 */
std::pair<ABTree, ABTree> split_at(ABTree t, key_type x,
                                   WorkCounters* c = nullptr);

/**
 * Inserts a strictly ascending batch through one finger cursor; returns how
 * many keys were actually new. A batch of k keys into an m-element tree
 * enters O(k * (1 + log(m/k))) nodes (visited_nodes counter). Throws on an
 * unsorted batch.
 */
std::uint64_t union_sorted(ABTree& t, const std::vector<key_type>& seq,
                           WorkCounters* c = nullptr);

// Deleting twin of union_sorted; returns how many keys were present.
std::uint64_t erase_sorted(ABTree& t, const std::vector<key_type>& seq,
                           WorkCounters* c = nullptr);

/**
 * Splits every degree-b node on the left and right spine (bottom-up, so a
 * parent absorbs its child's splitter before being examined) and attaches a
 * fresh SpineIndex to the tree. After this the tree is "preprocessed": ready
 * for the constant-time join machinery.
 */
void preprocess_spines(ABTree& t, WorkCounters* c = nullptr);

/**
 * Left-to-right fold of constant-time joins over preprocessed, key-disjoint,
 * ascending trees. Requires every input preprocessed and adjacent handle
 * bounds separated; throws otherwise. Across one call the degree-b spine
 * splits are bounded by 2 * (number of trees) and stack pops never exceed
 * stack pushes. The result keeps its spine index but reports
 * augmented() == false: the constant-time joins cannot maintain sizes.
 */
ABTree join_many_seq(std::vector<ABTree> ts, WorkCounters* c = nullptr);

// One step of a root-to-leaf descent: the node and the child index the
// descent took (for the leaf step, idx = number of elements <= the key).
struct PathStep {
    Node* node;
    int idx;
};

// Covering root-to-leaf path for x (the leaf whose key range contains x),
// bumping visited_nodes per node entered.
std::vector<PathStep> locate_path(const ABTree& t, key_type x,
                                  WorkCounters* c = nullptr);

/**
 * Tree of every element <= x (build_left_of) or > x (build_right_of)
 * hanging off path[from..]: per path node the children on that side of the
 * descent plus their routers become a fragment, fragments are joined in
 * increasing-rank order. Off-path subtrees are relinked, not copied; the
 * path nodes themselves are left untouched, so the caller still owns and
 * must free them. Handle bounds of the result are set from x and src's
 * bounds.
 */
ABTree build_left_of(const ABTree& src, const std::vector<PathStep>& path,
                     std::size_t from, key_type x, WorkCounters* c = nullptr);
ABTree build_right_of(const ABTree& src, const std::vector<PathStep>& path,
                      std::size_t from, key_type x, WorkCounters* c = nullptr);

// Wraps a detached subtree into a handle with src's parameters. m_size is
// exact (counted when src is not augmented); bounds stay at their defaults,
// the caller sets them.
ABTree wrap_fragment(const ABTree& src, Node* root, int rank);

}  // namespace abtree
