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
#include <functional>
#include <utility>
#include <vector>

#include "abtree/counters.hpp"
#include "abtree/tree.hpp"

namespace abtree {

/**
 * Shared bookkeeping for a sequence of constant-time joins.
 *
 * graveyard: nodes absorbed by fuses. They are emptied but kept alive until
 * free_graveyard(), and their parent pointer is redirected to the surviving
 * node of the same rank, so a size-repair walk that starts at (or passes)
 * a dead node hops laterally to the survivor without losing its rank.
 *
 * saved: (node, rank) pairs recorded at every join point. All nodes whose
 * subtree size went stale are ancestors of a saved node, which is what
 * repair_subtree_sizes exploits.
 */
struct JoinContext {
    WorkCounters* counters = nullptr;
    std::vector<Node*> graveyard;
    std::vector<std::pair<Node*, int>> saved;

    void free_graveyard();
};

/**
 * Splits the incoming tree's root once if it has degree b, putting a fresh
 * degree-2 root above the halves (rank + 1). Doing this before attaching the
 * tree prevents the host's degree-b chain from merging with the incoming
 * root; it is what caps chain growth at one node per join. Both spine
 * stacks are patched and extended. No-op below degree b.
 */
void pre_split_root(ABTree& t, JoinContext& ctx);

/**
 * Splits the maximal run of degree >= b nodes that starts at `bottom` and
 * continues upward along one spine (parent after parent). Splitting runs
 * top-down so every parent absorbs its child's splitter before its own
 * split; the original objects keep the spine-side half, so spine stack
 * slots stay valid. A root split grows the rank and extends both stacks.
 * Returns the number of nodes split.
 */
int split_b_chain(ABTree& t, Node* bottom, bool right_spine, JoinContext& ctx);

/**
 * Constant-time join of two preprocessed, key-disjoint trees (every key of
 * u < every key of v, witnessed by u.m_max_bound < v.m_min_bound). The
 * shorter root is pre-split at degree b, the attach parent's degree-b chain
 * is dissolved by split_b_chain, then the shorter tree is attached or (if
 * its root is thinner than a) fused with the rank-equal spine node. The
 * surviving object of a fuse is the incoming root so the combined spine
 * stacks stay valid. Apart from the chain there is no split cascade: the
 * attach parent has degree < b when the attach happens.
 *
 * Subtree sizes are not maintained; every join point lands in ctx.saved so
 * repair_subtree_sizes can fix them afterwards. Throws if either input
 * lacks a spine index or the (a, b) parameters differ.
 */
ABTree join2_preprocessed(ABTree u, ABTree v, JoinContext& ctx);

/**
 * Recomputes the subtree sizes invalidated by a join sequence: resolves
 * every saved node through the graveyard redirects, then recomputes rank
 * layer by rank layer walking parents up to the root (nodes within a layer
 * in parallel). No-op for non-augmented trees.
 */
void repair_subtree_sizes(ABTree& t, const JoinContext& ctx, int workers = 1);

/**
 * Joins k key-disjoint trees by pairing adjacent trees each round until one
 * remains: ceil(log2 k) barrier rounds (ppj_rounds counter) of plain join2.
 * Inputs need no preprocessing and augmented trees keep exact sizes; the
 * price is O(log) work per join instead of constant. Adjacent inputs must
 * carry separating handle bounds.
 */
ABTree pairwise_par_join(std::vector<ABTree> ts, int workers,
                         WorkCounters* c = nullptr);

// One round of lightweight_par_join as seen by a test observer: the rank
// snapshot the decisions were made on, the surviving initiator positions,
// the rank each join attached at, and which of them ended in a steal.
struct PJRoundInfo {
    int round;
    std::vector<int> ranks;
    std::vector<int> initiators;
    std::vector<int> targets;
    std::vector<char> stole;
};

struct PJObserver {
    std::function<void(const PJRoundInfo&)> on_round;
};

/**
 * Randomized local-synchronization join of k preprocessed, key-disjoint,
 * ascending trees. Each iteration snapshots the ranks, draws one coin bit
 * per tree from (seed, iteration, position), and lets every tree that is a
 * local rank minimum (ties broken by the coins so that no two adjacent
 * trees initiate) join into its left neighbor; the leftmost tree joins
 * rightward instead. A join whose attach parent is full does not split a
 * chain: it steals the rank-equal spine subtree, joins it with the incoming
 * tree and keeps that composite in the incoming slot, one rank taller
 * (pj_steals counter). Expected iterations are O(log m + log k)
 * (pj_iterations counter).
 *
 * The result drops its spine index (steals leave low slots stale; they are
 * provably never read because attach ranks per tree only ascend, which the
 * implementation also checks at runtime). When every input is augmented the
 * sizes are repaired afterwards and the result stays augmented.
 */
ABTree lightweight_par_join(std::vector<ABTree> ts, int workers,
                            std::uint64_t seed, WorkCounters* c = nullptr,
                            PJObserver* obs = nullptr);

/**
 * Work-optimal k-way join: preprocess all inputs, fold them sequentially in
 * groups of ceil(log2 k), preprocess the group results, finish with
 * lightweight_par_join under a fixed internal seed (deterministic output
 * shape). The result reports augmented() == false.
 */
ABTree optimal_par_join(std::vector<ABTree> ts, int workers,
                        WorkCounters* c = nullptr);

}  // namespace abtree
