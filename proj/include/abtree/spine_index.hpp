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

#include <list>
#include <vector>

#include "abtree/counters.hpp"
#include "abtree/node.hpp"

namespace abtree {

/**
 * One contiguous run of spine slots. slots[r - 1] is the spine node of rank
 * r, valid for r in [lo, hi]; hi always equals slots.size(), only the low
 * side shrinks (by raising lo, the storage stays put). Rank 1 is the leaf
 * end of the spine.
 */
struct SpineEntry {
    std::vector<Node*> slots;
    int lo = 1;
    int hi = 0;
};

/**
 * Stack of spine-slot runs for one side of a tree, lowest ranks at the
 * front, the run containing the root at the back. A freshly indexed tree has
 * a single entry [1 .. rank]; joins consume the host's low ranks (pop_to
 * plus a front shrink) and splice the attached tree's runs in front of the
 * rest, so each run is created once and discarded at most once.
 */
class SpineStack {
  public:
    bool empty() const { return m_entries.empty(); }
    // Rank of the deepest indexed node (the root), 0 when empty.
    int top_rank() const { return m_entries.empty() ? 0 : m_entries.back().hi; }

    // Replace everything with one run [1 .. spine.size()], spine[r-1] being
    // the rank-r node. A freshly built run sits at the back until joins
    // splice lower runs in front, so it never gets popped and does not count
    // as a push; only spliced runs do (see combine_prepend).
    void reset_single(std::vector<Node*> spine);

    // Drop the runs that lie entirely below rank (hi < rank).
    void pop_to(int rank, WorkCounters* c);

    // pop_to(rank), then read the slot; the front run must cover rank.
    Node* node_at(int rank, WorkCounters* c);

    // Overwrite the slot of an already covered rank.
    void set_slot(int rank, Node* n);

    // Whether some run still covers rank (slots below a popped run are gone).
    bool covers(int rank) const;

    // The attached tree supplies ranks 1 .. below_rank of the combined
    // spine: shrink the front run to [below_rank + 1, hi] and splice the
    // incoming runs in front. incoming is emptied.
    void combine_prepend(SpineStack&& incoming, int below_rank, WorkCounters* c);

    // The root gained one rank; append its slot to the deepest run.
    void extend_top(Node* new_root);

    void clear() { m_entries.clear(); }

    const std::list<SpineEntry>& entries() const { return m_entries; }

  private:
    std::list<SpineEntry> m_entries;
};

// Left and right spine stacks of one tree, attached by preprocess_spines and
// dropped by any operation that does not maintain them.
struct SpineIndex {
    SpineStack left;
    SpineStack right;
};

}  // namespace abtree
