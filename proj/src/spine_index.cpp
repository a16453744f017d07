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
#include "abtree/spine_index.hpp"

#include <cassert>
#include <utility>

namespace abtree {

void SpineStack::reset_single(std::vector<Node*> spine) {
    m_entries.clear();
    SpineEntry e;
    e.lo = 1;
    e.hi = static_cast<int>(spine.size());
    e.slots = std::move(spine);
    m_entries.push_back(std::move(e));
}

void SpineStack::pop_to(int rank, WorkCounters* c) {
    while (!m_entries.empty() && m_entries.front().hi < rank) {
        m_entries.pop_front();
        bump(c, &WorkCounters::stack_pops);
    }
}

Node* SpineStack::node_at(int rank, WorkCounters* c) {
    pop_to(rank, c);
    assert(!m_entries.empty());
    const SpineEntry& e = m_entries.front();
    assert(e.lo <= rank && rank <= e.hi);
    return e.slots[rank - 1];
}

void SpineStack::set_slot(int rank, Node* n) {
    for (SpineEntry& e : m_entries) {
        if (rank <= e.hi) {
            assert(e.lo <= rank);
            e.slots[rank - 1] = n;
            return;
        }
    }
    assert(false && "set_slot: rank not covered");
}

bool SpineStack::covers(int rank) const {
    for (const SpineEntry& e : m_entries) {
        if (rank <= e.hi) {
            return rank >= e.lo;
        }
    }
    return false;
}

void SpineStack::combine_prepend(SpineStack&& incoming, int below_rank,
                                 WorkCounters* c) {
    assert(incoming.top_rank() == below_rank);
    if (!m_entries.empty()) {
        SpineEntry& front = m_entries.front();
        assert(front.hi > below_rank);
        if (front.lo <= below_rank) {
            front.lo = below_rank + 1;
        }
    }
    bump(c, &WorkCounters::stack_pushes, incoming.m_entries.size());
    bump(c, &WorkCounters::stack_combines);
    m_entries.splice(m_entries.begin(), incoming.m_entries);
}

void SpineStack::extend_top(Node* new_root) {
    assert(!m_entries.empty());
    SpineEntry& back = m_entries.back();
    back.slots.push_back(new_root);
    back.hi += 1;
}

}  // namespace abtree
