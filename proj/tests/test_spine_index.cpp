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
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "abtree/counters.hpp"
#include "abtree/spine_index.hpp"
#include "doctest.h"
#include "oracle.hpp"

namespace abtree::testing {
namespace {

// Distinct placeholder nodes; the stack never dereferences them.
struct Arena {
    std::vector<std::unique_ptr<Node>> own;

    std::vector<Node*> fresh(int count) {
        std::vector<Node*> v;
        for (int i = 0; i < count; ++i) {
            own.push_back(std::make_unique<Node>());
            v.push_back(own.back().get());
        }
        return v;
    }
};

std::vector<std::pair<int, int>> layout(const SpineStack& st) {
    std::vector<std::pair<int, int>> got;
    for (const SpineEntry& e : st.entries()) {
        got.push_back({e.lo, e.hi});
    }
    return got;
}

TEST_CASE("spine stack replays the staircase of pops and pushes") {
    // Host of rank 9; trees of rank 3, 2, 5, 6 joined onto it. The first
    // two joins only push runs, the rank-5 join pops both of them back off
    // and pushes its own run, the rank-6 join pops that one again.
    Arena arena;
    WorkCounters c;
    SpineStack host;
    host.reset_single(arena.fresh(9));

    struct Step {
        int rank;
        std::vector<std::pair<int, int>> expected;
        std::uint64_t pops;
        std::uint64_t pushes;
    };
    const Step steps[] = {
        {3, {{1, 3}, {4, 9}}, 0, 1},
        {2, {{1, 2}, {3, 3}, {4, 9}}, 0, 2},
        {5, {{1, 5}, {6, 9}}, 2, 3},
        {6, {{1, 6}, {7, 9}}, 3, 4},
    };
    for (const Step& s : steps) {
        host.pop_to(s.rank + 1, &c);
        SpineStack incoming;
        incoming.reset_single(arena.fresh(s.rank));
        host.combine_prepend(std::move(incoming), s.rank, &c);
        CHECK(layout(host) == s.expected);
        CHECK(c.stack_pops.load() == s.pops);
        CHECK(c.stack_pushes.load() == s.pushes);
    }
    CHECK(c.stack_combines.load() == 4);
    CHECK(c.stack_pops.load() <= c.stack_pushes.load());

    // Rank 4 resolves through the run spliced by the rank-6 join (arena
    // order: host run first, then 3 + 2 + 5 + 6 incoming nodes). Rank 8
    // pops that run and resolves through the host's own build run.
    CHECK(host.node_at(4, &c) == arena.own[9 + 3 + 2 + 5 + 3].get());
    CHECK(host.node_at(8, &c) == arena.own[7].get());
}

TEST_CASE("spine stack seeds and grows") {
    Arena arena;
    SpineStack st;
    CHECK(st.empty());
    CHECK(st.top_rank() == 0);
    auto run = arena.fresh(3);
    st.reset_single(run);
    CHECK(st.top_rank() == 3);
    CHECK(st.node_at(1, nullptr) == run[0]);
    CHECK(st.node_at(3, nullptr) == run[2]);

    auto grown = arena.fresh(1);
    st.extend_top(grown[0]);
    CHECK(st.top_rank() == 4);
    CHECK(st.node_at(4, nullptr) == grown[0]);

    auto patch = arena.fresh(1);
    st.set_slot(2, patch[0]);
    CHECK(st.node_at(2, nullptr) == patch[0]);
}

TEST_CASE("spine stack coverage stays contiguous under random join traffic") {
    auto rng = make_rng(0x51de);
    for (int trial = 0; trial < 120; ++trial) {
        Arena arena;
        WorkCounters c;
        int top = 2 + static_cast<int>(rng() % 11);
        SpineStack st;
        std::map<int, Node*> expect;
        {
            auto run = arena.fresh(top);
            for (int r = 1; r <= top; ++r) {
                expect[r] = run[r - 1];
            }
            st.reset_single(std::move(run));
        }
        for (int step = 0; step < 40; ++step) {
            const int choice = static_cast<int>(rng() % 4);
            if (choice == 0) {
                // root growth
                auto grown = arena.fresh(1);
                st.extend_top(grown[0]);
                top += 1;
                expect[top] = grown[0];
            } else {
                // a join at rank r: find the parent, splice the incoming run
                const int r = 1 + static_cast<int>(rng() % (top - 1));
                st.pop_to(r + 1, &c);
                SpineStack incoming;
                auto run = arena.fresh(r);
                for (int q = 1; q <= r; ++q) {
                    expect[q] = run[q - 1];
                }
                incoming.reset_single(std::move(run));
                st.combine_prepend(std::move(incoming), r, &c);
            }
            // Walk every run: intervals must tile [front.lo .. top] without
            // gaps and each in-interval slot must hold the expected node.
            int next_lo = -1;
            for (const SpineEntry& e : st.entries()) {
                CHECK(e.lo <= e.hi);
                CHECK(e.hi == static_cast<int>(e.slots.size()));
                if (next_lo != -1) {
                    CHECK(e.lo == next_lo);
                }
                next_lo = e.hi + 1;
                for (int q = e.lo; q <= e.hi; ++q) {
                    CHECK(e.slots[q - 1] == expect[q]);
                }
            }
            CHECK(st.top_rank() == top);
        }
        CHECK(c.stack_pops.load() <= c.stack_pushes.load());
    }
}

}  // namespace
}  // namespace abtree::testing
