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

#include <atomic>
#include <cstdint>

namespace abtree {

// Plain copy of the counter values, safe to compare and print.
struct CounterSnapshot {
    std::uint64_t visited_nodes = 0;
    std::uint64_t node_splits = 0;
    std::uint64_t bchain_splits = 0;
    std::uint64_t node_fuses = 0;
    std::uint64_t join_descents = 0;
    std::uint64_t stack_pops = 0;
    std::uint64_t stack_pushes = 0;
    std::uint64_t stack_combines = 0;
    std::uint64_t ppj_rounds = 0;
    std::uint64_t pj_iterations = 0;
    std::uint64_t pj_steals = 0;
};

/**
 * Work tallies shared by all operations. Counters are atomics with relaxed
 * ordering so parallel phases can bump them without further synchronization;
 * totals are exact because every phase ends in a barrier.
 *
 * visited_nodes  every node a walk enters (descent steps, finger ascents,
 *                split-path visits). Rebalancing does not re-count nodes.
 * node_splits    all node splits, including rebalancing cascades.
 * bchain_splits  splits of degree-b spine nodes done by the preprocessed
 *                join machinery (chain splits and root pre-splits).
 * node_fuses     node fuses (joins and delete rebalancing).
 * join_descents  spine descent steps of join2; per invocation this is
 *                exactly the rank difference of the joined trees.
 * stack_pops     entries removed from spine stacks by pop_to.
 * stack_pushes   entries pushed onto spine stacks by combine.
 * stack_combines combine operations on spine stacks.
 * ppj_rounds     barrier rounds of pairwise_par_join.
 * pj_iterations  iterations of lightweight_par_join.
 * pj_steals      subtree steals inside lightweight_par_join.
 */
struct WorkCounters {
    std::atomic<std::uint64_t> visited_nodes{0};
    std::atomic<std::uint64_t> node_splits{0};
    std::atomic<std::uint64_t> bchain_splits{0};
    std::atomic<std::uint64_t> node_fuses{0};
    std::atomic<std::uint64_t> join_descents{0};
    std::atomic<std::uint64_t> stack_pops{0};
    std::atomic<std::uint64_t> stack_pushes{0};
    std::atomic<std::uint64_t> stack_combines{0};
    std::atomic<std::uint64_t> ppj_rounds{0};
    std::atomic<std::uint64_t> pj_iterations{0};
    std::atomic<std::uint64_t> pj_steals{0};

    void reset() {
        visited_nodes = 0;
        node_splits = 0;
        bchain_splits = 0;
        node_fuses = 0;
        join_descents = 0;
        stack_pops = 0;
        stack_pushes = 0;
        stack_combines = 0;
        ppj_rounds = 0;
        pj_iterations = 0;
        pj_steals = 0;
    }

    CounterSnapshot snapshot() const {
        CounterSnapshot s;
        s.visited_nodes = visited_nodes.load(std::memory_order_relaxed);
        s.node_splits = node_splits.load(std::memory_order_relaxed);
        s.bchain_splits = bchain_splits.load(std::memory_order_relaxed);
        s.node_fuses = node_fuses.load(std::memory_order_relaxed);
        s.join_descents = join_descents.load(std::memory_order_relaxed);
        s.stack_pops = stack_pops.load(std::memory_order_relaxed);
        s.stack_pushes = stack_pushes.load(std::memory_order_relaxed);
        s.stack_combines = stack_combines.load(std::memory_order_relaxed);
        s.ppj_rounds = ppj_rounds.load(std::memory_order_relaxed);
        s.pj_iterations = pj_iterations.load(std::memory_order_relaxed);
        s.pj_steals = pj_steals.load(std::memory_order_relaxed);
        return s;
    }
};

// Null-safe relaxed increment.
inline void bump(WorkCounters* c, std::atomic<std::uint64_t> WorkCounters::*field,
                 std::uint64_t delta = 1) {
    if (c != nullptr) {
        (c->*field).fetch_add(delta, std::memory_order_relaxed);
    }
}

}  // namespace abtree
