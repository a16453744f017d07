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
#include <vector>

#include "abtree/counters.hpp"
#include "abtree/tree.hpp"

namespace abtree {

enum class OpKind : std::uint8_t { insert, erase };

struct BatchOp {
    key_type key = 0;
    OpKind kind = OpKind::insert;
};

/**
 * A sorted bulk-update batch. Keys must be strictly ascending, one operation
 * per key; insertions and deletions ride the same sequence (separator
 * selection and splitting look only at the keys, never at the kind).
 */
struct UpdateBatch {
    std::vector<BatchOp> ops;

    // Batch applying `kind` to every key; keys must be strictly ascending.
    static UpdateBatch from_keys(const std::vector<key_type>& keys, OpKind kind);

    std::size_t size() const { return ops.size(); }
    bool empty() const { return ops.empty(); }
};

/**
 * One slot of a separator partition: the keys greater than `lower` and at
 * most `upper`. An end without a bound flag opens at the rim of the key
 * space, so the pieces of a partition tile it completely.
 */
struct PieceRange {
    bool has_lower = false;  // when false the piece starts at the key minimum
    key_type lower = 0;      // exclusive
    bool has_upper = false;  // when false the piece runs to the key maximum
    key_type upper = 0;      // inclusive
};

/**
 * Separator set plus the piece ranges it induces: piece i covers
 * (separators[i-1], separators[i]], with open rims at both ends, so
 * pieces.size() == separators.size() + 1 always. Applying the same partition
 * to a batch and to a tree yields pairwise range-disjoint slices except for
 * the batch/tree pair of the same piece.
 */
struct SeparatorPartition {
    std::vector<key_type> separators;  // strictly ascending
    std::vector<PieceRange> pieces;

    std::size_t piece_count() const { return pieces.size(); }
};

/**
 * Quantile separators from the batch alone: with c = ceil(|I|/p), the keys
 * at 1-based positions c, 2c, ... (positions past the last key are dropped,
 * so short batches yield fewer than p - 1 separators and no piece is ever
 * empty). Every piece holds at most c batch keys. Throws on p < 1.
 */
SeparatorPartition select_uniform(const UpdateBatch& batch, int p);

/**
 * Quantile separators from both sides: the uniform batch separators merged
 * with p - 1 tree quantiles read through select_ith (1-based positions
 * ceil(|T|/p), 2*ceil(|T|/p), ...; positions past the end dropped), for at
 * most 2p - 1 pieces. Piece lower bounds are the predecessor separator found
 * by binary search in the merged set. Every piece holds at most ceil(|I|/p)
 * batch keys and at most ceil(|T|/p) tree keys. Throws std::invalid_argument
 * when the tree lacks size augmentation (the quantile descent needs it) or
 * p < 1.
 */
SeparatorPartition select_double_binary(const UpdateBatch& batch,
                                        const ABTree& t, int p);

enum class SeparatorStrategy {
    // double_binary when the batch is smaller than the tree and the tree is
    // augmented, otherwise uniform.
    automatic,
    uniform,
    double_binary,
};

// Per-phase work tallies of one bulk_update call (filled via
// BulkConfig::phases). The update field isolates the insert/union phase,
// whose visited_nodes stays within O(|I| * (1 + log(|T|/|I|))).
struct BulkPhaseCounters {
    WorkCounters split;
    WorkCounters update;
    WorkCounters join;
};

struct BulkConfig {
    // Join the pieces with the randomized local join instead of the pairwise
    // rounds. Both repair subtree sizes of augmented inputs; the pairwise
    // join is the default because it needs no spine preprocessing pass.
    bool lightweight_join = false;
    std::uint64_t join_seed = 0x9e3779b97f4a7c15ULL;
    // When set, each phase additionally tallies into its own counter here.
    BulkPhaseCounters* phases = nullptr;
};

/**
 * Applies a sorted batch of insertions and deletions in three
 * barrier-separated phases: split the tree at the partition's separators,
 * apply each piece's batch slice through a finger cursor (workers own
 * disjoint pieces), and join the pieces back. The element set of the result
 * never depends on the worker count or the strategy; with one worker and no
 * separators this degenerates to plain sequential finger batches. Subtree
 * sizes and the augmented flag survive. Throws std::invalid_argument on an
 * unsorted batch (and, for an explicit double_binary request, on a tree
 * without size augmentation).
 */
ABTree bulk_update(ABTree t, const UpdateBatch& batch, int workers,
                   SeparatorStrategy strategy = SeparatorStrategy::automatic,
                   WorkCounters* c = nullptr, const BulkConfig& config = {});

/**
 * Membership probe for an ascending key sequence: the keys are split into
 * contiguous worker shares, each worker walks its share with a read-only
 * finger cursor over the shared tree, and the hits are concatenated in share
 * order (so the result is the ascending sequence of keys present in t).
 * Never writes to the tree; safe for concurrent readers.
 */
std::vector<key_type> bulk_search(const ABTree& t,
                                  const std::vector<key_type>& keys,
                                  int workers, WorkCounters* c = nullptr);

}  // namespace abtree
