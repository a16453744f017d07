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

namespace abtree {

using key_type = std::uint64_t;

/**
 * A node of a weak (a,b)-tree, b >= 2a. Elements live in the leaves; internal
 * nodes store router keys. Degree means child count for internal nodes and
 * element count for leaves.
 *
 * Key order invariant: keys are strictly ascending within a node, and for an
 * internal node keys[i] is >= every key below children[i] and < every key
 * below children[i+1]. Routers are exact subtree maxima when created and may
 * only become stale towards smaller values (after deletions), which keeps
 * them valid separators.
 */
struct Node {
    Node* parent = nullptr;
    // Elements stored below this node. Maintained for internal nodes of
    // augmented trees; leaves always derive it from keys.size().
    std::uint64_t subtree_size = 0;
    bool leaf = true;
    std::vector<key_type> keys;
    std::vector<Node*> children;  // empty iff leaf

    int degree() const {
        return leaf ? static_cast<int>(keys.size()) : static_cast<int>(children.size());
    }
};

Node* make_leaf(std::vector<key_type> elements);
// Takes ownership of the children and sets their parent pointers.
// routers.size() must equal children.size() - 1.
Node* make_internal(std::vector<Node*> children, std::vector<key_type> routers);

// Elements below n: keys.size() for a leaf, subtree_size for an internal node.
std::uint64_t node_size(const Node* n);

// n->subtree_size := sum of node_size over children. Exact iff the children
// are exact. No-op for leaves.
void recompute_size(Node* n);

void destroy_subtree(Node* n);
// Exact element count by full walk (used where subtree_size is unreliable).
std::uint64_t count_subtree(const Node* n);
Node* clone_subtree(const Node* n);
// Largest / smallest element below n, by rightmost / leftmost descent.
key_type subtree_max(const Node* n);
key_type subtree_min(const Node* n);

// Which object survives a split or fuse in place.
enum class KeepSide { left, right };

struct NodeSplit {
    Node* left;
    Node* right;
    key_type splitter;
};

/**
 * Splits a node of degree d >= 2. The left half receives the first
 * floor(d/2) children (elements for a leaf) and the right half the remaining
 * ceil(d/2); the splitter is the floor(d/2)-th key, which separates the
 * halves. With keep == right, n stays the right half and a new left sibling
 * is allocated: a node on the right spine keeps its rightmost children and
 * remains on the spine. keep == left mirrors this for the left spine.
 *
 * The new sibling copies n's parent pointer; linking it into the parent is
 * the caller's job. Both halves get their subtree_size recomputed.
 */
NodeSplit node_split(Node* n, KeepSide keep = KeepSide::right);

/**
 * Fuses two nodes of the same kind into one. left_part's content precedes
 * right_part's; for internal nodes the splitter becomes the router between
 * the two child groups (it must be >= left_part's keys and < right_part's),
 * for leaves it is dropped. The object named by keep survives and holds the
 * whole content; the other is emptied and unlinked but not freed (callers
 * either delete it or defer it to a graveyard). Parent pointers of moved
 * children are updated; the parent's child array is the caller's job.
 */
Node* node_fuse(Node* left_part, Node* right_part, key_type splitter,
                KeepSide keep = KeepSide::right);

}  // namespace abtree
