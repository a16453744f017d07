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
#include "abtree/node.hpp"

#include <cassert>
#include <stdexcept>
#include <utility>

namespace abtree {

Node* make_leaf(std::vector<key_type> elements) {
    Node* n = new Node();
    n->leaf = true;
    n->keys = std::move(elements);
    n->subtree_size = n->keys.size();
    return n;
}

Node* make_internal(std::vector<Node*> children, std::vector<key_type> routers) {
    if (children.size() != routers.size() + 1) {
        throw std::invalid_argument("make_internal: need children.size() == routers.size() + 1");
    }
    Node* n = new Node();
    n->leaf = false;
    n->children = std::move(children);
    n->keys = std::move(routers);
    for (Node* c : n->children) {
        c->parent = n;
    }
    recompute_size(n);
    return n;
}

std::uint64_t node_size(const Node* n) {
    return n->leaf ? n->keys.size() : n->subtree_size;
}

void recompute_size(Node* n) {
    if (n->leaf) {
        n->subtree_size = n->keys.size();
        return;
    }
    std::uint64_t total = 0;
    for (const Node* c : n->children) {
        total += node_size(c);
    }
    n->subtree_size = total;
}

void destroy_subtree(Node* n) {
    if (n == nullptr) {
        return;
    }
    for (Node* c : n->children) {
        destroy_subtree(c);
    }
    delete n;
}

std::uint64_t count_subtree(const Node* n) {
    if (n == nullptr) {
        return 0;
    }
    if (n->leaf) {
        return n->keys.size();
    }
    std::uint64_t total = 0;
    for (const Node* c : n->children) {
        total += count_subtree(c);
    }
    return total;
}

Node* clone_subtree(const Node* n) {
    if (n == nullptr) {
        return nullptr;
    }
    Node* copy = new Node();
    copy->leaf = n->leaf;
    copy->keys = n->keys;
    copy->subtree_size = n->subtree_size;
    copy->children.reserve(n->children.size());
    for (const Node* c : n->children) {
        Node* cc = clone_subtree(c);
        cc->parent = copy;
        copy->children.push_back(cc);
    }
    return copy;
}

key_type subtree_max(const Node* n) {
    while (!n->leaf) {
        n = n->children.back();
    }
    assert(!n->keys.empty());
    return n->keys.back();
}

key_type subtree_min(const Node* n) {
    while (!n->leaf) {
        n = n->children.front();
    }
    assert(!n->keys.empty());
    return n->keys.front();
}

NodeSplit node_split(Node* n, KeepSide keep) {
    const int d = n->degree();
    if (d < 2) {
        throw std::invalid_argument("node_split: degree must be at least 2");
    }
    const int h = d / 2;  // left half gets the first floor(d/2) children
    Node* other = new Node();
    other->leaf = n->leaf;
    other->parent = n->parent;
    key_type splitter;

    if (n->leaf) {
        splitter = n->keys[h - 1];
        if (keep == KeepSide::right) {
            other->keys.assign(n->keys.begin(), n->keys.begin() + h);
            n->keys.erase(n->keys.begin(), n->keys.begin() + h);
        } else {
            other->keys.assign(n->keys.begin() + h, n->keys.end());
            n->keys.resize(h);
        }
    } else {
        // Left half: children[0..h), routers between them = keys[0..h-1).
        // keys[h-1] becomes the splitter; the right half keeps the rest.
        splitter = n->keys[h - 1];
        if (keep == KeepSide::right) {
            other->children.assign(n->children.begin(), n->children.begin() + h);
            other->keys.assign(n->keys.begin(), n->keys.begin() + (h - 1));
            n->children.erase(n->children.begin(), n->children.begin() + h);
            n->keys.erase(n->keys.begin(), n->keys.begin() + h);
        } else {
            other->children.assign(n->children.begin() + h, n->children.end());
            other->keys.assign(n->keys.begin() + h, n->keys.end());
            n->children.resize(h);
            n->keys.resize(h - 1);
        }
        for (Node* c : other->children) {
            c->parent = other;
        }
    }
    recompute_size(other);
    recompute_size(n);
    return keep == KeepSide::right ? NodeSplit{other, n, splitter}
                                   : NodeSplit{n, other, splitter};
}

Node* node_fuse(Node* left_part, Node* right_part, key_type splitter, KeepSide keep) {
    if (left_part->leaf != right_part->leaf) {
        throw std::invalid_argument("node_fuse: cannot fuse a leaf with an internal node");
    }
    if (!left_part->keys.empty() && splitter < left_part->keys.back()) {
        throw std::invalid_argument("node_fuse: splitter below left part's keys");
    }
    if (!right_part->keys.empty() && splitter >= right_part->keys.front() && !right_part->leaf) {
        throw std::invalid_argument("node_fuse: splitter not below right part's routers");
    }
    if (right_part->leaf && !right_part->keys.empty() && splitter >= right_part->keys.front()) {
        throw std::invalid_argument("node_fuse: splitter not below right part's elements");
    }

    Node* survivor = keep == KeepSide::right ? right_part : left_part;
    Node* absorbed = keep == KeepSide::right ? left_part : right_part;

    std::vector<key_type> keys;
    keys.reserve(left_part->keys.size() + right_part->keys.size() + 1);
    keys.insert(keys.end(), left_part->keys.begin(), left_part->keys.end());
    if (!left_part->leaf) {
        keys.push_back(splitter);
    }
    keys.insert(keys.end(), right_part->keys.begin(), right_part->keys.end());

    std::vector<Node*> children;
    children.reserve(left_part->children.size() + right_part->children.size());
    children.insert(children.end(), left_part->children.begin(), left_part->children.end());
    children.insert(children.end(), right_part->children.begin(), right_part->children.end());

    survivor->keys = std::move(keys);
    survivor->children = std::move(children);
    for (Node* c : survivor->children) {
        c->parent = survivor;
    }
    recompute_size(survivor);

    absorbed->keys.clear();
    absorbed->children.clear();
    absorbed->subtree_size = 0;
    return survivor;
}

}  // namespace abtree
