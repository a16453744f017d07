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
#include "abtree/tree.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <stdexcept>
#include <utility>

#include "abtree/finger.hpp"
#include "abtree/spine_index.hpp"

namespace abtree {

ABTree::ABTree(int a, int b, bool augmented)
    : m_a(a), m_b(b), m_augmented(augmented) {
    if (a < 2 || b < 2 * a) {
        throw std::invalid_argument("ABTree: need a >= 2 and b >= 2a");
    }
}

ABTree::~ABTree() { clear(); }

ABTree::ABTree(ABTree&& other) noexcept
    : m_a(other.m_a),
      m_b(other.m_b),
      m_augmented(other.m_augmented),
      m_root(other.m_root),
      m_size(other.m_size),
      m_rank(other.m_rank),
      m_min_bound(other.m_min_bound),
      m_max_bound(other.m_max_bound),
      m_spines(std::move(other.m_spines)) {
    other.m_root = nullptr;
    other.m_size = 0;
    other.m_rank = 0;
    other.m_min_bound = 0;
    other.m_max_bound = 0;
}

ABTree& ABTree::operator=(ABTree&& other) noexcept {
    if (this != &other) {
        clear();
        m_a = other.m_a;
        m_b = other.m_b;
        m_augmented = other.m_augmented;
        m_root = other.m_root;
        m_size = other.m_size;
        m_rank = other.m_rank;
        m_min_bound = other.m_min_bound;
        m_max_bound = other.m_max_bound;
        m_spines = std::move(other.m_spines);
        other.m_root = nullptr;
        other.m_size = 0;
        other.m_rank = 0;
        other.m_min_bound = 0;
        other.m_max_bound = 0;
    }
    return *this;
}

ABTree ABTree::clone() const {
    ABTree t(m_a, m_b, m_augmented);
    t.m_root = m_root != nullptr ? clone_subtree(m_root) : nullptr;
    t.m_size = m_size;
    t.m_rank = m_rank;
    t.m_min_bound = m_min_bound;
    t.m_max_bound = m_max_bound;
    return t;
}

ABTree ABTree::adopt_root(Node* root, int a, int b, bool augmented) {
    ABTree t(a, b, augmented);
    t.m_root = root;
    if (root != nullptr) {
        root->parent = nullptr;
        t.m_size = count_subtree(root);
        int rank = 1;
        for (const Node* n = root; !n->leaf; n = n->children.front()) {
            rank += 1;
        }
        t.m_rank = rank;
        if (t.m_size > 0) {
            t.m_min_bound = subtree_min(root);
            t.m_max_bound = subtree_max(root);
        }
    }
    return t;
}

void ABTree::clear() {
    if (m_root != nullptr) {
        destroy_subtree(m_root);
        m_root = nullptr;
    }
    m_size = 0;
    m_rank = 0;
    m_min_bound = 0;
    m_max_bound = 0;
    m_spines.reset();
}

bool ABTree::insert(key_type x) {
    if (m_root == nullptr) {
        m_root = make_leaf({x});
        m_size = 1;
        m_rank = 1;
        m_min_bound = m_max_bound = x;
        return true;
    }
    FingerCursor c(*this, nullptr);
    c.seek(x);
    const bool inserted = c.insert_at_cursor(x);
    c.finish();
    if (inserted) {
        m_spines.reset();
    }
    return inserted;
}

bool ABTree::erase(key_type x) {
    if (m_root == nullptr) {
        return false;
    }
    FingerCursor c(*this, nullptr);
    c.seek(x);
    const bool erased = c.erase_at_cursor(x);
    c.finish();
    if (erased) {
        m_spines.reset();
    }
    return erased;
}

bool ABTree::contains(key_type x) const { return search(x).has_value(); }

std::optional<key_type> ABTree::search(key_type x) const {
    const Node* n = m_root;
    if (n == nullptr) {
        return std::nullopt;
    }
    while (!n->leaf) {
        n = n->children[route_child(n, x)];
    }
    const auto it = std::lower_bound(n->keys.begin(), n->keys.end(), x);
    if (it != n->keys.end() && *it == x) {
        return x;
    }
    return std::nullopt;
}

key_type ABTree::select_ith(std::uint64_t i) const {
    if (!m_augmented) {
        throw std::logic_error("select_ith: tree is not augmented");
    }
    if (i < 1 || i > m_size) {
        throw std::out_of_range("select_ith: index out of range");
    }
    const Node* n = m_root;
    while (!n->leaf) {
        const Node* next = nullptr;
        for (const Node* ch : n->children) {
            const std::uint64_t s = node_size(ch);
            if (i <= s) {
                next = ch;
                break;
            }
            i -= s;
        }
        if (next == nullptr) {
            throw std::logic_error("select_ith: stale subtree sizes");
        }
        n = next;
    }
    return n->keys[i - 1];
}

namespace {

struct SubtreeInfo {
    std::uint64_t count = 0;
    bool any = false;
    key_type min = 0;
    key_type max = 0;
};

}  // namespace

ValidationReport ABTree::validate() const {
    ValidationReport rep;
    auto add = [&rep](std::string msg) {
        rep.ok = false;
        if (rep.violations.size() < 64) {
            rep.violations.push_back(std::move(msg));
        }
    };

    if (m_a < 2 || m_b < 2 * m_a) {
        add("params: need a >= 2 and b >= 2a");
    }
    if (m_root == nullptr) {
        if (m_size != 0) {
            add("handle: empty tree with nonzero size");
        }
        if (m_rank != 0) {
            add("handle: empty tree with nonzero rank");
        }
        return rep;
    }
    if (m_root->parent != nullptr) {
        add("parent: root parent is not null");
    }

    int leaf_depth = 0;
    std::function<SubtreeInfo(const Node*, int, const std::string&)> walk =
        [&](const Node* n, int depth, const std::string& path) -> SubtreeInfo {
        SubtreeInfo info;
        for (std::size_t i = 0; i + 1 < n->keys.size(); ++i) {
            if (n->keys[i] >= n->keys[i + 1]) {
                add("keys: not strictly ascending at " + path);
                break;
            }
        }
        const bool is_root = n == m_root;
        const int d = n->degree();
        if (n->leaf) {
            if (leaf_depth == 0) {
                leaf_depth = depth;
            } else if (depth != leaf_depth) {
                add("depth: leaf at depth " + std::to_string(depth) +
                    ", expected " + std::to_string(leaf_depth) + " at " + path);
            }
            if (is_root ? (d < 1 || d > m_b) : (d < m_a || d > m_b)) {
                add("degree: leaf degree " + std::to_string(d) + " at " + path);
            }
            info.count = n->keys.size();
            if (!n->keys.empty()) {
                info.any = true;
                info.min = n->keys.front();
                info.max = n->keys.back();
            }
            return info;
        }
        if (n->children.size() != n->keys.size() + 1) {
            add("shape: internal node with " + std::to_string(n->children.size()) +
                " children and " + std::to_string(n->keys.size()) +
                " routers at " + path);
        }
        if (is_root ? (d < 2 || d > m_b) : (d < m_a || d > m_b)) {
            add("degree: internal degree " + std::to_string(d) + " at " + path);
        }
        std::vector<SubtreeInfo> below;
        below.reserve(n->children.size());
        for (std::size_t i = 0; i < n->children.size(); ++i) {
            const Node* ch = n->children[i];
            if (ch == nullptr) {
                add("shape: null child at " + path);
                below.push_back({});
                continue;
            }
            if (ch->parent != n) {
                add("parent: child " + std::to_string(i) +
                    " does not point back at " + path);
            }
            below.push_back(walk(ch, depth + 1, path + "/" + std::to_string(i)));
        }
        for (std::size_t i = 0; i < n->keys.size() && i + 1 < below.size(); ++i) {
            if (below[i].any && n->keys[i] < below[i].max) {
                add("router: smaller than left subtree max at " + path);
            }
            if (below[i + 1].any && n->keys[i] >= below[i + 1].min) {
                add("router: not below right subtree min at " + path);
            }
        }
        for (const SubtreeInfo& s : below) {
            info.count += s.count;
            if (s.any) {
                if (!info.any) {
                    info.any = true;
                    info.min = s.min;
                    info.max = s.max;
                } else {
                    info.min = std::min(info.min, s.min);
                    info.max = std::max(info.max, s.max);
                }
            }
        }
        if (m_augmented && n->subtree_size != info.count) {
            add("size: subtree_size " + std::to_string(n->subtree_size) +
                " vs actual " + std::to_string(info.count) + " at " + path);
        }
        return info;
    };

    const SubtreeInfo total = walk(m_root, 1, "root");
    if (total.count != m_size) {
        add("handle: size " + std::to_string(m_size) + " vs actual " +
            std::to_string(total.count));
    }
    if (leaf_depth != m_rank) {
        add("handle: rank " + std::to_string(m_rank) + " vs leaf depth " +
            std::to_string(leaf_depth));
    }
    if (total.any && (m_min_bound > total.min || m_max_bound < total.max)) {
        add("handle: bounds [" + std::to_string(m_min_bound) + ", " +
            std::to_string(m_max_bound) + "] do not cover keys");
    }
    return rep;
}

int route_child(const Node* n, key_type x) {
    assert(!n->leaf);
    const auto it = std::lower_bound(n->keys.begin(), n->keys.end(), x);
    return static_cast<int>(it - n->keys.begin());
}

int child_index(const Node* p, const Node* c) {
    for (std::size_t i = 0; i < p->children.size(); ++i) {
        if (p->children[i] == c) {
            return static_cast<int>(i);
        }
    }
    assert(false && "child_index: node is not a child of the parent");
    return -1;
}

}  // namespace abtree
