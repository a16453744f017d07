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
#include <stdexcept>
#include <vector>

#include "abtree/node.hpp"
#include "doctest.h"

using namespace abtree;

TEST_CASE("make_leaf and make_internal wire sizes and parents") {
    Node* l1 = make_leaf({1, 2, 3});
    Node* l2 = make_leaf({5, 7});
    CHECK(l1->degree() == 3);
    CHECK(node_size(l1) == 3);
    CHECK(l1->leaf);

    Node* p = make_internal({l1, l2}, {3});
    CHECK_FALSE(p->leaf);
    CHECK(p->degree() == 2);
    CHECK(node_size(p) == 5);
    CHECK(l1->parent == p);
    CHECK(l2->parent == p);

    CHECK_THROWS_AS(make_internal({l1, l2}, {3, 4}), std::invalid_argument);
    destroy_subtree(p);
}

TEST_CASE("subtree_min and subtree_max descend the spines") {
    Node* p = make_internal({make_leaf({2, 4}), make_leaf({6, 9})}, {4});
    CHECK(subtree_min(p) == 2);
    CHECK(subtree_max(p) == 9);
    CHECK(count_subtree(p) == 4);
    destroy_subtree(p);
}

TEST_CASE("leaf split halves elements around the floor(d/2) key") {
    SUBCASE("keep right: original object is the right half") {
        Node* n = make_leaf({10, 20, 30, 40, 50});
        NodeSplit s = node_split(n, KeepSide::right);
        CHECK(s.right == n);
        CHECK(s.splitter == 20);
        CHECK(s.left->keys == std::vector<key_type>{10, 20});
        CHECK(s.right->keys == std::vector<key_type>{30, 40, 50});
        CHECK(node_size(s.left) == 2);
        CHECK(node_size(s.right) == 3);
        delete s.left;
        delete s.right;
    }
    SUBCASE("keep left: original object is the left half") {
        Node* n = make_leaf({10, 20, 30, 40, 50});
        NodeSplit s = node_split(n, KeepSide::left);
        CHECK(s.left == n);
        CHECK(s.splitter == 20);
        CHECK(s.left->keys == std::vector<key_type>{10, 20});
        CHECK(s.right->keys == std::vector<key_type>{30, 40, 50});
        delete s.left;
        delete s.right;
    }
}

TEST_CASE("internal split turns the middle router into the splitter") {
    auto build = [] {
        std::vector<Node*> leaves;
        for (int i = 0; i < 5; ++i) {
            leaves.push_back(make_leaf({key_type(10 * i + 1), key_type(10 * i + 2)}));
        }
        return make_internal(std::move(leaves), {2, 12, 22, 32});
    };
    SUBCASE("keep right") {
        Node* n = build();
        NodeSplit s = node_split(n, KeepSide::right);
        CHECK(s.right == n);
        CHECK(s.splitter == 12);
        CHECK(s.left->degree() == 2);
        CHECK(s.right->degree() == 3);
        CHECK(s.left->keys == std::vector<key_type>{2});
        CHECK(s.right->keys == std::vector<key_type>{22, 32});
        for (Node* c : s.left->children) {
            CHECK(c->parent == s.left);
        }
        for (Node* c : s.right->children) {
            CHECK(c->parent == s.right);
        }
        CHECK(node_size(s.left) == 4);
        CHECK(node_size(s.right) == 6);
        destroy_subtree(s.left);
        destroy_subtree(s.right);
    }
    SUBCASE("keep left") {
        Node* n = build();
        NodeSplit s = node_split(n, KeepSide::left);
        CHECK(s.left == n);
        CHECK(s.splitter == 12);
        CHECK(s.left->keys == std::vector<key_type>{2});
        CHECK(s.right->keys == std::vector<key_type>{22, 32});
        destroy_subtree(s.left);
        destroy_subtree(s.right);
    }
    SUBCASE("degree 1 cannot split") {
        Node* n = make_internal({make_leaf({1})}, {});
        CHECK_THROWS_AS(node_split(n), std::invalid_argument);
        destroy_subtree(n);
    }
}

TEST_CASE("leaf fuse concatenates and drops the splitter") {
    Node* a = make_leaf({1, 2});
    Node* b = make_leaf({5, 6});
    SUBCASE("keep right") {
        Node* s = node_fuse(a, b, 2, KeepSide::right);
        CHECK(s == b);
        CHECK(s->keys == std::vector<key_type>{1, 2, 5, 6});
        CHECK(a->keys.empty());
        CHECK(node_size(s) == 4);
        delete a;
        delete b;
    }
    SUBCASE("keep left") {
        Node* s = node_fuse(a, b, 4, KeepSide::left);
        CHECK(s == a);
        CHECK(s->keys == std::vector<key_type>{1, 2, 5, 6});
        CHECK(b->keys.empty());
        delete a;
        delete b;
    }
    SUBCASE("splitter must separate the parts") {
        CHECK_THROWS_AS(node_fuse(a, b, 1, KeepSide::right), std::invalid_argument);
        CHECK_THROWS_AS(node_fuse(a, b, 5, KeepSide::right), std::invalid_argument);
        delete a;
        delete b;
    }
}

TEST_CASE("internal fuse inserts the splitter as a router") {
    auto two = [](key_type base) {
        return make_internal(
            {make_leaf({base + 1, base + 2}), make_leaf({base + 5, base + 6})},
            {base + 2});
    };
    Node* a = two(0);
    Node* b = two(10);
    Node* s = node_fuse(a, b, 6, KeepSide::right);
    CHECK(s == b);
    CHECK(s->keys == std::vector<key_type>{2, 6, 12});
    CHECK(s->degree() == 4);
    CHECK(node_size(s) == 8);
    for (Node* c : s->children) {
        CHECK(c->parent == s);
    }
    CHECK(a->children.empty());
    delete a;
    destroy_subtree(s);
}

TEST_CASE("clone_subtree copies structure and reparents the copies") {
    Node* p = make_internal({make_leaf({1, 2}), make_leaf({4, 5})}, {2});
    Node* c = clone_subtree(p);
    CHECK(c != p);
    CHECK(c->keys == p->keys);
    REQUIRE(c->children.size() == 2);
    CHECK(c->children[0] != p->children[0]);
    CHECK(c->children[0]->keys == p->children[0]->keys);
    CHECK(c->children[0]->parent == c);
    p->children[0]->keys[0] = 99;
    CHECK(c->children[0]->keys[0] == 1);
    destroy_subtree(p);
    destroy_subtree(c);
}
