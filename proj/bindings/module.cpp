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

// Python surface. The C++ API moves tree handles through the k-way
// operations; here every such input is cloned first so Python keeps value
// semantics. Heavy calls release the GIL; the worker threads never touch
// Python state.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abtree/bulk.hpp"
#include "abtree/par_join.hpp"
#include "abtree/par_split.hpp"
#include "abtree/seq_ops.hpp"
#include "abtree/set_ops.hpp"
#include "abtree/tree.hpp"

namespace py = pybind11;

namespace {

using namespace abtree;

SeparatorStrategy parse_strategy(const std::string& name) {
    if (name == "automatic") {
        return SeparatorStrategy::automatic;
    }
    if (name == "uniform") {
        return SeparatorStrategy::uniform;
    }
    if (name == "double_binary") {
        return SeparatorStrategy::double_binary;
    }
    throw std::invalid_argument("unknown separator strategy: " + name);
}

// Two strictly ascending key lists merged into one mixed batch; a key that
// appears in both lists is rejected by the batch validator.
UpdateBatch make_batch(const std::vector<key_type>& inserts,
                       const std::vector<key_type>& erases) {
    UpdateBatch batch;
    batch.ops.reserve(inserts.size() + erases.size());
    for (const key_type k : inserts) {
        batch.ops.push_back({k, OpKind::insert});
    }
    for (const key_type k : erases) {
        batch.ops.push_back({k, OpKind::erase});
    }
    std::sort(batch.ops.begin(), batch.ops.end(),
              [](const BatchOp& x, const BatchOp& y) { return x.key < y.key; });
    const auto dup = std::adjacent_find(
        batch.ops.begin(), batch.ops.end(),
        [](const BatchOp& x, const BatchOp& y) { return x.key == y.key; });
    if (dup != batch.ops.end()) {
        throw std::invalid_argument(
            "bulk_update: key " + std::to_string(dup->key) +
            " appears more than once across inserts and erases");
    }
    return batch;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Weak (a,b)-tree with sequential and parallel split, join, bulk "
        "update and set operations";

    py::class_<ABTree>(m, "ABTree")
        .def(py::init<int, int, bool>(), py::arg("a") = 4, py::arg("b") = 8,
             py::arg("augmented") = true,
             "Empty tree with degree bounds [a, b], b >= 2a, a >= 2. "
             "Augmented trees maintain exact subtree sizes (select_ith).")
        .def("insert", &ABTree::insert, py::arg("key"),
             "Add key; False if it was already present.")
        .def("erase", &ABTree::erase, py::arg("key"),
             "Remove key; False if it was absent.")
        .def("contains", &ABTree::contains, py::arg("key"))
        .def("select_ith", &ABTree::select_ith, py::arg("i"),
             "1-based order statistic; needs an augmented tree.")
        .def("size", &ABTree::size)
        .def("rank", &ABTree::rank, "Nodes on any root-to-leaf path.")
        .def("a", &ABTree::a)
        .def("b", &ABTree::b)
        .def("augmented", &ABTree::augmented)
        .def("clone", &ABTree::clone, "Deep structural copy.")
        .def(
            "validate",
            [](const ABTree& t) {
                const ValidationReport rep = t.validate();
                return py::make_tuple(rep.ok, rep.violations);
            },
            "(ok, violations): degree bounds, leaf depth, key order, parent "
            "pointers, sizes.")
        .def("__len__", &ABTree::size)
        .def("__contains__", &ABTree::contains)
        .def("__repr__", [](const ABTree& t) {
            return "ABTree(a=" + std::to_string(t.a()) +
                   ", b=" + std::to_string(t.b()) +
                   ", size=" + std::to_string(t.size()) + ")";
        });

    m.def(
        "build_from_sorted",
        [](const std::vector<key_type>& keys, int workers, int a, int b,
           bool augmented) {
            return build_from_sorted(keys, workers, a, b, augmented);
        },
        py::arg("keys"), py::arg("workers") = 1, py::arg("a") = 4,
        py::arg("b") = 8, py::arg("augmented") = true,
        py::call_guard<py::gil_scoped_release>(),
        "Bottom-up construction from strictly ascending keys; shape depends "
        "only on (len, a, b).");

    m.def(
        "to_sorted",
        [](const ABTree& t, int workers) { return to_sorted(t, workers); },
        py::arg("tree"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "All elements ascending; parallel extraction for augmented trees.");

    m.def(
        "split_at",
        [](const ABTree& t, key_type x) {
            auto halves = split_at(t.clone(), x);
            return std::make_pair(std::move(halves.first),
                                  std::move(halves.second));
        },
        py::arg("tree"), py::arg("key"),
        py::call_guard<py::gil_scoped_release>(),
        "(elements <= key, elements > key) as two new trees.");

    m.def(
        "join",
        [](const ABTree& left, const ABTree& right) {
            return join2(left.clone(), right.clone());
        },
        py::arg("left"), py::arg("right"),
        py::call_guard<py::gil_scoped_release>(),
        "Concatenation join; every left key must precede every right key.");

    m.def(
        "par_split",
        [](const ABTree& t, const std::vector<key_type>& separators,
           int workers) { return par_split(t.clone(), separators, workers); },
        py::arg("tree"), py::arg("separators"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "k strictly ascending separators -> k+1 trees; piece i holds keys in "
        "(sep[i-1], sep[i]].");

    m.def(
        "par_join",
        [](const py::list& parts, int workers) {
            std::vector<ABTree> own;
            own.reserve(parts.size());
            for (const auto& item : parts) {
                own.push_back(item.cast<const ABTree&>().clone());
            }
            py::gil_scoped_release release;
            return pairwise_par_join(std::move(own), workers);
        },
        py::arg("parts"), py::arg("workers") = 1,
        "Joins key-disjoint ascending trees pairwise until one remains.");

    m.def(
        "bulk_update",
        [](const ABTree& t, const std::vector<key_type>& inserts,
           const std::vector<key_type>& erases, int workers,
           const std::string& strategy) {
            return bulk_update(t.clone(), make_batch(inserts, erases),
                               workers, parse_strategy(strategy));
        },
        py::arg("tree"), py::arg("inserts") = std::vector<key_type>{},
        py::arg("erases") = std::vector<key_type>{}, py::arg("workers") = 1,
        py::arg("strategy") = "automatic",
        py::call_guard<py::gil_scoped_release>(),
        "Applies both sorted batches in one split/update/join pass; "
        "strategy: automatic | uniform | double_binary.");

    m.def(
        "bulk_search",
        [](const ABTree& t, const std::vector<key_type>& keys, int workers) {
            return bulk_search(t, keys, workers);
        },
        py::arg("tree"), py::arg("keys"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Subset of the ascending probe keys present in the tree.");

    m.def(
        "set_union",
        [](const ABTree& u, const ABTree& t, int workers) {
            return set_union(u.clone(), t.clone(), workers);
        },
        py::arg("u"), py::arg("t"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "set_intersection",
        [](const ABTree& u, const ABTree& t, int workers) {
            return set_intersection(u, t, workers);
        },
        py::arg("u"), py::arg("t"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "set_difference",
        [](const ABTree& t, const ABTree& u, int workers) {
            return set_difference(t.clone(), u, workers);
        },
        py::arg("t"), py::arg("u"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>(),
        "Elements of t not in u.");

    m.def(
        "set_symmetric_difference",
        [](const ABTree& u, const ABTree& t, int workers) {
            return set_symmetric_difference(u.clone(), t.clone(), workers);
        },
        py::arg("u"), py::arg("t"), py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
}
