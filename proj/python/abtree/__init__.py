# Copyright 2026 The abtree Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Weak (a,b)-tree with parallel split, join, bulk update and set ops.

The Python layer has value semantics: functions that restructure trees
clone their inputs, so passed-in trees are never consumed. Use the C++
library directly when move semantics matter.
"""

from abtree._core import (
    ABTree,
    build_from_sorted,
    bulk_search,
    bulk_update,
    join,
    par_join,
    par_split,
    set_difference,
    set_intersection,
    set_symmetric_difference,
    set_union,
    split_at,
    to_sorted,
)

__all__ = [
    "ABTree",
    "build_from_sorted",
    "bulk_search",
    "bulk_update",
    "join",
    "par_join",
    "par_split",
    "set_difference",
    "set_intersection",
    "set_symmetric_difference",
    "set_union",
    "split_at",
    "to_sorted",
]

__version__ = "0.1.0"
