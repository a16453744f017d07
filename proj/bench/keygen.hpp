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
#include <string>
#include <vector>

#include "abtree/node.hpp"

namespace abtree::bench {

// Key distributions over the 32-bit key domain.
enum class KeyDist { uniform, skewed_uniform, normal, increasing_uniform };

// Throws std::invalid_argument on an unknown name.
KeyDist parse_dist(const std::string& name);
const char* dist_name(KeyDist d);

struct KeyGenParams {
    // skewed_uniform: window width = domain / skew_div, window position
    // uniform over the domain.
    double skew_div = 64.0;
    // normal: mean/stddev in key space, values clamped into the domain.
    double normal_mean = 2147483648.0;   // 2^31
    double normal_stddev = 268435456.0;  // 2^28
};

// State carried between batches. increasing_uniform places every batch in a
// fresh window strictly above all previous batches; the other distributions
// keep no state but share the per-batch counter so repeated calls differ.
struct KeyGenState {
    std::uint64_t floor = 0;
    std::uint64_t batch = 0;
};

/**
 * n keys, possibly with duplicates; callers dedup before set-model use.
 * Deterministic function of (dist, n, seed, state, params); the state's
 * batch counter advances per call, so a fixed seed yields a reproducible
 * stream of distinct batches.
 */
std::vector<key_type> gen_keys(KeyDist dist, std::uint64_t n,
                               std::uint64_t seed, KeyGenState& state,
                               const KeyGenParams& params = {});

// Ascending distinct copy (the set model of a generated batch).
std::vector<key_type> sorted_unique(std::vector<key_type> keys);

}  // namespace abtree::bench
