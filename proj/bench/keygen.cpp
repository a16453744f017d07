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
#include "keygen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace abtree::bench {

namespace {

constexpr std::uint64_t kDomain = std::uint64_t{1} << 32;

std::mt19937_64 batch_rng(std::uint64_t seed, std::uint64_t batch) {
    std::seed_seq sq{seed, batch};
    return std::mt19937_64(sq);
}

}  // namespace

KeyDist parse_dist(const std::string& name) {
    if (name == "uniform") {
        return KeyDist::uniform;
    }
    if (name == "skewed_uniform") {
        return KeyDist::skewed_uniform;
    }
    if (name == "normal") {
        return KeyDist::normal;
    }
    if (name == "increasing_uniform") {
        return KeyDist::increasing_uniform;
    }
    throw std::invalid_argument("unknown distribution: " + name);
}

const char* dist_name(KeyDist d) {
    switch (d) {
        case KeyDist::uniform:
            return "uniform";
        case KeyDist::skewed_uniform:
            return "skewed_uniform";
        case KeyDist::normal:
            return "normal";
        case KeyDist::increasing_uniform:
            return "increasing_uniform";
    }
    return "?";
}

std::vector<key_type> gen_keys(KeyDist dist, std::uint64_t n,
                               std::uint64_t seed, KeyGenState& state,
                               const KeyGenParams& params) {
    std::mt19937_64 rng = batch_rng(seed, state.batch);
    state.batch += 1;
    std::vector<key_type> out;
    out.reserve(n);
    if (n == 0) {
        return out;
    }
    switch (dist) {
        case KeyDist::uniform: {
            std::uniform_int_distribution<std::uint64_t> d(0, kDomain - 1);
            for (std::uint64_t i = 0; i < n; ++i) {
                out.push_back(d(rng));
            }
            break;
        }
        case KeyDist::skewed_uniform: {
            // Clamp in double space: a sub-1 divisor would otherwise make
            // width exceed the domain and underflow the start range below.
            const double wd = static_cast<double>(kDomain) / params.skew_div;
            const std::uint64_t width =
                wd >= static_cast<double>(kDomain)
                    ? kDomain
                    : std::max<std::uint64_t>(
                          1, static_cast<std::uint64_t>(wd));
            std::uniform_int_distribution<std::uint64_t> dpos(0,
                                                              kDomain - width);
            const std::uint64_t start = dpos(rng);
            std::uniform_int_distribution<std::uint64_t> d(start,
                                                           start + width - 1);
            for (std::uint64_t i = 0; i < n; ++i) {
                out.push_back(d(rng));
            }
            break;
        }
        case KeyDist::normal: {
            std::normal_distribution<double> d(params.normal_mean,
                                               params.normal_stddev);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double v = std::round(d(rng));
                const double clamped = std::clamp(
                    v, 0.0, static_cast<double>(kDomain - 1));
                out.push_back(static_cast<key_type>(clamped));
            }
            break;
        }
        case KeyDist::increasing_uniform: {
            // Each batch owns a fresh window beyond every previous batch;
            // long runs may walk past the 32-bit rim, which the 64-bit key
            // type absorbs.
            const std::uint64_t width = std::max<std::uint64_t>(8 * n, 1024);
            std::uniform_int_distribution<std::uint64_t> d(
                state.floor, state.floor + width - 1);
            for (std::uint64_t i = 0; i < n; ++i) {
                out.push_back(d(rng));
            }
            state.floor += width;
            break;
        }
    }
    return out;
}

std::vector<key_type> sorted_unique(std::vector<key_type> keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

}  // namespace abtree::bench
