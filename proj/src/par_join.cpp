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
#include "abtree/par_join.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "abtree/node.hpp"
#include "abtree/parallel.hpp"
#include "abtree/seq_ops.hpp"
#include "abtree/spine_index.hpp"

namespace abtree {

void JoinContext::free_graveyard() {
    for (Node* n : graveyard) {
        delete n;  // already emptied by node_fuse
    }
    graveyard.clear();
}

void pre_split_root(ABTree& t, JoinContext& ctx) {
    Node* old_root = t.m_root;
    if (old_root->degree() < t.m_b) {
        return;
    }
    NodeSplit s = node_split(old_root, KeepSide::right);
    bump(ctx.counters, &WorkCounters::node_splits);
    bump(ctx.counters, &WorkCounters::bchain_splits);
    Node* new_root = make_internal({s.left, s.right}, {s.splitter});
    const int old_rank = t.m_rank;
    t.m_root = new_root;
    t.m_rank = old_rank + 1;
    // The old object kept the right half, so the right stack slot still
    // holds; the left spine now runs through the fresh left half.
    t.m_spines->left.set_slot(old_rank, s.left);
    t.m_spines->left.extend_top(new_root);
    t.m_spines->right.extend_top(new_root);
}

int split_b_chain(ABTree& t, Node* bottom, bool right_spine,
                  JoinContext& ctx) {
    std::vector<Node*> chain;
    for (Node* q = bottom; q != nullptr && q->degree() >= t.m_b;
         q = q->parent) {
        chain.push_back(q);
    }
    for (std::size_t i = chain.size(); i-- > 0;) {
        Node* n = chain[i];
        NodeSplit s =
            node_split(n, right_spine ? KeepSide::right : KeepSide::left);
        bump(ctx.counters, &WorkCounters::node_splits);
        bump(ctx.counters, &WorkCounters::bchain_splits);
        Node* parent = n->parent;
        if (parent == nullptr) {
            Node* new_root = make_internal({s.left, s.right}, {s.splitter});
            const int old_rank = t.m_rank;
            t.m_root = new_root;
            t.m_rank = old_rank + 1;
            if (right_spine) {
                t.m_spines->left.set_slot(old_rank, s.left);
            } else {
                t.m_spines->right.set_slot(old_rank, s.right);
            }
            t.m_spines->left.extend_top(new_root);
            t.m_spines->right.extend_top(new_root);
        } else {
            const int j = child_index(parent, n);
            if (right_spine) {
                parent->children.insert(parent->children.begin() + j, s.left);
                parent->keys.insert(parent->keys.begin() + j, s.splitter);
            } else {
                parent->children.insert(parent->children.begin() + j + 1,
                                        s.right);
                parent->keys.insert(parent->keys.begin() + j, s.splitter);
            }
        }
    }
    return static_cast<int>(chain.size());
}

ABTree join2_preprocessed(ABTree u, ABTree v, JoinContext& ctx) {
    if (u.empty()) {
        return v;
    }
    if (v.empty()) {
        return u;
    }
    if (u.m_spines == nullptr || v.m_spines == nullptr) {
        throw std::invalid_argument(
            "join2_preprocessed: inputs must be preprocessed");
    }
    if (u.m_a != v.m_a || u.m_b != v.m_b) {
        throw std::invalid_argument(
            "join2_preprocessed: mismatched tree parameters");
    }
    assert(u.m_max_bound < v.m_min_bound);
    WorkCounters* c = ctx.counters;
    const int a = u.m_a;
    const int b = u.m_b;
    const key_type splitter = u.m_max_bound;

    if (u.m_rank > v.m_rank) {
        pre_split_root(v, ctx);
    } else if (v.m_rank > u.m_rank) {
        pre_split_root(u, ctx);
    }

    if (u.m_rank == v.m_rank) {
        const int r = u.m_rank;
        Node* ur = u.m_root;
        Node* vr = v.m_root;
        v.m_spines->left = std::move(u.m_spines->left);
        if (ur->degree() >= a && vr->degree() >= a) {
            Node* new_root = make_internal({ur, vr}, {splitter});
            v.m_root = new_root;
            v.m_rank = r + 1;
            v.m_spines->left.extend_top(new_root);
            v.m_spines->right.extend_top(new_root);
            ctx.saved.push_back({new_root, r + 1});
        } else {
            Node* fused = node_fuse(ur, vr, splitter, KeepSide::right);
            bump(c, &WorkCounters::node_fuses);
            ur->parent = fused;
            ctx.graveyard.push_back(ur);
            v.m_spines->left.set_slot(r, fused);
            if (fused->degree() > b) {
                NodeSplit s = node_split(fused, KeepSide::right);
                bump(c, &WorkCounters::node_splits);
                Node* new_root = make_internal({s.left, s.right}, {s.splitter});
                v.m_root = new_root;
                v.m_rank = r + 1;
                v.m_spines->left.set_slot(r, s.left);
                v.m_spines->left.extend_top(new_root);
                v.m_spines->right.extend_top(new_root);
                ctx.saved.push_back({new_root, r + 1});
            } else {
                fused->parent = nullptr;
                v.m_root = fused;
                ctx.saved.push_back({fused, r});
            }
        }
        v.m_size = u.m_size + v.m_size;
        v.m_min_bound = u.m_min_bound;
        u.m_root = nullptr;
        u.clear();
        return v;
    }

    if (u.m_rank > v.m_rank) {
        const int rv = v.m_rank;
        Node* p = u.m_spines->right.node_at(rv + 1, c);
        if (p->degree() >= b) {
            split_b_chain(u, p, /*right_spine=*/true, ctx);
        }
        Node* vroot = v.m_root;
        if (vroot->degree() < a) {
            Node* n = p->children.back();
            Node* fused = node_fuse(n, vroot, splitter, KeepSide::right);
            bump(c, &WorkCounters::node_fuses);
            n->parent = fused;
            ctx.graveyard.push_back(n);
            p->children.back() = fused;
            fused->parent = p;
            if (fused->degree() > b) {
                NodeSplit s = node_split(fused, KeepSide::right);
                bump(c, &WorkCounters::node_splits);
                const int j = static_cast<int>(p->children.size()) - 1;
                p->children.insert(p->children.begin() + j, s.left);
                p->keys.insert(p->keys.begin() + j, s.splitter);
            }
        } else {
            p->children.push_back(vroot);
            p->keys.push_back(splitter);
            vroot->parent = p;
        }
        u.m_spines->right.combine_prepend(std::move(v.m_spines->right), rv, c);
        ctx.saved.push_back({p, rv + 1});
        u.m_size = u.m_size + v.m_size;
        u.m_max_bound = v.m_max_bound;
        v.m_root = nullptr;
        v.clear();
        return u;
    }

    const int ru = u.m_rank;
    Node* p = v.m_spines->left.node_at(ru + 1, c);
    if (p->degree() >= b) {
        split_b_chain(v, p, /*right_spine=*/false, ctx);
    }
    Node* uroot = u.m_root;
    if (uroot->degree() < a) {
        Node* n = p->children.front();
        Node* fused = node_fuse(uroot, n, splitter, KeepSide::left);
        bump(c, &WorkCounters::node_fuses);
        n->parent = fused;
        ctx.graveyard.push_back(n);
        p->children.front() = fused;
        fused->parent = p;
        if (fused->degree() > b) {
            NodeSplit s = node_split(fused, KeepSide::left);
            bump(c, &WorkCounters::node_splits);
            p->children.insert(p->children.begin() + 1, s.right);
            p->keys.insert(p->keys.begin(), s.splitter);
        }
    } else {
        p->children.insert(p->children.begin(), uroot);
        p->keys.insert(p->keys.begin(), splitter);
        uroot->parent = p;
    }
    v.m_spines->left.combine_prepend(std::move(u.m_spines->left), ru, c);
    ctx.saved.push_back({p, ru + 1});
    v.m_size = u.m_size + v.m_size;
    v.m_min_bound = u.m_min_bound;
    u.m_root = nullptr;
    u.clear();
    return v;
}

ABTree join_many_seq(std::vector<ABTree> ts, WorkCounters* c) {
    if (ts.empty()) {
        throw std::invalid_argument("join_many_seq: no input trees");
    }
    const ABTree* prev = nullptr;
    for (const ABTree& t : ts) {
        if (t.m_spines == nullptr) {
            throw std::invalid_argument(
                "join_many_seq: inputs must be preprocessed");
        }
        if (t.m_a != ts[0].m_a || t.m_b != ts[0].m_b ||
            t.m_augmented != ts[0].m_augmented) {
            throw std::invalid_argument(
                "join_many_seq: mismatched tree parameters");
        }
        if (t.empty()) {
            continue;
        }
        if (prev != nullptr && prev->m_max_bound >= t.m_min_bound) {
            throw std::invalid_argument("join_many_seq: key ranges overlap");
        }
        prev = &t;
    }
    if (ts.size() == 1) {
        return std::move(ts[0]);
    }
    JoinContext ctx{c, {}, {}};
    ABTree res = std::move(ts[0]);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        res = join2_preprocessed(std::move(res), std::move(ts[i]), ctx);
    }
    ctx.free_graveyard();
    res.m_augmented = false;  // sizes were not maintained
    return res;
}

void repair_subtree_sizes(ABTree& t, const JoinContext& ctx, int workers) {
    if (!t.m_augmented || ctx.saved.empty()) {
        return;
    }
    const std::unordered_set<const Node*> dead(ctx.graveyard.begin(),
                                               ctx.graveyard.end());
    const auto resolve = [&dead](Node* n) {
        while (n != nullptr && dead.count(n) != 0) {
            n = n->parent;  // lateral redirect, same rank
        }
        return n;
    };
    std::map<int, std::vector<Node*>> layers;
    for (const auto& [node, rank] : ctx.saved) {
        Node* n = resolve(node);
        if (n != nullptr) {
            layers[rank].push_back(n);
        }
    }
    while (!layers.empty()) {
        const auto it = layers.begin();
        const int rank = it->first;
        std::vector<Node*> nodes = std::move(it->second);
        layers.erase(it);
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        const int w =
            std::min<std::size_t>(std::max(workers, 1), nodes.size());
        run_parallel(w, [&](int id) {
            const auto [lo, hi] = split_range(nodes.size(), w, id);
            for (std::uint64_t i = lo; i < hi; ++i) {
                recompute_size(nodes[i]);
            }
        });
        for (Node* n : nodes) {
            Node* up = resolve(n->parent);
            if (up != nullptr) {
                layers[rank + 1].push_back(up);
            }
        }
    }
}

ABTree pairwise_par_join(std::vector<ABTree> ts, int workers,
                         WorkCounters* c) {
    if (ts.empty()) {
        return ABTree();
    }
    while (ts.size() > 1) {
        bump(c, &WorkCounters::ppj_rounds);
        const std::size_t pairs = ts.size() / 2;
        std::vector<ABTree> next((ts.size() + 1) / 2);
        const int w = static_cast<int>(
            std::min<std::size_t>(std::max(workers, 1), pairs));
        run_parallel(w, [&](int id) {
            const auto [lo, hi] = split_range(pairs, w, id);
            for (std::uint64_t i = lo; i < hi; ++i) {
                next[i] = join2_bounded(std::move(ts[2 * i]),
                                        std::move(ts[2 * i + 1]), c);
            }
        });
        if (ts.size() % 2 == 1) {
            next.back() = std::move(ts.back());
        }
        ts = std::move(next);
    }
    return std::move(ts[0]);
}

namespace {

// Walks both spines of a raw subtree handle and installs fresh single-run
// stacks (used for stolen subtrees, whose spine arrays must be rebuilt).
void rebuild_spine_stacks(ABTree& t) {
    auto spines = std::make_unique<SpineIndex>();
    for (int side = 0; side < 2; ++side) {
        std::vector<Node*> slots(t.m_rank, nullptr);
        Node* n = t.m_root;
        for (int r = t.m_rank; r >= 1; --r) {
            slots[r - 1] = n;
            if (!n->leaf) {
                n = side == 0 ? n->children.back() : n->children.front();
            }
        }
        (side == 0 ? spines->right : spines->left)
            .reset_single(std::move(slots));
    }
    t.m_spines = std::move(spines);
}

// One coin flip keyed by (seed, iteration, position): deterministic for a
// given seed no matter how many workers run the round.
int coin_bit(std::uint64_t seed, int round, std::size_t slot) {
    std::mt19937_64 eng(seed ^
                        (0x9E3779B97F4A7C15ULL * (std::uint64_t(round) + 1)) ^
                        (0xBF58476D1CE4E5B9ULL * (std::uint64_t(slot) + 1)));
    return static_cast<int>(eng() & 1U);
}

struct PJStep {
    bool stolen = false;
    int target = 0;  // rank the join attached (or stole) at
};

// Detaches the outermost rank-`rv` spine subtree of `host` (rightmost child
// of p when right_side, leftmost otherwise) into its own handle with fresh
// spine stacks. The detached side's bounds and the host's bounds stay
// separators thanks to the router that sat between them.
ABTree detach_spine_subtree(ABTree& host, Node* p, int rv, bool right_side,
                            JoinContext& ctx) {
    Node* n;
    key_type router;
    if (right_side) {
        n = p->children.back();
        p->children.pop_back();
        router = p->keys.back();
        p->keys.pop_back();
        // Hygiene only: a prior same-rank join may have popped the run
        // holding rv. Reads at or below rv cannot happen afterwards (the
        // neighbor slot now holds the taller composite), the floor check
        // enforces that.
        if (host.m_spines->right.covers(rv)) {
            host.m_spines->right.set_slot(rv, p->children.back());
        }
    } else {
        n = p->children.front();
        p->children.erase(p->children.begin());
        router = p->keys.front();
        p->keys.erase(p->keys.begin());
        if (host.m_spines->left.covers(rv)) {
            host.m_spines->left.set_slot(rv, p->children.front());
        }
    }
    ctx.saved.push_back({p, rv + 1});
    ABTree stolen(host.m_a, host.m_b, host.m_augmented);
    n->parent = nullptr;
    stolen.m_root = n;
    stolen.m_rank = rv;
    stolen.m_size = node_size(n);  // possibly stale; final size is fixed later
    if (right_side) {
        stolen.m_min_bound = router + 1;
        stolen.m_max_bound = host.m_max_bound;
        host.m_max_bound = router;
    } else {
        stolen.m_min_bound = host.m_min_bound;
        stolen.m_max_bound = router;
        host.m_min_bound = router + 1;
    }
    rebuild_spine_stacks(stolen);
    return stolen;
}

// host holds the smaller keys, inc the larger; r(host) >= r(inc). On a
// steal, host keeps its slot (minus the stolen subtree) and inc becomes the
// stolen composite; otherwise host becomes the union and inc turns empty.
PJStep pj_join_right(ABTree& host, ABTree& inc, JoinContext& ctx) {
    if (host.m_rank > inc.m_rank) {
        pre_split_root(inc, ctx);
    }
    if (host.m_rank == inc.m_rank) {
        const int target = host.m_rank;
        host = join2_preprocessed(std::move(host), std::move(inc), ctx);
        return {false, target};
    }
    const int rv = inc.m_rank;
    Node* p = host.m_spines->right.node_at(rv + 1, ctx.counters);
    if (p->degree() == host.m_b) {
        bump(ctx.counters, &WorkCounters::pj_steals);
        ABTree stolen = detach_spine_subtree(host, p, rv, true, ctx);
        inc = join2_preprocessed(std::move(stolen), std::move(inc), ctx);
        return {true, rv};
    }
    host = join2_preprocessed(std::move(host), std::move(inc), ctx);
    return {false, rv};
}

// Mirror of pj_join_right for the leftmost pair: host holds the larger
// keys, inc the smaller; r(host) >= r(inc).
PJStep pj_join_left(ABTree& host, ABTree& inc, JoinContext& ctx) {
    if (host.m_rank > inc.m_rank) {
        pre_split_root(inc, ctx);
    }
    if (host.m_rank == inc.m_rank) {
        const int target = host.m_rank;
        host = join2_preprocessed(std::move(inc), std::move(host), ctx);
        return {false, target};
    }
    const int rv = inc.m_rank;
    Node* p = host.m_spines->left.node_at(rv + 1, ctx.counters);
    if (p->degree() == host.m_b) {
        bump(ctx.counters, &WorkCounters::pj_steals);
        ABTree stolen = detach_spine_subtree(host, p, rv, false, ctx);
        inc = join2_preprocessed(std::move(inc), std::move(stolen), ctx);
        return {true, rv};
    }
    host = join2_preprocessed(std::move(inc), std::move(host), ctx);
    return {false, rv};
}

}  // namespace

ABTree lightweight_par_join(std::vector<ABTree> ts, int workers,
                            std::uint64_t seed, WorkCounters* c,
                            PJObserver* obs) {
    std::vector<ABTree> live;
    live.reserve(ts.size());
    for (ABTree& t : ts) {
        if (!t.empty()) {
            live.push_back(std::move(t));
        }
    }
    if (live.empty()) {
        return ABTree();
    }
    std::uint64_t total = 0;
    bool all_aug = true;
    const ABTree* prev = nullptr;
    for (const ABTree& t : live) {
        if (t.m_spines == nullptr) {
            throw std::invalid_argument(
                "lightweight_par_join: inputs must be preprocessed");
        }
        if (t.m_a != live[0].m_a || t.m_b != live[0].m_b) {
            throw std::invalid_argument(
                "lightweight_par_join: mismatched tree parameters");
        }
        if (prev != nullptr && prev->m_max_bound >= t.m_min_bound) {
            throw std::invalid_argument(
                "lightweight_par_join: key ranges overlap");
        }
        prev = &t;
        total += t.m_size;
        all_aug = all_aug && t.m_augmented;
    }

    // Lowest rank whose spine stack slots are still valid, per side. Steals
    // leave slots below the steal rank stale; since attach ranks per tree
    // only ascend, reads below the floor never happen. Checked, not trusted.
    std::vector<int> lfloor(live.size(), 1);
    std::vector<int> rfloor(live.size(), 1);

    JoinContext ctx{c, {}, {}};
    int round = 0;
    while (live.size() > 1) {
        bump(c, &WorkCounters::pj_iterations);
        const std::size_t m = live.size();
        std::vector<int> rank(m);
        std::vector<int> coin(m);
        for (std::size_t i = 0; i < m; ++i) {
            rank[i] = live[i].m_rank;
            coin[i] = coin_bit(seed, round, i);
        }
        const auto rank_of = [&](std::ptrdiff_t i) {
            return (i < 0 || i >= static_cast<std::ptrdiff_t>(m)) ? INT_MAX
                                                                  : rank[i];
        };
        std::vector<char> fire(m, 0);
        for (std::size_t t = 0; t < m; ++t) {
            const int rl = rank_of(static_cast<std::ptrdiff_t>(t) - 1);
            const int rt = rank[t];
            const int rr = rank_of(static_cast<std::ptrdiff_t>(t) + 1);
            bool f = false;
            if (rl > rt && rt < rr) {
                f = true;
            } else if (rl > rt && rt == rr && coin[t] == 1) {
                f = true;
            } else if (rl == rt && rt < rr && coin[t - 1] == 0 &&
                       coin[t] == 1) {
                f = true;
            } else if (rl == rt && rt == rr && coin[t - 1] == 0 &&
                       coin[t] == 1) {
                f = true;
            }
            fire[t] = f ? 1 : 0;
        }
        // The tie-break coins make adjacent initiators impossible.
        for (std::size_t t = 0; t + 1 < m; ++t) {
            assert(!(fire[t] && fire[t + 1]));
        }
        // Initiator 0 joins rightward and uses trees {0, 1}; initiator 2
        // would use {1, 2}. Lowest index wins such overlaps.
        std::vector<char> claimed(m, 0);
        std::vector<std::size_t> applied;
        for (std::size_t t = 0; t < m; ++t) {
            if (!fire[t]) {
                continue;
            }
            const std::size_t other = t == 0 ? 1 : t - 1;
            if (claimed[t] || claimed[other]) {
                continue;
            }
            claimed[t] = claimed[other] = 1;
            applied.push_back(t);
        }
        std::vector<PJStep> steps(applied.size());
        std::vector<JoinContext> local(applied.size());
        for (auto& l : local) {
            l.counters = c;
        }
        const int w = static_cast<int>(std::min<std::size_t>(
            std::max(workers, 1), std::max<std::size_t>(applied.size(), 1)));
        run_parallel(w, [&](int id) {
            const auto [lo, hi] = split_range(applied.size(), w, id);
            for (std::uint64_t i = lo; i < hi; ++i) {
                const std::size_t t = applied[i];
                if (t == 0) {
                    steps[i] = pj_join_left(live[1], live[0], local[i]);
                } else {
                    steps[i] = pj_join_right(live[t - 1], live[t], local[i]);
                }
            }
        });
        // Post-round bookkeeping: merge contexts, validate the rank floors,
        // flow them to the surviving slots, then compact.
        std::vector<char> dead(m, 0);
        PJRoundInfo info;
        for (std::size_t i = 0; i < applied.size(); ++i) {
            const std::size_t t = applied[i];
            const PJStep& s = steps[i];
            const std::size_t host = t == 0 ? 1 : t - 1;
            const bool left_side = t == 0;
            const int floor =
                left_side ? lfloor[host] : rfloor[host];
            if (s.target + 1 < floor) {
                throw std::logic_error(
                    "lightweight_par_join: join target below spine floor");
            }
            if (s.stolen) {
                // host kept its slot, t holds the composite
                (left_side ? lfloor[host] : rfloor[host]) = s.target;
                lfloor[t] = left_side ? lfloor[t] : 1;
                rfloor[t] = left_side ? 1 : rfloor[t];
            } else if (left_side) {
                // merged tree sits in slot `host` (position 1); it moves to
                // position 0 during compaction below
                lfloor[host] = lfloor[t];
                dead[t] = 1;
            } else {
                rfloor[host] = rfloor[t];
                dead[t] = 1;
            }
            info.initiators.push_back(static_cast<int>(t));
            info.targets.push_back(s.target);
            info.stole.push_back(s.stolen ? 1 : 0);
            ctx.graveyard.insert(ctx.graveyard.end(),
                                 local[i].graveyard.begin(),
                                 local[i].graveyard.end());
            ctx.saved.insert(ctx.saved.end(), local[i].saved.begin(),
                             local[i].saved.end());
        }
        if (obs != nullptr && obs->on_round) {
            info.round = round;
            info.ranks = std::move(rank);
            obs->on_round(info);
        }
        std::vector<ABTree> compact;
        std::vector<int> lf2, rf2;
        compact.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            if (!dead[i]) {
                compact.push_back(std::move(live[i]));
                lf2.push_back(lfloor[i]);
                rf2.push_back(rfloor[i]);
            }
        }
        live = std::move(compact);
        lfloor = std::move(lf2);
        rfloor = std::move(rf2);
        ++round;
    }
    ABTree res = std::move(live[0]);
    if (all_aug) {
        repair_subtree_sizes(res, ctx, workers);
    }
    ctx.free_graveyard();
    res.m_size = total;
    res.m_augmented = all_aug;
    res.m_spines.reset();
    return res;
}

ABTree optimal_par_join(std::vector<ABTree> ts, int workers, WorkCounters* c) {
    const std::size_t k = ts.size();
    if (k == 0) {
        return ABTree();
    }
    if (k == 1) {
        // uniform postcondition: the flag is dropped even when no join ran
        ts[0].m_augmented = false;
        return std::move(ts[0]);
    }
    const int w =
        static_cast<int>(std::min<std::size_t>(std::max(workers, 1), k));
    run_parallel(w, [&](int id) {
        const auto [lo, hi] = split_range(k, w, id);
        for (std::uint64_t i = lo; i < hi; ++i) {
            preprocess_spines(ts[i], c);
        }
    });
    const std::size_t group =
        std::max<std::size_t>(1, static_cast<std::size_t>(
                                     std::ceil(std::log2(double(k)))));
    const std::size_t groups = (k + group - 1) / group;
    std::vector<ABTree> merged(groups);
    const int gw =
        static_cast<int>(std::min<std::size_t>(std::max(workers, 1), groups));
    run_parallel(gw, [&](int id) {
        const auto [lo, hi] = split_range(groups, gw, id);
        for (std::uint64_t g = lo; g < hi; ++g) {
            const std::size_t begin = g * group;
            const std::size_t end = std::min(k, begin + group);
            std::vector<ABTree> slice;
            slice.reserve(end - begin);
            for (std::size_t i = begin; i < end; ++i) {
                slice.push_back(std::move(ts[i]));
            }
            merged[g] = join_many_seq(std::move(slice), c);
            merged[g].m_augmented = false;
            preprocess_spines(merged[g], c);
        }
    });
    constexpr std::uint64_t kInternalSeed = 0x5eedULL;
    return lightweight_par_join(std::move(merged), workers, kInternalSeed, c);
}

}  // namespace abtree
