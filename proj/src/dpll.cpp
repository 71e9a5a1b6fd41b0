/*
 * Copyright 2026 The spkit authors
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

#include "spkit/dpll.hpp"

#include <algorithm>

#include "spkit/errors.hpp"

namespace spkit {

OrderPolicy OrderPolicy::dynamic(bool up) {
    OrderPolicy p;
    p.kind = Kind::DynamicMaxOccurrence;
    p.unit_propagation = up;
    return p;
}

OrderPolicy OrderPolicy::static_list(std::vector<int> order, bool up) {
    OrderPolicy p;
    p.kind = Kind::StaticList;
    p.static_order = std::move(order);
    p.unit_propagation = up;
    return p;
}

OrderPolicy OrderPolicy::random_order(std::uint64_t seed, bool up) {
    OrderPolicy p;
    p.kind = Kind::Random;
    p.seed = seed;
    p.unit_propagation = up;
    return p;
}

std::string OrderPolicy::describe() const {
    std::string base;
    switch (kind) {
        case Kind::DynamicMaxOccurrence: base = "dynamic"; break;
        case Kind::StaticList: base = "static"; break;
        case Kind::Random: base = "random:" + std::to_string(seed); break;
    }
    return base + (unit_propagation ? "+up" : "-up");
}

const Rational* CacheStore::find(const std::string& key) {
    ++lookups_;
    auto it = map_.find(key);
    if (it == map_.end()) return nullptr;
    ++hits_;
    return &it->second;
}

void CacheStore::store(const std::string& key, const Rational& value) {
    auto [it, fresh] = map_.emplace(key, value);
    if (!fresh) {
        if (it->second != value)
            throw Error("cache key stored twice with different values");
        return;
    }
    ++stores_;
    peak_ = std::max<std::uint64_t>(peak_, map_.size());
}

void CacheStore::remove(const std::string& key) {
    if (map_.erase(key)) ++removals_;
}

namespace {

// Branch variable selection over residual clauses; `clauses` spans one or
// more components.
int pick_variable(const std::vector<const ResidualClause*>& clauses, const OrderPolicy& policy,
                  std::mt19937_64* rng) {
    switch (policy.kind) {
        case OrderPolicy::Kind::DynamicMaxOccurrence: {
            std::map<int, int> occ;
            for (const auto* rc : clauses)
                for (Lit l : rc->lits) ++occ[var_of(l)];
            int best = 0, best_count = 0;
            for (const auto& [v, n] : occ)
                if (n > best_count) {
                    best = v;
                    best_count = n;
                }
            if (best == 0) throw NoBranchableVariable("no variable occurs in any clause");
            return best;
        }
        case OrderPolicy::Kind::StaticList: {
            std::vector<int> present;
            for (const auto* rc : clauses)
                for (Lit l : rc->lits) present.push_back(var_of(l));
            std::sort(present.begin(), present.end());
            for (int v : policy.static_order)
                if (std::binary_search(present.begin(), present.end(), v)) return v;
            throw NoBranchableVariable("static list exhausted with open clauses");
        }
        case OrderPolicy::Kind::Random: {
            std::vector<int> present;
            for (const auto* rc : clauses)
                for (Lit l : rc->lits) present.push_back(var_of(l));
            std::sort(present.begin(), present.end());
            present.erase(std::unique(present.begin(), present.end()), present.end());
            if (present.empty()) throw NoBranchableVariable("no variable occurs in any clause");
            if (!rng) return present.front();
            std::uniform_int_distribution<std::size_t> dist(0, present.size() - 1);
            return present[dist(*rng)];
        }
    }
    throw NoBranchableVariable("unreachable");
}

// Reduction of a clause set by one assignment plus optional unit
// propagation; accumulates the branch weight.
struct Reduction {
    Rational factor{1};
    bool zero = false;
    int forced = 0;
    std::vector<ResidualClause> clauses;
};

Reduction reduce_clauses(const std::vector<ResidualClause>& in, const Formula& f, int var,
                         int val, bool unit_prop) {
    Reduction red;
    red.factor = f.weight(var, val);
    std::map<int, int> fixed;
    fixed[var] = val;

    std::vector<ResidualClause> cur;
    cur.reserve(in.size());
    for (const auto& rc : in) cur.push_back(rc);

    for (;;) {
        std::vector<ResidualClause> next;
        next.reserve(cur.size());
        int unit_var = 0, unit_val = 0;
        for (auto& rc : cur) {
            std::vector<Lit> lits;
            lits.reserve(rc.lits.size());
            bool satisfied = false;
            for (Lit l : rc.lits) {
                auto it = fixed.find(var_of(l));
                if (it == fixed.end()) {
                    lits.push_back(l);
                } else if (it->second == (positive(l) ? 1 : 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied) continue;
            if (lits.empty()) {
                red.zero = true;
                return red;
            }
            if (unit_prop && lits.size() == 1 && unit_var == 0) {
                unit_var = var_of(lits.front());
                unit_val = positive(lits.front()) ? 1 : 0;
            }
            next.push_back(ResidualClause{rc.orig_index, std::move(lits)});
        }
        cur = std::move(next);
        if (unit_var == 0) break;
        fixed.clear();
        fixed[unit_var] = unit_val;
        red.factor *= f.weight(unit_var, unit_val);
        ++red.forced;
    }
    red.clauses = std::move(cur);
    return red;
}

// Reduction of the full formula before the first decision: the obvious
// checks plus top-level unit propagation when the policy enables it.
Reduction top_reduction(const Formula& f, const OrderPolicy& policy, SearchStats& stats) {
    Reduction red;
    red.clauses = residual_of(f).clauses;
    if (is_obvious(Residual{red.clauses}) == ObviousStatus::HasEmptyClause) {
        red.zero = true;
        return red;
    }
    if (!policy.unit_propagation) return red;
    for (;;) {
        int unit_var = 0, unit_val = 0;
        for (const auto& rc : red.clauses)
            if (rc.lits.size() == 1) {
                unit_var = var_of(rc.lits.front());
                unit_val = positive(rc.lits.front()) ? 1 : 0;
                break;
            }
        if (unit_var == 0) return red;
        auto step = reduce_clauses(red.clauses, f, unit_var, unit_val, true);
        stats.up_propagations += static_cast<std::uint64_t>(1 + step.forced);
        red.factor *= step.factor;
        red.clauses = std::move(step.clauses);
        if (step.zero) {
            red.zero = true;
            return red;
        }
    }
}

class ComponentSolver {
public:
    ComponentSolver(const Formula& f, const OrderPolicy& policy, bool space_mode,
                    SolveHooks* hooks)
        : f_(f), policy_(policy), space_mode_(space_mode), hooks_(hooks), rng_(policy.seed) {}

    Rational run() {
        Reduction top = top_reduction(f_, policy_, stats_);
        Rational result;
        if (top.zero) {
            ++stats_.conflicts;
            result = 0;
        } else {
            auto comps = to_components(std::move(top.clauses));
            stats_.components_created += comps.size();
            solve_set(comps);
            result = top.factor * known_product(comps);
        }
        stats_.cache_hits = cache_.hits();
        stats_.cache_stores = cache_.stores();
        stats_.cache_peak = cache_.peak();
        stats_.value = result;
        if (hooks_ && hooks_->on_finish) hooks_->on_finish(cache_);
        return result;
    }

    SearchStats stats() const { return stats_; }

private:
    // True if every member is cached, or some member is cached as zero.
    bool set_known(const std::vector<Component>& comps) {
        bool all = true;
        for (const auto& c : comps) {
            const Rational* v = cache_.find(c.key);
            if (v && hooks_ && hooks_->on_cache_hit) hooks_->on_cache_hit(c, *v);
            if (v && *v == 0) return true;
            if (!v) all = false;
        }
        return all;
    }

    // Product of cached values; 0 as soon as a zero member is seen. Only
    // valid after set_known returned true (lookups are not re-counted).
    Rational known_product(const std::vector<Component>& comps) const {
        Rational prod = 1;
        for (const auto& c : comps) {
            auto it = cache_.entries().find(c.key);
            if (it != cache_.entries().end() && it->second == 0) return Rational(0);
        }
        for (const auto& c : comps) {
            auto it = cache_.entries().find(c.key);
            if (it == cache_.entries().end())
                throw Error("component value requested before it was solved");
            prod *= it->second;
        }
        return prod;
    }

    bool branch_value_ready(const std::vector<Component>& comps) const {
        for (const auto& c : comps) {
            auto it = cache_.entries().find(c.key);
            if (it != cache_.entries().end() && it->second == 0) return true;
        }
        for (const auto& c : comps)
            if (!cache_.contains(c.key)) return false;
        return true;
    }

    void solve_set(const std::vector<Component>& comps) {
        if (set_known(comps)) return;

        std::vector<Component> open;
        for (const auto& c : comps)
            if (!cache_.contains(c.key)) open.push_back(c);

        auto [var, idx] = choose_variable_impl(open);
        ++stats_.decisions;
        Component chosen = std::move(open[idx]);
        open.erase(open.begin() + static_cast<long>(idx));

        Rational branch_vals[2];
        std::vector<Component> splits[2];
        bool ready[2] = {false, false};
        for (int val = 0; val <= 1; ++val) {
            auto red = reduce_clauses(chosen.clauses, f_, var, val, policy_.unit_propagation);
            stats_.up_propagations += static_cast<std::uint64_t>(red.forced);
            if (red.zero) {
                ++stats_.conflicts;
                branch_vals[val] = 0;
                ready[val] = true;
                continue;
            }
            splits[val] = to_components(std::move(red.clauses));
            stats_.components_created += splits[val].size();
            std::vector<Component> next = open;
            next.insert(next.end(), splits[val].begin(), splits[val].end());
            solve_set(next);
            // A sibling component cached as zero can end the recursion
            // before this branch's own components are solved; the branch
            // value is then unobtainable, and the caller's set is zero
            // regardless.
            ready[val] = branch_value_ready(splits[val]);
            if (ready[val]) branch_vals[val] = red.factor * known_product(splits[val]);
        }
        if (ready[0] && ready[1])
            cache_.store(chosen.key, branch_vals[0] + branch_vals[1]);
        if (space_mode_)
            for (const auto& side : splits)
                for (const auto& c : side) cache_.remove(c.key);
    }

    std::pair<int, std::size_t> choose_variable_impl(const std::vector<Component>& open) {
        return choose_variable(open, policy_, &rng_);
    }

    const Formula& f_;
    const OrderPolicy& policy_;
    bool space_mode_;
    SolveHooks* hooks_;
    std::mt19937_64 rng_;
    CacheStore cache_;
    SearchStats stats_;
};

} // namespace

std::pair<int, std::size_t> choose_variable(const std::vector<Component>& components,
                                            const OrderPolicy& policy, std::mt19937_64* rng) {
    std::vector<const ResidualClause*> all;
    for (const auto& c : components)
        for (const auto& rc : c.clauses) all.push_back(&rc);
    int var = pick_variable(all, policy, rng);
    for (std::size_t i = 0; i < components.size(); ++i)
        if (std::binary_search(components[i].vars.begin(), components[i].vars.end(), var))
            return {var, i};
    throw NoBranchableVariable("chosen variable belongs to no component");
}

SatResult sat_dpll(const Formula& f, const OrderPolicy& policy) {
    SatResult res;
    std::mt19937_64 rng(policy.seed);

    std::function<bool(const std::vector<ResidualClause>&)> go =
        [&](const std::vector<ResidualClause>& clauses) -> bool {
        if (clauses.empty()) return true;
        for (const auto& rc : clauses)
            if (rc.lits.empty()) {
                ++res.stats.conflicts;
                return false;
            }
        std::vector<const ResidualClause*> view;
        for (const auto& rc : clauses) view.push_back(&rc);
        int var = pick_variable(view, policy, &rng);
        ++res.stats.decisions;
        for (int val = 0; val <= 1; ++val) {
            auto red = reduce_clauses(clauses, f, var, val, policy.unit_propagation);
            res.stats.up_propagations += static_cast<std::uint64_t>(red.forced);
            if (red.zero) {
                ++res.stats.conflicts;
                continue;
            }
            if (go(red.clauses)) return true;  // first satisfying path wins
        }
        return false;
    };

    Reduction top = top_reduction(f, policy, res.stats);
    if (top.zero) {
        ++res.stats.conflicts;
        res.satisfiable = false;
    } else {
        res.satisfiable = go(top.clauses);
    }
    res.stats.value = res.satisfiable ? 1 : 0;
    return res;
}

SearchStats count_dpll(const Formula& f, const OrderPolicy& policy) {
    SearchStats stats;
    std::mt19937_64 rng(policy.seed);

    std::function<Rational(const std::vector<ResidualClause>&)> go =
        [&](const std::vector<ResidualClause>& clauses) -> Rational {
        if (clauses.empty()) return Rational(1);
        for (const auto& rc : clauses)
            if (rc.lits.empty()) {
                ++stats.conflicts;
                return Rational(0);
            }
        std::vector<const ResidualClause*> view;
        for (const auto& rc : clauses) view.push_back(&rc);
        int var = pick_variable(view, policy, &rng);
        ++stats.decisions;
        Rational total = 0;
        for (int val = 0; val <= 1; ++val) {
            auto red = reduce_clauses(clauses, f, var, val, policy.unit_propagation);
            stats.up_propagations += static_cast<std::uint64_t>(red.forced);
            if (red.zero) {
                ++stats.conflicts;
                continue;
            }
            total += red.factor * go(red.clauses);
        }
        return total;
    };

    Reduction top = top_reduction(f, policy, stats);
    if (top.zero) {
        ++stats.conflicts;
        stats.value = 0;
    } else {
        stats.value = top.factor * go(top.clauses);
    }
    return stats;
}

SearchStats count_simple_cache(const Formula& f, const OrderPolicy& policy) {
    SearchStats stats;
    CacheStore cache;
    std::mt19937_64 rng(policy.seed);

    std::function<Rational(const std::vector<ResidualClause>&)> go =
        [&](const std::vector<ResidualClause>& clauses) -> Rational {
        if (clauses.empty()) return Rational(1);
        for (const auto& rc : clauses)
            if (rc.lits.empty()) {
                ++stats.conflicts;
                return Rational(0);
            }
        std::string key = canonical_key(clauses);
        if (const Rational* hit = cache.find(key)) return *hit;

        std::vector<const ResidualClause*> view;
        for (const auto& rc : clauses) view.push_back(&rc);
        int var = pick_variable(view, policy, &rng);
        ++stats.decisions;
        Rational total = 0;
        for (int val = 0; val <= 1; ++val) {
            auto red = reduce_clauses(clauses, f, var, val, policy.unit_propagation);
            stats.up_propagations += static_cast<std::uint64_t>(red.forced);
            if (red.zero) {
                ++stats.conflicts;
                continue;
            }
            total += red.factor * go(red.clauses);
        }
        cache.store(key, total);
        return total;
    };

    Reduction top = top_reduction(f, policy, stats);
    if (top.zero) {
        ++stats.conflicts;
        stats.value = 0;
    } else {
        stats.value = top.factor * go(top.clauses);
    }
    stats.cache_hits = cache.hits();
    stats.cache_stores = cache.stores();
    stats.cache_peak = cache.peak();
    return stats;
}

SearchStats count_component_cache(const Formula& f, const OrderPolicy& policy, bool space_mode,
                                  SolveHooks* hooks) {
    ComponentSolver solver(f, policy, space_mode, hooks);
    solver.run();
    return solver.stats();
}

} // namespace spkit
