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

#ifndef SPKIT_DPLL_HPP
#define SPKIT_DPLL_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "spkit/formula.hpp"

namespace spkit {

/// Resolves the branching choice. StaticList holds a permutation of
/// 1..num_vars and skips variables absent from every open component.
struct OrderPolicy {
    enum class Kind { DynamicMaxOccurrence, StaticList, Random };

    Kind kind = Kind::DynamicMaxOccurrence;
    std::vector<int> static_order;
    std::uint64_t seed = 0;
    bool unit_propagation = true;

    static OrderPolicy dynamic(bool up = true);
    static OrderPolicy static_list(std::vector<int> order, bool up = true);
    static OrderPolicy random_order(std::uint64_t seed, bool up = true);

    std::string describe() const;
};

/// Key -> value store with hit/store/removal accounting. A stored value
/// never changes while present.
class CacheStore {
public:
    const Rational* find(const std::string& key);
    void store(const std::string& key, const Rational& value);
    void remove(const std::string& key);

    bool contains(const std::string& key) const { return map_.count(key) != 0; }
    std::size_t size() const { return map_.size(); }
    std::uint64_t peak() const { return peak_; }
    std::uint64_t hits() const { return hits_; }
    std::uint64_t lookups() const { return lookups_; }
    std::uint64_t stores() const { return stores_; }
    std::uint64_t removals() const { return removals_; }
    const std::map<std::string, Rational>& entries() const { return map_; }

private:
    std::map<std::string, Rational> map_;
    std::uint64_t peak_ = 0, hits_ = 0, lookups_ = 0, stores_ = 0, removals_ = 0;
};

struct SearchStats {
    std::uint64_t decisions = 0;
    std::uint64_t up_propagations = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t cache_stores = 0;
    std::uint64_t cache_peak = 0;
    std::uint64_t components_created = 0;
    std::uint64_t conflicts = 0;
    Rational value;
};

/// Test instrumentation; every hook may be empty.
struct SolveHooks {
    /// Called on every component cache hit with the stored value.
    std::function<void(const Component&, const Rational&)> on_cache_hit;
    /// Called once before returning, with the post-run cache.
    std::function<void(const CacheStore&)> on_finish;
};

struct SatResult {
    bool satisfiable = false;
    SearchStats stats;
};

/// Plain DPLL; stops on the first satisfying path.
SatResult sat_dpll(const Formula& f, const OrderPolicy& policy);

/// Exhaustive counting without caching. Returns the probability of f under
/// the per-variable weights (uniform 1/2 by default).
SearchStats count_dpll(const Formula& f, const OrderPolicy& policy);

/// Counting with whole-residual memoization: the full residual's key is
/// probed before branching and stored after solving.
SearchStats count_simple_cache(const Formula& f, const OrderPolicy& policy);

/// Counting over sets of disjoint components with component-level caching.
/// space_mode removes sub-component entries before each return so the
/// post-run cache holds only the top-level components.
SearchStats count_component_cache(const Formula& f, const OrderPolicy& policy,
                                  bool space_mode = false, SolveHooks* hooks = nullptr);

/// Picks the branch variable among the open components: the most frequent
/// variable for DynamicMaxOccurrence (ties to the smallest id), the first
/// listed variable present for StaticList. Returns the variable and the
/// index of its component.
std::pair<int, std::size_t> choose_variable(const std::vector<Component>& components,
                                            const OrderPolicy& policy,
                                            std::mt19937_64* rng = nullptr);

} // namespace spkit

#endif
