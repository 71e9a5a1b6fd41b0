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

#ifndef SPKIT_FACTOR_HPP
#define SPKIT_FACTOR_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "spkit/formula.hpp"
#include "spkit/hypergraph.hpp"
#include "spkit/semiring.hpp"

namespace spkit {

/// A function over an ordered variable scope, stored as a flat table in
/// row-major order with the last scope variable fastest.
struct Factor {
    std::vector<int> scope;    // no repeats
    std::vector<Value> table;  // length = product of scope domain sizes

    bool scalar() const { return scope.empty(); }
    const Value& scalar_value() const { return table.front(); }
};

/// The SUMPROD tuple: variables 1..num_vars with finite domains, factors,
/// and the semiring operators.
struct SemiringInstance {
    int num_vars = 0;
    std::vector<int> domains;  // 1-based; domains[0] unused
    std::vector<Factor> factors;
    const SemiringSpec* semiring = nullptr;

    int domain(int v) const { return domains[static_cast<std::size_t>(v)]; }
};

SemiringInstance make_instance(int num_vars, std::vector<int> domains,
                               std::vector<Factor> factors, const SemiringSpec& semiring);

/// One hyperedge per non-scalar factor scope; vertices 1..num_vars.
Hypergraph hypergraph_of(const SemiringInstance& inst);

/// Table lookup for a fully assigned scope.
const Value& factor_value(const Factor& f, const SemiringInstance& inst, const Assignment& a);

/// Slices the table at var = val; the scope shrinks by var. A zero-arity
/// result is a scalar factor.
Factor reduce_factor(const Factor& f, const SemiringInstance& inst, int var, int val);

/// Factors reachable from each other through shared uninstantiated
/// variables, after reducing by an assignment.
struct InstComponent {
    std::vector<std::size_t> factor_indices;  // into the instance's factor list
    std::vector<int> vars;                    // uninstantiated, sorted
};

struct InstanceSplit {
    Value scalar;                          // ⊗ of fully instantiated factors
    std::vector<InstComponent> components;
    std::vector<int> dropped_vars;         // uninstantiated but factor-free
};

/// Partitions the factors of inst|a by primal-graph connectivity over the
/// uninstantiated variables. Components are ordered by smallest variable.
InstanceSplit instance_to_components(const SemiringInstance& inst, const Assignment& a);

/// Literal evaluation of the nested sum of products; the oracle for every
/// other solver. Throws InstanceTooLarge past the cap.
Value brute_force_sumprod(const SemiringInstance& inst, std::uint64_t state_cap = 1u << 22);

/// One 0/1 factor per clause (satisfying rows 1); for the counting
/// semiring a weighted formula adds one unary weight factor per variable.
SemiringInstance encode_cnf_as_instance(const Formula& f, const SemiringSpec& semiring);

/// §2.1 problem constructors: factors reduced by the evidence, semiring
/// fixed to (max,×), (+,×), (max,+) respectively.
SemiringInstance make_instance_mpe(int num_vars, std::vector<int> domains,
                                   std::vector<Factor> factors, const Assignment& evidence);
SemiringInstance make_instance_partition(int num_vars, std::vector<int> domains,
                                         std::vector<Factor> factors,
                                         const Assignment& evidence);
SemiringInstance make_instance_maxsum(int num_vars, std::vector<int> domains,
                                      std::vector<Factor> factors, const Assignment& evidence);

} // namespace spkit

#endif
