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

#ifndef SPKIT_REFERENCE_HPP
#define SPKIT_REFERENCE_HPP

#include <map>

#include "spkit/decomposition.hpp"
#include "spkit/dpll.hpp"
#include "spkit/factor.hpp"

namespace spkit {

/// Product of the factors in `fs` over the union scope.
Factor multiply_factors(const std::vector<const Factor*>& fs, const SemiringInstance& inst);

/// ⊕ over var's domain. If var is not in the scope each entry becomes the
/// domain-fold of itself, the contribution of an unconstrained variable.
Factor sum_out(const Factor& f, const SemiringInstance& inst, int var);

/// Bucket elimination along pi (which permutes 1..num_vars). Returns the
/// product of all zero-arity factors left at the end.
Value ve_solve(const SemiringInstance& inst, const ElimOrder& pi);

enum class CacheMode { Space, Cache };

struct RefResult {
    Value value;
    SearchStats stats;  // decisions = node expansions
};

/// Instrumentation for the recursive-conditioning cache (tests only).
struct RcHooks {
    /// node id, restriction to the node label, stored value.
    std::function<void(int, const std::vector<std::pair<int, int>>&, const Value&)> on_cache_hit;
};

/// Recursive conditioning guided by a branch decomposition whose leaves
/// correspond to the instance's non-scalar factors. Cache mode keys on
/// (node, instantiation of the node's label).
RefResult rc_solve(const SemiringInstance& inst, const BranchDecomp& b, CacheMode mode,
                   RcHooks* hooks = nullptr);

/// Per pseudo-tree node: the ancestors that can influence its subtree and
/// the factors that become fully instantiated at it.
struct AOLabels {
    std::map<int, std::vector<int>> label;
    std::map<int, std::vector<std::size_t>> fns;
};

AOLabels compute_ao_labels(const SemiringInstance& inst, const PseudoTree& t);

/// AND/OR search over a pseudo tree for the instance's primal graph. Cache
/// mode keys on (node, instantiation of the node's label).
RefResult ao_solve(const SemiringInstance& inst, const PseudoTree& t, CacheMode mode);

} // namespace spkit

#endif
