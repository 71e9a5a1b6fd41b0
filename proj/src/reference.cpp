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

#include "spkit/reference.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "spkit/errors.hpp"

namespace spkit {

namespace {

// Enumerates assignments to `vars` in row-major order, last variable
// fastest. Returns false once all combinations are done.
bool next_assignment(const std::vector<int>& vars, const SemiringInstance& inst, Assignment& a,
                     bool& started) {
    if (!started) {
        for (int v : vars) a.assign(v, 0);
        started = true;
        return true;
    }
    for (std::size_t i = vars.size(); i-- > 0;) {
        int v = vars[i];
        int next = a.value(v) + 1;
        a.unassign(v);
        if (next < inst.domain(v)) {
            a.assign(v, next);
            for (std::size_t j = i + 1; j < vars.size(); ++j) {
                a.unassign(vars[j]);
                a.assign(vars[j], 0);
            }
            return true;
        }
        a.assign(v, 0);
    }
    for (int v : vars) a.unassign(v);
    return false;
}

std::string restriction_key(const std::vector<std::pair<int, int>>& pairs) {
    std::ostringstream os;
    for (auto [v, d] : pairs) os << v << '=' << d << ';';
    return os.str();
}

// Value of an unconstrained variable: the domain-fold of one.
Value free_var_value(const SemiringInstance& inst, int v) {
    return inst.semiring->iterate_plus(inst.semiring->one, inst.domain(v));
}

} // namespace

Factor multiply_factors(const std::vector<const Factor*>& fs, const SemiringInstance& inst) {
    const auto& sr = *inst.semiring;
    Factor out;
    std::set<int> scope_set;
    for (const auto* f : fs) scope_set.insert(f->scope.begin(), f->scope.end());
    out.scope.assign(scope_set.begin(), scope_set.end());

    std::size_t cells = 1;
    for (int v : out.scope) cells *= static_cast<std::size_t>(inst.domain(v));
    out.table.reserve(cells);

    Assignment a(inst.num_vars);
    bool started = false;
    if (out.scope.empty()) {
        Value prod = sr.one;
        for (const auto* f : fs) prod = sr.times(prod, f->table.front());
        out.table.push_back(prod);
        return out;
    }
    while (next_assignment(out.scope, inst, a, started)) {
        Value prod = sr.one;
        for (const auto* f : fs) prod = sr.times(prod, factor_value(*f, inst, a));
        out.table.push_back(prod);
    }
    return out;
}

Factor sum_out(const Factor& f, const SemiringInstance& inst, int var) {
    const auto& sr = *inst.semiring;
    if (std::find(f.scope.begin(), f.scope.end(), var) == f.scope.end()) {
        Factor out = f;
        for (auto& cell : out.table) cell = sr.iterate_plus(cell, inst.domain(var));
        return out;
    }
    Factor acc = reduce_factor(f, inst, var, 0);
    for (int d = 1; d < inst.domain(var); ++d) {
        Factor slice = reduce_factor(f, inst, var, d);
        for (std::size_t i = 0; i < acc.table.size(); ++i)
            acc.table[i] = sr.plus(acc.table[i], slice.table[i]);
    }
    return acc;
}

Value ve_solve(const SemiringInstance& inst, const ElimOrder& pi) {
    if (static_cast<int>(pi.order.size()) != inst.num_vars)
        throw ParameterOutOfRange("elimination order does not permute the variables");
    const auto& sr = *inst.semiring;

    std::vector<Factor> pool = inst.factors;
    for (int x : pi.order) {
        std::vector<const Factor*> collected;
        std::vector<Factor> rest;
        for (auto& f : pool) {
            if (std::find(f.scope.begin(), f.scope.end(), x) != f.scope.end())
                collected.push_back(&f);
            else
                rest.push_back(f);
        }
        Factor joint = collected.empty() ? Factor{{}, {sr.one}} : multiply_factors(collected, inst);
        rest.push_back(sum_out(joint, inst, x));
        pool = std::move(rest);
    }
    Value result = sr.one;
    for (const auto& f : pool) {
        if (!f.scalar()) throw Error("variable elimination left a non-scalar factor");
        result = sr.times(result, f.scalar_value());
    }
    return result;
}

namespace {

class RcSolver {
public:
    RcSolver(const SemiringInstance& inst, const BranchDecomp& b, CacheMode mode, RcHooks* hooks)
        : inst_(inst), b_(b), mode_(mode), hooks_(hooks), sr_(*inst.semiring) {
        // Leaf i of the decomposition carries hyperedge i, which is the
        // i-th non-scalar factor.
        for (std::size_t i = 0; i < inst.factors.size(); ++i)
            if (!inst.factors[i].scalar()) factor_of_edge_.push_back(i);
    }

    RefResult run() {
        Value v = sr_.one;
        for (const auto& f : inst_.factors)
            if (f.scalar()) v = sr_.times(v, f.scalar_value());
        Assignment rho(inst_.num_vars);
        if (b_.root >= 0) v = sr_.times(v, solve(b_.root, rho));
        // Variables outside every factor scope still range over their domains.
        std::set<int> covered;
        for (const auto& f : inst_.factors) covered.insert(f.scope.begin(), f.scope.end());
        for (int x = 1; x <= inst_.num_vars; ++x)
            if (!covered.count(x)) v = sr_.times(v, free_var_value(inst_, x));
        stats_.cache_hits = cache_hits_;
        stats_.cache_stores = static_cast<std::uint64_t>(cache_.size());
        stats_.cache_peak = stats_.cache_stores;
        return {v, stats_};
    }

private:
    Value solve(int node, Assignment& rho) {
        const DecompNode& n = b_.nodes[static_cast<std::size_t>(node)];
        if (n.is_leaf()) {
            ++stats_.decisions;
            return leaf_value(n, rho);
        }
        std::vector<std::pair<int, int>> y;  // rho restricted to label(node)
        std::string key;
        if (mode_ == CacheMode::Cache) {
            for (int v : n.label)
                if (rho.assigned(v)) y.emplace_back(v, rho.value(v));
            key = std::to_string(node) + '|' + restriction_key(y);
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                ++cache_hits_;
                if (hooks_ && hooks_->on_cache_hit) hooks_->on_cache_hit(node, y, it->second);
                return it->second;
            }
        }
        ++stats_.decisions;

        const auto& left = b_.nodes[static_cast<std::size_t>(n.left)].label;
        const auto& right = b_.nodes[static_cast<std::size_t>(n.right)].label;
        std::vector<int> branch_vars;
        std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                              std::back_inserter(branch_vars));
        branch_vars.erase(std::remove_if(branch_vars.begin(), branch_vars.end(),
                                         [&](int v) { return rho.assigned(v); }),
                          branch_vars.end());

        // An empty branch set still yields the single empty instantiation.
        Value p = sr_.zero;
        bool started = false;
        while (next_assignment(branch_vars, inst_, rho, started)) {
            Value prod = solve(n.left, rho);
            if (!early_zero_cutoff(prod, sr_)) prod = sr_.times(prod, solve(n.right, rho));
            p = sr_.plus(p, prod);
        }
        if (mode_ == CacheMode::Cache) cache_.emplace(std::move(key), p);
        return p;
    }

    // LOOKUP at a leaf; scope variables not yet instantiated are summed out.
    Value leaf_value(const DecompNode& n, Assignment& rho) {
        const Factor& f = inst_.factors[factor_of_edge_.at(static_cast<std::size_t>(n.edge_index))];
        std::vector<int> open;
        for (int v : f.scope)
            if (!rho.assigned(v)) open.push_back(v);
        if (open.empty()) return factor_value(f, inst_, rho);
        Value total = sr_.zero;
        bool started = false;
        while (next_assignment(open, inst_, rho, started))
            total = sr_.plus(total, factor_value(f, inst_, rho));
        return total;
    }

    const SemiringInstance& inst_;
    const BranchDecomp& b_;
    CacheMode mode_;
    RcHooks* hooks_;
    const SemiringSpec& sr_;
    std::vector<std::size_t> factor_of_edge_;
    std::map<std::string, Value> cache_;
    std::uint64_t cache_hits_ = 0;
    SearchStats stats_;
};

} // namespace

RefResult rc_solve(const SemiringInstance& inst, const BranchDecomp& b, CacheMode mode,
                   RcHooks* hooks) {
    Hypergraph h = hypergraph_of(inst);
    if (!b.empty()) {
        if (auto errs = validate(b, h); !errs.empty())
            throw InvalidDecomposition("rc_solve: " + errs.front());
    } else if (!h.edges.empty()) {
        throw InvalidDecomposition("rc_solve: empty decomposition for a non-empty instance");
    }
    RcSolver solver(inst, b, mode, hooks);
    return solver.run();
}

AOLabels compute_ao_labels(const SemiringInstance& inst, const PseudoTree& t) {
    AOLabels out;
    // Ancestor chains.
    std::map<int, std::vector<int>> ancestors;
    for (const auto& [v, p] : t.parent) {
        std::vector<int> chain;
        for (int cur = p; cur != 0;) {
            chain.push_back(cur);
            auto it = t.parent.find(cur);
            if (it == t.parent.end()) throw InvalidPseudoTree("broken parent chain");
            cur = it->second;
        }
        ancestors[v] = std::move(chain);
    }

    for (std::size_t i = 0; i < inst.factors.size(); ++i) {
        const auto& scope = inst.factors[i].scope;
        if (scope.empty()) continue;
        // The deepest scope member must have all others as ancestors.
        int deepest = -1;
        for (int v : scope) {
            if (!t.parent.count(v))
                throw FactorScopeViolation("scope variable " + std::to_string(v) +
                                           " missing from the pseudo tree");
            bool others_above = true;
            for (int u : scope)
                if (u != v && std::find(ancestors[v].begin(), ancestors[v].end(), u) ==
                                  ancestors[v].end())
                    others_above = false;
            if (others_above) {
                deepest = v;
                break;
            }
        }
        if (deepest < 0)
            throw FactorScopeViolation("factor scope is not contained in one root path");
        out.fns[deepest].push_back(i);
    }

    // label(n): ancestors of n appearing in some factor with n or with a
    // descendant of n.
    for (const auto& [n, p] : t.parent) {
        std::set<int> anc(ancestors[n].begin(), ancestors[n].end());
        std::set<int> below;
        below.insert(n);
        // Descendants: repeated closure over the parent map.
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& [v, q] : t.parent)
                if (below.count(q) && !below.count(v)) {
                    below.insert(v);
                    grew = true;
                }
        }
        std::set<int> lab;
        for (const auto& f : inst.factors) {
            bool touches_below = false;
            for (int v : f.scope)
                if (below.count(v)) touches_below = true;
            if (!touches_below) continue;
            for (int v : f.scope)
                if (anc.count(v)) lab.insert(v);
        }
        out.label[n] = std::vector<int>(lab.begin(), lab.end());
    }
    return out;
}

namespace {

class AoSolver {
public:
    AoSolver(const SemiringInstance& inst, const PseudoTree& t, CacheMode mode)
        : inst_(inst), t_(t), mode_(mode), sr_(*inst.semiring),
          labels_(compute_ao_labels(inst, t)) {
        for (const auto& [v, p] : t.parent) children_[p].push_back(v);
    }

    RefResult run() {
        Value v = sr_.one;
        for (const auto& f : inst_.factors)
            if (f.scalar()) v = sr_.times(v, f.scalar_value());
        Assignment rho(inst_.num_vars);
        for (int root : t_.roots()) {
            if (early_zero_cutoff(v, sr_)) break;
            v = sr_.times(v, solve(root, rho));
        }
        stats_.cache_hits = cache_hits_;
        stats_.cache_stores = static_cast<std::uint64_t>(cache_.size());
        stats_.cache_peak = stats_.cache_stores;
        return {v, stats_};
    }

private:
    Value solve(int node, Assignment& rho) {
        std::string key;
        if (mode_ == CacheMode::Cache) {
            std::vector<std::pair<int, int>> y;
            for (int v : labels_.label.at(node))
                if (rho.assigned(v)) y.emplace_back(v, rho.value(v));
            key = std::to_string(node) + '|' + restriction_key(y);
            auto it = cache_.find(key);
            if (it != cache_.end()) {
                ++cache_hits_;
                return it->second;
            }
        }
        ++stats_.decisions;

        auto fns_it = labels_.fns.find(node);
        auto kids_it = children_.find(node);
        Value p = sr_.zero;
        for (int d = 0; d < inst_.domain(node); ++d) {
            rho.assign(node, d);
            Value alpha = sr_.one;
            if (fns_it != labels_.fns.end())
                for (std::size_t fi : fns_it->second)
                    alpha = sr_.times(alpha, factor_value(inst_.factors[fi], inst_, rho));
            if (kids_it != children_.end())
                for (int child : kids_it->second) {
                    if (early_zero_cutoff(alpha, sr_)) break;
                    alpha = sr_.times(alpha, solve(child, rho));
                }
            p = sr_.plus(p, alpha);
            rho.unassign(node);
        }
        if (mode_ == CacheMode::Cache) cache_.emplace(std::move(key), p);
        return p;
    }

    const SemiringInstance& inst_;
    const PseudoTree& t_;
    CacheMode mode_;
    const SemiringSpec& sr_;
    AOLabels labels_;
    std::map<int, std::vector<int>> children_;
    std::map<std::string, Value> cache_;
    std::uint64_t cache_hits_ = 0;
    SearchStats stats_;
};

} // namespace

RefResult ao_solve(const SemiringInstance& inst, const PseudoTree& t, CacheMode mode) {
    Graph g = primal_graph(hypergraph_of(inst));
    if (auto errs = validate(t, g); !errs.empty())
        throw InvalidPseudoTree("ao_solve: " + errs.front());
    AoSolver solver(inst, t, mode);
    return solver.run();
}

} // namespace spkit
