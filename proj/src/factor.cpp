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

#include "spkit/factor.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "spkit/errors.hpp"

namespace spkit {

SemiringInstance make_instance(int num_vars, std::vector<int> domains,
                               std::vector<Factor> factors, const SemiringSpec& semiring) {
    if (num_vars < 0) throw ParameterOutOfRange("negative variable count");
    if (static_cast<int>(domains.size()) == num_vars)
        domains.insert(domains.begin(), 0);  // accept 0-based input
    if (static_cast<int>(domains.size()) != num_vars + 1)
        throw ParameterOutOfRange("domain list length mismatch");
    for (int v = 1; v <= num_vars; ++v)
        if (domains[static_cast<std::size_t>(v)] < 1 || domains[static_cast<std::size_t>(v)] > 64)
            throw ParameterOutOfRange("domain size of variable " + std::to_string(v) +
                                      " out of range");
    SemiringInstance inst;
    inst.num_vars = num_vars;
    inst.domains = std::move(domains);
    inst.semiring = &semiring;
    for (auto& f : factors) {
        std::set<int> seen;
        std::size_t cells = 1;
        for (int v : f.scope) {
            if (v < 1 || v > num_vars)
                throw ScopeOutOfRange("factor scope variable " + std::to_string(v));
            if (!seen.insert(v).second)
                throw ScopeOutOfRange("factor repeats variable " + std::to_string(v));
            cells *= static_cast<std::size_t>(inst.domain(v));
        }
        if (f.table.size() != cells)
            throw TableLengthMismatch("factor table has " + std::to_string(f.table.size()) +
                                      " entries, scope needs " + std::to_string(cells));
        inst.factors.push_back(std::move(f));
    }
    return inst;
}

Hypergraph hypergraph_of(const SemiringInstance& inst) {
    Hypergraph h;
    for (int v = 1; v <= inst.num_vars; ++v) h.vertices.push_back(v);
    for (const auto& f : inst.factors) {
        if (f.scalar()) continue;
        auto e = f.scope;
        std::sort(e.begin(), e.end());
        h.edges.push_back(std::move(e));
    }
    return h;
}

namespace {

std::size_t table_index(const Factor& f, const SemiringInstance& inst, const Assignment& a) {
    std::size_t idx = 0;
    for (int v : f.scope) {
        if (!a.assigned(v)) throw Error("factor lookup with unassigned variable");
        idx = idx * static_cast<std::size_t>(inst.domain(v)) +
              static_cast<std::size_t>(a.value(v));
    }
    return idx;
}

} // namespace

const Value& factor_value(const Factor& f, const SemiringInstance& inst, const Assignment& a) {
    return f.table[table_index(f, inst, a)];
}

Factor reduce_factor(const Factor& f, const SemiringInstance& inst, int var, int val) {
    auto pos_it = std::find(f.scope.begin(), f.scope.end(), var);
    if (pos_it == f.scope.end())
        throw VarNotInScope("variable " + std::to_string(var) + " not in factor scope");
    if (val < 0 || val >= inst.domain(var))
        throw ParameterOutOfRange("value " + std::to_string(val) + " outside domain");
    std::size_t pos = static_cast<std::size_t>(pos_it - f.scope.begin());

    Factor out;
    out.scope = f.scope;
    out.scope.erase(out.scope.begin() + static_cast<long>(pos));

    std::size_t inner = 1;  // stride of cells under var
    for (std::size_t i = pos + 1; i < f.scope.size(); ++i)
        inner *= static_cast<std::size_t>(inst.domain(f.scope[i]));
    std::size_t dom = static_cast<std::size_t>(inst.domain(var));
    std::size_t outer = f.table.size() / (inner * dom);

    out.table.reserve(f.table.size() / dom);
    for (std::size_t o = 0; o < outer; ++o) {
        std::size_t base = (o * dom + static_cast<std::size_t>(val)) * inner;
        for (std::size_t k = 0; k < inner; ++k) out.table.push_back(f.table[base + k]);
    }
    return out;
}

InstanceSplit instance_to_components(const SemiringInstance& inst, const Assignment& a) {
    const auto& sr = *inst.semiring;
    InstanceSplit split;
    split.scalar = sr.one;

    // Union-find over factors through shared uninstantiated variables.
    std::vector<long> parent(inst.factors.size(), -2);  // -2 = collapsed
    std::vector<std::vector<int>> open_vars(inst.factors.size());
    for (std::size_t i = 0; i < inst.factors.size(); ++i) {
        for (int v : inst.factors[i].scope)
            if (!a.assigned(v)) open_vars[i].push_back(v);
        std::sort(open_vars[i].begin(), open_vars[i].end());
        if (open_vars[i].empty())
            split.scalar = sr.times(split.scalar, factor_value(inst.factors[i], inst, a));
        else
            parent[i] = static_cast<long>(i);
    }
    auto find = [&](std::size_t x) {
        while (parent[x] != static_cast<long>(x)) {
            parent[x] = parent[static_cast<std::size_t>(parent[x])];
            x = static_cast<std::size_t>(parent[x]);
        }
        return x;
    };
    std::map<int, std::size_t> var_home;
    for (std::size_t i = 0; i < inst.factors.size(); ++i) {
        if (parent[i] == -2) continue;
        for (int v : open_vars[i]) {
            auto [it, fresh] = var_home.emplace(v, i);
            if (!fresh) parent[find(i)] = static_cast<long>(find(it->second));
        }
    }
    std::map<std::size_t, InstComponent> groups;
    for (std::size_t i = 0; i < inst.factors.size(); ++i) {
        if (parent[i] == -2) continue;
        auto& g = groups[find(i)];
        g.factor_indices.push_back(i);
        g.vars.insert(g.vars.end(), open_vars[i].begin(), open_vars[i].end());
    }
    for (auto& [root, g] : groups) {
        std::sort(g.vars.begin(), g.vars.end());
        g.vars.erase(std::unique(g.vars.begin(), g.vars.end()), g.vars.end());
        split.components.push_back(std::move(g));
    }
    std::sort(split.components.begin(), split.components.end(),
              [](const InstComponent& x, const InstComponent& y) {
                  return x.vars.front() < y.vars.front();
              });
    for (int v = 1; v <= inst.num_vars; ++v)
        if (!a.assigned(v) && !var_home.count(v)) split.dropped_vars.push_back(v);
    return split;
}

Value brute_force_sumprod(const SemiringInstance& inst, std::uint64_t state_cap) {
    const auto& sr = *inst.semiring;
    std::uint64_t states = 1;
    for (int v = 1; v <= inst.num_vars; ++v) {
        states *= static_cast<std::uint64_t>(inst.domain(v));
        if (states > state_cap)
            throw InstanceTooLarge("assignment space exceeds cap of " +
                                   std::to_string(state_cap) + " states");
    }
    Value total = sr.zero;
    Assignment a(inst.num_vars);
    for (std::uint64_t code = 0; code < states; ++code) {
        std::uint64_t rest = code;
        for (int v = 1; v <= inst.num_vars; ++v) {
            a.unassign(v);
            a.assign(v, static_cast<int>(rest % static_cast<std::uint64_t>(inst.domain(v))));
            rest /= static_cast<std::uint64_t>(inst.domain(v));
        }
        Value prod = sr.one;
        for (const auto& f : inst.factors) {
            prod = sr.times(prod, factor_value(f, inst, a));
            if (early_zero_cutoff(prod, sr)) break;
        }
        total = sr.plus(total, prod);
    }
    return total;
}

SemiringInstance encode_cnf_as_instance(const Formula& f, const SemiringSpec& semiring) {
    if (semiring.name == "max-sum")
        throw UnsupportedSemiring("no clause encoding is defined for max-sum");
    std::vector<Factor> factors;
    factors.reserve(f.clauses.size());
    for (const auto& c : f.clauses) {
        Factor fac;
        std::size_t cells = std::size_t{1} << c.size();
        fac.scope.reserve(c.size());
        for (Lit l : c.lits()) fac.scope.push_back(var_of(l));
        fac.table.assign(cells, semiring.one);
        // Row-major with the last scope variable fastest: the single
        // falsifying row sets every literal to its unsatisfying value.
        std::size_t falsify = 0;
        for (Lit l : c.lits()) falsify = falsify * 2 + (positive(l) ? 0 : 1);
        fac.table[falsify] = semiring.zero;
        factors.push_back(std::move(fac));
    }
    if (f.weighted() && semiring.name == "count") {
        for (int v = 1; v <= f.num_vars; ++v) {
            Factor w;
            w.scope = {v};
            w.table = {Value(f.weight(v, 0)), Value(f.weight(v, 1))};
            factors.push_back(std::move(w));
        }
    }
    std::vector<int> domains(static_cast<std::size_t>(f.num_vars) + 1, 2);
    domains[0] = 0;
    return make_instance(f.num_vars, std::move(domains), std::move(factors), semiring);
}

namespace {

SemiringInstance reduced_instance(int num_vars, std::vector<int> domains,
                                  std::vector<Factor> factors, const Assignment& evidence,
                                  const SemiringSpec& semiring) {
    SemiringInstance inst =
        make_instance(num_vars, std::move(domains), std::move(factors), semiring);
    for (const auto& [v, d] : evidence.entries()) {
        if (v < 1 || v > inst.num_vars)
            throw ParameterOutOfRange("evidence variable " + std::to_string(v));
        for (auto& f : inst.factors)
            if (std::find(f.scope.begin(), f.scope.end(), v) != f.scope.end())
                f = reduce_factor(f, inst, v, d);
    }
    // Evidence variables keep domain 1 so enumeration does not range over
    // them; remap their single remaining value to 0.
    for (const auto& [v, d] : evidence.entries())
        inst.domains[static_cast<std::size_t>(v)] = 1;
    return inst;
}

} // namespace

SemiringInstance make_instance_mpe(int num_vars, std::vector<int> domains,
                                   std::vector<Factor> factors, const Assignment& evidence) {
    return reduced_instance(num_vars, std::move(domains), std::move(factors), evidence,
                            max_product_semiring());
}

SemiringInstance make_instance_partition(int num_vars, std::vector<int> domains,
                                         std::vector<Factor> factors,
                                         const Assignment& evidence) {
    return reduced_instance(num_vars, std::move(domains), std::move(factors), evidence,
                            counting_semiring());
}

SemiringInstance make_instance_maxsum(int num_vars, std::vector<int> domains,
                                      std::vector<Factor> factors, const Assignment& evidence) {
    return reduced_instance(num_vars, std::move(domains), std::move(factors), evidence,
                            max_sum_semiring());
}

} // namespace spkit
