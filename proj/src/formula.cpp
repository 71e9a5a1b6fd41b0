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

#include "spkit/formula.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "spkit/errors.hpp"

namespace spkit {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
    std::sort(lits_.begin(), lits_.end(),
              [](Lit a, Lit b) { return var_of(a) < var_of(b); });
    for (std::size_t i = 0; i < lits_.size(); ++i) {
        if (lits_[i] == 0) throw ParseError("literal 0 inside a clause");
        if (i + 1 < lits_.size() && var_of(lits_[i]) == var_of(lits_[i + 1])) {
            if (lits_[i] == -lits_[i + 1])
                throw TautologyError("clause contains variable " +
                                     std::to_string(var_of(lits_[i])) + " in both polarities");
            throw ParseError("clause repeats variable " + std::to_string(var_of(lits_[i])));
        }
    }
}

void Assignment::assign(int v, int value) {
    signed char& slot = val_[static_cast<std::size_t>(v)];
    if (slot >= 0) {
        if (slot != value)
            throw Error("variable " + std::to_string(v) + " already assigned " +
                        std::to_string(int(slot)));
        return;
    }
    slot = static_cast<signed char>(value);
    ++num_assigned_;
}

void Assignment::unassign(int v) {
    signed char& slot = val_[static_cast<std::size_t>(v)];
    if (slot >= 0) {
        slot = -1;
        --num_assigned_;
    }
}

std::vector<std::pair<int, int>> Assignment::entries() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 1; v <= num_vars(); ++v)
        if (assigned(v)) out.emplace_back(v, value(v));
    return out;
}

Rational Formula::weight(int v, int value) const {
    auto it = weights.find(v);
    if (it == weights.end()) return Rational(1, 2);
    return value == 1 ? it->second : Rational(1) - it->second;
}

Formula make_formula(int num_vars, const std::vector<std::vector<Lit>>& clause_lits,
                     std::map<int, Rational> weights) {
    if (num_vars < 0) throw ParameterOutOfRange("negative variable count");
    Formula f;
    f.num_vars = num_vars;
    f.clauses.reserve(clause_lits.size());
    for (const auto& lits : clause_lits) {
        Clause c(lits);
        for (Lit l : c.lits())
            if (var_of(l) > num_vars)
                throw ParseError("literal " + std::to_string(l) + " out of range 1.." +
                                 std::to_string(num_vars));
        f.clauses.push_back(std::move(c));
    }
    for (const auto& [v, p] : weights) {
        if (v < 1 || v > num_vars)
            throw ParameterOutOfRange("weight for variable " + std::to_string(v) +
                                      " out of range");
        if (p < 0 || p > 1)
            throw ParameterOutOfRange("weight " + to_string(p) + " outside [0,1]");
    }
    f.weights = std::move(weights);
    return f;
}

Residual residual_of(const Formula& f) {
    Residual r;
    r.clauses.reserve(f.clauses.size());
    for (std::size_t i = 0; i < f.clauses.size(); ++i)
        r.clauses.push_back(ResidualClause{i, f.clauses[i].lits()});
    return r;
}

namespace {

// Returns true if the clause is satisfied under a; otherwise appends the
// surviving literals to out.
bool reduce_clause(const std::vector<Lit>& lits, const Assignment& a, std::vector<Lit>& out) {
    out.clear();
    for (Lit l : lits) {
        int v = var_of(l);
        if (!a.assigned(v)) {
            out.push_back(l);
        } else if (a.value(v) == (positive(l) ? 1 : 0)) {
            return true;
        }
    }
    return false;
}

} // namespace

Residual reduce(const Residual& r, const Assignment& a) {
    Residual out;
    out.clauses.reserve(r.clauses.size());
    std::vector<Lit> buf;
    for (const auto& rc : r.clauses) {
        if (!reduce_clause(rc.lits, a, buf))
            out.clauses.push_back(ResidualClause{rc.orig_index, buf});
    }
    return out;
}

Residual reduce(const Formula& f, const Assignment& a) {
    if (a.num_vars() > f.num_vars && a.size() > 0)
        for (const auto& [v, val] : a.entries())
            if (v > f.num_vars)
                throw ParameterOutOfRange("assignment mentions variable " + std::to_string(v));
    return reduce(residual_of(f), a);
}

ObviousStatus is_obvious(const Residual& r) {
    if (r.clauses.empty()) return ObviousStatus::EmptyFormula;
    for (const auto& rc : r.clauses)
        if (rc.lits.empty()) return ObviousStatus::HasEmptyClause;
    return ObviousStatus::NotObvious;
}

UnitPropResult unit_propagate(const Residual& r, const Assignment& a) {
    UnitPropResult res;
    res.assignment = a;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& rc : r.clauses) {
            Lit unit = 0;
            int open = 0;
            bool satisfied = false;
            for (Lit l : rc.lits) {
                int v = var_of(l);
                if (!res.assignment.assigned(v)) {
                    unit = l;
                    if (++open > 1) break;
                } else if (res.assignment.value(v) == (positive(l) ? 1 : 0)) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied || open > 1) continue;
            if (open == 0) {
                res.conflict = true;
                return res;
            }
            res.assignment.assign(var_of(unit), positive(unit) ? 1 : 0);
            ++res.num_forced;
            changed = true;
        }
    }
    return res;
}

std::string canonical_key(const std::vector<ResidualClause>& clauses) {
    std::vector<const ResidualClause*> sorted;
    sorted.reserve(clauses.size());
    for (const auto& rc : clauses) sorted.push_back(&rc);
    std::sort(sorted.begin(), sorted.end(), [](const ResidualClause* x, const ResidualClause* y) {
        return x->orig_index != y->orig_index ? x->orig_index < y->orig_index
                                              : x->lits < y->lits;
    });
    std::ostringstream os;
    for (const auto* rc : sorted) {
        os << rc->orig_index << ':';
        for (std::size_t i = 0; i < rc->lits.size(); ++i) {
            if (i) os << ',';
            os << rc->lits[i];
        }
        os << ';';
    }
    return os.str();
}

Component Component::from_clauses(std::vector<ResidualClause> clauses) {
    std::sort(clauses.begin(), clauses.end(),
              [](const ResidualClause& x, const ResidualClause& y) {
                  return x.orig_index < y.orig_index;
              });
    Component c;
    c.key = canonical_key(clauses);
    for (const auto& rc : clauses)
        for (Lit l : rc.lits) c.vars.push_back(var_of(l));
    std::sort(c.vars.begin(), c.vars.end());
    c.vars.erase(std::unique(c.vars.begin(), c.vars.end()), c.vars.end());
    c.clauses = std::move(clauses);
    return c;
}

std::vector<Component> to_components(std::vector<ResidualClause> clauses) {
    // Union-find over clause indices, joined through shared variables.
    std::vector<std::size_t> parent(clauses.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::map<int, std::size_t> var_home;
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        for (Lit l : clauses[i].lits) {
            auto [it, fresh] = var_home.emplace(var_of(l), i);
            if (!fresh) parent[find(i)] = find(it->second);
        }
    }
    std::map<std::size_t, std::vector<ResidualClause>> groups;
    for (std::size_t i = 0; i < clauses.size(); ++i)
        groups[find(i)].push_back(std::move(clauses[i]));

    std::vector<Component> out;
    out.reserve(groups.size());
    for (auto& [root, group] : groups) out.push_back(Component::from_clauses(std::move(group)));
    std::sort(out.begin(), out.end(), [](const Component& x, const Component& y) {
        if (x.vars.empty() || y.vars.empty()) return !x.vars.empty();
        return x.vars.front() < y.vars.front();
    });
    return out;
}

std::vector<Component> to_components(const Residual& r) { return to_components(r.clauses); }

} // namespace spkit
