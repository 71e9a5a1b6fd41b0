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

#ifndef SPKIT_FORMULA_HPP
#define SPKIT_FORMULA_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "spkit/rational.hpp"

namespace spkit {

/// Signed literal: +v means the variable v, -v its negation. Variables are 1-based.
using Lit = int;

inline int var_of(Lit l) { return l < 0 ? -l : l; }
inline bool positive(Lit l) { return l > 0; }

/// A clause holds literals sorted by variable id. A variable may appear at
/// most once; clauses mentioning a variable in both polarities are rejected
/// at construction.
class Clause {
public:
    Clause() = default;
    explicit Clause(std::vector<Lit> lits);

    const std::vector<Lit>& lits() const { return lits_; }
    bool empty() const { return lits_.empty(); }
    std::size_t size() const { return lits_.size(); }

private:
    std::vector<Lit> lits_;
};

/// Partial assignment var -> {0,1}. Re-assigning a variable to a different
/// value is an error; re-assigning the same value is a no-op.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(int num_vars) : val_(static_cast<std::size_t>(num_vars) + 1, -1) {}

    int num_vars() const { return static_cast<int>(val_.size()) - 1; }
    bool assigned(int v) const { return val_[static_cast<std::size_t>(v)] >= 0; }
    int value(int v) const { return val_[static_cast<std::size_t>(v)]; }
    void assign(int v, int value);
    void unassign(int v);
    int size() const { return num_assigned_; }

    /// Assigned (var, value) pairs in ascending variable order.
    std::vector<std::pair<int, int>> entries() const;

private:
    std::vector<signed char> val_;
    int num_assigned_ = 0;
};

/// A CNF formula with optional exact per-variable weights: weights[v] is
/// Pr(v = 1); a missing entry means 1/2. Immutable after construction.
struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;
    std::map<int, Rational> weights;

    bool weighted() const { return !weights.empty(); }
    Rational weight(int v, int value) const;
};

/// Validates variable ranges and weights and builds a Formula.
Formula make_formula(int num_vars, const std::vector<std::vector<Lit>>& clause_lits,
                     std::map<int, Rational> weights = {});

/// A clause surviving reduction: the index it had in the original formula
/// plus the literals not yet falsified.
struct ResidualClause {
    std::size_t orig_index = 0;
    std::vector<Lit> lits;

    bool operator==(const ResidualClause&) const = default;
};

/// A formula reduced by some assignment: satisfied clauses removed,
/// falsified literals deleted.
struct Residual {
    std::vector<ResidualClause> clauses;
};

Residual residual_of(const Formula& f);
Residual reduce(const Formula& f, const Assignment& a);
Residual reduce(const Residual& r, const Assignment& a);

enum class ObviousStatus { EmptyFormula, HasEmptyClause, NotObvious };

/// The empty formula has value 1; any formula containing the empty clause
/// has value 0. EmptyFormula wins only when the clause list is empty.
ObviousStatus is_obvious(const Residual& r);

struct UnitPropResult {
    Assignment assignment;   // extends the input with forced values only
    bool conflict = false;
    int num_forced = 0;
};

/// Fixpoint unit propagation of r's clauses under a. On Ok every unit
/// clause is satisfied and no clause is empty; Conflict is a status, not a
/// fault.
UnitPropResult unit_propagate(const Residual& r, const Assignment& a);

/// A variable-disjoint set of residual clauses with a canonical cache key.
struct Component {
    std::vector<ResidualClause> clauses;  // sorted by original clause index
    std::vector<int> vars;                // sorted; exactly the variables of clauses
    std::string key;

    static Component from_clauses(std::vector<ResidualClause> clauses);
};

/// Deterministic, injective key over residual clause sets: per clause the
/// original index then the residual literals, clauses sorted, with
/// unambiguous separators.
std::string canonical_key(const std::vector<ResidualClause>& clauses);

/// Splits a residual with no empty clause into connected components of its
/// primal graph, ordered by smallest contained variable id.
std::vector<Component> to_components(const Residual& r);
std::vector<Component> to_components(std::vector<ResidualClause> clauses);

} // namespace spkit

#endif
