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

#ifndef SPKIT_SEMIRING_HPP
#define SPKIT_SEMIRING_HPP

#include <functional>
#include <string>

#include "spkit/rational.hpp"

namespace spkit {

/// Extended exact rational: either a rational or the distinguished -inf
/// used as the (max,+) additive identity.
class Value {
public:
    Value() : q_(0) {}
    Value(Rational q) : q_(std::move(q)) {}
    Value(long n) : q_(n) {}

    static Value negative_infinity() {
        Value v;
        v.neg_inf_ = true;
        return v;
    }

    bool is_neg_inf() const { return neg_inf_; }
    const Rational& rational() const {
        if (neg_inf_) throw Error("value is -inf, not a rational");
        return q_;
    }

    bool operator==(const Value& o) const {
        return neg_inf_ == o.neg_inf_ && (neg_inf_ || q_ == o.q_);
    }
    bool operator<(const Value& o) const {
        if (neg_inf_) return !o.neg_inf_;
        if (o.neg_inf_) return false;
        return q_ < o.q_;
    }

    std::string str() const { return neg_inf_ ? "-inf" : to_string(q_); }

private:
    bool neg_inf_ = false;
    Rational q_;
};

/// A commutative semiring: (⊕, ⊗) with identities and an annihilation
/// declaration. The laws are property-tested, not assumed.
struct SemiringSpec {
    std::string name;
    std::function<Value(const Value&, const Value&)> plus;
    std::function<Value(const Value&, const Value&)> times;
    Value zero;
    Value one;
    bool zero_annihilates = false;

    /// d-fold ⊕ of x with itself (d >= 1).
    Value iterate_plus(const Value& x, int d) const;
};

const SemiringSpec& counting_semiring();     // (+, ×) over rationals
const SemiringSpec& boolean_semiring();      // (∨, ∧) over {0, 1}
const SemiringSpec& max_product_semiring();  // (max, ×) over non-negative rationals
const SemiringSpec& max_sum_semiring();      // (max, +) over rationals ∪ {-inf}

const SemiringSpec& semiring_by_name(const std::string& name);

/// True iff the running value equals the semiring zero and the semiring
/// declares that zero annihilates ⊗; callers then skip sibling work.
bool early_zero_cutoff(const Value& running, const SemiringSpec& semiring);

} // namespace spkit

#endif
