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

#include "spkit/semiring.hpp"

#include <algorithm>

namespace spkit {

Value SemiringSpec::iterate_plus(const Value& x, int d) const {
    Value acc = x;
    for (int i = 1; i < d; ++i) acc = plus(acc, x);
    return acc;
}

const SemiringSpec& counting_semiring() {
    static const SemiringSpec spec{
        "count",
        [](const Value& a, const Value& b) { return Value(a.rational() + b.rational()); },
        [](const Value& a, const Value& b) { return Value(a.rational() * b.rational()); },
        Value(0),
        Value(1),
        true,
    };
    return spec;
}

const SemiringSpec& boolean_semiring() {
    static const SemiringSpec spec{
        "bool",
        [](const Value& a, const Value& b) {
            return Value(a.rational() != 0 || b.rational() != 0 ? 1 : 0);
        },
        [](const Value& a, const Value& b) {
            return Value(a.rational() != 0 && b.rational() != 0 ? 1 : 0);
        },
        Value(0),
        Value(1),
        true,
    };
    return spec;
}

const SemiringSpec& max_product_semiring() {
    static const SemiringSpec spec{
        "max-product",
        [](const Value& a, const Value& b) { return std::max(a, b); },
        [](const Value& a, const Value& b) { return Value(a.rational() * b.rational()); },
        Value(0),
        Value(1),
        true,
    };
    return spec;
}

const SemiringSpec& max_sum_semiring() {
    static const SemiringSpec spec{
        "max-sum",
        [](const Value& a, const Value& b) { return std::max(a, b); },
        [](const Value& a, const Value& b) {
            if (a.is_neg_inf() || b.is_neg_inf()) return Value::negative_infinity();
            return Value(a.rational() + b.rational());
        },
        Value::negative_infinity(),
        Value(0),
        true,
    };
    return spec;
}

const SemiringSpec& semiring_by_name(const std::string& name) {
    if (name == "count") return counting_semiring();
    if (name == "bool") return boolean_semiring();
    if (name == "max-product") return max_product_semiring();
    if (name == "max-sum") return max_sum_semiring();
    throw ParameterOutOfRange("unknown semiring '" + name + "'");
}

bool early_zero_cutoff(const Value& running, const SemiringSpec& semiring) {
    return semiring.zero_annihilates && running == semiring.zero;
}

} // namespace spkit
