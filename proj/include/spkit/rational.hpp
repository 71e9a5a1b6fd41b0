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

#ifndef SPKIT_RATIONAL_HPP
#define SPKIT_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "spkit/errors.hpp"

namespace spkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders a rational as "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

/// Parses "p", "-p" or "p/q" into an exact rational.
inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error& e) {
        throw ParseError("bad rational '" + text + "'");
    }
}

/// p * 2^num_vars, which must be an integer (uniform 1/2 weights only).
inline BigInt probability_to_count(const Rational& p, int num_vars) {
    Rational scaled = p;
    for (int i = 0; i < num_vars; ++i) scaled *= 2;
    if (boost::multiprecision::denominator(scaled) != 1)
        throw NonIntegralCount("probability " + to_string(p) + " * 2^" + std::to_string(num_vars) +
                               " is not an integer");
    return boost::multiprecision::numerator(scaled);
}

} // namespace spkit

#endif
