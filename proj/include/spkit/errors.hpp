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

#ifndef SPKIT_ERRORS_HPP
#define SPKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace spkit {

/// Base class for all spkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (DIMACS, factor files, decomposition documents).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg, long line = -1)
        : Error(line >= 0 ? "parse error at line " + std::to_string(line) + ": " + msg
                          : "parse error: " + msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

/// A clause mentions a variable in both polarities.
class TautologyError : public ParseError {
public:
    explicit TautologyError(const std::string& msg, long line = -1) : ParseError(msg, line) {}
};

/// DIMACS header disagrees with the body.
class HeaderMismatch : public ParseError {
public:
    explicit HeaderMismatch(const std::string& msg, long line = -1) : ParseError(msg, line) {}
};

/// A decomposition document of the wrong kind was supplied.
class KindMismatch : public Error {
public:
    explicit KindMismatch(const std::string& msg) : Error(msg) {}
};

/// A decomposition violates its structural invariants.
class InvalidDecomposition : public Error {
public:
    explicit InvalidDecomposition(const std::string& msg) : Error(msg) {}
};

class InvalidPseudoTree : public Error {
public:
    explicit InvalidPseudoTree(const std::string& msg) : Error(msg) {}
};

/// A factor's scope is not contained in an ancestor chain of the pseudo tree.
class FactorScopeViolation : public Error {
public:
    explicit FactorScopeViolation(const std::string& msg) : Error(msg) {}
};

class VarNotInScope : public Error {
public:
    explicit VarNotInScope(const std::string& msg) : Error(msg) {}
};

class ScopeOutOfRange : public ParseError {
public:
    explicit ScopeOutOfRange(const std::string& msg, long line = -1) : ParseError(msg, line) {}
};

class TableLengthMismatch : public ParseError {
public:
    explicit TableLengthMismatch(const std::string& msg, long line = -1) : ParseError(msg, line) {}
};

class ParameterOutOfRange : public Error {
public:
    explicit ParameterOutOfRange(const std::string& msg) : Error(msg) {}
};

class HypergraphTooSmall : public Error {
public:
    explicit HypergraphTooSmall(const std::string& msg) : Error(msg) {}
};

/// Enumeration space exceeds the brute-force cap.
class InstanceTooLarge : public Error {
public:
    explicit InstanceTooLarge(const std::string& msg) : Error(msg) {}
};

class UnsupportedSemiring : public Error {
public:
    explicit UnsupportedSemiring(const std::string& msg) : Error(msg) {}
};

/// Internal arithmetic bug: a uniform-weight probability did not scale to an integer.
class NonIntegralCount : public Error {
public:
    explicit NonIntegralCount(const std::string& msg) : Error(msg) {}
};

class NoBranchableVariable : public Error {
public:
    explicit NoBranchableVariable(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

} // namespace spkit

#endif
