// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace solstat {

/// Base class of every error the library throws on bad input or bad data.
/// Internal logic bugs use std::logic_error instead and are not meant to be caught.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// log/sqrt/pow of a value outside the function's real domain.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

class DivisionByZero : public DomainError {
public:
    DivisionByZero() : DomainError("division by a jet with zero value") {}
};

/// |det| fell below the scale-invariant nondegeneracy threshold.
class DegenerateMetric : public Error {
public:
    explicit DegenerateMetric(const std::string& what = "degenerate metric") : Error(what) {}
};

class VarianceMismatch : public Error {
public:
    explicit VarianceMismatch(const std::string& what) : Error(what) {}
};

/// Parse failure; offset is a byte offset into the source text.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& expected)
        : Error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
          offset(offset), expected(expected) {}
    std::size_t offset;
    std::string expected;
};

/// Evaluation failure with the offending AST node's source offset attached.
class EvalError : public DomainError {
public:
    EvalError(std::size_t offset, const std::string& what)
        : DomainError(what + " (at expression offset " + std::to_string(offset) + ")"),
          offset(offset) {}
    std::size_t offset;
};

class SpecParseError : public Error {
public:
    SpecParseError(const std::string& field, const std::string& detail)
        : Error("manifold spec error in field '" + field + "': " + detail),
          field(field), detail(detail) {}
    std::string field;
    std::string detail;
};

class AsymmetricMetric : public SpecParseError {
public:
    AsymmetricMetric() : SpecParseError("metric", "metric component expressions are not symmetric") {}
};

class UnknownManifold : public Error {
public:
    explicit UnknownManifold(const std::string& name) : Error("unknown builtin manifold: " + name) {}
};

class NonCompactManifold : public Error {
public:
    explicit NonCompactManifold(const std::string& name)
        : Error("manifold '" + name + "' is not compact (all coordinates must be periodic)") {}
};

} // namespace solstat
