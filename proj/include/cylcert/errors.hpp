#pragma once

#include <stdexcept>
#include <string>

namespace cylcert {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structural misuse: mismatched variable lists, wrong vector lengths, bad text forms.
struct StructuralError : Error {
    explicit StructuralError(const std::string& msg) : Error(msg) {}
};

// Input outside an operation's mathematical domain (log of a series with
// constant term != 1, resultant of the zero polynomial, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A spec violates one of its declared invariants; `clause` names which one.
struct ValidationError : Error {
    explicit ValidationError(const std::string& clause_)
        : Error("spec validation failed: " + clause_), clause(clause_) {}
    std::string clause;
};

// A resource cap was exceeded; the computation was abandoned, not answered.
struct CapacityError : Error {
    explicit CapacityError(const std::string& msg) : Error(msg) {}
};

// A certificate construction step could not complete (e.g. coprimality
// repair exhausted, vanishing resultant).
struct ConstructionError : Error {
    explicit ConstructionError(const std::string& msg) : Error(msg) {}
};

}  // namespace cylcert
