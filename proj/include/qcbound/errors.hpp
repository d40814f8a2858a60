#pragma once

#include <stdexcept>
#include <string>

namespace qcb {

/// Malformed textual input (graph files, config files). Carries enough detail
/// to name the offending line.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An exact search or solver exceeded its explicit budget. Raised instead of
/// ever returning a possibly wrong answer.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// An iterative calibration failed to converge (distinct from a solver that
/// reports an honest unconverged certificate).
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix factorization was inconsistent with the requested rank profile.
class DecompositionError : public std::runtime_error {
public:
    explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

/// A modulation plan requested a pulse amplitude outside the drive range.
class PlanError : public std::runtime_error {
public:
    PlanError(const std::string& what, int slot, double value)
        : std::runtime_error(what), slot(slot), value(value) {}
    int slot;
    double value;
};

} // namespace qcb
