#pragma once

#include <stdexcept>
#include <string>

namespace cnf {

// Enumeration/candidate budgets exceeded. CLI maps this to exit code 3.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// Input is not a valid lattice point (residual above tolerance).
class CorruptionError : public std::runtime_error {
public:
    explicit CorruptionError(const std::string& what) : std::runtime_error(what) {}
};

// Attempt to invert a singular matrix / solve an unsolvable system.
class SingularError : public std::runtime_error {
public:
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cnf
