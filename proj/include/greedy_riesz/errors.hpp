#pragma once

#include <stdexcept>
#include <string>

namespace greedy_riesz {

/// Argument outside the domain where a quantity is defined or supported.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Evaluation at a pole (zeta at 1, v(s) at odd positive integers).
class PoleError : public DomainError {
 public:
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

/// A vector that is not of dyadic-ratio form was handed to the partition machinery.
class StructureError : public std::runtime_error {
 public:
  explicit StructureError(const std::string& what) : std::runtime_error(what) {}
};

/// The brute-force greedy construction could not place a point.
class ConstructionError : public std::runtime_error {
 public:
  explicit ConstructionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace greedy_riesz
