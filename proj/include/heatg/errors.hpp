#ifndef HEATG_ERRORS_HPP
#define HEATG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heatg {

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A structural precondition was violated (mismatched bases, empty grids, bad specs).
class ContractError : public std::invalid_argument {
 public:
  explicit ContractError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace heatg

#endif  // HEATG_ERRORS_HPP
