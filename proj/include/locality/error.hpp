#pragma once

#include <stdexcept>
#include <string>

namespace locality {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LOCALITY_DEFINE_ERROR(name)          \
  class name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  };

/// A cycle lies within distance k of the view root.
LOCALITY_DEFINE_ERROR(NonTreeView)
/// A protocol addressed a message to a node that is not a neighbor.
LOCALITY_DEFINE_ERROR(ProtocolFault)
/// Rounding requires a 0/1 constraint matrix.
LOCALITY_DEFINE_ERROR(InvalidCoefficients)
/// Cluster sizes derived from n0 are not positive integers large enough for their links.
LOCALITY_DEFINE_ERROR(NonIntegralSizes)
/// A generated graph would exceed the configured node budget.
LOCALITY_DEFINE_ERROR(SizeGuard)
/// An exact solver was asked to handle an instance above its budget.
LOCALITY_DEFINE_ERROR(BudgetExceeded)
LOCALITY_DEFINE_ERROR(NotDominating)
LOCALITY_DEFINE_ERROR(Disconnected)
/// Internal consistency failure: a local sub-LP could not be solved.
LOCALITY_DEFINE_ERROR(InfeasibleSubLP)
LOCALITY_DEFINE_ERROR(Infeasible)
LOCALITY_DEFINE_ERROR(Unbounded)
LOCALITY_DEFINE_ERROR(ConfigError)
LOCALITY_DEFINE_ERROR(FormatError)

#undef LOCALITY_DEFINE_ERROR

}  // namespace locality
