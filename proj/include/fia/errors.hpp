#pragma once

#include <stdexcept>
#include <string>

namespace fia {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// poset
struct CycleError : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct DecompositionError : Error { using Error::Error; };

// field
struct NotInK0 : Error { using Error::Error; };
struct ZeroElement : Error { using Error::Error; };
struct NotANorm : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

// algebra
struct MismatchedCarrier : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct InvalidCocycle : Error { using Error::Error; };
struct Disconnected : Error { using Error::Error; };

// involution
struct InvalidInvolution : Error { using Error::Error; };
struct NotTwistable : Error { using Error::Error; };
struct DomainMismatch : Error { using Error::Error; };
struct MalformedIdempotent : Error { using Error::Error; };
struct NotScalarStable : Error { using Error::Error; };
struct DecompositionFailure : Error { using Error::Error; };
struct NotScalar : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };

// carries the offending element of X3
struct NotInK1OnX3 : Error {
  std::string witness;
  NotInK1OnX3(const std::string& msg, std::string at)
      : Error(msg), witness(std::move(at)) {}
};

// classify
struct H1Obstruction : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };
struct EmptyX3 : Error { using Error::Error; };

// oracle
struct BudgetExceeded : Error { using Error::Error; };

}  // namespace fia
