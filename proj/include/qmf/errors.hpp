#pragma once

#include <stdexcept>
#include <string>

namespace qmf {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Series arithmetic.
struct ZeroLeadingCoefficient : Error { using Error::Error; };
struct NonUnitLeading : Error { using Error::Error; };
struct ValuationNotDivisible : Error { using Error::Error; };
struct PrecisionTooLow : Error { using Error::Error; };

// Form construction.
struct FractionalValuation : Error { using Error::Error; };
struct NotAdmissible : Error { using Error::Error; };
struct UnsupportedWeight : Error { using Error::Error; };
struct InvalidCusp : Error { using Error::Error; };
struct UnsupportedLevel : Error { using Error::Error; };

// Catalog / CLI lookups.
struct UnknownKey : Error { using Error::Error; };
struct UnknownGroup : Error { using Error::Error; };

// Solver.
struct BranchExplosion : Error { using Error::Error; };

// Elliptic curves / newforms.
struct SingularCurve : Error { using Error::Error; };
struct BadReduction : Error { using Error::Error; };
struct NonIntegerCoefficient : Error { using Error::Error; };
struct LevelMismatch : Error { using Error::Error; };
struct FactorizationIncomplete : Error { using Error::Error; };

}  // namespace qmf
