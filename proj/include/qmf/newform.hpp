#pragma once

#include <qmf/ellcurve.hpp>
#include <qmf/eta.hpp>

#include <string>
#include <vector>

namespace qmf {

// Weight-2 eta product attached to one of the verification groups whose cubic
// defines a rational elliptic curve of the same level.
struct NewformSpec {
  std::string group;
  long level = 0;
  EtaQuotient eta;  // leading coefficient +1 at q^1, integer coefficients
};

// The twelve groups with a known eta-product companion (all but "G0.7").
const std::vector<NewformSpec>& newform_table();
const NewformSpec& newform_for(const std::string& group_tag);  // throws UnknownGroup

// a_n of the q-expansion (a_0 = 0, a_1 = 1).  Throws NonIntegerCoefficient if
// the expansion is not integral, which would mean the table entry is wrong.
Int newform_coefficient(const NewformSpec& nf, long n);

// a_0 .. a_nmax as one vector.
std::vector<Int> newform_coefficients(const NewformSpec& nf, long nmax);

struct ModularityReport {
  std::string group;
  long level = 0;
  long pmax = 0;
  std::vector<long> matched;     // good primes where a_p(curve) == a_p(form)
  std::vector<long> mismatched;  // good primes where they differ
  bool ok() const { return mismatched.empty(); }  // no primes checked = vacuous pass
};

// Compare curve traces with form coefficients at every good prime <= pmax.
// Throws LevelMismatch when the form's level differs from the conductor.
ModularityReport modularity_check(const CurveReport& rep, const NewformSpec& nf, long pmax = 97);

}  // namespace qmf
