#pragma once

#include <map>

#include "qmf/series.hpp"

namespace qmf {

// Finite product prod_d eta(d*tau)^{r_d}, stored as scale -> exponent.
// Weight and q-valuation are derived, never stored.
using EtaQuotient = std::map<long, long>;

// sum d*r_d / 24
Rat eta_valuation(const EtaQuotient& e);

// (1/2) sum r_d
Rat eta_weight(const EtaQuotient& e);

// prod_{n>=1} (1 - q^n) to the given precision (Euler's pentagonal series).
RatSeries euler_product(long prec);

// q^{val} * prod_d prod_{n>=1} (1 - q^{dn})^{r_d}; defined only when the
// valuation sum is an integer.
RatSeries eta_expand(const EtaQuotient& e, long prec);

}  // namespace qmf
