#include "qmf/eta.hpp"

#include <algorithm>

namespace qmf {

Rat eta_valuation(const EtaQuotient& e) {
  Int s = 0;
  for (const auto& [d, r] : e) s += Int(d) * Int(r);
  Rat v(s, Int(24));
  v.canonicalize();
  return v;
}

Rat eta_weight(const EtaQuotient& e) {
  Int s = 0;
  for (const auto& [d, r] : e) s += Int(r);
  Rat w(s, Int(2));
  w.canonicalize();
  return w;
}

RatSeries euler_product(long prec) {
  // prod (1-q^n) = sum_{k in Z} (-1)^k q^{k(3k-1)/2}
  std::vector<Rat> c(static_cast<size_t>(std::max<long>(prec, 0)), Rat(0));
  for (long k = 0;; ++k) {
    long e1 = k * (3 * k - 1) / 2;
    long e2 = k * (3 * k + 1) / 2;
    if (e1 >= prec && e2 >= prec) break;
    Rat sign((k % 2 == 0) ? 1 : -1);
    if (e1 < prec) c[static_cast<size_t>(e1)] += sign;
    if (k > 0 && e2 < prec) c[static_cast<size_t>(e2)] += sign;
  }
  return RatSeries::from_coeffs(0, std::move(c), prec);
}

RatSeries eta_expand(const EtaQuotient& e, long prec) {
  Rat val = eta_valuation(e);
  if (!rat_is_int(val))
    throw FractionalValuation("eta_expand: valuation " + rat_str(val) + " is not an integer");
  long v = static_cast<long>(val.get_num().get_si());
  // Relative precision needed from each scaled Euler factor.
  long rel = prec - v;
  if (rel <= 0) return RatSeries::zero(prec);
  RatSeries acc = RatSeries::one(rel);
  for (const auto& [d, r] : e) {
    if (r == 0) continue;
    long base_prec = (rel - 1) / d + 2;  // d*(base_prec-1)+1 >= rel
    RatSeries factor = euler_product(base_prec).subst_scale(d).truncated(rel);
    acc = acc.mul(factor.pow_int(r));
  }
  return acc.shifted(v).truncated(prec);
}

}  // namespace qmf
