#pragma once

#include <qmf/arith.hpp>
#include <qmf/errors.hpp>
#include <qmf/eta.hpp>
#include <qmf/series.hpp>

#include <string>
#include <vector>

namespace qmf {

// Classical level-1 Eisenstein series of weight 2, 4 or 6 (constant term 1).
RatSeries eisenstein_level1(int weight, long prec);

// Eta exponents of the normalized discriminant form at an admissible level.
EtaQuotient delta_exponents(long N);  // throws NotAdmissible

// Discriminant form at level N (leading coefficient +1 at q^1).
RatSeries delta_form(long N, long prec);

// Companion form -Delta_N(-q) for N in {1,2,5,6}; also leading +q.
RatSeries delta_form_sharp(long N, long prec);

// Alternative eta-quotient presentation of the companion form (N in {1,2,5,6}).
EtaQuotient delta_sharp_exponents(long N);

// Weight-2 logarithmic derivative q Delta'/Delta, expressed via an Eisenstein
// combination (constant term 1).
RatSeries weight2_logderiv(long N, long prec);
RatSeries weight2_logderiv_sharp(long N, long prec);

// Weight-4 Eisenstein series attached to a cusp of the level-N group.
// Accepted cusp names: "inf" (all N), "0" (N > 1), "1/2" and "1/3" (N = 6).
// Supported N: 1, 2, 3, 5, 6, 7, 11, 14, 15 ("inf"); 2, 3, 5, 6, 7 ("0").
RatSeries eisenstein4_cusp(long N, const std::string& cusp, long prec);

// Weight-2 Eisenstein series (m E2(m tau) - E2(tau))/(m - 1) for m >= 2.
RatSeries eisenstein2_level(long m, long prec);

// Weight-4 solution candidate for the groups of level 11, 14, 15.
RatSeries special_candidate(long N, long prec);

// Weight-1 theta-type series with the quadratic character mod 7.
RatSeries theta_weight1_level7(long prec);

// Weight-4 cusp form at level 7: theta series times eta(t)^3 eta(7t)^3.
RatSeries delta7_form(long prec);

// Level-5 hauptmodul eta(t)^6/eta(5t)^6 (starts 1/q).
RatSeries j5_hauptmodul(long prec);

// Serre-type derivative of a weight-k form:
//   scale * q df/dq - (k/4) * P * f
// where P is the weight-2 logarithmic derivative of the group.
template <class F>
TruncSeries<F> serre_derivative(const Rat& scale, const TruncSeries<F>& P, int weight,
                                const TruncSeries<F>& f) {
  using FT = FieldTraits<F>;
  Rat wf(weight, 4);
  wf.canonicalize();  // mpq keeps fractions as constructed; comparisons need canonical form
  return f.qderiv().scalar_mul(FT::from_rat(scale)).sub(
      P.mul(f).scalar_mul(FT::from_rat(wf)));
}

// ---------------------------------------------------------------------------
// Named catalog of series the CLI and the verifier can expand.
// ---------------------------------------------------------------------------

struct FormInfo {
  std::string key;
  int weight;  // 0 for the hauptmodul; 2 for the quasimodular P-series
};

const std::vector<FormInfo>& form_catalog();
bool catalog_has(const std::string& key);
int form_weight(const std::string& key);  // throws UnknownKey

// Expand any catalog key to the requested precision. Throws UnknownKey.
RatSeries expand_form(const std::string& key, long prec);

// ---------------------------------------------------------------------------
// Group table: the thirteen groups with their attached data.
// ---------------------------------------------------------------------------

struct GroupInfo {
  std::string tag;      // "G0.5", "G0sharp.6", ...
  long N;               // underlying level
  bool sharp;
  Rat deriv_scale;      // scale factor of the Serre-type derivative
  std::string delta_key;
  std::string p_key;
  std::vector<std::string> candidate_keys;  // weight-4 solutions to verify
};

const std::vector<GroupInfo>& group_table();
const GroupInfo& group_by_tag(const std::string& tag);  // throws UnknownGroup

}  // namespace qmf
