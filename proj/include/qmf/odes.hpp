#pragma once

#include <qmf/forms.hpp>

#include <string>
#include <vector>

namespace qmf {

// One term c * Q^q_deg * Delta^delta_deg on the right-hand side.
struct OdeMonomial {
  int q_deg;
  int delta_deg;
  Rat coef;
};

// Nonlinear differential equation (dQ)^2 = sum of monomials, where
// dQ = deriv_scale * q Q' - P * Q is the Serre-type derivative of weight 4.
struct CubicODE {
  std::string group;
  long N;
  Rat deriv_scale;
  std::string delta_key;
  std::string p_key;
  std::vector<OdeMonomial> rhs;  // includes the leading {3, 0, 1} term
  std::vector<std::string> candidates;
  long sturm;  // zero below this index plus one pins a weight-12 identity
};

const std::vector<CubicODE>& ode_catalog();
const CubicODE& ode_by_group(const std::string& tag);  // throws UnknownGroup

// Residual (dQ)^2 - rhs evaluated on a candidate series. The delta and P
// series must belong to the same group and share Q's precision.
template <class F>
TruncSeries<F> ode_residual(const CubicODE& ode, const TruncSeries<F>& Q,
                            const TruncSeries<F>& delta, const TruncSeries<F>& P) {
  using FT = FieldTraits<F>;
  TruncSeries<F> dQ = Q.qderiv().scalar_mul(FT::from_rat(ode.deriv_scale)).sub(P.mul(Q));
  TruncSeries<F> res = dQ.mul(dQ);

  int max_q = 0, max_d = 0;
  for (const auto& m : ode.rhs) {
    max_q = std::max(max_q, m.q_deg);
    max_d = std::max(max_d, m.delta_deg);
  }
  // The exact constant 1 is known to all orders; give it the residual's own
  // precision so the power ladders never clamp below a real input precision.
  std::vector<TruncSeries<F>> qp, dp;  // powers, index = exponent
  qp.push_back(TruncSeries<F>::one(res.prec()));
  for (int i = 1; i <= max_q; ++i) qp.push_back(qp.back().mul(Q));
  dp.push_back(TruncSeries<F>::one(res.prec()));
  for (int i = 1; i <= max_d; ++i) dp.push_back(dp.back().mul(delta));

  for (const auto& m : ode.rhs) {
    TruncSeries<F> term = qp[static_cast<size_t>(m.q_deg)]
                              .mul(dp[static_cast<size_t>(m.delta_deg)])
                              .scalar_mul(FT::from_rat(m.coef));
    res = res.sub(term);
  }
  return res;
}

struct VerificationReport {
  std::string group;
  std::string candidate;
  long bound;  // residual checked at exponents 0..bound
  long prec;
  bool ok;
  long first_bad_exp = -1;      // only when !ok
  std::string first_bad_coef;   // only when !ok
};

// safety < 0 selects the default margin (the group's own sturm value).
VerificationReport verify_candidate(const CubicODE& ode, const std::string& key, long safety = -1);
std::vector<VerificationReport> verify_group(const std::string& tag, long safety = -1);
std::vector<VerificationReport> verify_all(long safety = -1);

}  // namespace qmf
