#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "qmf/errors.hpp"
#include "qmf/gaussian.hpp"
#include "qmf/rational.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qmf {

// Dense truncated Laurent series in q over an exact field F.
//
// Coefficients are known exactly for every exponent e < prec().  The stored
// window covers [val(), val()+size); exponents outside it but below prec()
// are exactly zero.  Normal form: the leading stored coefficient is nonzero
// and trailing zero coefficients are dropped; a series that is zero over its
// whole known range stores nothing and has val() == prec().
//
// Every operation assigns the result the minimum precision justified by its
// inputs, so precision bookkeeping never has to be done by callers.
template <class F>
class TruncSeries {
 public:
  using Traits = FieldTraits<F>;

  TruncSeries() : val_(0), prec_(0) {}

  static TruncSeries zero(long prec) { return TruncSeries(prec, {}, prec); }

  static TruncSeries constant(const F& c, long prec) {
    return TruncSeries(0, {c}, prec);
  }

  static TruncSeries one(long prec) { return constant(Traits::from_long(1), prec); }

  static TruncSeries monomial(const F& c, long exp, long prec) {
    return TruncSeries(exp, {c}, prec);
  }

  // Coefficients for q^val, q^(val+1), ... ; entries at exponent >= prec are
  // dropped.
  static TruncSeries from_coeffs(long val, std::vector<F> coeffs, long prec) {
    if (val + static_cast<long>(coeffs.size()) > prec)
      coeffs.resize(static_cast<size_t>(prec - val < 0 ? 0 : prec - val));
    return TruncSeries(val, std::move(coeffs), prec);
  }

  long val() const { return val_; }    // == prec() for the zero series
  long prec() const { return prec_; }
  bool is_zero() const { return c_.empty(); }

  F coeff(long e) const {
    if (e >= prec_)
      throw PrecisionTooLow("coefficient of q^" + std::to_string(e) +
                            " requested; series known below q^" + std::to_string(prec_));
    long i = e - val_;
    if (i < 0 || i >= static_cast<long>(c_.size())) return Traits::from_long(0);
    return c_[static_cast<size_t>(i)];
  }

  const std::vector<F>& stored() const { return c_; }

  TruncSeries truncated(long new_prec) const {
    if (new_prec > prec_)
      throw PrecisionTooLow("cannot extend precision " + std::to_string(prec_) + " to " +
                            std::to_string(new_prec) + " by truncation");
    std::vector<F> c;
    long lo = is_zero() ? new_prec : val_;
    for (long e = lo; e < new_prec && e - val_ < static_cast<long>(c_.size()); ++e)
      c.push_back(c_[static_cast<size_t>(e - val_)]);
    return TruncSeries(lo, std::move(c), new_prec);
  }

  TruncSeries neg() const {
    std::vector<F> c(c_);
    for (auto& x : c) x = -x;
    return TruncSeries(val_, std::move(c), prec_);
  }

  TruncSeries add(const TruncSeries& b) const {
    long prec = std::min(prec_, b.prec_);
    long lo = std::min(is_zero() ? prec : val_, b.is_zero() ? prec : b.val_);
    if (lo >= prec) return zero(prec);
    std::vector<F> c(static_cast<size_t>(prec - lo), Traits::from_long(0));
    accumulate(c, lo, prec, *this, false);
    accumulate(c, lo, prec, b, false);
    return TruncSeries(lo, std::move(c), prec);
  }

  TruncSeries sub(const TruncSeries& b) const {
    long prec = std::min(prec_, b.prec_);
    long lo = std::min(is_zero() ? prec : val_, b.is_zero() ? prec : b.val_);
    if (lo >= prec) return zero(prec);
    std::vector<F> c(static_cast<size_t>(prec - lo), Traits::from_long(0));
    accumulate(c, lo, prec, *this, false);
    accumulate(c, lo, prec, b, true);
    return TruncSeries(lo, std::move(c), prec);
  }

  TruncSeries scalar_mul(const F& s) const {
    std::vector<F> c(c_);
    for (auto& x : c) x = x * s;
    return TruncSeries(val_, std::move(c), prec_);
  }

  // Product precision: a is exact below prec_a and unknown from prec_a on, so
  // the first unknowable output exponent is min(prec_a + val_b, prec_b + val_a).
  TruncSeries mul(const TruncSeries& b) const {
    long prec = std::min(prec_ + b.val_, b.prec_ + val_);
    if (is_zero() || b.is_zero()) return zero(prec);
    long lo = val_ + b.val_;
    long len = prec - lo;
    if (len <= 0) return zero(prec);
    std::vector<F> c(static_cast<size_t>(len));
    bool big = c_.size() * b.c_.size() >= 4096;
#ifdef _OPENMP
    if (big && omp_get_max_threads() > 1) {
      mul_kernel_parallel(c, c_, b.c_);
      return TruncSeries(lo, std::move(c), prec);
    }
#else
    (void)big;
#endif
    mul_kernel_serial(c, c_, b.c_);
    return TruncSeries(lo, std::move(c), prec);
  }

  TruncSeries mul_serial(const TruncSeries& b) const {
    long prec = std::min(prec_ + b.val_, b.prec_ + val_);
    if (is_zero() || b.is_zero()) return zero(prec);
    long lo = val_ + b.val_;
    long len = prec - lo;
    if (len <= 0) return zero(prec);
    std::vector<F> c(static_cast<size_t>(len));
    mul_kernel_serial(c, c_, b.c_);
    return TruncSeries(lo, std::move(c), prec);
  }

  TruncSeries mul_parallel(const TruncSeries& b) const {
    long prec = std::min(prec_ + b.val_, b.prec_ + val_);
    if (is_zero() || b.is_zero()) return zero(prec);
    long lo = val_ + b.val_;
    long len = prec - lo;
    if (len <= 0) return zero(prec);
    std::vector<F> c(static_cast<size_t>(len));
    mul_kernel_parallel(c, c_, b.c_);
    return TruncSeries(lo, std::move(c), prec);
  }

  // Reciprocal; needs a unit leading coefficient within the known range.
  // Relative precision is preserved: result precision is prec - 2*val.
  TruncSeries inv() const {
    if (is_zero())
      throw ZeroLeadingCoefficient("inv: series is zero to its precision");
    long rel = prec_ - val_;
    std::vector<F> r(static_cast<size_t>(rel));
    const F& lead = c_[0];
    r[0] = Traits::from_long(1) / lead;
    for (long m = 1; m < rel; ++m) {
      F acc = Traits::from_long(0);
      long jmax = std::min<long>(m, static_cast<long>(c_.size()) - 1);
      for (long j = 1; j <= jmax; ++j)
        acc = acc + c_[static_cast<size_t>(j)] * r[static_cast<size_t>(m - j)];
      r[static_cast<size_t>(m)] = -acc / lead;
    }
    return TruncSeries(-val_, std::move(r), prec_ - 2 * val_);
  }

  TruncSeries div(const TruncSeries& b) const { return mul(b.inv()); }

  TruncSeries pow_int(long e) const {
    if (e == 0) return one(prec_ - val_);
    if (e < 0) return inv().pow_int(-e);
    TruncSeries base = *this, acc;
    bool have = false;
    for (long k = e; k > 0; k >>= 1) {
      if (k & 1) {
        acc = have ? acc.mul(base) : base;
        have = true;
      }
      if (k > 1) base = base.mul(base);
    }
    return acc;
  }

  // n-th root of a series with leading coefficient exactly 1 and valuation
  // divisible by n.  Coefficient recursion from n*u*r' = u'*r with r^n = u:
  //   n*m*r_m = sum_{j<m} ((m-j) - n*j) * u_{m-j} * r_j.
  TruncSeries nth_root(long n) const {
    if (n <= 0) throw Error("nth_root: order must be positive");
    if (is_zero())
      throw ZeroLeadingCoefficient("nth_root: series is zero to its precision");
    if (val_ % n != 0)
      throw ValuationNotDivisible("nth_root: valuation " + std::to_string(val_) +
                                  " not divisible by " + std::to_string(n));
    if (!(c_[0] == Traits::from_long(1)))
      throw NonUnitLeading("nth_root: leading coefficient is not 1");
    long rel = prec_ - val_;
    std::vector<F> r(static_cast<size_t>(rel));
    r[0] = Traits::from_long(1);
    for (long m = 1; m < rel; ++m) {
      F acc = Traits::from_long(0);
      for (long j = 0; j < m; ++j) {
        long ui = m - j;
        if (ui >= static_cast<long>(c_.size())) continue;
        F u = c_[static_cast<size_t>(ui)];
        if (Traits::is_zero(u)) continue;
        acc = acc + u * r[static_cast<size_t>(j)] * Traits::from_long(m - j * (n + 1));
      }
      r[static_cast<size_t>(m)] = acc / Traits::from_long(n * m);
    }
    return TruncSeries(val_ / n, std::move(r), val_ / n + rel);
  }

  TruncSeries qderiv() const {
    std::vector<F> c(c_);
    for (size_t i = 0; i < c.size(); ++i)
      c[i] = c[i] * Traits::from_long(val_ + static_cast<long>(i));
    return TruncSeries(val_, std::move(c), prec_);
  }

  TruncSeries log_deriv() const { return qderiv().mul(inv()); }

  // q -> q^m.
  TruncSeries subst_scale(long m) const {
    if (m <= 0) throw Error("subst_scale: scale must be positive");
    long prec = m * (prec_ - 1) + 1;
    if (is_zero()) return zero(prec);
    std::vector<F> c(static_cast<size_t>(m * (static_cast<long>(c_.size()) - 1) + 1),
                     Traits::from_long(0));
    for (size_t i = 0; i < c_.size(); ++i) c[m * i] = c_[i];
    return TruncSeries(m * val_, std::move(c), prec);
  }

  // q -> -q.
  TruncSeries subst_negate() const {
    std::vector<F> c(c_);
    for (size_t i = 0; i < c.size(); ++i)
      if ((val_ + static_cast<long>(i)) % 2 != 0) c[i] = -c[i];
    return TruncSeries(val_, std::move(c), prec_);
  }

  // Multiply by q^s (exact: shifts the knowledge horizon too).
  TruncSeries shifted(long s) const {
    return TruncSeries(val_ + s, std::vector<F>(c_), prec_ + s);
  }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.val_ == b.val_ && a.prec_ == b.prec_ && a.c_ == b.c_;
  }
  friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

  // Equality of all coefficients below min(prec, upto).
  static bool agree_below(const TruncSeries& a, const TruncSeries& b, long upto) {
    if (a.prec_ < upto || b.prec_ < upto)
      throw PrecisionTooLow("agree_below: operands known only below q^" +
                            std::to_string(std::min(a.prec_, b.prec_)));
    long lo = std::min(a.is_zero() ? upto : a.val_, b.is_zero() ? upto : b.val_);
    for (long e = lo; e < upto; ++e)
      if (!(a.coeff(e) == b.coeff(e))) return false;
    return true;
  }

  // "q^-1 - 6 + 9*q + ..." (all known nonzero terms).
  std::string pretty() const {
    if (is_zero()) return "0 (known below q^" + std::to_string(prec_) + ")";
    std::string out;
    for (long e = val_; e < prec_ && e - val_ < static_cast<long>(c_.size()); ++e) {
      F x = c_[static_cast<size_t>(e - val_)];
      if (Traits::is_zero(x)) continue;
      std::string t = Traits::str(x);
      bool needs_parens = Traits::is_gaussian && t.find_first_of("+-", 1) != std::string::npos;
      if (!out.empty()) {
        // Pulling the sign out of a multi-term coefficient would flip its
        // trailing components, so those stay inside the parentheses intact.
        if (!needs_parens && !t.empty() && t[0] == '-') {
          out += " - ";
          t = t.substr(1);
        } else {
          out += " + ";
        }
      }
      if (needs_parens) t = "(" + t + ")";
      if (e == 0) out += t;
      else if (t == "1") out += qpow(e);
      else if (t == "-1") out += "-" + qpow(e);
      else out += t + "*" + qpow(e);
    }
    if (out.empty()) out = "0";
    return out + "  (+ O(q^" + std::to_string(prec_) + "))";
  }

 private:
  TruncSeries(long val, std::vector<F> c, long prec)
      : val_(val), prec_(prec), c_(std::move(c)) {
    normalize();
  }

  static std::string qpow(long e) {
    if (e == 1) return "q";
    return "q^" + std::to_string(e);
  }

  void normalize() {
    long cap = prec_ - val_;
    if (static_cast<long>(c_.size()) > cap) c_.resize(static_cast<size_t>(cap < 0 ? 0 : cap));
    size_t lead = 0;
    while (lead < c_.size() && Traits::is_zero(c_[lead])) ++lead;
    if (lead == c_.size()) {
      c_.clear();
      val_ = prec_;
      return;
    }
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
      val_ += static_cast<long>(lead);
    }
    size_t tail = c_.size();
    while (tail > 0 && Traits::is_zero(c_[tail - 1])) --tail;
    c_.resize(tail);
  }

  static void accumulate(std::vector<F>& acc, long lo, long prec, const TruncSeries& s,
                         bool negate) {
    for (long e = s.val_; e < prec && e - s.val_ < static_cast<long>(s.c_.size()); ++e) {
      const F& x = s.c_[static_cast<size_t>(e - s.val_)];
      auto& slot = acc[static_cast<size_t>(e - lo)];
      if (negate)
        slot = slot - x;
      else
        slot = slot + x;
    }
  }

  // Schoolbook product restricted to output positions [0, out.size()).
  // Reference kernel: fixed ascending inner order.
  static void mul_kernel_serial(std::vector<F>& out, const std::vector<F>& a,
                                const std::vector<F>& b) {
    long na = static_cast<long>(a.size()), nb = static_cast<long>(b.size());
    for (long k = 0; k < static_cast<long>(out.size()); ++k) {
      F acc = FieldTraits<F>::from_long(0);
      long ilo = std::max<long>(0, k - (nb - 1));
      long ihi = std::min<long>(na - 1, k);
      for (long i = ilo; i <= ihi; ++i)
        acc = acc + a[static_cast<size_t>(i)] * b[static_cast<size_t>(k - i)];
      out[static_cast<size_t>(k)] = acc;
    }
  }

  // Same arithmetic, output positions split across threads.  Each coefficient
  // is accumulated by exactly one thread in the same ascending order as the
  // serial kernel, so results are identical, not merely close.
  static void mul_kernel_parallel(std::vector<F>& out, const std::vector<F>& a,
                                  const std::vector<F>& b) {
    long na = static_cast<long>(a.size()), nb = static_cast<long>(b.size());
    long n = static_cast<long>(out.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (long k = 0; k < n; ++k) {
      F acc = FieldTraits<F>::from_long(0);
      long ilo = std::max<long>(0, k - (nb - 1));
      long ihi = std::min<long>(na - 1, k);
      for (long i = ilo; i <= ihi; ++i)
        acc = acc + a[static_cast<size_t>(i)] * b[static_cast<size_t>(k - i)];
      out[static_cast<size_t>(k)] = acc;
    }
  }

  long val_;
  long prec_;
  std::vector<F> c_;
};

template <class F>
TruncSeries<F> operator+(const TruncSeries<F>& a, const TruncSeries<F>& b) {
  return a.add(b);
}
template <class F>
TruncSeries<F> operator-(const TruncSeries<F>& a, const TruncSeries<F>& b) {
  return a.sub(b);
}
template <class F>
TruncSeries<F> operator*(const TruncSeries<F>& a, const TruncSeries<F>& b) {
  return a.mul(b);
}

using RatSeries = TruncSeries<Rat>;
using GaussSeries = TruncSeries<GaussRat>;

inline GaussSeries to_gaussian(const RatSeries& s) {
  std::vector<GaussRat> c;
  c.reserve(s.stored().size());
  for (const auto& x : s.stored()) c.emplace_back(x);
  return GaussSeries::from_coeffs(s.is_zero() ? s.prec() : s.val(), std::move(c), s.prec());
}

}  // namespace qmf
