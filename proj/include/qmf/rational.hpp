#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "qmf/errors.hpp"

namespace qmf {

using Int = mpz_class;
using Rat = mpq_class;

inline std::string int_str(const Int& z) { return z.get_str(); }

// "a" or "a/b", canonical (b > 0, gcd 1).
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat_parse(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

inline bool rat_is_int(const Rat& r) { return r.get_den() == 1; }

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  if (base == 0) {
    if (e < 0) throw Error("rat_pow: zero base with negative exponent");
    return Rat(0);
  }
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  Rat r(int_pow(base.get_num(), a), int_pow(base.get_den(), a));
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

inline std::optional<Int> int_sqrt_exact(const Int& n) {
  if (n < 0) return std::nullopt;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Exact square root in Q, if one exists (nonnegative root returned).
inline std::optional<Rat> rat_sqrt_exact(const Rat& x) {
  if (x < 0) return std::nullopt;
  auto num = int_sqrt_exact(Int(x.get_num()));
  if (!num) return std::nullopt;
  auto den = int_sqrt_exact(Int(x.get_den()));
  if (!den) return std::nullopt;
  Rat r(*num, *den);
  r.canonicalize();
  return r;
}

// Largest e with p^e | n, for n != 0; n is reduced alongside.
inline long int_val_remove(Int& n, const Int& p) {
  Int out;
  long v = static_cast<long>(mpz_remove(out.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  n = out;
  return v;
}

inline long int_val(const Int& n, const Int& p) {
  Int tmp = n;
  return int_val_remove(tmp, p);
}

// Representative of a mod m in [0, m).
inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int exact_div(const Int& a, const Int& d) {
  if (!divides(d, a)) throw Error("exact_div: " + int_str(d) + " does not divide " + int_str(a));
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t());
  return q;
}

struct PrimePower {
  Int p;
  long e;
};

// Trial division, falling back to a primality test on the remainder.  The
// numbers factored here (curve invariants, twist search radicals) have all
// their structure in small primes; a composite remainder past the bound means
// the caller's expectations were violated, so it is an error rather than a
// silent wrong answer.
inline std::vector<PrimePower> factorize(Int n, long trial_bound = 1000000) {
  if (n == 0) throw Error("factorize: zero input");
  if (n < 0) n = -n;
  std::vector<PrimePower> out;
  auto record = [&](const Int& p) {
    long e = int_val_remove(n, p);
    if (e > 0) out.push_back({p, e});
  };
  record(Int(2));
  for (Int p = 3; p * p <= n && p <= trial_bound; p += 2) record(p);
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
      throw FactorizationIncomplete("factorize: composite remainder " + int_str(n));
    out.push_back({n, 1});
  }
  return out;
}

// All positive divisors of |n| (n != 0), ascending.
inline std::vector<Int> all_divisors(const Int& n) {
  std::vector<Int> divs{Int(1)};
  for (const auto& pp : factorize(n)) {
    size_t m = divs.size();
    Int pe(1);
    for (long e = 1; e <= pp.e; ++e) {
      pe *= pp.p;
      for (size_t i = 0; i < m; ++i) divs.push_back(Int(divs[i] * pe));
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

// All squarefree divisors of |n|, both signs, sorted by (|d|, sign) with the
// positive one first; includes +1 and -1.
inline std::vector<Int> signed_squarefree_divisors(const Int& n) {
  std::vector<Int> radical_primes;
  for (const auto& pp : factorize(n)) radical_primes.push_back(pp.p);
  std::vector<Int> divs{Int(1)};
  for (const auto& p : radical_primes) {
    size_t m = divs.size();
    for (size_t i = 0; i < m; ++i) divs.push_back(divs[i] * p);
  }
  std::sort(divs.begin(), divs.end());
  std::vector<Int> out;
  for (const auto& d : divs) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

}  // namespace qmf
