#pragma once

#include <qmf/odes.hpp>

#include <algorithm>
#include <array>
#include <deque>
#include <string>
#include <vector>

namespace qmf {

// One power-series solution of an equation from the catalog, as found by the
// branching coefficient search.  Coefficients run from exponent 0.
template <class F>
struct SolutionBranch {
  std::vector<F> coeffs;
  std::vector<std::string> notes;
};

template <class F>
struct SolveResult {
  std::vector<SolutionBranch<F>> solutions;  // sorted by coefficient sequence
  std::vector<std::string> notes;            // branch deaths worth reporting
};

namespace detail {

// Roots in F of c[3] x^3 + c[2] x^2 + c[1] x + c[0].  `all_in_field` reports
// whether the returned set provably contains every root the field has.
template <class F>
struct RootSet {
  std::vector<F> roots;
  bool all_in_field = true;
  std::string note;
};

template <class F>
void push_unique_root(std::vector<F>& roots, const F& r) {
  for (const auto& x : roots)
    if (x == r) return;
  roots.push_back(r);
}

template <class F>
RootSet<F> quadratic_roots(const F& c2, const F& c1, const F& c0) {
  using FT = FieldTraits<F>;
  RootSet<F> out;
  F disc = c1 * c1 - FT::from_long(4) * c2 * c0;
  auto s = FT::sqrt(disc);
  if (!s) {
    out.note = "requires extension: quadratic discriminant " + FT::str(disc) +
               " has no square root over " + FT::name() + " coefficients";
    return out;  // no roots in F, and that is exhaustive
  }
  F two_a = FT::from_long(2) * c2;
  push_unique_root(out.roots, F((-c1 + *s) / two_a));
  push_unique_root(out.roots, F((-c1 - *s) / two_a));
  return out;
}

// Rational roots of an integer cubic via divisor enumeration of the extreme
// coefficients, followed by deflation to a quadratic solved over F.
template <class F>
RootSet<F> cubic_roots(const std::array<F, 4>& c) {
  using FT = FieldTraits<F>;
  RootSet<F> out;
  std::array<Rat, 4> rc;
  for (int i = 0; i < 4; ++i) {
    auto r = FT::as_rational(c[static_cast<size_t>(i)]);
    if (!r) {
      // Never reached by the catalog equations: cubic constraints only occur
      // while the decided prefix is still rational.  Refuse to guess.
      out.all_in_field = false;
      out.note = "cubic constraint with non-rational coefficients; roots not enumerated";
      return out;
    }
    rc[static_cast<size_t>(i)] = *r;
  }

  Int lcm(1);
  for (const auto& r : rc) {
    Int den = r.get_den();
    Int g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::array<Int, 4> ic;
  for (int i = 0; i < 4; ++i) ic[static_cast<size_t>(i)] = Int(rc[static_cast<size_t>(i)] * lcm);

  std::vector<Rat> rational_roots;
  auto eval = [&](const Rat& x) {
    Rat acc(0);
    for (int i = 3; i >= 0; --i) acc = Rat(acc * x + Rat(ic[static_cast<size_t>(i)]));
    return acc;
  };
  if (ic[0] == 0) {
    rational_roots.push_back(Rat(0));
  } else {
    for (const Int& p : all_divisors(ic[0])) {
      for (const Int& q : all_divisors(ic[3])) {
        Int g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        if (g != 1) continue;
        Rat cand(p, q);
        cand.canonicalize();
        if (eval(cand) == 0) rational_roots.push_back(cand);
        Rat neg = Rat(-cand);
        if (eval(neg) == 0) rational_roots.push_back(neg);
      }
    }
  }
  if (rational_roots.empty()) {
    // A rational cubic without a rational root keeps a conjugate-stable root
    // pair out of Q(i) as well, so the empty answer is exhaustive for both
    // coefficient fields.
    out.note = "cubic has no rational root";
    return out;
  }
  Rat r0 = rational_roots.front();
  for (const auto& r : rational_roots) push_unique_root(out.roots, FT::from_rat(r));
  // deflate by (x - r0): x^3+... = (x - r0)(d2 x^2 + d1 x + d0)
  Rat d2 = rc[3];
  Rat d1 = Rat(rc[2] + d2 * r0);
  Rat d0 = Rat(rc[1] + d1 * r0);
  RootSet<F> quad = quadratic_roots(FT::from_rat(d2), FT::from_rat(d1), FT::from_rat(d0));
  for (const auto& r : quad.roots) push_unique_root(out.roots, r);
  if (quad.roots.empty() && !quad.note.empty() && out.roots.size() < 3) out.note = quad.note;
  return out;
}

template <class F>
RootSet<F> poly_roots(const std::array<F, 4>& c) {
  using FT = FieldTraits<F>;
  int deg = -1;
  for (int i = 3; i >= 0; --i) {
    if (!FT::is_zero(c[static_cast<size_t>(i)])) {
      deg = i;
      break;
    }
  }
  RootSet<F> out;
  if (deg <= 0) return out;  // constants have no roots; callers pre-filter
  if (deg == 1) {
    out.roots.push_back(F(-c[0] / c[1]));
    return out;
  }
  if (deg == 2) return quadratic_roots(c[2], c[1], c[0]);
  return cubic_roots(c);
}

}  // namespace detail

// Enumerates power-series solutions Q = sum a_n q^n of the equation over the
// coefficient field F (Rat or GaussRat), deciding one coefficient at a time.
// At each stage the residual coefficients that later coefficients provably
// cannot touch are interpolated as polynomials in the next unknown; their
// roots spawn branches.  Surviving branches carry `prec` coefficients and a
// residual verified zero on every exponent decided so far.
template <class F>
SolveResult<F> solve_series(const CubicODE& ode, long prec, int branch_cap = 16) {
  using FT = FieldTraits<F>;
  using Series = TruncSeries<F>;
  if (prec < 8) throw PrecisionTooLow("solve_series: need prec >= 8");

  const long work_prec = 2 * prec + 8;  // upper bound for every stage window
  Series delta = [&] {
    RatSeries d = expand_form(ode.delta_key, work_prec);
    if constexpr (FT::is_gaussian) return to_gaussian(d);
    else return d;
  }();
  Series P = [&] {
    RatSeries p = expand_form(ode.p_key, work_prec);
    if constexpr (FT::is_gaussian) return to_gaussian(p);
    else return p;
  }();
  if (P.coeff(1) == FT::from_long(0))
    throw Error("solve_series: degenerate logarithmic derivative");
  if (delta.val() != 1) throw Error("solve_series: delta form must vanish to order 1");

  const Rat& s = ode.deriv_scale;
  // First exponent of the derivative applied to q^j (the linear term can drop
  // out when s*j == 1; the next term is carried by P's q-coefficient).
  auto deriv_entry = [&](long j) { return Rat(s * j) == 1 ? j + 1 : j; };

  struct Branch {
    std::vector<F> a;
    long checked = 0;
    std::vector<std::string> notes;
  };

  std::deque<Branch> live;
  live.push_back({});
  std::vector<Branch> done;
  std::vector<std::string> global_notes;

  auto prefix_series = [&](const std::vector<F>& a, long at, const F& x, long sp) {
    std::vector<F> coeffs(static_cast<size_t>(sp), FT::from_long(0));
    for (size_t i = 0; i < a.size() && static_cast<long>(i) < sp; ++i) coeffs[i] = a[i];
    if (at >= 0 && at < sp) coeffs[static_cast<size_t>(at)] = x;
    return Series::from_coeffs(0, std::move(coeffs), sp);
  };

  while (!live.empty()) {
    Branch br = std::move(live.front());
    live.pop_front();
    const long n = static_cast<long>(br.a.size());  // next coefficient index
    const bool final_stage = n >= prec;

    // valuation of the prefix extended by x q^n, as a polynomial in x
    long vq = n;
    for (size_t i = 0; i < br.a.size(); ++i) {
      if (!FT::is_zero(br.a[i])) {
        vq = static_cast<long>(i);
        break;
      }
    }

    // first residual exponent the coefficient after this stage can influence
    const long next = final_stage ? n : n + 1;
    long entry = 2 * deriv_entry(next);
    {
      // cross term against the derivative of everything decided so far
      long u = deriv_entry(n);  // the x q^n part (final stage: index n == next)
      if (!br.a.empty()) {
        Series dpre = prefix_series(br.a, -1, FT::from_long(0), work_prec)
                          .qderiv()
                          .scalar_mul(FT::from_rat(s))
                          .sub(P.mul(prefix_series(br.a, -1, FT::from_long(0), work_prec)));
        if (!dpre.is_zero()) u = std::min(u, dpre.val());
      }
      entry = std::min(entry, deriv_entry(next) + u);
      for (const auto& m : ode.rhs) {
        if (m.q_deg < 1) continue;
        entry = std::min(entry, next + m.delta_deg + (m.q_deg - 1) * vq);
      }
    }
    if (entry > work_prec) entry = work_prec;

    if (final_stage) {
      // full prefix decided: confirm the remaining determined residual window
      bool dead = false;
      if (entry > br.checked) {
        Series Q = prefix_series(br.a, -1, FT::from_long(0), entry);
        Series res = ode_residual(ode, Q, delta.truncated(entry), P.truncated(entry));
        for (long m = br.checked; m < entry && m < res.prec(); ++m) {
          if (!FT::is_zero(res.coeff(m))) {
            global_notes.push_back(ode.group + ": branch with a_0=" +
                                   FT::str(br.a.empty() ? FT::from_long(0) : br.a[0]) +
                                   " inconsistent at exponent " + std::to_string(m));
            dead = true;
            break;
          }
        }
      }
      if (!dead) done.push_back(std::move(br));
      continue;
    }

    // residual at four sample values of x = a_n, then interpolate per exponent
    std::array<Series, 4> samples = {
        Series::zero(0), Series::zero(0), Series::zero(0), Series::zero(0)};
    for (long x = 0; x < 4; ++x) {
      Series Q = prefix_series(br.a, n, FT::from_long(x), entry);
      samples[static_cast<size_t>(x)] =
          ode_residual(ode, Q, delta.truncated(entry), P.truncated(entry));
    }

    bool resolved = false;
    bool died = false;
    for (long m = br.checked; m < entry && !resolved && !died; ++m) {
      std::array<F, 4> v;
      for (int i = 0; i < 4; ++i)
        v[static_cast<size_t>(i)] =
            m < samples[static_cast<size_t>(i)].prec() ? samples[static_cast<size_t>(i)].coeff(m)
                                                       : FT::from_long(0);
      // Newton forward differences on samples 0,1,2,3
      F d1 = v[1] - v[0], d2 = v[2] - v[1], d3 = v[3] - v[2];
      F dd1 = d2 - d1, dd2 = d3 - d2;
      F ddd = dd2 - dd1;
      F two = FT::from_long(2), three = FT::from_long(3), six = FT::from_long(6);
      std::array<F, 4> poly;
      poly[0] = v[0];
      poly[1] = d1 - dd1 / two + ddd / three;
      poly[2] = dd1 / two - ddd / two;
      poly[3] = ddd / six;

      bool nonconst = !FT::is_zero(poly[1]) || !FT::is_zero(poly[2]) || !FT::is_zero(poly[3]);
      if (!nonconst) {
        if (!FT::is_zero(poly[0])) died = true;  // contradiction nothing can fix
        continue;
      }
      resolved = true;
      detail::RootSet<F> rs = detail::poly_roots(poly);
      if (!rs.note.empty())
        global_notes.push_back(ode.group + ": a_" + std::to_string(n) + ": " + rs.note);
      std::sort(rs.roots.begin(), rs.roots.end(), FT::less);
      if (static_cast<long>(live.size() + rs.roots.size()) > branch_cap)
        throw BranchExplosion("solve_series: more than " + std::to_string(branch_cap) +
                              " live branches");
      for (const auto& r : rs.roots) {
        Branch child = br;
        child.a.push_back(r);
        child.checked = m + 1;
        live.push_back(std::move(child));
      }
    }
    if (died || resolved) continue;

    // Every window coefficient vanished identically: a_n is unconstrained so
    // far.  Continue with zero, flagging that enumeration may be partial.
    Branch child = std::move(br);
    child.a.push_back(FT::from_long(0));
    child.notes.push_back("a_" + std::to_string(n) + " unconstrained below exponent " +
                          std::to_string(entry) + "; explored with value 0");
    child.checked = entry;
    live.push_back(std::move(child));
  }

  SolveResult<F> out;
  for (auto& br : done) out.solutions.push_back({std::move(br.a), std::move(br.notes)});
  std::sort(out.solutions.begin(), out.solutions.end(),
            [](const SolutionBranch<F>& a, const SolutionBranch<F>& b) {
              for (size_t i = 0; i < a.coeffs.size() && i < b.coeffs.size(); ++i) {
                if (a.coeffs[i] != b.coeffs[i]) return FieldTraits<F>::less(a.coeffs[i], b.coeffs[i]);
              }
              return a.coeffs.size() < b.coeffs.size();
            });
  out.notes = std::move(global_notes);
  return out;
}

// What a raw branch is: the zero series, a scalar multiple of the group's
// weight form (annihilated by the derivative, so one per root of the pure
// rhs cubic), a catalog candidate, or a genuinely new series.
template <class F>
struct ClassifiedSolution {
  std::vector<F> coeffs;
  std::string kind;  // "zero" | "delta_multiple" | "catalog" | "exotic"
  std::string key;   // catalog key when kind == "catalog"
  std::vector<std::string> notes;
};

template <class F>
std::vector<ClassifiedSolution<F>> classify_solutions(const CubicODE& ode,
                                                      const SolveResult<F>& raw, long prec) {
  using FT = FieldTraits<F>;
  std::vector<std::pair<std::string, TruncSeries<F>>> cands;
  for (const auto& key : ode.candidates) {
    RatSeries e = expand_form(key, prec);
    if constexpr (FT::is_gaussian) cands.emplace_back(key, to_gaussian(e));
    else cands.emplace_back(key, e);
  }
  TruncSeries<F> delta = [&] {
    RatSeries d = expand_form(ode.delta_key, prec);
    if constexpr (FT::is_gaussian) return to_gaussian(d);
    else return d;
  }();
  std::vector<ClassifiedSolution<F>> out;
  for (const auto& sol : raw.solutions) {
    ClassifiedSolution<F> c;
    c.coeffs = sol.coeffs;
    c.notes = sol.notes;
    bool zero = true;
    for (const auto& a : sol.coeffs) zero = zero && FT::is_zero(a);
    if (zero) {
      c.kind = "zero";
      out.push_back(std::move(c));
      continue;
    }
    // c * delta form: vanishing constant term and every coefficient the same
    // scalar multiple of the weight form's.
    if (sol.coeffs.size() > 1 && FT::is_zero(sol.coeffs[0])) {
      F scale = sol.coeffs[1];  // delta has valuation 1, coefficient 1
      bool mult = !FT::is_zero(scale);
      for (long i = 1; i < prec && mult; ++i)
        mult = sol.coeffs[static_cast<size_t>(i)] == F(scale * delta.coeff(i));
      if (mult) {
        c.kind = "delta_multiple";
        out.push_back(std::move(c));
        continue;
      }
    }
    c.kind = "exotic";
    for (const auto& [key, series] : cands) {
      bool match = true;
      for (long i = 0; i < prec && match; ++i)
        match = sol.coeffs[static_cast<size_t>(i)] == series.coeff(i);
      if (match) {
        c.kind = "catalog";
        c.key = key;
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace qmf
