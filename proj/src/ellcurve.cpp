#include <qmf/ellcurve.hpp>

#include <algorithm>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qmf {

Curve::Curve(Int A1, Int A2, Int A3, Int A4, Int A6)
    : a1(std::move(A1)), a2(std::move(A2)), a3(std::move(A3)), a4(std::move(A4)),
      a6(std::move(A6)) {
  b2 = a1 * a1 + 4 * a2;
  b4 = 2 * a4 + a1 * a3;
  b6 = a3 * a3 + 4 * a6;
  b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  c4 = b2 * b2 - 24 * b4;
  c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
  disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

RationalModel model_from_ode(const CubicODE& ode) {
  Rat c[4];  // coefficient of x^deg with the weight form set to 1
  for (const auto& m : ode.rhs) c[m.q_deg] += m.coef;
  if (c[3] != 1) throw Error("model_from_ode: cubic is not monic");
  RationalModel m;
  m.a1 = 0;
  m.a3 = 0;
  m.a2 = c[2];
  m.a4 = c[1];
  m.a6 = c[0];
  return m;
}

RationalModel transformed(const RationalModel& m, const Rat& u, const Rat& r, const Rat& s,
                          const Rat& t) {
  if (u == 0) throw Error("transformed: u must be nonzero");
  Rat u2(u * u), u3(u2 * u), u4(u2 * u2), u6(u3 * u3);
  RationalModel o;
  o.a1 = Rat((m.a1 + 2 * s) / u);
  o.a2 = Rat((m.a2 - s * m.a1 + 3 * r - s * s) / u2);
  o.a3 = Rat((m.a3 + r * m.a1 + 2 * t) / u3);
  o.a4 = Rat((m.a4 - s * m.a3 + 2 * r * m.a2 - (t + r * s) * m.a1 + 3 * r * r - 2 * s * t) / u4);
  o.a6 = Rat((m.a6 + r * m.a4 + r * r * m.a2 + r * r * r - t * m.a3 - t * t - r * t * m.a1) / u6);
  return o;
}

Curve integral_model(const RationalModel& m) {
  // least v such that scaling (u = 1/v) clears every denominator
  const std::pair<Rat, int> entries[] = {{m.a1, 1}, {m.a2, 2}, {m.a3, 3}, {m.a4, 4}, {m.a6, 6}};
  std::vector<std::pair<Int, long>> need;  // prime -> exponent of v
  for (const auto& [a, i] : entries) {
    Int den = a.get_den();
    if (den == 1) continue;
    for (const auto& pp : factorize(den)) {
      long e = (pp.e + i - 1) / i;  // ceil
      bool found = false;
      for (auto& [q, eq] : need) {
        if (q == pp.p) {
          eq = std::max(eq, e);
          found = true;
        }
      }
      if (!found) need.push_back({pp.p, e});
    }
  }
  Int v(1);
  for (const auto& [q, e] : need) v *= int_pow(q, static_cast<unsigned long>(e));
  RationalModel scaled = transformed(m, Rat(Int(1), v), Rat(0), Rat(0), Rat(0));
  for (const Rat& a : {scaled.a1, scaled.a2, scaled.a3, scaled.a4, scaled.a6}) {
    if (!rat_is_int(a)) throw Error("integral_model: scaling failed to clear denominators");
  }
  return Curve(Int(scaled.a1.get_num()), Int(scaled.a2.get_num()), Int(scaled.a3.get_num()),
               Int(scaled.a4.get_num()), Int(scaled.a6.get_num()));
}

namespace {

// Normalized curve with the given invariants, if one exists (a1, a3 in {0,1},
// a2 in {-1,0,1}).  This is the constructive direction of the reduction.
std::optional<Curve> curve_from_invariants(const Int& c4, const Int& c6) {
  Int target = mod_nonneg(-c6, Int(12));
  bool found = false;
  Int b2;
  for (long cand : {-4, -3, 0, 1, 4, 5}) {
    if (mod_nonneg(Int(cand), Int(12)) == target) {
      b2 = cand;
      found = true;
      break;
    }
  }
  if (!found) return std::nullopt;
  Int num_b4 = b2 * b2 - c4;
  if (!divides(Int(24), num_b4)) return std::nullopt;
  Int b4 = exact_div(num_b4, Int(24));
  Int num_b6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
  if (!divides(Int(216), num_b6)) return std::nullopt;
  Int b6 = exact_div(num_b6, Int(216));

  Int a1 = mod_nonneg(b2, Int(2));
  Int a2 = exact_div(Int(b2 - a1), Int(4));
  Int a3 = mod_nonneg(b6, Int(2));
  Int num_a4 = b4 - a1 * a3;
  if (!divides(Int(2), num_a4)) return std::nullopt;
  Int a4 = exact_div(num_a4, Int(2));
  Int num_a6 = b6 - a3;
  if (!divides(Int(4), num_a6)) return std::nullopt;
  Int a6 = exact_div(num_a6, Int(4));

  Curve E(a1, a2, a3, a4, a6);
  if (E.c4 != c4 || E.c6 != c6) return std::nullopt;
  return E;
}

}  // namespace

MinimalResult minimal_model(const Curve& E) {
  if (E.disc == 0) throw SingularCurve("minimal_model: zero discriminant");
  Int u(1);
  for (const auto& pp : factorize(E.disc)) {
    if (pp.e < 12) continue;
    long e = pp.e / 12;
    if (E.c4 != 0) e = std::min(e, int_val(E.c4, pp.p) / 4);
    if (E.c6 != 0) e = std::min(e, int_val(E.c6, pp.p) / 6);
    if (pp.p == 3 && E.c6 != 0) {
      // the reduced pair must avoid the one forbidden 3-valuation of c6
      while (e > 0 && int_val(E.c6, Int(3)) - 6 * e == 2) --e;
    }
    u *= int_pow(pp.p, static_cast<unsigned long>(e));
  }
  // Constructive check; only the 2-adic conditions can still fail, so back off
  // the 2-exponent until reconstruction succeeds.
  for (;;) {
    Int u4 = u * u * u * u;
    Int c4r = exact_div(E.c4 == 0 ? Int(0) : E.c4, E.c4 == 0 ? Int(1) : u4);
    Int c6r = exact_div(E.c6 == 0 ? Int(0) : E.c6, E.c6 == 0 ? Int(1) : Int(u4 * u * u));
    if (auto built = curve_from_invariants(c4r, c6r)) {
      Int u12 = int_pow(u, 12);
      if (built->disc * u12 != E.disc)
        throw Error("minimal_model: discriminant mismatch after reduction");
      return {*built, u};
    }
    if (mod_nonneg(u, Int(2)) != 0)
      throw Error("minimal_model: reconstruction failed at odd scale");
    u = exact_div(u, Int(2));
  }
}

namespace {

Curve shift_rst(const Curve& E, const Int& r, const Int& s, const Int& t) {
  return Curve(Int(E.a1 + 2 * s), Int(E.a2 - s * E.a1 + 3 * r - s * s),
               Int(E.a3 + r * E.a1 + 2 * t),
               Int(E.a4 - s * E.a3 + 2 * r * E.a2 - (t + r * s) * E.a1 + 3 * r * r - 2 * s * t),
               Int(E.a6 + r * E.a4 + r * r * E.a2 + r * r * r - t * E.a3 - t * t - r * t * E.a1));
}

long vp(const Int& x, const Int& p) {
  if (x == 0) return 1000000;  // effectively infinite for the checks below
  return int_val(x, p);
}

}  // namespace

LocalData tate_local(const Curve& E0, const Int& p) {
  if (E0.disc == 0) throw SingularCurve("tate_local: zero discriminant");
  if (p < 2 || p > 100000) throw Error("tate_local: prime out of range");
  const long pl = static_cast<long>(p.get_si());

  Curve E = E0;
  for (;;) {  // restarts only when the model is non-minimal at p
    long n = vp(E.disc, p);
    LocalData out;
    out.p = p;
    out.vdisc = n;
    if (n == 0) {
      out.kodaira = "I0";
      out.f = 0;
      return out;
    }

    // move the singular point mod p to the origin
    {
      bool placed = false;
      for (long r = 0; r < pl && !placed; ++r) {
        for (long t = 0; t < pl && !placed; ++t) {
          Curve T = shift_rst(E, Int(r), Int(0), Int(t));
          if (vp(T.a3, p) >= 1 && vp(T.a4, p) >= 1 && vp(T.a6, p) >= 1) {
            E = T;
            placed = true;
          }
        }
      }
      if (!placed) throw Error("tate_local: no singular point found mod " + int_str(p));
    }

    if (vp(E.b2, p) == 0) {
      out.kodaira = "I" + std::to_string(n);
      out.f = 1;
      return out;
    }
    if (vp(E.a6, p) < 2) {
      out.kodaira = "II";
      out.f = n;
      return out;
    }
    if (vp(E.b8, p) < 3) {
      out.kodaira = "III";
      out.f = n - 1;
      return out;
    }
    if (vp(E.b6, p) < 3) {
      out.kodaira = "IV";
      out.f = n - 2;
      return out;
    }

    // normalize to p | a1, a2; p^2 | a3, a4; p^3 | a6
    {
      bool placed = false;
      for (long s = 0; s < pl && !placed; ++s) {
        Curve S = shift_rst(E, Int(0), Int(s), Int(0));
        if (vp(S.a1, p) < 1) continue;
        for (long r = 0; r < pl * pl && !placed; ++r) {
          Curve R = shift_rst(S, Int(r), Int(0), Int(0));
          if (vp(R.a2, p) < 1) continue;
          for (long t = 0; t < pl * pl * pl && !placed; ++t) {
            Curve T = shift_rst(R, Int(0), Int(0), Int(t));
            if (vp(T.a3, p) >= 2 && vp(T.a4, p) >= 2 && vp(T.a6, p) >= 3) {
              E = T;
              placed = true;
            }
          }
        }
      }
      if (!placed) throw Error("tate_local: normalization failed at " + int_str(p));
    }

    // cubic T^3 + (a2/p) T^2 + (a4/p^2) T + (a6/p^3) over F_p
    {
      Int A2 = exact_div(E.a2, p), A4 = exact_div(E.a4, p * p), A6 = exact_div(E.a6, p * p * p);
      auto cval = [&](long T) {
        return mod_nonneg(Int(((Int(T) * T) * T) + A2 * T * T + A4 * T + A6), p);
      };
      auto cderiv = [&](long T) { return mod_nonneg(Int(3 * Int(T) * T + 2 * A2 * T + A4), p); };
      long rep = -1;
      for (long T = 0; T < pl; ++T) {
        if (cval(T) == 0 && cderiv(T) == 0) {
          rep = T;
          break;
        }
      }
      if (rep < 0) {
        out.kodaira = "I0*";
        out.f = n - 4;
        return out;
      }
      bool triple = mod_nonneg(Int(A2 + 3 * rep), p) == 0 &&
                    mod_nonneg(Int(A4 - 3 * Int(rep) * rep), p) == 0 &&
                    mod_nonneg(Int(A6 + Int(rep) * Int(rep) * rep), p) == 0;
      E = shift_rst(E, Int(p * rep), Int(0), Int(0));

      if (!triple) {
        // chain of degenerating quadratics; each failed translation stops it
        for (long k = 1;; ++k) {
          bool moved = false;
          if (k % 2 == 1) {
            long h = (k + 3) / 2;
            Int ph = int_pow(p, static_cast<unsigned long>(h));
            for (long y = 0; y < pl && !moved; ++y) {
              Curve T = shift_rst(E, Int(0), Int(0), Int(ph * y));
              if (vp(T.a3, p) >= h + 1 && vp(T.a6, p) >= k + 4) {
                E = T;
                moved = true;
              }
            }
          } else {
            long h = (k + 4) / 2;
            Int pr = int_pow(p, static_cast<unsigned long>((k + 2) / 2));
            for (long x = 0; x < pl && !moved; ++x) {
              Curve T = shift_rst(E, Int(pr * x), Int(0), Int(0));
              if (vp(T.a4, p) >= h + 1 && vp(T.a6, p) >= k + 4) {
                E = T;
                moved = true;
              }
            }
          }
          if (!moved) {
            out.kodaira = "I" + std::to_string(k) + "*";
            out.f = n - 4 - k;
            return out;
          }
          if (k > n) throw Error("tate_local: runaway chain at " + int_str(p));
        }
      }

      // triple root: Y^2 + (a3/p^2) Y - a6/p^4
      {
        bool moved = false;
        Int p2 = p * p;
        for (long y = 0; y < pl && !moved; ++y) {
          Curve T = shift_rst(E, Int(0), Int(0), Int(p2 * y));
          if (vp(T.a3, p) >= 3 && vp(T.a6, p) >= 5) {
            E = T;
            moved = true;
          }
        }
        if (!moved) {
          out.kodaira = "IV*";
          out.f = n - 6;
          return out;
        }
      }
      if (vp(E.a4, p) < 4) {
        out.kodaira = "III*";
        out.f = n - 7;
        return out;
      }
      if (vp(E.a6, p) < 6) {
        out.kodaira = "II*";
        out.f = n - 8;
        return out;
      }
      // not minimal at p: rescale and run again
      E = Curve(exact_div(E.a1, p), exact_div(E.a2, p * p), exact_div(E.a3, p * p * p),
                exact_div(E.a4, int_pow(p, 4)), exact_div(E.a6, int_pow(p, 6)));
    }
  }
}

Int conductor(const Curve& minimal) {
  if (minimal.disc == 0) throw SingularCurve("conductor: zero discriminant");
  Int N(1);
  for (const auto& pp : factorize(minimal.disc)) {
    LocalData ld = tate_local(minimal, pp.p);
    N *= int_pow(pp.p, static_cast<unsigned long>(ld.f));
  }
  return N;
}

namespace {

long mod_long(const Int& a, long p) {
  return static_cast<long>(mod_nonneg(a, Int(p)).get_si());
}

long ap_kernel(const Curve& E, long p, bool parallel) {
  if (p == 2) {
    long a1 = mod_long(E.a1, 2), a2 = mod_long(E.a2, 2), a3 = mod_long(E.a3, 2),
         a4 = mod_long(E.a4, 2), a6 = mod_long(E.a6, 2);
    long count = 0;
    for (long x = 0; x < 2; ++x) {
      for (long y = 0; y < 2; ++y) {
        long lhs = (y * y + a1 * x * y + a3 * y) % 2;
        long rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
        if (lhs == rhs) ++count;
      }
    }
    return 2 - count;
  }
  // odd p: complete the square, count quadratic-residue values of the quartic
  std::vector<signed char> chi(static_cast<size_t>(p), -1);
  chi[0] = 0;
  for (long x = 1; x < p; ++x) chi[static_cast<size_t>((x * x) % p)] = 1;
  const long B2 = mod_long(E.b2, p), B4x2 = mod_long(Int(2 * E.b4), p), B6 = mod_long(E.b6, p);
  long acc = 0;
#ifdef _OPENMP
#pragma omp parallel for reduction(+ : acc) schedule(static) if (parallel)
#endif
  for (long x = 0; x < p; ++x) {
    long g = ((4 * x + B2) % p) * x % p;
    g = ((g + B4x2) * x + B6) % p;
    acc += chi[static_cast<size_t>(g)];
  }
  (void)parallel;
  return -acc;
}

}  // namespace

long ap_trace_serial(const Curve& E, long p) {
  if (p < 2) throw Error("ap_trace: not a prime");
  if (divides(Int(p), E.disc)) throw BadReduction("ap_trace: bad reduction at " + std::to_string(p));
  long ap = ap_kernel(E, p, false);
  if (ap * ap > 4 * p) throw Error("ap_trace: Hasse bound violated");
  return ap;
}

long ap_trace_parallel(const Curve& E, long p) {
  if (p < 2) throw Error("ap_trace: not a prime");
  if (divides(Int(p), E.disc)) throw BadReduction("ap_trace: bad reduction at " + std::to_string(p));
  long ap = ap_kernel(E, p, true);
  if (ap * ap > 4 * p) throw Error("ap_trace: Hasse bound violated");
  return ap;
}

long ap_trace(const Curve& E, long p) {
  bool parallel = false;
#ifdef _OPENMP
  parallel = p >= 4096 && omp_get_max_threads() > 1;
#endif
  return parallel ? ap_trace_parallel(E, p) : ap_trace_serial(E, p);
}

namespace {

// strip e-th powers from a rational ratio, keeping the sign
Int strip_powers(const Rat& ratio, long e) {
  Int d(ratio < 0 ? -1 : 1);
  for (const auto& pp : factorize(Int(ratio.get_num() * ratio.get_den()))) {
    // net exponent of p in the ratio
    long net = int_val(Int(ratio.get_num()), pp.p) - int_val(Int(ratio.get_den()), pp.p);
    long r = ((net % e) + e) % e;
    d *= int_pow(pp.p, static_cast<unsigned long>(r));
  }
  return d;
}

}  // namespace

TwistRelation twist_relation(const Curve& A, const Curve& B) {
  MinimalResult ma = minimal_model(A), mb = minimal_model(B);
  if (ma.curve == mb.curve) return {"isomorphic", Int(1)};

  Int NA = conductor(ma.curve), NB = conductor(mb.curve);
  for (const Int& d : signed_squarefree_divisors(Int(6 * NA * NB))) {
    if (d == 1) continue;
    RationalModel tw;
    tw.a1 = 0;
    tw.a2 = 0;
    tw.a3 = 0;
    tw.a4 = Rat(Int(-27 * d * d * ma.curve.c4));
    tw.a6 = Rat(Int(-54 * d * d * d * ma.curve.c6));
    if (minimal_model(integral_model(tw)).curve == mb.curve) return {"quadratic", d};
  }
  if (ma.curve.c6 == 0 && mb.curve.c6 == 0) {
    Rat ratio(mb.curve.c4, ma.curve.c4);
    ratio.canonicalize();
    Int d = strip_powers(ratio, 4);
    RationalModel tw;
    tw.a1 = 0;
    tw.a2 = 0;
    tw.a3 = 0;
    tw.a4 = Rat(Int(-ma.curve.c4 * d), Int(48));
    tw.a6 = 0;
    if (minimal_model(integral_model(tw)).curve == mb.curve) return {"quartic", d};
  }
  if (ma.curve.c4 == 0 && mb.curve.c4 == 0) {
    Rat ratio(mb.curve.c6, ma.curve.c6);
    ratio.canonicalize();
    Int d = strip_powers(ratio, 6);
    RationalModel tw;
    tw.a1 = 0;
    tw.a2 = 0;
    tw.a3 = 0;
    tw.a4 = 0;
    tw.a6 = Rat(Int(-ma.curve.c6 * d), Int(864));
    if (minimal_model(integral_model(tw)).curve == mb.curve) return {"sextic", d};
  }
  return {"unrelated", Int(0)};
}

CurveReport curve_report(const std::string& group_tag, long pmax) {
  const CubicODE& ode = ode_by_group(group_tag);
  CurveReport rep;
  rep.group = group_tag;
  rep.initial = model_from_ode(ode);
  Curve E = integral_model(rep.initial);
  MinimalResult mm = minimal_model(E);
  rep.minimal = mm.curve;
  rep.scaling_u = mm.u;
  rep.conductor = Int(1);
  for (const auto& pp : factorize(rep.minimal.disc)) {
    LocalData ld = tate_local(rep.minimal, pp.p);
    rep.bad_primes.push_back(ld);
    rep.conductor *= int_pow(pp.p, static_cast<unsigned long>(ld.f));
  }
  std::sort(rep.bad_primes.begin(), rep.bad_primes.end(),
            [](const LocalData& a, const LocalData& b) { return a.p < b.p; });
  for (long p : primes_up_to(pmax)) {
    if (divides(Int(p), rep.minimal.disc)) continue;
    rep.ap[p] = ap_trace(rep.minimal, p);
  }
  return rep;
}

}  // namespace qmf
