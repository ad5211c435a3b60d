#pragma once

#include <qmf/odes.hpp>
#include <qmf/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace qmf {

// Long Weierstrass model with rational coefficients.
struct RationalModel {
  Rat a1, a2, a3, a4, a6;

  Rat b2() const { return Rat(a1 * a1 + 4 * a2); }
  Rat b4() const { return Rat(2 * a4 + a1 * a3); }
  Rat b6() const { return Rat(a3 * a3 + 4 * a6); }
  Rat b8() const {
    return Rat(a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4);
  }
  Rat c4() const { return Rat(b2() * b2() - 24 * b4()); }
  Rat c6() const {
    return Rat(-b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6());
  }
  Rat disc() const {
    Rat B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return Rat(-B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6);
  }
};

// Integral model with cached invariants.
struct Curve {
  Int a1, a2, a3, a4, a6;
  Int b2, b4, b6, b8, c4, c6, disc;

  Curve() : Curve(Int(0), Int(0), Int(0), Int(0), Int(0)) {}
  Curve(Int A1, Int A2, Int A3, Int A4, Int A6);

  bool operator==(const Curve& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
  }
};

// x-cubic of the equation, read as a short Weierstrass model y^2 = rhs(x).
RationalModel model_from_ode(const CubicODE& ode);

// Standard change of variables (u,r,s,t); u must be nonzero.
RationalModel transformed(const RationalModel& m, const Rat& u, const Rat& r, const Rat& s,
                          const Rat& t);

// Clear denominators by the least scaling that leaves all coefficients integral.
Curve integral_model(const RationalModel& m);

struct MinimalResult {
  Curve curve;
  Int u;  // scale between the input and the minimal model
};

// Global minimal model over Q (Laska-Kraus-Connell reduction).
MinimalResult minimal_model(const Curve& E);

struct LocalData {
  Int p;
  long vdisc = 0;       // valuation of the minimal discriminant
  std::string kodaira;  // "I0", "I5", "II", "III", "IV", "I0*", "I2*", "IV*", "III*", "II*"
  long f = 0;           // conductor exponent
};

// Reduction data at p for a (minimal) integral model.
LocalData tate_local(const Curve& E, const Int& p);

// Product of p^f over the bad primes.  Throws SingularCurve on zero
// discriminant.
Int conductor(const Curve& minimal);

// Trace of Frobenius at a prime of good reduction; throws BadReduction
// otherwise.  The parallel variant distributes the x-sweep and must return
// bit-identical values to the serial one.
long ap_trace_serial(const Curve& E, long p);
long ap_trace_parallel(const Curve& E, long p);
long ap_trace(const Curve& E, long p);

struct TwistRelation {
  std::string kind;  // "isomorphic" | "quadratic" | "quartic" | "sextic" | "unrelated"
  Int d;             // twisting scalar for the middle three kinds
};

// How two curves are related over Q, decided on minimal models.
TwistRelation twist_relation(const Curve& A, const Curve& B);

struct CurveReport {
  std::string group;
  RationalModel initial;
  Curve minimal;
  Int scaling_u;
  Int conductor;
  std::vector<LocalData> bad_primes;
  std::map<long, long> ap;  // prime -> trace, good primes only
};

CurveReport curve_report(const std::string& group_tag, long pmax = 97);

}  // namespace qmf
