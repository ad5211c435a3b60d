#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qmf/rational.hpp"

namespace qmf {

// Gaussian rational a + bi with exact rational parts.
struct GaussRat {
  Rat re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long v) : re(v), im(0) {}          // NOLINT: implicit by design
  GaussRat(const Rat& r) : re(r), im(0) {}    // NOLINT: rationals embed
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return GaussRat(re, Rat(-im)); }
  Rat norm() const { return Rat(re * re + im * im); }
};

inline bool operator==(const GaussRat& a, const GaussRat& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

inline GaussRat operator+(const GaussRat& a, const GaussRat& b) {
  return GaussRat(Rat(a.re + b.re), Rat(a.im + b.im));
}
inline GaussRat operator-(const GaussRat& a, const GaussRat& b) {
  return GaussRat(Rat(a.re - b.re), Rat(a.im - b.im));
}
inline GaussRat operator-(const GaussRat& a) { return GaussRat(Rat(-a.re), Rat(-a.im)); }
inline GaussRat operator*(const GaussRat& a, const GaussRat& b) {
  return GaussRat(Rat(a.re * b.re - a.im * b.im), Rat(a.re * b.im + a.im * b.re));
}
inline GaussRat operator/(const GaussRat& a, const GaussRat& b) {
  if (b.is_zero()) throw Error("GaussRat: division by zero");
  Rat n = b.norm();
  GaussRat c = a * b.conj();
  return GaussRat(Rat(c.re / n), Rat(c.im / n));
}
inline GaussRat& operator+=(GaussRat& a, const GaussRat& b) { return a = a + b; }
inline GaussRat& operator-=(GaussRat& a, const GaussRat& b) { return a = a - b; }
inline GaussRat& operator*=(GaussRat& a, const GaussRat& b) { return a = a * b; }

// "2", "-18/13+2i", "1-i", "3i", "0"
inline std::string gauss_str(const GaussRat& z) {
  if (z.im == 0) return rat_str(z.re);
  std::string im_part;
  if (z.im == 1) im_part = "i";
  else if (z.im == -1) im_part = "-i";
  else im_part = rat_str(z.im) + "i";
  if (z.re == 0) return im_part;
  std::string out = rat_str(z.re);
  if (z.im > 0) out += "+";
  return out + im_part;
}

// Exact square root in Q(i), if one exists.  For z = a+bi with b != 0 a root
// x+yi needs x^2 = (a + s)/2 with s = sqrt(a^2+b^2); both square roots must be
// rational for the result to stay in the field.
inline std::optional<GaussRat> gauss_sqrt(const GaussRat& z) {
  if (z.im == 0) {
    if (auto r = rat_sqrt_exact(z.re)) return GaussRat(*r);
    if (auto r = rat_sqrt_exact(Rat(-z.re))) return GaussRat(Rat(0), *r);
    return std::nullopt;
  }
  auto s = rat_sqrt_exact(z.norm());
  if (!s) return std::nullopt;
  auto x = rat_sqrt_exact(Rat((z.re + *s) / 2));
  if (!x || *x == 0) return std::nullopt;
  Rat y = Rat(z.im / (2 * *x));
  GaussRat root(*x, y);
  if (root * root != z) return std::nullopt;
  return root;
}

// Coefficient-field abstraction used by TruncSeries and the solver: exact
// construction, printing, square roots, and a stable ordering for output.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rat> {
  static constexpr bool is_gaussian = false;
  static const char* name() { return "rational"; }
  static Rat from_long(long v) { return Rat(v); }
  static Rat from_rat(const Rat& r) { return r; }
  static bool is_zero(const Rat& x) { return x == 0; }
  static std::string str(const Rat& x) { return rat_str(x); }
  static std::optional<Rat> sqrt(const Rat& x) { return rat_sqrt_exact(x); }
  static std::optional<Rat> as_rational(const Rat& x) { return x; }
  static bool less(const Rat& a, const Rat& b) { return a < b; }
};

template <>
struct FieldTraits<GaussRat> {
  static constexpr bool is_gaussian = true;
  static const char* name() { return "gaussian"; }
  static GaussRat from_long(long v) { return GaussRat(v); }
  static GaussRat from_rat(const Rat& r) { return GaussRat(r); }
  static bool is_zero(const GaussRat& x) { return x.is_zero(); }
  static std::string str(const GaussRat& x) { return gauss_str(x); }
  static std::optional<GaussRat> sqrt(const GaussRat& x) { return gauss_sqrt(x); }
  static std::optional<Rat> as_rational(const GaussRat& x) {
    if (x.im == 0) return x.re;
    return std::nullopt;
  }
  static bool less(const GaussRat& a, const GaussRat& b) {
    if (a.re != b.re) return a.re < b.re;
    return a.im < b.im;
  }
};

}  // namespace qmf
