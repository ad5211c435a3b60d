#include <qmf/forms.hpp>

#include <algorithm>
#include <map>

namespace qmf {

namespace {

// Build f(d*tau) truncated to prec, given a builder for f at any precision.
template <class Builder>
RatSeries scaled(Builder&& build, long d, long prec) {
  long base = (prec + d - 2) / d + 1;  // ceil((prec-1)/d) + 1
  if (base < 1) base = 1;
  RatSeries f = build(base);
  return f.subst_scale(d).truncated(prec);
}

Rat euler_factor4(long N) {
  Rat c(1);
  long m = N;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      Rat f = Rat(1) - Rat(Int(1), int_pow(Int(p), 4));
      c /= f;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) {
    Rat f = Rat(1) - Rat(Int(1), int_pow(Int(m), 4));
    c /= f;
  }
  return c;
}

const std::vector<long> kAdmissible = {1, 2, 3, 5, 6, 11, 14, 15};

bool is_admissible(long N) {
  return std::find(kAdmissible.begin(), kAdmissible.end(), N) != kAdmissible.end();
}

}  // namespace

RatSeries eisenstein_level1(int weight, long prec) {
  if (weight != 2 && weight != 4 && weight != 6)
    throw UnsupportedWeight("eisenstein_level1: weight must be 2, 4 or 6");
  if (prec <= 0) return RatSeries::zero(prec);
  long mult = weight == 2 ? -24 : (weight == 4 ? 240 : -504);
  std::vector<Int> st = sigma_table(weight - 1, prec);
  std::vector<Rat> coeffs(static_cast<size_t>(prec));
  coeffs[0] = Rat(1);
  for (long n = 1; n < prec; ++n) coeffs[static_cast<size_t>(n)] = Rat(Int(mult) * st[static_cast<size_t>(n)]);
  return RatSeries::from_coeffs(0, std::move(coeffs), prec);
}

EtaQuotient delta_exponents(long N) {
  if (!is_admissible(N))
    throw NotAdmissible("delta_exponents: level " + std::to_string(N) + " is not admissible");
  long mu = level_data(N).mu;
  EtaQuotient e;
  for (long d : divisors(N)) e[d] = 24 / mu;
  return e;
}

RatSeries delta_form(long N, long prec) { return eta_expand(delta_exponents(N), prec); }

RatSeries delta_form_sharp(long N, long prec) {
  if (N != 1 && N != 2 && N != 5 && N != 6)
    throw NotAdmissible("delta_form_sharp: defined for N in {1,2,5,6}");
  return delta_form(N, prec).subst_negate().neg();
}

EtaQuotient delta_sharp_exponents(long N) {
  switch (N) {
    case 1: return {{2, 72}, {1, -24}, {4, -24}};
    case 2: return {{2, 32}, {1, -8}, {4, -8}};
    case 5: return {{2, 12}, {10, 12}, {1, -4}, {4, -4}, {5, -4}, {20, -4}};
    case 6: return {{2, 8}, {6, 8}, {1, -2}, {3, -2}, {4, -2}, {12, -2}};
    default:
      throw NotAdmissible("delta_sharp_exponents: defined for N in {1,2,5,6}");
  }
}

RatSeries weight2_logderiv(long N, long prec) {
  if (!is_admissible(N))
    throw NotAdmissible("weight2_logderiv: level " + std::to_string(N) + " is not admissible");
  long mu = level_data(N).mu;
  RatSeries acc = RatSeries::zero(prec);
  for (long d : divisors(N)) {
    RatSeries t = scaled([](long p) { return eisenstein_level1(2, p); }, d, prec);
    Rat w{Int(d), Int(mu)};
    w.canonicalize();
    acc = acc.add(t.scalar_mul(w));
  }
  return acc;
}

RatSeries weight2_logderiv_sharp(long N, long prec) {
  if (N != 1 && N != 2 && N != 5 && N != 6)
    throw NotAdmissible("weight2_logderiv_sharp: defined for N in {1,2,5,6}");
  return weight2_logderiv(N, prec).subst_negate();
}

RatSeries eisenstein4_cusp(long N, const std::string& cusp, long prec) {
  static const std::vector<long> inf_levels = {1, 2, 3, 5, 6, 7, 11, 14, 15};
  static const std::vector<long> zero_levels = {2, 3, 5, 6, 7};
  if (cusp == "inf") {
    if (std::find(inf_levels.begin(), inf_levels.end(), N) == inf_levels.end())
      throw UnsupportedLevel("eisenstein4_cusp: unsupported level " + std::to_string(N));
    Rat c = euler_factor4(N);
    RatSeries acc = RatSeries::zero(prec);
    for (long d : divisors(N)) {
      int mu = moebius(d);
      if (mu == 0) continue;
      long s = N / d;
      RatSeries t = scaled([](long p) { return eisenstein_level1(4, p); }, s, prec);
      acc = acc.add(t.scalar_mul(Rat(Int(mu), int_pow(Int(d), 4))));
    }
    return acc.scalar_mul(c);
  }
  if (cusp == "0") {
    if (std::find(zero_levels.begin(), zero_levels.end(), N) == zero_levels.end())
      throw InvalidCusp("eisenstein4_cusp: cusp 0 not available at level " + std::to_string(N));
    Rat c = euler_factor4(N) / Rat(int_pow(Int(N), 2));
    RatSeries acc = RatSeries::zero(prec);
    for (long d : divisors(N)) {
      int mu = moebius(d);
      if (mu == 0) continue;
      RatSeries t = scaled([](long p) { return eisenstein_level1(4, p); }, d, prec);
      acc = acc.add(t.scalar_mul(Rat(Int(mu))));
    }
    return acc.scalar_mul(c);
  }
  if (N == 6 && cusp == "1/2") {
    RatSeries a = eisenstein4_cusp(2, "inf", prec);
    RatSeries b = scaled([](long p) { return eisenstein4_cusp(2, "inf", p); }, 3, prec);
    return a.sub(b).scalar_mul(Rat(9, 80));
  }
  if (N == 6 && cusp == "1/3") {
    RatSeries a = eisenstein4_cusp(3, "inf", prec);
    RatSeries b = scaled([](long p) { return eisenstein4_cusp(3, "inf", p); }, 2, prec);
    return a.sub(b).scalar_mul(Rat(4, 15));
  }
  throw InvalidCusp("eisenstein4_cusp: no cusp '" + cusp + "' at level " + std::to_string(N));
}

RatSeries eisenstein2_level(long m, long prec) {
  if (m < 2) throw UnsupportedLevel("eisenstein2_level: m must be >= 2");
  RatSeries a = scaled([](long p) { return eisenstein_level1(2, p); }, m, prec).scalar_mul(Rat(m));
  RatSeries b = eisenstein_level1(2, prec);
  return a.sub(b).scalar_mul(Rat(Int(1), Int(m - 1)));
}

RatSeries special_candidate(long N, long prec) {
  if (N == 11) {
    RatSeries d = delta_form(11, prec);
    RatSeries q = eisenstein4_cusp(11, "inf", prec);
    q = q.sub(eisenstein2_level(11, prec).mul(d).scalar_mul(Rat(121, 61)).truncated(prec));
    q = q.sub(d.mul(d).truncated(prec).scalar_mul(Rat(1274, 915)));
    return q;
  }
  if (N == 14) {
    RatSeries d = delta_form(14, prec);
    RatSeries comb = eisenstein2_level(14, prec).scalar_mul(Rat(1001))
                         .sub(eisenstein2_level(7, prec).scalar_mul(Rat(168)))
                         .add(eisenstein2_level(2, prec).scalar_mul(Rat(73)));
    return eisenstein4_cusp(14, "inf", prec)
        .sub(comb.mul(d).truncated(prec).scalar_mul(Rat(1, 900)));
  }
  if (N == 15) {
    RatSeries d = delta_form(15, prec);
    RatSeries comb = eisenstein2_level(15, prec).scalar_mul(Rat(210))
                         .sub(eisenstein2_level(5, prec).scalar_mul(Rat(10)))
                         .add(eisenstein2_level(3, prec).scalar_mul(Rat(9)));
    return eisenstein4_cusp(15, "inf", prec)
        .sub(comb.mul(d).truncated(prec).scalar_mul(Rat(1, 208)));
  }
  throw UnsupportedLevel("special_candidate: defined for N in {11,14,15}");
}

RatSeries theta_weight1_level7(long prec) {
  if (prec <= 0) return RatSeries::zero(prec);
  std::vector<Rat> coeffs(static_cast<size_t>(prec));
  coeffs[0] = Rat(1);
  for (long d = 1; d < prec; ++d) {
    int chi = legendre7(d);
    if (chi == 0) continue;
    for (long n = d; n < prec; n += d) coeffs[static_cast<size_t>(n)] += Rat(2 * chi);
  }
  return RatSeries::from_coeffs(0, std::move(coeffs), prec);
}

RatSeries delta7_form(long prec) {
  RatSeries theta = theta_weight1_level7(prec > 0 ? prec - 1 : 0);
  RatSeries etas = eta_expand({{1, 3}, {7, 3}}, prec);
  return theta.mul(etas);
}

RatSeries j5_hauptmodul(long prec) { return eta_expand({{1, 6}, {5, -6}}, prec); }

// ---------------------------------------------------------------------------

const std::vector<FormInfo>& form_catalog() {
  static const std::vector<FormInfo> table = [] {
    std::vector<FormInfo> t;
    auto add = [&t](const std::string& k, int w) { t.push_back({k, w}); };
    const std::map<long, int> kN = {{1, 12}, {2, 8}, {3, 6}, {5, 4}, {6, 4}, {11, 2}, {14, 2}, {15, 2}};
    for (long N : {1, 2, 3, 5, 6, 11, 14, 15}) add("Delta.N" + std::to_string(N), kN.at(N));
    for (long N : {1, 2, 5, 6}) add("Delta.N" + std::to_string(N) + ".sharp", kN.at(N));
    add("Delta.N7", 4);
    for (long N : {1, 2, 3, 5, 6, 7, 11, 14, 15}) add("P.N" + std::to_string(N), 2);
    for (long N : {1, 2, 5, 6}) add("P.N" + std::to_string(N) + ".sharp", 2);
    for (long N : {1, 2, 3, 5, 6, 7, 11, 14, 15}) add("E4.N" + std::to_string(N), 4);
    for (long N : {2, 3, 5, 6, 7}) add("E4.N" + std::to_string(N) + ".cusp0", 4);
    add("E4.N6.cusp12", 4);
    add("E4.N6.cusp13", 4);
    for (const char* k : {"E4.N1.sharp", "E4.N2.sharp", "E4.N2.cusp0.sharp", "E4.N5.sharp",
                          "E4.N5.cusp0.sharp", "E4.N6.sharp", "E4.N6.cusp0.sharp",
                          "E4.N6.cusp12.sharp", "E4.N6.cusp13.sharp"})
      add(k, 4);
    for (long N : {11, 14, 15}) add("Q.N" + std::to_string(N), 4);
    add("E1.N7", 1);
    for (long m : {2, 3, 5, 7, 11, 14, 15}) add("E2m." + std::to_string(m), 2);
    add("j5", 0);
    add("E6.N1", 6);
    return t;
  }();
  return table;
}

bool catalog_has(const std::string& key) {
  for (const auto& f : form_catalog())
    if (f.key == key) return true;
  return false;
}

int form_weight(const std::string& key) {
  for (const auto& f : form_catalog())
    if (f.key == key) return f.weight;
  throw UnknownKey("form_weight: unknown key '" + key + "'");
}

namespace {

bool strip_suffix(std::string& s, const std::string& suffix) {
  if (s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
    s.erase(s.size() - suffix.size());
    return true;
  }
  return false;
}

long parse_level(const std::string& s, const std::string& prefix) {
  // expects s == prefix + digits, returns -1 otherwise
  if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0) return -1;
  long n = 0;
  for (size_t i = prefix.size(); i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return -1;
    n = n * 10 + (s[i] - '0');
  }
  return n;
}

}  // namespace

RatSeries expand_form(const std::string& key, long prec) {
  if (!catalog_has(key)) throw UnknownKey("expand_form: unknown key '" + key + "'");
  std::string k = key;
  bool sharp = strip_suffix(k, ".sharp");

  if (k == "j5") return j5_hauptmodul(prec);
  if (k == "E6.N1") return eisenstein_level1(6, prec);
  if (k == "E1.N7") return theta_weight1_level7(prec);
  if (k == "Delta.N7") return delta7_form(prec);

  if (long m = parse_level(k, "E2m."); m > 0) return eisenstein2_level(m, prec);
  if (long n = parse_level(k, "Q.N"); n > 0) return special_candidate(n, prec);
  if (long n = parse_level(k, "Delta.N"); n > 0)
    return sharp ? delta_form_sharp(n, prec) : delta_form(n, prec);
  if (long n = parse_level(k, "P.N"); n > 0) {
    if (n == 7) {
      // logarithmic derivative of the level-7 cusp form; one guard digit for inv
      RatSeries d7 = delta7_form(prec + 1);
      return d7.qderiv().mul(d7.inv()).truncated(prec);
    }
    return sharp ? weight2_logderiv_sharp(n, prec) : weight2_logderiv(n, prec);
  }

  // remaining: E4.N{n}[.cusp*]
  std::string cusp = "inf";
  std::string base = k;
  if (strip_suffix(base, ".cusp0")) cusp = "0";
  else if (strip_suffix(base, ".cusp12")) cusp = "1/2";
  else if (strip_suffix(base, ".cusp13")) cusp = "1/3";
  long n = parse_level(base, "E4.N");
  if (n > 0) {
    RatSeries e = eisenstein4_cusp(n, cusp, prec);
    return sharp ? e.subst_negate() : e;
  }
  throw UnknownKey("expand_form: unhandled key '" + key + "'");
}

// ---------------------------------------------------------------------------

const std::vector<GroupInfo>& group_table() {
  static const std::vector<GroupInfo> table = {
      {"G0.1", 1, false, Rat(3), "Delta.N1", "P.N1", {"E4.N1"}},
      {"G0.2", 2, false, Rat(2), "Delta.N2", "P.N2", {"E4.N2", "E4.N2.cusp0"}},
      {"G0.3", 3, false, Rat(3, 2), "Delta.N3", "P.N3", {"E4.N3", "E4.N3.cusp0"}},
      {"G0.5", 5, false, Rat(1), "Delta.N5", "P.N5", {"E4.N5", "E4.N5.cusp0"}},
      {"G0.6", 6, false, Rat(1), "Delta.N6", "P.N6",
       {"E4.N6", "E4.N6.cusp0", "E4.N6.cusp12", "E4.N6.cusp13"}},
      {"G0sharp.1", 1, true, Rat(3), "Delta.N1.sharp", "P.N1.sharp", {"E4.N1.sharp"}},
      {"G0sharp.2", 2, true, Rat(2), "Delta.N2.sharp", "P.N2.sharp",
       {"E4.N2.sharp", "E4.N2.cusp0.sharp"}},
      {"G0sharp.5", 5, true, Rat(1), "Delta.N5.sharp", "P.N5.sharp",
       {"E4.N5.sharp", "E4.N5.cusp0.sharp"}},
      {"G0sharp.6", 6, true, Rat(1), "Delta.N6.sharp", "P.N6.sharp",
       {"E4.N6.sharp", "E4.N6.cusp0.sharp", "E4.N6.cusp12.sharp", "E4.N6.cusp13.sharp"}},
      {"G0.11", 11, false, Rat(1, 2), "Delta.N11", "P.N11", {"Q.N11"}},
      {"G0.14", 14, false, Rat(1, 2), "Delta.N14", "P.N14", {"Q.N14"}},
      {"G0.15", 15, false, Rat(1, 2), "Delta.N15", "P.N15", {"Q.N15"}},
      {"G0.7", 7, false, Rat(1), "Delta.N7", "P.N7", {"E4.N7", "E4.N7.cusp0"}},
  };
  return table;
}

const GroupInfo& group_by_tag(const std::string& tag) {
  for (const auto& g : group_table())
    if (g.tag == tag) return g;
  throw UnknownGroup("group_by_tag: unknown group '" + tag + "'");
}

}  // namespace qmf
