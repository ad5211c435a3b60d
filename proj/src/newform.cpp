#include <qmf/newform.hpp>

#include <qmf/arith.hpp>

namespace qmf {

const std::vector<NewformSpec>& newform_table() {
  static const std::vector<NewformSpec> table = [] {
    std::vector<NewformSpec> t;
    // Plain groups: exponents follow the level's own eta data, rescaled to
    // weight 2 (scales d * k/2 for d | N, exponent 24/mu * 2/k).
    t.push_back({"G0.1", 36, {{6, 4}}});
    t.push_back({"G0.2", 32, {{4, 2}, {8, 2}}});
    t.push_back({"G0.3", 27, {{3, 2}, {9, 2}}});
    t.push_back({"G0.5", 20, {{2, 2}, {10, 2}}});
    t.push_back({"G0.6", 24, {{2, 1}, {4, 1}, {6, 1}, {12, 1}}});
    // Companion groups: the same scaling applied to the sharp eta quotients.
    t.push_back({"G0sharp.1", 144, {{12, 12}, {6, -4}, {24, -4}}});
    t.push_back({"G0sharp.2", 64, {{8, 8}, {4, -2}, {16, -2}}});
    t.push_back({"G0sharp.5", 80, {{4, 6}, {20, 6}, {2, -2}, {8, -2}, {10, -2}, {40, -2}}});
    t.push_back({"G0sharp.6", 48, {{4, 4}, {12, 4}, {2, -1}, {6, -1}, {8, -1}, {24, -1}}});
    // Weight-2 levels: the discriminant form already has weight 2.
    t.push_back({"G0.11", 11, {{1, 2}, {11, 2}}});
    t.push_back({"G0.14", 14, {{1, 1}, {2, 1}, {7, 1}, {14, 1}}});
    t.push_back({"G0.15", 15, {{1, 1}, {3, 1}, {5, 1}, {15, 1}}});
    return t;
  }();
  return table;
}

const NewformSpec& newform_for(const std::string& group_tag) {
  for (const auto& nf : newform_table()) {
    if (nf.group == group_tag) return nf;
  }
  throw UnknownGroup("newform_for: no eta product attached to \"" + group_tag + "\"");
}

std::vector<Int> newform_coefficients(const NewformSpec& nf, long nmax) {
  RatSeries s = eta_expand(nf.eta, nmax + 1);
  std::vector<Int> out;
  out.reserve(static_cast<size_t>(nmax + 1));
  for (long n = 0; n <= nmax; ++n) {
    Rat c = s.coeff(n);
    if (!rat_is_int(c))
      throw NonIntegerCoefficient("newform " + nf.group + ": coefficient of q^" +
                                  std::to_string(n) + " is " + rat_str(c));
    out.push_back(Int(c.get_num()));
  }
  return out;
}

Int newform_coefficient(const NewformSpec& nf, long n) {
  if (n < 0) throw Error("newform_coefficient: negative index");
  return newform_coefficients(nf, n).back();
}

ModularityReport modularity_check(const CurveReport& rep, const NewformSpec& nf, long pmax) {
  ModularityReport out;
  out.group = nf.group;
  out.level = nf.level;
  out.pmax = pmax;
  if (rep.conductor != nf.level)
    throw LevelMismatch("modularity_check: form level " + std::to_string(nf.level) +
                        " vs conductor " + int_str(rep.conductor));
  std::vector<Int> an = newform_coefficients(nf, pmax);
  for (long p : primes_up_to(pmax)) {
    if (divides(Int(p), rep.minimal.disc)) continue;  // bad prime, no trace
    auto it = rep.ap.find(p);
    long ap = it != rep.ap.end() ? it->second : ap_trace(rep.minimal, p);
    if (an[static_cast<size_t>(p)] == ap)
      out.matched.push_back(p);
    else
      out.mismatched.push_back(p);
  }
  return out;
}

}  // namespace qmf
