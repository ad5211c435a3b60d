#include <qmf/odes.hpp>

namespace qmf {

namespace {

CubicODE make_ode(const std::string& tag, std::vector<OdeMonomial> rhs) {
  const GroupInfo& g = group_by_tag(tag);
  CubicODE ode;
  ode.group = tag;
  ode.N = g.N;
  ode.deriv_scale = g.deriv_scale;
  ode.delta_key = g.delta_key;
  ode.p_key = g.p_key;
  ode.rhs = std::move(rhs);
  ode.candidates = g.candidate_keys;
  ode.sturm = level_data(g.N).mu;
  int wd = form_weight(ode.delta_key);
  for (const auto& m : ode.rhs) {
    if (4 * m.q_deg + wd * m.delta_deg != 12)
      throw Error("ode catalog: monomial of inhomogeneous weight in " + tag);
  }
  return ode;
}

}  // namespace

const std::vector<CubicODE>& ode_catalog() {
  static const std::vector<CubicODE> table = [] {
    std::vector<CubicODE> t;
    t.push_back(make_ode("G0.1", {{3, 0, Rat(1)}, {0, 1, Rat(-1728)}}));
    t.push_back(make_ode("G0.2", {{3, 0, Rat(1)}, {1, 1, Rat(64)}}));
    t.push_back(make_ode("G0.3", {{3, 0, Rat(1)}, {0, 2, Rat(729, 4)}}));
    t.push_back(make_ode("G0.5", {{3, 0, Rat(1)},
                                  {2, 1, Rat(-89, 13)},
                                  {1, 2, Rat(-3500, 169)},
                                  {0, 3, Rat(-125000, 2197)}}));
    t.push_back(make_ode("G0.6", {{3, 0, Rat(1)},
                                  {2, 1, Rat(-23, 5)},
                                  {1, 2, Rat(-432, 25)},
                                  {0, 3, Rat(-1296, 125)}}));
    t.push_back(make_ode("G0sharp.1", {{3, 0, Rat(1)}, {0, 1, Rat(1728)}}));
    t.push_back(make_ode("G0sharp.2", {{3, 0, Rat(1)}, {1, 1, Rat(-64)}}));
    t.push_back(make_ode("G0sharp.5", {{3, 0, Rat(1)},
                                       {2, 1, Rat(89, 13)},
                                       {1, 2, Rat(-3500, 169)},
                                       {0, 3, Rat(125000, 2197)}}));
    t.push_back(make_ode("G0sharp.6", {{3, 0, Rat(1)},
                                       {2, 1, Rat(23, 5)},
                                       {1, 2, Rat(-432, 25)},
                                       {0, 3, Rat(1296, 125)}}));
    t.push_back(make_ode("G0.11", {{3, 0, Rat(1)},
                                   {1, 4, Rat(-31, 3)},
                                   {0, 6, Rat(-2501, 108)}}));
    t.push_back(make_ode("G0.14", {{3, 0, Rat(1)},
                                   {2, 2, Rat(-187, 100)},
                                   {1, 4, Rat(3528, 625)},
                                   {0, 6, Rat(-3863552, 421875)}}));
    t.push_back(make_ode("G0.15", {{3, 0, Rat(1)},
                                   {2, 2, Rat(-209, 104)},
                                   {1, 4, Rat(-93825, 10816)},
                                   {0, 6, Rat(860625, 1124864)}}));
    t.push_back(make_ode("G0.7", {{3, 0, Rat(1)},
                                  {2, 1, Rat(-17, 10)},
                                  {1, 2, Rat(-637, 100)},
                                  {0, 3, Rat(-45619, 1000)}}));
    return t;
  }();
  return table;
}

const CubicODE& ode_by_group(const std::string& tag) {
  for (const auto& ode : ode_catalog())
    if (ode.group == tag) return ode;
  throw UnknownGroup("ode_by_group: unknown group '" + tag + "'");
}

VerificationReport verify_candidate(const CubicODE& ode, const std::string& key, long safety) {
  if (safety < 0) safety = ode.sturm;
  long bound = ode.sturm + safety;
  long prec = bound + 1;
  RatSeries Q = expand_form(key, prec);
  RatSeries delta = expand_form(ode.delta_key, prec);
  RatSeries P = expand_form(ode.p_key, prec);
  RatSeries res = ode_residual(ode, Q, delta, P);

  VerificationReport rep;
  rep.group = ode.group;
  rep.candidate = key;
  rep.bound = bound;
  rep.prec = prec;
  rep.ok = true;
  for (long n = res.val(); n < res.prec() && n <= bound; ++n) {
    Rat c = res.coeff(n);
    if (c != 0) {
      rep.ok = false;
      rep.first_bad_exp = n;
      rep.first_bad_coef = rat_str(c);
      break;
    }
  }
  return rep;
}

std::vector<VerificationReport> verify_group(const std::string& tag, long safety) {
  const CubicODE& ode = ode_by_group(tag);
  std::vector<VerificationReport> out;
  for (const auto& key : ode.candidates) out.push_back(verify_candidate(ode, key, safety));
  return out;
}

std::vector<VerificationReport> verify_all(long safety) {
  std::vector<VerificationReport> out;
  for (const auto& ode : ode_catalog()) {
    for (const auto& key : ode.candidates) out.push_back(verify_candidate(ode, key, safety));
  }
  return out;
}

}  // namespace qmf
