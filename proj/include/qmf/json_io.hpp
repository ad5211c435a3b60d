#pragma once

#include <qmf/ellcurve.hpp>
#include <qmf/eta.hpp>
#include <qmf/gaussian.hpp>
#include <qmf/newform.hpp>
#include <qmf/odes.hpp>
#include <qmf/series.hpp>

#include <json.hpp>

#include <string>

namespace qmf {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Series: {"valuation": v, "prec": p, "coeffs": [...]}, coefficients as exact
// strings ("3/4") or [re, im] string pairs, one per exponent from valuation.
// ---------------------------------------------------------------------------

inline Json series_to_json(const RatSeries& s) {
  Json j;
  j["field"] = "rational";
  j["valuation"] = s.is_zero() ? s.prec() : s.val();
  j["prec"] = s.prec();
  Json arr = Json::array();
  for (long e = s.val(); e < s.prec(); ++e) arr.push_back(rat_str(s.coeff(e)));
  j["coeffs"] = arr;
  return j;
}

inline Json series_to_json(const GaussSeries& s) {
  Json j;
  j["field"] = "gaussian";
  j["valuation"] = s.is_zero() ? s.prec() : s.val();
  j["prec"] = s.prec();
  Json arr = Json::array();
  for (long e = s.val(); e < s.prec(); ++e) {
    GaussRat c = s.coeff(e);
    arr.push_back(Json::array({rat_str(c.re), rat_str(c.im)}));
  }
  j["coeffs"] = arr;
  return j;
}

inline RatSeries series_from_json(const Json& j) {
  long val = j.at("valuation").get<long>();
  long prec = j.at("prec").get<long>();
  std::vector<Rat> coeffs;
  for (const auto& e : j.at("coeffs")) coeffs.push_back(rat_parse(e.get<std::string>()));
  return RatSeries::from_coeffs(val, std::move(coeffs), prec);
}

inline GaussSeries gauss_series_from_json(const Json& j) {
  long val = j.at("valuation").get<long>();
  long prec = j.at("prec").get<long>();
  std::vector<GaussRat> coeffs;
  for (const auto& e : j.at("coeffs"))
    coeffs.emplace_back(rat_parse(e.at(0).get<std::string>()),
                        rat_parse(e.at(1).get<std::string>()));
  return GaussSeries::from_coeffs(val, std::move(coeffs), prec);
}

// ---------------------------------------------------------------------------
// Eta quotients: {"6": 4} means eta(6 tau)^4.
// ---------------------------------------------------------------------------

inline Json eta_to_json(const EtaQuotient& e) {
  Json j = Json::object();
  for (const auto& [d, r] : e) j[std::to_string(d)] = r;
  return j;
}

inline EtaQuotient eta_from_json(const Json& j) {
  EtaQuotient e;
  for (auto it = j.begin(); it != j.end(); ++it) e[std::stol(it.key())] = it.value().get<long>();
  return e;
}

// ---------------------------------------------------------------------------
// Reports.
// ---------------------------------------------------------------------------

inline Json report_to_json(const VerificationReport& r) {
  Json j;
  j["id"] = r.group + ":" + r.candidate;
  j["bound"] = r.bound;
  j["prec"] = r.prec;
  j["ok"] = r.ok;
  if (!r.ok) {
    j["first_bad"] = Json::array({r.first_bad_exp, r.first_bad_coef});
  } else {
    j["first_bad"] = nullptr;
  }
  return j;
}

inline Json model_to_json(const RationalModel& m) {
  return Json::array(
      {rat_str(m.a1), rat_str(m.a2), rat_str(m.a3), rat_str(m.a4), rat_str(m.a6)});
}

inline Json curve_to_json(const Curve& E) {
  return Json::array(
      {int_str(E.a1), int_str(E.a2), int_str(E.a3), int_str(E.a4), int_str(E.a6)});
}

inline Json report_to_json(const CurveReport& r) {
  Json j;
  j["group"] = r.group;
  j["initial"] = model_to_json(r.initial);
  j["minimal"] = curve_to_json(r.minimal);
  j["scaling_u"] = int_str(r.scaling_u);
  j["c4"] = int_str(r.minimal.c4);
  j["c6"] = int_str(r.minimal.c6);
  j["disc"] = int_str(r.minimal.disc);
  j["conductor"] = int_str(r.conductor);
  Json bad = Json::array();
  for (const auto& ld : r.bad_primes) {
    Json b;
    b["p"] = int_str(ld.p);
    b["vdisc"] = ld.vdisc;
    b["kodaira"] = ld.kodaira;
    b["f"] = ld.f;
    bad.push_back(b);
  }
  j["bad_primes"] = bad;
  Json ap = Json::object();
  for (const auto& [p, a] : r.ap) ap[std::to_string(p)] = a;
  j["ap"] = ap;
  return j;
}

inline Json report_to_json(const ModularityReport& r) {
  Json j;
  j["group"] = r.group;
  j["level"] = r.level;
  j["pmax"] = r.pmax;
  j["ok"] = r.ok();
  j["matches"] = r.matched.size();
  j["mismatches"] = r.mismatched;
  return j;
}

}  // namespace qmf
