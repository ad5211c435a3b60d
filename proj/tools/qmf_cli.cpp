// Command-line front end for the exact q-expansion engine.
//
// Subcommands: levels, expand, verify, curve, modularity, solve, identity.
// Exit codes:  0 every requested check passed (or pure listing succeeded),
//              1 at least one check failed,
//              2 usage error (unknown subcommand, selector, key, or option).

#include <qmf/arith.hpp>
#include <qmf/ellcurve.hpp>
#include <qmf/forms.hpp>
#include <qmf/json_io.hpp>
#include <qmf/newform.hpp>
#include <qmf/odes.hpp>
#include <qmf/solver.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace qmf;

namespace {

// Buffered output: every command writes text or JSON here, and main() flushes
// the buffer to stdout or to --out once the command has fully succeeded.
struct Output {
  bool json = false;
  std::ostringstream text;
  Json doc;

  int flush(const std::string& out_path) {
    std::string payload = json ? doc.dump(2) + "\n" : text.str();
    if (out_path.empty()) {
      std::cout << payload;
      return 0;
    }
    std::ofstream f(out_path);
    if (!f) {
      std::cerr << "qmf: cannot write to " << out_path << "\n";
      return 2;
    }
    f << payload;
    return 0;
  }
};

// ---------------------------------------------------------------------------

int cmd_levels(Output& out, long bound) {
  std::vector<LevelData> rows = admissible_levels(bound);
  if (out.json) {
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json j;
      j["N"] = r.N;
      j["k"] = rat_str(r.k);
      j["h"] = rat_str(r.h);
      j["mu"] = r.mu;
      arr.push_back(j);
    }
    out.doc = arr;
    return 0;
  }
  out.text << "  N    k    h     mu\n";
  for (const auto& r : rows) {
    char line[64];
    std::snprintf(line, sizeof line, "%3ld %4s %4s %6ld\n", r.N, rat_str(r.k).c_str(),
                  rat_str(r.h).c_str(), r.mu);
    out.text << line;
  }
  out.text << rows.size() << " admissible level" << (rows.size() == 1 ? "" : "s") << " below "
           << bound << "\n";
  return 0;
}

int cmd_expand(Output& out, const std::string& key, long prec) {
  RatSeries s = expand_form(key, prec);
  if (out.json) {
    Json j;
    j["key"] = key;
    j["series"] = series_to_json(s);
    out.doc = j;
    return 0;
  }
  out.text << key << " = " << s.pretty() << "\n";
  return 0;
}

int cmd_verify(Output& out, const std::string& tag, long safety) {
  std::vector<VerificationReport> reports =
      tag == "all" ? verify_all(safety) : verify_group(tag, safety);
  bool all_ok = true;
  size_t passed = 0;
  Json arr = Json::array();
  for (const auto& r : reports) {
    all_ok = all_ok && r.ok;
    passed += r.ok ? 1 : 0;
    if (out.json) {
      arr.push_back(report_to_json(r));
      continue;
    }
    out.text << r.group << " / " << r.candidate << ": ";
    if (r.ok)
      out.text << "ok (residual zero at exponents 0.." << r.bound << ", prec " << r.prec << ")\n";
    else
      out.text << "FAIL at q^" << r.first_bad_exp << ", coefficient " << r.first_bad_coef << "\n";
  }
  if (out.json) {
    Json j;
    j["reports"] = arr;
    j["ok"] = all_ok;
    out.doc = j;
  } else {
    out.text << passed << "/" << reports.size() << " verified\n";
  }
  return all_ok ? 0 : 1;
}

void describe_curve(Output& out, const CurveReport& rep) {
  const Curve& m = rep.minimal;
  out.text << "group " << rep.group << "\n";
  out.text << "  initial  [" << rat_str(rep.initial.a1) << ", " << rat_str(rep.initial.a2) << ", "
           << rat_str(rep.initial.a3) << ", " << rat_str(rep.initial.a4) << ", "
           << rat_str(rep.initial.a6) << "]\n";
  out.text << "  minimal  [" << int_str(m.a1) << ", " << int_str(m.a2) << ", " << int_str(m.a3)
           << ", " << int_str(m.a4) << ", " << int_str(m.a6) << "]  (u = "
           << int_str(rep.scaling_u) << ")\n";
  out.text << "  c4 = " << int_str(m.c4) << ", c6 = " << int_str(m.c6)
           << ", disc = " << int_str(m.disc) << "\n";
  out.text << "  conductor " << int_str(rep.conductor) << "\n";
  for (const auto& ld : rep.bad_primes)
    out.text << "  p = " << int_str(ld.p) << ": " << ld.kodaira << ", f = " << ld.f
             << ", v(disc) = " << ld.vdisc << "\n";
  out.text << "  a_p:";
  for (const auto& [p, a] : rep.ap) out.text << " " << p << ":" << a;
  out.text << "\n";
}

int cmd_curve(Output& out, const std::string& tag, long pmax) {
  std::vector<std::string> tags;
  if (tag == "all") {
    for (const auto& g : group_table()) tags.push_back(g.tag);
  } else {
    tags.push_back(tag);
  }
  Json arr = Json::array();
  for (const auto& t : tags) {
    CurveReport rep = curve_report(t, pmax);
    if (out.json)
      arr.push_back(report_to_json(rep));
    else
      describe_curve(out, rep);
  }
  if (out.json) out.doc = tag == "all" ? arr : arr.front();
  return 0;
}

int cmd_modularity(Output& out, const std::string& tag, long pmax) {
  std::vector<const NewformSpec*> forms;
  if (tag == "all") {
    for (const auto& nf : newform_table()) forms.push_back(&nf);
  } else {
    forms.push_back(&newform_for(tag));
  }
  bool all_ok = true;
  Json arr = Json::array();
  for (const NewformSpec* nf : forms) {
    CurveReport rep = curve_report(nf->group, pmax);
    ModularityReport mr = modularity_check(rep, *nf, pmax);
    all_ok = all_ok && mr.ok();
    if (out.json) {
      arr.push_back(report_to_json(mr));
      continue;
    }
    out.text << mr.group << ": level " << mr.level << ", " << mr.matched.size() << " matched / "
             << mr.mismatched.size() << " mismatched (p <= " << mr.pmax << "): "
             << (mr.ok() ? "ok" : "FAIL");
    if (!mr.mismatched.empty()) {
      out.text << " at";
      for (long p : mr.mismatched) out.text << " " << p;
    }
    out.text << "\n";
  }
  if (out.json) out.doc = tag == "all" ? arr : arr.front();
  return all_ok ? 0 : 1;
}

// Collapse a classified solution list for display: all catalogued solutions
// become one Eisenstein-family entry, the zero series and scalar multiples of
// the discriminant form are suppressed (with a count), non-catalog series are
// listed individually.
template <class F>
int solve_and_report(Output& out, const CubicODE& ode, const std::string& field_name, long prec) {
  SolveResult<F> raw = solve_series<F>(ode, prec);
  std::vector<ClassifiedSolution<F>> cls = classify_solutions(ode, raw, prec);

  std::vector<std::string> catalog_keys;
  std::vector<const ClassifiedSolution<F>*> exotic;
  long suppressed = 0;
  for (const auto& s : cls) {
    if (s.kind == "catalog")
      catalog_keys.push_back(s.key);
    else if (s.kind == "exotic")
      exotic.push_back(&s);
    else
      ++suppressed;
  }
  const size_t entries = (catalog_keys.empty() ? 0 : 1) + exotic.size();

  auto head_series = [&](const std::vector<F>& coeffs) {
    long shown = std::min<long>(prec, 6);
    std::vector<F> head(coeffs.begin(), coeffs.begin() + shown);
    return TruncSeries<F>::from_coeffs(0, std::move(head), shown);
  };

  if (out.json) {
    Json j;
    j["group"] = ode.group;
    j["field"] = field_name;
    j["prec"] = prec;
    Json list = Json::array();
    if (!catalog_keys.empty()) {
      Json e;
      e["kind"] = "eisenstein";
      e["keys"] = catalog_keys;
      list.push_back(e);
    }
    for (const auto* s : exotic) {
      Json e;
      e["kind"] = "exotic";
      e["series"] = series_to_json(TruncSeries<F>::from_coeffs(0, s->coeffs, prec));
      if (!s->notes.empty()) e["notes"] = s->notes;
      list.push_back(e);
    }
    j["entries"] = list;
    j["suppressed"] = suppressed;
    j["notes"] = raw.notes;
    out.doc = j;
    return 0;
  }

  out.text << "group " << ode.group << ", field " << field_name << ", prec " << prec << "\n";
  if (!catalog_keys.empty()) {
    out.text << "  Eisenstein family:";
    for (const auto& k : catalog_keys) out.text << " " << k;
    out.text << "\n";
  }
  for (const auto* s : exotic) {
    out.text << "  exotic: " << head_series(s->coeffs).pretty() << "\n";
    for (const auto& n : s->notes) out.text << "    note: " << n << "\n";
  }
  if (suppressed > 0)
    out.text << "  (suppressed " << suppressed << " trivial branch" << (suppressed == 1 ? "" : "es")
             << ": zero or discriminant multiples)\n";
  for (const auto& n : raw.notes) out.text << "  note: " << n << "\n";
  out.text << entries << " solution famil" << (entries == 1 ? "y" : "ies") << "\n";
  return 0;
}

int cmd_solve(Output& out, const std::string& tag, const std::string& field, long prec) {
  const CubicODE& ode = ode_by_group(tag);
  if (field == "gaussian") return solve_and_report<GaussRat>(out, ode, field, prec);
  return solve_and_report<Rat>(out, ode, field, prec);
}

struct IdentityResult {
  std::string name;
  std::string statement;
  bool ok;
};

IdentityResult identity_classical(long prec) {
  RatSeries r = eisenstein_level1(4, prec)
                    .pow_int(3)
                    .sub(eisenstein_level1(6, prec).pow_int(2))
                    .sub(delta_form(1, prec).scalar_mul(Rat(1728)));
  return {"classical", "E4^3 - E6^2 - 1728*Delta == 0", r.is_zero() && r.prec() == prec};
}

IdentityResult identity_sharp3(long prec) {
  // Cube roots of the level-3 discriminant form and its companion, where the
  // companion is the sign-flipped (q -> -q) negative of the plain form.
  long pa = prec / 3 + 3;
  long pc = prec / 12 + 3;
  RatSeries companion = delta_form(3, pa).subst_negate().neg();
  RatSeries lhs = companion.subst_scale(3).nth_root(3);
  RatSeries b1 = delta_form(3, pa).subst_scale(3).nth_root(3);
  RatSeries b2 = delta_form(3, pc).subst_scale(12).nth_root(3);
  RatSeries rhs = b1.add(b2.scalar_mul(Rat(4)));
  return {"sharp3", "companion3(q^3)^(1/3) == plain3(q^3)^(1/3) + 4*plain3(q^12)^(1/3)",
          RatSeries::agree_below(lhs, rhs, prec + 1)};
}

IdentityResult identity_j5closed(long prec) {
  RatSeries lhs = j5_hauptmodul(prec);
  RatSeries rhs = expand_form("E4.N5", prec + 2)
                      .div(expand_form("Delta.N5", prec + 2))
                      .sub(RatSeries::one(prec).scalar_mul(Rat(125, 13)));
  return {"j5closed", "j5 == E4.N5 / Delta.N5 - 125/13", RatSeries::agree_below(lhs, rhs, prec)};
}

int cmd_identity(Output& out, const std::string& name, long prec) {
  std::vector<IdentityResult> results;
  if (name == "all" || name == "classical") results.push_back(identity_classical(prec));
  if (name == "all" || name == "sharp3") results.push_back(identity_sharp3(prec));
  if (name == "all" || name == "j5closed") results.push_back(identity_j5closed(prec));
  if (results.empty()) throw UnknownKey("identity: unknown name \"" + name + "\"");
  bool all_ok = true;
  Json arr = Json::array();
  for (const auto& r : results) {
    all_ok = all_ok && r.ok;
    if (out.json) {
      Json j;
      j["name"] = r.name;
      j["statement"] = r.statement;
      j["prec"] = prec;
      j["ok"] = r.ok;
      arr.push_back(j);
    } else {
      out.text << r.name << ": " << r.statement << " -- " << (r.ok ? "ok" : "FAIL") << " (prec "
               << prec << ")\n";
    }
  }
  if (out.json) out.doc = name == "all" ? arr : arr.front();
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmf: exact q-expansion engine for the catalogued groups"};
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  std::string out_path;
  app.add_flag("--json", json, "emit a JSON document instead of text");
  app.add_option("--out", out_path, "write the output to this file instead of stdout");

  long bound = 10000;
  auto* levels = app.add_subcommand("levels", "list admissible levels with their invariants");
  levels->add_option("bound", bound, "upper bound on the level")->check(CLI::NonNegativeNumber);

  std::string expand_key;
  long expand_prec = 10;
  auto* expand = app.add_subcommand("expand", "q-expansion of a catalogued series");
  expand->add_option("key", expand_key, "catalog key, e.g. Delta.N1 or E4.N6.cusp12")->required();
  expand->add_option("--prec", expand_prec, "coefficients are printed for exponents < prec")
      ->check(CLI::PositiveNumber);

  std::string verify_tag;
  long safety = -1;
  auto* verify = app.add_subcommand("verify", "check the squared-derivative equations");
  verify->add_option("group", verify_tag, "group tag (e.g. G0.5, G0sharp.6) or 'all'")->required();
  verify->add_option("--safety", safety,
                     "extra exponents beyond the zero-order cap (default: the cap itself)");

  std::string curve_tag;
  long curve_pmax = 97;
  auto* curve = app.add_subcommand("curve", "minimal model, conductor, and traces");
  curve->add_option("group", curve_tag, "group tag or 'all'")->required();
  curve->add_option("--pmax", curve_pmax, "largest prime for the trace listing")
      ->check(CLI::PositiveNumber);

  std::string mod_tag;
  long mod_pmax = 97;
  auto* modularity = app.add_subcommand("modularity", "compare curve traces with eta products");
  modularity->add_option("group", mod_tag, "group tag or 'all' (twelve attached products)")
      ->required();
  modularity->add_option("--pmax", mod_pmax, "compare at good primes up to this bound")
      ->check(CLI::PositiveNumber);

  std::string solve_tag, solve_field = "rational";
  long solve_prec = 12;
  auto* solve = app.add_subcommand("solve", "enumerate power-series solutions of one equation");
  solve->add_option("group", solve_tag, "group tag")->required();
  solve->add_option("--field", solve_field, "coefficient field")
      ->check(CLI::IsMember({"rational", "gaussian"}));
  solve->add_option("--prec", solve_prec, "number of coefficients to determine (>= 8)")
      ->check(CLI::PositiveNumber);

  std::string identity_name;
  long identity_prec = 300;
  auto* identity = app.add_subcommand("identity", "confirm the named exact identities");
  identity->add_option("name", identity_name, "classical | sharp3 | j5closed | all")->required();
  identity->add_option("--prec", identity_prec, "exponent window for the comparison")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Output out;
  out.json = json;
  int rc = 0;
  try {
    if (levels->parsed()) rc = cmd_levels(out, bound);
    if (expand->parsed()) rc = cmd_expand(out, expand_key, expand_prec);
    if (verify->parsed()) rc = cmd_verify(out, verify_tag, safety);
    if (curve->parsed()) rc = cmd_curve(out, curve_tag, curve_pmax);
    if (modularity->parsed()) rc = cmd_modularity(out, mod_tag, mod_pmax);
    if (solve->parsed()) rc = cmd_solve(out, solve_tag, solve_field, solve_prec);
    if (identity->parsed()) rc = cmd_identity(out, identity_name, identity_prec);
  } catch (const UnknownKey& e) {
    std::cerr << "qmf: " << e.what() << "\n";
    return 2;
  } catch (const UnknownGroup& e) {
    std::cerr << "qmf: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionTooLow& e) {
    std::cerr << "qmf: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "qmf: " << e.what() << "\n";
    return 1;
  }

  int flush_rc = out.flush(out_path);
  return flush_rc != 0 ? flush_rc : rc;
}
