#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <qmf/eta.hpp>
#include <qmf/forms.hpp>
#include <qmf/json_io.hpp>

#include <map>
#include <vector>

using namespace qmf;

namespace {

void check_prefix(const RatSeries& s, long from, const std::vector<Rat>& want) {
  for (size_t i = 0; i < want.size(); ++i) {
    INFO("exponent ", from + static_cast<long>(i));
    CHECK(s.coeff(from + static_cast<long>(i)) == want[i]);
  }
}

}  // namespace

TEST_CASE("euler product pentagonal expansion") {
  RatSeries e = euler_product(16);
  check_prefix(e, 0, {Rat(1), Rat(-1), Rat(-1), Rat(0), Rat(0), Rat(1), Rat(0), Rat(1),
                      Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0), Rat(-1)});
}

TEST_CASE("eta quotient bookkeeping") {
  EtaQuotient disc{{1, 24}};
  CHECK(eta_valuation(disc) == Rat(1));
  CHECK(eta_weight(disc) == Rat(12));
  EtaQuotient nf{{6, 4}};
  CHECK(eta_valuation(nf) == Rat(1));
  CHECK(eta_weight(nf) == Rat(2));
  EtaQuotient lone{{1, 1}};
  CHECK(eta_valuation(lone) == Rat(1, 24));
  CHECK_THROWS_AS(eta_expand(lone, 10), FractionalValuation);
}

TEST_CASE("eta expansion spot values") {
  RatSeries nf = eta_expand({{6, 4}}, 15);
  CHECK(nf.val() == 1);
  CHECK(nf.coeff(1) == 1);
  CHECK(nf.coeff(7) == -4);
  CHECK(nf.coeff(13) == 2);
  for (long n : {2L, 3L, 4L, 5L, 6L, 8L, 9L, 10L, 11L, 12L, 14L})
    CHECK(nf.coeff(n) == 0);
  // Laurent quotient: valuation may be negative.
  RatSeries j = eta_expand({{1, 6}, {5, -6}}, 4);
  CHECK(j.val() == -1);
  CHECK(j.coeff(-1) == 1);
}

TEST_CASE("discriminant forms match their product expansions") {
  const std::map<long, std::vector<Rat>> expect = {
      {1, {Rat(1), Rat(-24), Rat(252), Rat(-1472), Rat(4830), Rat(-6048), Rat(-16744), Rat(84480)}},
      {2, {Rat(1), Rat(-8), Rat(12), Rat(64), Rat(-210), Rat(-96), Rat(1016), Rat(-512)}},
      {3, {Rat(1), Rat(-6), Rat(9), Rat(4), Rat(6), Rat(-54), Rat(-40), Rat(168)}},
      {5, {Rat(1), Rat(-4), Rat(2), Rat(8), Rat(-5), Rat(-8), Rat(6), Rat(0)}},
      {6, {Rat(1), Rat(-2), Rat(-3), Rat(4), Rat(6), Rat(6), Rat(-16), Rat(-8)}},
      {11, {Rat(1), Rat(-2), Rat(-1), Rat(2), Rat(1), Rat(2), Rat(-2), Rat(0)}},
      {14, {Rat(1), Rat(-1), Rat(-2), Rat(1), Rat(0), Rat(2), Rat(1), Rat(-1)}},
      {15, {Rat(1), Rat(-1), Rat(-1), Rat(-1), Rat(1), Rat(1), Rat(0), Rat(3)}},
  };
  for (const auto& [N, want] : expect) {
    RatSeries d = delta_form(N, 9);
    CHECK(d.val() == 1);
    check_prefix(d, 1, want);
    // exponent map sanity: weight k_N, valuation 1
    EtaQuotient e = delta_exponents(N);
    CHECK(eta_valuation(e) == Rat(1));
    CHECK(eta_weight(e) == level_data(N).k);
  }
  CHECK_THROWS_AS(delta_exponents(4), NotAdmissible);
  CHECK_THROWS_AS(delta_form(7, 5), NotAdmissible);
}

TEST_CASE("sign-flipped companions") {
  const std::map<long, std::vector<Rat>> expect = {
      {1, {Rat(1), Rat(24), Rat(252), Rat(1472), Rat(4830), Rat(6048), Rat(-16744), Rat(-84480)}},
      {2, {Rat(1), Rat(8), Rat(12), Rat(-64), Rat(-210), Rat(96), Rat(1016), Rat(512)}},
      {5, {Rat(1), Rat(4), Rat(2), Rat(-8), Rat(-5), Rat(8), Rat(6), Rat(0)}},
      {6, {Rat(1), Rat(2), Rat(-3), Rat(-4), Rat(6), Rat(-6), Rat(-16), Rat(8)}},
  };
  for (const auto& [N, want] : expect) {
    RatSeries s = delta_form_sharp(N, 9);
    check_prefix(s, 1, want);
    // Defining property: minus the q -> -q image of the plain form.
    CHECK(s == delta_form(N, 9).subst_negate().neg());
  }
  CHECK(delta_form_sharp(1, 9).coeff(2) == 24);
  CHECK_THROWS_AS(delta_form_sharp(3, 9), NotAdmissible);
}

TEST_CASE("sign-flipped companions as integral eta quotients") {
  CHECK(delta_sharp_exponents(1) == EtaQuotient{{1, -24}, {2, 72}, {4, -24}});
  CHECK(delta_sharp_exponents(2) == EtaQuotient{{1, -8}, {2, 32}, {4, -8}});
  for (long N : {1L, 2L, 5L, 6L}) {
    EtaQuotient e = delta_sharp_exponents(N);
    CHECK(eta_valuation(e) == Rat(1));
    CHECK(eta_weight(e) == level_data(N).k);
    CHECK(eta_expand(e, 300) == delta_form_sharp(N, 300));
  }
}

TEST_CASE("level one eisenstein series") {
  RatSeries e2 = eisenstein_level1(2, 6);
  check_prefix(e2, 0, {Rat(1), Rat(-24), Rat(-72), Rat(-96), Rat(-168), Rat(-144)});
  RatSeries e4 = eisenstein_level1(4, 6);
  check_prefix(e4, 0, {Rat(1), Rat(240), Rat(2160), Rat(6720), Rat(17520), Rat(30240)});
  RatSeries e6 = eisenstein_level1(6, 4);
  check_prefix(e6, 0, {Rat(1), Rat(-504), Rat(-16632), Rat(-122976)});
  CHECK_THROWS_AS(eisenstein_level1(8, 4), UnsupportedWeight);
}

TEST_CASE("classical identity") {
  long prec = 300;
  RatSeries e4 = eisenstein_level1(4, prec);
  RatSeries e6 = eisenstein_level1(6, prec);
  RatSeries lhs = e4.pow_int(3).sub(e6.pow_int(2));
  RatSeries rhs = delta_form(1, prec).scalar_mul(Rat(1728));
  CHECK(lhs == rhs);
}

TEST_CASE("weight-2 quasimodular series") {
  const std::map<long, std::vector<Rat>> expect = {
      {2, {Rat(1), Rat(-8), Rat(-40), Rat(-32), Rat(-104)}},
      {3, {Rat(1), Rat(-6), Rat(-18), Rat(-42), Rat(-42)}},
      {5, {Rat(1), Rat(-4), Rat(-12), Rat(-16), Rat(-28)}},
      {6, {Rat(1), Rat(-2), Rat(-10), Rat(-14), Rat(-26)}},
      {11, {Rat(1), Rat(-2), Rat(-6), Rat(-8), Rat(-14)}},
      {14, {Rat(1), Rat(-1), Rat(-5), Rat(-4), Rat(-13)}},
      {15, {Rat(1), Rat(-1), Rat(-3), Rat(-7), Rat(-7)}},
  };
  for (const auto& [N, want] : expect) check_prefix(weight2_logderiv(N, 5), 0, want);
  // P_1 is the weight-2 quasimodular Eisenstein series itself.
  CHECK(weight2_logderiv(1, 40) == eisenstein_level1(2, 40));
  // Defining property: q d/dq log of the discriminant form.
  for (long N : {1L, 2L, 3L, 5L, 6L, 11L, 14L, 15L})
    CHECK(weight2_logderiv(N, 40) == delta_form(N, 41).log_deriv().truncated(40));
  for (long N : {1L, 2L, 5L, 6L}) {
    CHECK(weight2_logderiv_sharp(N, 30) == weight2_logderiv(N, 30).subst_negate());
    CHECK(weight2_logderiv_sharp(N, 31) ==
          delta_form_sharp(N, 32).log_deriv().truncated(31));
  }
}

TEST_CASE("weight-4 eisenstein series at the infinite cusp") {
  const std::map<long, std::vector<Rat>> expect = {
      {2, {Rat(1), Rat(-16), Rat(112), Rat(-448), Rat(1136)}},
      {3, {Rat(1), Rat(-3), Rat(-27), Rat(159), Rat(-219)}},
      {5, {Rat(1), Rat(-5, 13), Rat(-45, 13), Rat(-140, 13), Rat(-365, 13)}},
      {6, {Rat(1), Rat(1, 5), Rat(-7, 5), Rat(-53, 5), Rat(-71, 5)}},
      {7, {Rat(1), Rat(-1, 10), Rat(-9, 10), Rat(-14, 5), Rat(-73, 10)}},
  };
  for (const auto& [N, want] : expect) check_prefix(eisenstein4_cusp(N, "inf", 5), 0, want);
  CHECK(eisenstein4_cusp(1, "inf", 30) == eisenstein_level1(4, 30));
  // Constant terms: 1 at infinity, 0 at the zero cusp.
  for (long N : {2L, 3L, 5L, 6L, 7L, 11L, 14L, 15L}) {
    CHECK(eisenstein4_cusp(N, "inf", 3).coeff(0) == 1);
    if (N <= 7) CHECK(eisenstein4_cusp(N, "0", 3).val() >= 1);
  }
}

TEST_CASE("weight-4 eisenstein series at the zero cusp") {
  const std::map<long, std::vector<Rat>> expect = {
      {2, {Rat(64), Rat(512), Rat(1792), Rat(4096)}},
      {3, {Rat(27), Rat(243), Rat(729), Rat(1971)}},
      {5, {Rat(125, 13), Rat(1125, 13), Rat(3500, 13), Rat(9125, 13)}},
      {6, {Rat(36, 5), Rat(288, 5), Rat(972, 5), Rat(2304, 5)}},
      {7, {Rat(49, 10), Rat(441, 10), Rat(686, 5), Rat(3577, 10)}},
  };
  for (const auto& [N, want] : expect) check_prefix(eisenstein4_cusp(N, "0", 5), 1, want);
  CHECK_THROWS_AS(eisenstein4_cusp(1, "0", 5), InvalidCusp);
  CHECK_THROWS_AS(eisenstein4_cusp(5, "1/2", 5), InvalidCusp);
}

TEST_CASE("width-six extra cusps") {
  check_prefix(eisenstein4_cusp(6, "1/2", 5), 1,
               {Rat(-9, 5), Rat(63, 5), Rat(-243, 5), Rat(639, 5)});
  check_prefix(eisenstein4_cusp(6, "1/3", 5), 1,
               {Rat(-4, 5), Rat(-32, 5), Rat(212, 5), Rat(-256, 5)});
  // Denominators stay bounded across the whole expansion window.
  long prec = 60;
  for (const char* cusp : {"inf", "0", "1/2", "1/3"}) {
    RatSeries s = eisenstein4_cusp(6, cusp, prec);
    Int bound = std::string(cusp) == "inf" ? Int(25) : (std::string(cusp) == "0" ? Int(900) : Int(1200));
    for (long e = s.val(); e < prec; ++e)
      CHECK(divides(Rat(s.coeff(e)).get_den(), bound));
  }
}

TEST_CASE("weight-2 eisenstein series for m >= 2") {
  const std::map<long, std::vector<Rat>> expect = {
      {2, {Rat(1), Rat(24), Rat(24), Rat(96), Rat(24)}},
      {3, {Rat(1), Rat(12), Rat(36), Rat(12), Rat(84)}},
      {5, {Rat(1), Rat(6), Rat(18), Rat(24), Rat(42)}},
      {7, {Rat(1), Rat(4), Rat(12), Rat(16), Rat(28)}},
      {11, {Rat(1), Rat(12, 5), Rat(36, 5), Rat(48, 5), Rat(84, 5)}},
      {14, {Rat(1), Rat(24, 13), Rat(72, 13), Rat(96, 13), Rat(168, 13)}},
      {15, {Rat(1), Rat(12, 7), Rat(36, 7), Rat(48, 7), Rat(12)}},
  };
  for (const auto& [m, want] : expect) check_prefix(eisenstein2_level(m, 5), 0, want);
}

TEST_CASE("special weight-4 candidates at levels 11, 14, 15") {
  check_prefix(special_candidate(11, 7), 0,
               {Rat(1), Rat(-2), Rat(-7, 3), Rat(7, 3), Rat(19, 3), Rat(-17, 3), Rat(68, 3)});
  check_prefix(special_candidate(14, 7), 0,
               {Rat(1), Rat(-1), Rat(-172, 75), Rat(-31, 75), Rat(-53, 25), Rat(281, 25),
                Rat(631, 75)});
  check_prefix(special_candidate(15, 7), 0,
               {Rat(1), Rat(-1), Rat(-95, 104), Rat(-165, 52), Rat(303, 104), Rat(-3),
                Rat(773, 104)});
  CHECK_THROWS_AS(special_candidate(6, 5), UnsupportedLevel);
}

TEST_CASE("level seven forms") {
  RatSeries e1 = theta_weight1_level7(9);
  check_prefix(e1, 0, {Rat(1), Rat(2), Rat(4), Rat(0), Rat(6), Rat(0), Rat(0), Rat(2), Rat(8)});
  RatSeries d7 = delta7_form(9);
  CHECK(d7.val() == 1);
  check_prefix(d7, 1, {Rat(1), Rat(-1), Rat(-2), Rat(-7), Rat(16), Rat(2), Rat(-7), Rat(15)});
}

TEST_CASE("level five hauptmodul") {
  RatSeries j = j5_hauptmodul(7);
  CHECK(j.val() == -1);
  check_prefix(j, -1, {Rat(1), Rat(-6), Rat(9), Rat(10), Rat(-30), Rat(6), Rat(-25), Rat(96)});
  // Closed form against the Eisenstein/discriminant quotient.
  long prec = 300;
  RatSeries quot = eisenstein4_cusp(5, "inf", prec + 2).div(delta_form(5, prec + 2));
  RatSeries rhs = quot.sub(RatSeries::constant(Rat(125, 13), quot.prec()));
  CHECK(RatSeries::agree_below(j5_hauptmodul(prec), rhs, prec));
}

TEST_CASE("cube-root decomposition of the level-three companion") {
  // The level-3 companion at 3*tau decomposes over cube roots that are
  // themselves integral eta quotients; all three pieces are honest series.
  long prec = 300;
  RatSeries lhs =
      eta_expand({{6, 6}, {18, 6}, {3, -2}, {9, -2}, {12, -2}, {36, -2}}, prec);
  RatSeries a = eta_expand({{3, 2}, {9, 2}}, prec);    // Delta_3(3t)^(1/3)
  RatSeries b = eta_expand({{12, 2}, {36, 2}}, prec);  // Delta_3(12t)^(1/3)
  CHECK(lhs == a.add(b.scalar_mul(Rat(4))));
  // Cross-check that the pieces cube to the intended forms.
  RatSeries sharp3 = delta_form(3, 102).subst_negate().neg();  // -Delta_3(-q)
  CHECK(RatSeries::agree_below(sharp3.subst_scale(3), lhs.pow_int(3), 300));
  CHECK(RatSeries::agree_below(delta_form(3, 102).subst_scale(3), a.pow_int(3), 300));
}

TEST_CASE("serre-type derivative") {
  long prec = 40;
  RatSeries e2 = eisenstein_level1(2, prec);
  RatSeries e4 = eisenstein_level1(4, prec);
  RatSeries e6 = eisenstein_level1(6, prec);
  // With the level-one scale 3 = 12/4: derivative of E4 is -E6.
  RatSeries d4 = serre_derivative(Rat(3), e2, 4, e4);
  CHECK(d4 == e6.neg().truncated(d4.prec()));
  // Annihilates the discriminant form at every group.
  for (const GroupInfo& g : group_table()) {
    RatSeries delta = expand_form(g.delta_key, prec);
    RatSeries p = expand_form(g.p_key, prec);
    int w = form_weight(g.delta_key);
    RatSeries d = serre_derivative(g.deriv_scale, p, w, delta);
    CHECK(d.is_zero());
  }
  // Leibniz rule across weights: D(fg) at weight a+b splits.
  RatSeries f = e4, g = e6;
  RatSeries left = serre_derivative(Rat(3), e2, 10, f.mul(g));
  RatSeries right = serre_derivative(Rat(3), e2, 4, f).mul(g).add(
      f.mul(serre_derivative(Rat(3), e2, 6, g)));
  CHECK(RatSeries::agree_below(left, right, std::min(left.prec(), right.prec())));
}

TEST_CASE("form catalog integrity") {
  const auto& cat = form_catalog();
  CHECK(cat.size() >= 40);
  for (const auto& info : cat) {
    RatSeries s = expand_form(info.key, 6);
    CHECK(s.prec() >= 6);
    if (info.weight > 0 && info.key.rfind("Delta", 0) == std::string::npos &&
        info.key.rfind("Q.", 0) == std::string::npos)
      CHECK(s.val() >= 0);
  }
  CHECK(catalog_has("E4.N6.cusp12"));
  CHECK(catalog_has("Delta.N5.sharp"));
  CHECK_FALSE(catalog_has("nonsense"));
  CHECK(form_weight("j5") == 0);
  CHECK(form_weight("P.N6") == 2);
  CHECK(form_weight("E4.N3.cusp0") == 4);
  CHECK(form_weight("Delta.N1") == 12);
  CHECK_THROWS_AS(expand_form("nonsense", 5), UnknownKey);
  CHECK_THROWS_AS(form_weight("nonsense"), UnknownKey);
  // Catalog expansion equals the direct builders.
  CHECK(expand_form("Delta.N6", 20) == delta_form(6, 20));
  CHECK(expand_form("E4.N5.cusp0", 20) == eisenstein4_cusp(5, "0", 20));
  CHECK(expand_form("E2m.14", 20) == eisenstein2_level(14, 20));
  CHECK(expand_form("j5", 20) == j5_hauptmodul(20));
  CHECK(expand_form("Q.N15", 20) == special_candidate(15, 20));
  CHECK(expand_form("E4.N2.cusp0.sharp", 20) ==
        eisenstein4_cusp(2, "0", 20).subst_negate());
}

TEST_CASE("group table integrity") {
  const auto& gt = group_table();
  REQUIRE(gt.size() == 13);
  const std::vector<std::string> tags = {"G0.1",      "G0.2",      "G0.3",      "G0.5",
                                         "G0.6",      "G0sharp.1", "G0sharp.2", "G0sharp.5",
                                         "G0sharp.6", "G0.11",     "G0.14",     "G0.15",
                                         "G0.7"};
  for (size_t i = 0; i < tags.size(); ++i) CHECK(gt[i].tag == tags[i]);
  CHECK(group_by_tag("G0.6").candidate_keys.size() == 4);
  CHECK(group_by_tag("G0sharp.6").candidate_keys.size() == 4);
  CHECK(group_by_tag("G0.5").candidate_keys.size() == 2);
  CHECK(group_by_tag("G0.11").candidate_keys == std::vector<std::string>{"Q.N11"});
  CHECK(group_by_tag("G0.7").N == 7);
  CHECK(group_by_tag("G0sharp.5").sharp);
  CHECK_FALSE(group_by_tag("G0.5").sharp);
  CHECK(group_by_tag("G0.1").deriv_scale == Rat(3));
  CHECK(group_by_tag("G0.3").deriv_scale == Rat(3, 2));
  CHECK(group_by_tag("G0.14").deriv_scale == Rat(1, 2));
  CHECK_THROWS_AS(group_by_tag("G0.4"), UnknownGroup);
  // Every referenced key resolves.
  for (const auto& g : gt) {
    CHECK(catalog_has(g.delta_key));
    CHECK(catalog_has(g.p_key));
    for (const auto& k : g.candidate_keys) CHECK(catalog_has(k));
  }
}

TEST_CASE("eta json round-trip") {
  EtaQuotient e{{2, 32}, {1, -8}, {4, -8}};
  Json j = eta_to_json(e);
  CHECK(j["2"] == 32);
  CHECK(eta_from_json(j) == e);
}
