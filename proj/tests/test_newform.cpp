#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <qmf/forms.hpp>
#include <qmf/json_io.hpp>
#include <qmf/newform.hpp>

#include <map>
#include <numeric>
#include <string>
#include <vector>

using namespace qmf;

namespace {

// Expected number of matched primes at pmax = 97: the 25 primes up to 97
// minus those dividing the level.
const std::map<std::string, long> kGoodPrimeCount = {
    {"G0.1", 23},      {"G0.2", 24},      {"G0.3", 24},      {"G0.5", 23},
    {"G0.6", 23},      {"G0sharp.1", 23}, {"G0sharp.2", 24}, {"G0sharp.5", 23},
    {"G0sharp.6", 23}, {"G0.11", 24},     {"G0.14", 23},     {"G0.15", 23},
};

}  // namespace

TEST_CASE("table lists the twelve groups with weight-two unit-leading products") {
  const auto& table = newform_table();
  REQUIRE(table.size() == 12);
  std::vector<std::string> tags;
  for (const auto& nf : table) tags.push_back(nf.group);
  CHECK(tags == std::vector<std::string>{"G0.1", "G0.2", "G0.3", "G0.5", "G0.6", "G0sharp.1",
                                         "G0sharp.2", "G0sharp.5", "G0sharp.6", "G0.11", "G0.14",
                                         "G0.15"});
  const std::map<std::string, long> levels = {
      {"G0.1", 36},      {"G0.2", 32},      {"G0.3", 27},      {"G0.5", 20},
      {"G0.6", 24},      {"G0sharp.1", 144}, {"G0sharp.2", 64}, {"G0sharp.5", 80},
      {"G0sharp.6", 48}, {"G0.11", 11},     {"G0.14", 14},     {"G0.15", 15},
  };
  for (const auto& nf : table) {
    INFO(nf.group);
    CHECK(nf.level == levels.at(nf.group));
    CHECK(eta_valuation(nf.eta) == 1);
    CHECK(eta_weight(nf.eta) == 2);
    RatSeries head = eta_expand(nf.eta, 3);
    CHECK(head.val() == 1);
    CHECK(head.coeff(1) == 1);
  }
}

TEST_CASE("table entries carry the expected eta exponents") {
  auto eta_of = [](const std::string& tag) { return newform_for(tag).eta; };
  CHECK(eta_of("G0.1") == EtaQuotient{{6, 4}});
  CHECK(eta_of("G0.2") == EtaQuotient{{4, 2}, {8, 2}});
  CHECK(eta_of("G0.3") == EtaQuotient{{3, 2}, {9, 2}});
  CHECK(eta_of("G0.5") == EtaQuotient{{2, 2}, {10, 2}});
  CHECK(eta_of("G0.6") == EtaQuotient{{2, 1}, {4, 1}, {6, 1}, {12, 1}});
  CHECK(eta_of("G0sharp.1") == EtaQuotient{{12, 12}, {6, -4}, {24, -4}});
  CHECK(eta_of("G0sharp.2") == EtaQuotient{{8, 8}, {4, -2}, {16, -2}});
  CHECK(eta_of("G0sharp.5") ==
        EtaQuotient{{4, 6}, {20, 6}, {2, -2}, {8, -2}, {10, -2}, {40, -2}});
  CHECK(eta_of("G0sharp.6") ==
        EtaQuotient{{4, 4}, {12, 4}, {2, -1}, {6, -1}, {8, -1}, {24, -1}});
  CHECK(eta_of("G0.11") == EtaQuotient{{1, 2}, {11, 2}});
  CHECK(eta_of("G0.14") == EtaQuotient{{1, 1}, {2, 1}, {7, 1}, {14, 1}});
  CHECK(eta_of("G0.15") == EtaQuotient{{1, 1}, {3, 1}, {5, 1}, {15, 1}});
}

TEST_CASE("plain entries rescale the level's own eta exponents to weight two") {
  // Argument scales by k/2 and every exponent scales by 2/k, so the weight
  // k product over divisors of N becomes a weight 2 product of level k*N/2.
  for (long N : {1L, 2L, 3L, 5L, 6L}) {
    INFO("N = " << N);
    LevelData ld = level_data(N);
    REQUIRE(ld.admissible);
    long k = static_cast<long>(ld.k.get_num().get_si());
    EtaQuotient rescaled;
    for (const auto& [d, r] : delta_exponents(N)) rescaled[d * (k / 2)] = r * 2 / k;
    const NewformSpec& nf = newform_for("G0." + std::to_string(N));
    CHECK(nf.eta == rescaled);
  }
}

TEST_CASE("companion entries are exact roots of the rescaled companion forms") {
  // For N in {1,2,5,6} the rescaled companion discriminant form has an exact
  // (k/2)-th root, and the table stores that root's eta exponents.
  const long shown = 300;
  for (long N : {1L, 2L, 5L, 6L}) {
    INFO("N = " << N);
    LevelData ld = level_data(N);
    long m = static_cast<long>(ld.k.get_num().get_si()) / 2;
    // The root keeps relative precision, so pad the substitution enough that
    // m*(p0-2)+2 still covers the displayed window.
    long p0 = (shown - 2 + m - 1) / m + 2;
    RatSeries lhs = delta_form_sharp(N, p0).subst_scale(m).nth_root(m);
    const NewformSpec& nf = newform_for("G0sharp." + std::to_string(N));
    RatSeries rhs = eta_expand(nf.eta, lhs.prec());
    CHECK(lhs.truncated(shown) == rhs.truncated(shown));
  }
}

TEST_CASE("coefficient access") {
  const NewformSpec& one = newform_for("G0.1");
  CHECK(newform_coefficient(one, 1) == 1);
  CHECK(newform_coefficient(one, 7) == -4);
  CHECK(newform_coefficient(one, 13) == 2);
  std::vector<Int> head = newform_coefficients(one, 14);
  REQUIRE(head.size() == 15);
  for (long n = 0; n <= 14; ++n) {
    if (n == 1)
      CHECK(head[static_cast<size_t>(n)] == 1);
    else if (n == 7)
      CHECK(head[static_cast<size_t>(n)] == -4);
    else if (n == 13)
      CHECK(head[static_cast<size_t>(n)] == 2);
    else
      CHECK(head[static_cast<size_t>(n)] == 0);
  }
  CHECK(newform_coefficient(newform_for("G0.5"), 2) == 0);
  CHECK(newform_coefficient(newform_for("G0.11"), 2) == -2);
  CHECK(newform_coefficient(newform_for("G0.11"), 3) == -1);
  CHECK_THROWS_AS(newform_coefficient(one, -1), Error);
}

TEST_CASE("coefficients are multiplicative across coprime indices") {
  const long bound = 50;
  for (const auto& nf : newform_table()) {
    INFO(nf.group);
    std::vector<Int> a = newform_coefficients(nf, bound * bound);
    for (long m = 2; m <= bound; ++m) {
      for (long n = m + 1; n <= bound; ++n) {
        if (std::gcd(m, n) != 1) continue;
        CHECK(a[static_cast<size_t>(m * n)] ==
              Int(a[static_cast<size_t>(m)] * a[static_cast<size_t>(n)]));
      }
    }
  }
}

TEST_CASE("prime power coefficients satisfy the trace recursion") {
  for (const auto& nf : newform_table()) {
    INFO(nf.group);
    std::vector<Int> a = newform_coefficients(nf, 31 * 31);
    for (long p : primes_up_to(31)) {
      const Int ap = a[static_cast<size_t>(p)];
      const Int ap2 = a[static_cast<size_t>(p * p)];
      if (nf.level % p == 0) {
        // Primes dividing the level: a_{p^j} = a_p^j.
        CHECK(ap2 == Int(ap * ap));
        if (p * p * p <= 31 * 31) CHECK(a[static_cast<size_t>(p * p * p)] == Int(ap * ap * ap));
      } else {
        CHECK(ap2 == Int(ap * ap - p));
        if (p * p * p <= 31 * 31)
          CHECK(a[static_cast<size_t>(p * p * p)] == Int(ap * ap2 - p * ap));
      }
    }
  }
}

TEST_CASE("coefficients at good primes satisfy the point count bound") {
  for (const auto& nf : newform_table()) {
    INFO(nf.group);
    std::vector<Int> a = newform_coefficients(nf, 97);
    for (long p : primes_up_to(97)) {
      if (nf.level % p == 0) continue;
      const Int ap = a[static_cast<size_t>(p)];
      CHECK(Int(ap * ap) <= Int(4 * p));
    }
  }
}

TEST_CASE("every curve matches its form at all good primes up to 97") {
  for (const auto& nf : newform_table()) {
    INFO(nf.group);
    CurveReport rep = curve_report(nf.group, 97);
    CHECK(rep.conductor == nf.level);
    ModularityReport mr = modularity_check(rep, nf, 97);
    CHECK(mr.ok());
    CHECK(mr.mismatched.empty());
    CHECK(static_cast<long>(mr.matched.size()) == kGoodPrimeCount.at(nf.group));
    CHECK(mr.group == nf.group);
    CHECK(mr.level == nf.level);
    CHECK(mr.pmax == 97);
  }
}

TEST_CASE("degenerate and failing comparisons") {
  // No primes below the cut: nothing to compare, which still counts as a pass.
  ModularityReport vacuous = modularity_check(curve_report("G0.1"), newform_for("G0.1"), 1);
  CHECK(vacuous.ok());
  CHECK(vacuous.matched.empty());
  CHECK(vacuous.mismatched.empty());

  // A form can only be compared against a curve of the same level.
  CHECK_THROWS_AS(modularity_check(curve_report("G0.1"), newform_for("G0.2")), LevelMismatch);

  // The one catalogued group without an attached product, and a stranger.
  CHECK_THROWS_AS(newform_for("G0.7"), UnknownGroup);
  CHECK_THROWS_AS(newform_for("nope"), UnknownGroup);

  // A deliberately mislabeled entry (level-32 exponents declared as level 36)
  // passes the level gate but disagrees at some good primes.
  NewformSpec wrong{"G0.1", 36, {{4, 2}, {8, 2}}};
  ModularityReport bad = modularity_check(curve_report("G0.1"), wrong, 97);
  CHECK(!bad.ok());
  CHECK(!bad.mismatched.empty());
  CHECK(!bad.matched.empty());  // both expansions vanish at primes inert in both fields
  CHECK(static_cast<long>(bad.matched.size() + bad.mismatched.size()) == 23);
}

TEST_CASE("report serialization") {
  ModularityReport mr = modularity_check(curve_report("G0.1"), newform_for("G0.1"), 97);
  Json j = report_to_json(mr);
  CHECK(j["group"] == "G0.1");
  CHECK(j["level"] == 36);
  CHECK(j["pmax"] == 97);
  CHECK(j["ok"] == true);
  CHECK(j["matches"] == 23);
  CHECK(j["mismatches"].is_array());
  CHECK(j["mismatches"].empty());
}
