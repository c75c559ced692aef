#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "stv/audit.hpp"
#include "stv/engine.hpp"
#include "stv/worst_case.hpp"

using namespace stv;

namespace {

std::vector<int> sorted_winners(const TabulationRecord& rec) {
  std::vector<int> w = rec.winners;
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace

TEST_CASE("two-seat construction has the fixed 1000-voter profile") {
  const Construction c = construct_s2();

  CHECK(c.seats == 2);
  CHECK(c.profile.roster().size() == 4);
  CHECK(c.profile.total_voters() == 1000);
  CHECK(c.added_ballot == Ballot{1, 0, 3, 2});
  CHECK(c.added_count == 3);

  const std::map<Ballot, long long> expected{
      {{0, 2, 3, 1}, 334},
      {{1, 0, 2, 3}, 314},
      {{2, 1, 0, 3}, 312},
      {{3, 0, 1, 2}, 40},
  };
  CHECK(c.profile.piles() == expected);
}

TEST_CASE("two-seat construction certifies: C2 tops the ballot and loses her seat") {
  const ConstructionCertificate cert = verify_construction(2);

  CHECK(cert.seats == 2);
  CHECK(cert.clause1_ok);
  CHECK(cert.clause2_ok);
  CHECK(cert.clause3_ok);
  CHECK(cert.added_count == 3);

  CHECK(cert.before.quota == 334);
  CHECK(cert.after.quota == 335);
  CHECK(sorted_winners(cert.before) == std::vector<int>{0, 1});
  CHECK(sorted_winners(cert.after) == std::vector<int>{0, 2});

  // The certificate keeps the base profile; the addition lives only in the
  // after-record.
  CHECK(cert.profile.total_voters() == 1000);
  CHECK(cert.before.total_voters == 1000);
  CHECK(cert.after.total_voters == 1003);
}

TEST_CASE("three-seat construction produces the expected 4000-voter profile") {
  const Construction c = construct_general(3);

  CHECK(c.seats == 3);
  CHECK(c.profile.roster().size() == 5);
  CHECK(c.profile.total_voters() == 4000);
  CHECK(c.added_ballot == Ballot{2, 1, 0, 3, 4});
  CHECK(c.added_count == 8);

  // First-choice tallies 1003 / 747 / 751 / 748 / 751, with each non-C1
  // pile split as evenly as possible across the opposite block and the
  // odd paper going to the later target.
  const std::map<Ballot, long long> expected{
      {{0, 1, 2, 3, 4}, 1003},
      {{1, 3, 0, 2, 4}, 373},
      {{1, 4, 0, 2, 3}, 374},
      {{2, 3, 0, 1, 4}, 375},
      {{2, 4, 0, 1, 3}, 376},
      {{3, 1, 0, 2, 4}, 374},
      {{3, 2, 0, 1, 4}, 374},
      {{4, 1, 0, 2, 3}, 375},
      {{4, 2, 0, 1, 3}, 376},
  };
  CHECK(c.profile.piles() == expected);

  CHECK(construct_table6().piles() == expected);
  CHECK(construct_table6().roster().size() == 5);
}

TEST_CASE("three-seat construction certifies with the expected rounds") {
  const ConstructionCertificate cert = verify_construction(3);

  CHECK(cert.clause1_ok);
  CHECK(cert.clause2_ok);
  CHECK(cert.clause3_ok);

  CHECK(cert.before.quota == 1001);
  CHECK(cert.after.quota == 1003);
  CHECK(sorted_winners(cert.before) == std::vector<int>{0, 1, 2});
  CHECK(sorted_winners(cert.after) == std::vector<int>{0, 3, 4});

  // Before: C1 is elected on first preferences, C4's exclusion lifts C2
  // and C3 over quota.
  CHECK(cert.before.final_totals[1] == Rational(1123));
  CHECK(cert.before.final_totals[2] == Rational(1125));

  // After: C2 goes out instead and her papers elect C4 and C5.
  CHECK(cert.after.final_totals[3] == Rational(1121));
  CHECK(cert.after.final_totals[4] == Rational(1125));

  // Only C1 survives the addition.
  std::vector<int> common;
  const std::vector<int> wb = sorted_winners(cert.before);
  const std::vector<int> wa = sorted_winners(cert.after);
  std::set_intersection(wb.begin(), wb.end(), wa.begin(), wa.end(),
                        std::back_inserter(common));
  CHECK(common == std::vector<int>{0});
}

TEST_CASE("constructions certify for four and five seats") {
  for (int seats : {4, 5}) {
    CAPTURE(seats);
    const ConstructionCertificate cert = verify_construction(seats);
    CHECK(cert.clause1_ok);
    CHECK(cert.clause2_ok);
    CHECK(cert.clause3_ok);
    CHECK(cert.added_count == 2 * (seats + 1));

    long long expected_voters = seats + 1;
    for (int i = 0; i < seats; ++i) expected_voters *= 10;
    CHECK(cert.profile.total_voters() == expected_voters);

    const std::vector<int> wb = sorted_winners(cert.before);
    const std::vector<int> wa = sorted_winners(cert.after);
    std::vector<int> common;
    std::set_intersection(wb.begin(), wb.end(), wa.begin(), wa.end(),
                          std::back_inserter(common));
    CHECK(common == std::vector<int>{0});
  }
}

TEST_CASE("constructions certify under truncated transfer arithmetic too") {
  EngineConfig config;
  config.arithmetic = Arithmetic::Fixed5;
  for (int seats : {2, 3}) {
    CAPTURE(seats);
    const ConstructionCertificate cert = verify_construction(seats, config);
    CHECK(cert.clause1_ok);
    CHECK(cert.clause2_ok);
    CHECK(cert.clause3_ok);
  }
  CHECK(sorted_winners(verify_construction(3, config).after) == std::vector<int>{0, 3, 4});
}

TEST_CASE("construction argument validation") {
  CHECK_THROWS_AS(construct_general(2), std::invalid_argument);
  CHECK_THROWS_AS(construct_general(7), std::invalid_argument);
  CHECK_NOTHROW(construct_general(7, 7));
  CHECK_THROWS_AS(verify_construction(1), std::invalid_argument);
}

TEST_CASE("added-winner guarantee holds over a random smoke batch") {
  const FuzzResult result = prop1_fuzz(300, FuzzBounds{}, 42);
  CHECK(result.passed());
  CHECK(result.trials == 300);
}

TEST_CASE("fuzz argument validation") {
  CHECK_THROWS_AS(prop1_fuzz(0, FuzzBounds{}, 1), std::invalid_argument);
  CHECK_THROWS_AS(prop1_fuzz(10, FuzzBounds{1, 1, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(prop1_fuzz(10, FuzzBounds{8, 3, 0}, 1), std::invalid_argument);
}
