#include <doctest.h>

#include <stdexcept>

#include "stv/model.hpp"

using stv::Ballot;
using stv::Profile;

static Profile three_candidates() {
  return Profile({{"A", ""}, {"B", ""}, {"C", ""}});
}

TEST_CASE("profile collapses identical rankings into one pile") {
  Profile p = three_candidates();
  p.add_ballots({0, 1}, 3);
  p.add_ballots({0, 1}, 2);
  p.add_ballots({2}, 4);
  CHECK(p.piles().size() == 2);
  CHECK(p.piles().at({0, 1}) == 5);
  CHECK(p.piles().at({2}) == 4);
  CHECK(p.total_voters() == 9);
  CHECK(p.valid_voters() == 9);
}

TEST_CASE("blank ballots count toward the total but not the valid papers") {
  Profile p = three_candidates();
  p.add_ballots({1}, 10);
  p.add_ballots({}, 4);
  CHECK(p.total_voters() == 14);
  CHECK(p.blank_ballots() == 4);
  CHECK(p.valid_voters() == 10);
  CHECK(p.quota_basis() == 10);
}

TEST_CASE("declared total overrides the quota basis") {
  Profile p = three_candidates();
  p.add_ballots({0}, 7);
  CHECK(p.quota_basis() == 7);
  p.set_declared_total(2013);
  CHECK(p.quota_basis() == 2013);
  CHECK(p.valid_voters() == 7);
}

TEST_CASE("rankings are validated") {
  Profile p = three_candidates();
  CHECK_THROWS_AS(p.add_ballots({0, 3}, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.add_ballots({-1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.add_ballots({1, 1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.add_ballots({0, 2, 0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(p.add_ballots({0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(p.add_ballots({0}, -2), std::invalid_argument);
  CHECK(p.total_voters() == 0);
}

TEST_CASE("first-place totals and name lookup") {
  Profile p = three_candidates();
  p.add_ballots({0, 1, 2}, 5);
  p.add_ballots({0, 2}, 2);
  p.add_ballots({2, 0}, 3);
  const auto firsts = p.first_place_totals();
  CHECK(firsts == std::vector<long long>{7, 0, 3});
  CHECK(p.candidate_index("B") == 1);
  CHECK(p.candidate_index("Z") == -1);
}
