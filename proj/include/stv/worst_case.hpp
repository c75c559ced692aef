#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stv/engine.hpp"
#include "stv/model.hpp"

namespace stv {

// A profile engineered so that a specific ballot addition swaps out all but
// one winner, together with the addition itself.
struct Construction {
  Profile profile;
  int seats = 0;
  Ballot added_ballot;
  long long added_count = 0;
};

struct ConstructionCertificate {
  int seats = 0;
  Profile profile;
  Ballot added_ballot;
  long long added_count = 0;
  // 1: the added ballot's top S slots are exactly the original winners.
  // 2: exactly one original winner survives, and the ballot's top S-1
  //    candidates all lose their seats.
  // 3: the ballot's bottom S-1 candidates all gain seats.
  bool clause1_ok = false;
  bool clause2_ok = false;
  bool clause3_ok = false;
  TabulationRecord before;
  TabulationRecord after;
};

// The bespoke two-seat instance: 1000 voters over four candidates, where
// three extra ballots flip one of the two seats.
Construction construct_s2();

// The general family for seats >= 3: 2S-1 candidates, (S+1)*10^S voters,
// 2(S+1) added ballots. Voter counts grow fast, so a ceiling guards against
// accidental huge instances.
Construction construct_general(int seats, int ceiling = 6);

// The three-seat member of the family: 4000 voters over five candidates.
Profile construct_table6();

// Builds the construction for the given seat count, tabulates before and
// after the prescribed addition, and checks all three clauses. A clause
// failure throws std::logic_error with a diagnostic, since the construction
// is supposed to guarantee them.
ConstructionCertificate verify_construction(int seats, const EngineConfig& config = {},
                                            int ceiling = 6);

struct FuzzBounds {
  int max_candidates = 8;
  int max_seats = 3;
  long long max_voters = 500;
};

struct FuzzCounterexample {
  Election election;
  Ballot added_ballot;
  long long count = 0;
  std::uint64_t trial_seed = 0;
  std::vector<int> winners_before;
  std::vector<int> winners_after;
};

struct FuzzResult {
  long long trials = 0;
  std::optional<FuzzCounterexample> counterexample;

  bool passed() const { return !counterexample.has_value(); }
};

// Randomized search for a violation of the guarantee that adding identical
// ballots whose top S slots are the current winners always leaves at least
// one of them elected. Each trial draws a random election (n >= 2S so the
// guarantee is not vacuous), a random such ballot, and a random count, then
// checks the winner sets intersect. Finding a counterexample would be a
// serious engine bug, so the first one stops the run.
FuzzResult prop1_fuzz(long long trials, const FuzzBounds& bounds, std::uint64_t seed);

}  // namespace stv
