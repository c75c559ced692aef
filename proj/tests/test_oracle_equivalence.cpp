#include <doctest.h>

#include <cstdint>
#include <string>

#include "oracle.hpp"
#include "stv/engine.hpp"
#include "stv/prng.hpp"

using namespace stv;

namespace {

// Runs both counts and compares everything the reference tracker records:
// quota, winners in election order, every per-round cell, and the
// nontransferable running totals.
void check_against_oracle(const Election& election, const EngineConfig& config) {
  const TabulationRecord rec = tabulate(election, config);
  const oracle::Result ref = oracle::run(election, config);

  REQUIRE(rec.quota == ref.quota);
  REQUIRE(rec.winners == ref.winners);
  REQUIRE(rec.rounds.size() == ref.rounds.size());
  for (std::size_t r = 0; r < ref.rounds.size(); ++r) {
    CAPTURE(r);
    REQUIRE(rec.rounds[r].totals.size() == ref.rounds[r].size());
    for (std::size_t c = 0; c < ref.rounds[r].size(); ++c) {
      CAPTURE(c);
      REQUIRE(rec.rounds[r].totals[c].has_value() == ref.rounds[r][c].has_value());
      if (ref.rounds[r][c].has_value()) {
        REQUIRE(*rec.rounds[r].totals[c] == *ref.rounds[r][c]);
      }
    }
    REQUIRE(rec.rounds[r].nontransferable == ref.round_nontransferable[r]);
  }
  REQUIRE(rec.final_nontransferable == ref.nontransferable);
}

}  // namespace

TEST_CASE("engine matches the paper-by-paper reference count on random elections") {
  SplitMix64 rng{0x5eedf00dULL};
  for (int trial = 0; trial < 1000; ++trial) {
    CAPTURE(trial);
    const Election election = oracle::random_election(rng, 6, 300, 3);
    const std::uint64_t tie_seed = rng.next();

    for (Arithmetic mode : {Arithmetic::Exact, Arithmetic::Fixed5}) {
      CAPTURE(mode == Arithmetic::Exact ? "exact" : "fixed5");
      EngineConfig config;
      config.arithmetic = mode;
      config.tie_seed = tie_seed;
      check_against_oracle(election, config);
    }
  }
}

TEST_CASE("engine matches the reference count on wider fields with few voters") {
  SplitMix64 rng{0xabcdef12345ULL};
  for (int trial = 0; trial < 200; ++trial) {
    CAPTURE(trial);
    const Election election = oracle::random_election(rng, 8, 40, 4);
    EngineConfig config;
    config.tie_seed = rng.next();
    config.arithmetic = trial % 2 == 0 ? Arithmetic::Exact : Arithmetic::Fixed5;
    check_against_oracle(election, config);
  }
}
