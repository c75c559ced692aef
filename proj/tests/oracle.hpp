#pragma once

#include <optional>
#include <vector>

#include "stv/engine.hpp"
#include "stv/model.hpp"
#include "stv/prng.hpp"

namespace oracle {

// Reference count used to cross-check the engine. Every paper is tracked
// individually and totals are recomputed from scratch each round, so a
// bookkeeping bug in the engine's parcel handling cannot hide here.
struct Result {
  long long quota = 0;
  std::vector<int> winners;  // in order of election
  std::vector<std::vector<std::optional<stv::Rational>>> rounds;
  std::vector<stv::Rational> round_nontransferable;
  stv::Rational nontransferable;
};

Result run(const stv::Election& election, const stv::EngineConfig& config);

stv::Election random_election(stv::SplitMix64& rng, int max_candidates, long long max_voters,
                              int max_seats);

}  // namespace oracle
