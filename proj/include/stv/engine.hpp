#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stv/model.hpp"
#include "stv/rational.hpp"

namespace stv {

// Exact keeps every vote value as a rational number. Fixed5 truncates each
// paper's value to five decimal places on surplus transfer, the way official
// counting software does; the truncation loss is credited as nontransferable.
enum class Arithmetic { Exact, Fixed5 };

struct EngineConfig {
  Arithmetic arithmetic = Arithmetic::Exact;
  std::uint64_t tie_seed = 0;
  std::optional<long long> quota_override;
};

enum class EventKind {
  Elected,              // reached quota
  ElectedWithoutQuota,  // seat filled because continuing candidates == open seats
  SurplusTransferred,
  Eliminated,
  ExhaustedToNontransferable,  // value a transfer could not deliver anywhere
};

struct RoundEvent {
  EventKind kind;
  int candidate = -1;
  int round = 0;  // 1-based
  // Elected / ElectedWithoutQuota: total at that point.
  // SurplusTransferred: size of the surplus.
  // Eliminated: total being transferred away.
  Rational amount;
  // SurplusTransferred only: surplus / total, the per-unit multiplier.
  Rational transfer_value;
  // Transfers only: votes arriving at each candidate, plus the slice that
  // became nontransferable (exhausted papers and truncation loss).
  std::vector<std::pair<int, Rational>> recipients;
  Rational to_nontransferable;
  bool by_lot = false;  // selection required drawing a lot
};

enum class CandidateStatus { Standing, Elected, ElectedWithoutQuota, Eliminated };

// Vote totals at the start of a round, before that round's transfer. Only
// candidates still in the running have entries: a candidate's column ends
// with the round in which they were elected or excluded, matching the
// published votes-by-round convention.
struct RoundSnapshot {
  std::vector<std::optional<Rational>> totals;  // roster-indexed
  Rational nontransferable;
};

struct TabulationRecord {
  std::string title;
  std::vector<Candidate> roster;
  int seats = 0;
  long long total_voters = 0;  // valid ballots entering the count
  long long quota_basis = 0;   // ballot figure the quota was computed from
  long long quota = 0;
  Arithmetic arithmetic = Arithmetic::Exact;
  std::uint64_t tie_seed = 0;

  std::vector<RoundSnapshot> rounds;
  std::vector<RoundEvent> events;

  std::vector<int> winners;  // in order of election
  std::vector<CandidateStatus> statuses;
  std::vector<Rational> final_totals;  // credited votes when the count ended
  Rational final_nontransferable;

  // Every candidate, strongest finish first: quota winners in order of
  // election, then winners by default, then unelected continuing candidates
  // by final total, then eliminated candidates in reverse order of exclusion.
  std::vector<int> ranking;

  bool is_winner(int candidate) const;
};

// Droop quota: floor(ballots / (seats + 1)) + 1.
long long quota_for(long long ballots, int seats);

TabulationRecord tabulate(const Election& election, const EngineConfig& config = {});

// Difference (a minus b) of the two candidates' totals at the last round in
// which both still had votes in the count. For a winner/loser pair this is
// the margin at the decisive round. Throws if either never appears.
Rational penultimate_margin(const TabulationRecord& record, int a, int b);

}  // namespace stv
