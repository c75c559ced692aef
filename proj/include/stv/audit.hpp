#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "stv/engine.hpp"
#include "stv/model.hpp"

namespace stv {

enum class ParadoxKind { NegativeInvolvement, PositiveInvolvement, Both };

// How an instance was found. Sweep hits come from a heuristic net and say
// nothing about elections the net missed.
enum class ReportMethod { Direct, Sweep };

struct CountInterval {
  long long lo = 0;
  long long hi = 0;
};

// A certified instance: adding `count` copies of `added_ballot` changes the
// winner set so that the ballot's last-ranked candidate gains a seat
// (negative involvement), its first-ranked candidate loses one (positive
// involvement), or both at once.
struct ParadoxReport {
  ParadoxKind kind;
  Ballot added_ballot;  // full ranking
  long long count = 0;
  std::vector<int> promoted;   // entered the winner set (ascending id)
  std::vector<int> displaced;  // left the winner set (ascending id)
  TabulationRecord before;
  TabulationRecord after;
  ReportMethod method = ReportMethod::Direct;
  std::vector<CountInterval> count_ranges;  // filled when an interval scan produced the report
};

// Maximal runs of ballot counts for which the paradox verifies. Runs need
// not be contiguous across the scan, hence a set of intervals.
struct CountIntervalSet {
  std::vector<CountInterval> intervals;
  long long scan_cap = 0;
};

struct SweepHit {
  int candidate = -1;  // bullet-vote target
  long long count = 0;
  std::vector<int> winners_before;
  std::vector<int> winners_after;
};

// Copy of the election with `count` extra ballots of the given ranking.
Election add_ballots(const Election& election, const Ballot& ballot, long long count);

// Checks whether adding `count` copies of `ballot` (a full ranking) turns
// its last-ranked candidate from loser into winner. The report kind is
// upgraded to Both when the first-ranked candidate simultaneously drops out.
std::optional<ParadoxReport> verify_negative(const Election& election, const Ballot& ballot,
                                             long long count, const EngineConfig& config = {});

// Mirror image: first-ranked candidate turns from winner into loser. With a
// single seat this cannot happen, so that case short-circuits to nullopt.
std::optional<ParadoxReport> verify_positive(const Election& election, const Ballot& ballot,
                                             long long count, const EngineConfig& config = {});

// For each candidate with k existing bullet ballots, adds 1..max(ceil(
// cap_factor*k), cap_floor) bullet votes (ceil(cap_factor) when k = 0) and
// records every count where the winner set moves.
std::vector<SweepHit> bullet_sweep(const Election& election,
                                   const Rational& cap_factor = Rational(2),
                                   long long cap_floor = 0, const EngineConfig& config = {});

enum class CompletionStrategy { Heuristic, Exhaustive };

// Builds candidate full rankings with `top` first and `last` last, intended
// to extend a promising bullet-vote target into a certifiable added ballot.
// Heuristic: the original winners fill the slots after `top` (weakest winner
// first), the rest follow in roster order or elimination order. Exhaustive:
// every permutation of the middle block, kept when some count in
// [1, scan_cap] certifies, strongest witness first; refuses when the middle
// block exceeds `exhaustive_limit`. scan_cap 0 means the electorate size.
std::vector<Ballot> complete_to_ranking(const Election& election, int top, int last,
                                        CompletionStrategy strategy,
                                        const EngineConfig& config = {},
                                        int exhaustive_limit = 8, long long scan_cap = 0);

// Scans counts 1..scan_cap and returns the maximal intervals where the
// paradox of the given kind verifies (kind Both: one report certifying both
// directions at once).
CountIntervalSet count_intervals(const Election& election, const Ballot& ballot,
                                 ParadoxKind kind, long long scan_cap,
                                 const EngineConfig& config = {});

// (count, penultimate_margin(a, b)) for each count in [lo, hi] after adding
// that many copies of `ballot`. Count 0 is the unperturbed election.
std::vector<std::pair<long long, Rational>> margin_curve(const Election& election,
                                                         const Ballot& ballot, long long lo,
                                                         long long hi, int a, int b,
                                                         const EngineConfig& config = {});

}  // namespace stv
