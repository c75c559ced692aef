#include "stv/audit.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace stv {

namespace {

std::vector<int> sorted_winners(const TabulationRecord& rec) {
  std::vector<int> w = rec.winners;
  std::sort(w.begin(), w.end());
  return w;
}

void require_full_ranking(const Election& election, const Ballot& ballot) {
  if (static_cast<int>(ballot.size()) != election.profile.num_candidates()) {
    throw std::invalid_argument("added ballot must rank every candidate");
  }
}

long long ceil_to_ll(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (q * denominator(r) != numerator(r) && r > 0) ++q;
  return q.convert_to<long long>();
}

[[maybe_unused]] bool lot_was_drawn(const TabulationRecord& rec) {
  return std::any_of(rec.events.begin(), rec.events.end(),
                     [](const RoundEvent& ev) { return ev.by_lot; });
}

struct Flip {
  bool negative = false;  // ballot's last-ranked moved in
  bool positive = false;  // ballot's first-ranked moved out
  TabulationRecord after;
};

// One perturbed tabulation, classified against the original winners. The
// positive direction is defined away for single-seat elections: a candidate
// ranked first on every added ballot cannot be harmed when only quota
// crossings matter, so it is never reported there.
Flip classify(const Election& election, const TabulationRecord& before, const Ballot& ballot,
              long long count, const EngineConfig& config) {
  Flip flip;
  flip.after = tabulate(add_ballots(election, ballot, count), config);
  const int first = ballot.front();
  const int last = ballot.back();
  flip.negative = !before.is_winner(last) && flip.after.is_winner(last);
  flip.positive = election.seats > 1 && before.is_winner(first) && !flip.after.is_winner(first);
  return flip;
}

ParadoxReport make_report(const Election& election, const TabulationRecord& before, Flip flip,
                          const Ballot& ballot, long long count, bool negative_requested) {
  ParadoxReport rep;
  if (flip.negative && flip.positive) {
    rep.kind = ParadoxKind::Both;
  } else {
    rep.kind = negative_requested ? ParadoxKind::NegativeInvolvement
                                  : ParadoxKind::PositiveInvolvement;
  }
  rep.added_ballot = ballot;
  rep.count = count;
  const std::vector<int> wb = sorted_winners(before);
  const std::vector<int> wa = sorted_winners(flip.after);
  std::set_difference(wa.begin(), wa.end(), wb.begin(), wb.end(),
                      std::back_inserter(rep.promoted));
  std::set_difference(wb.begin(), wb.end(), wa.begin(), wa.end(),
                      std::back_inserter(rep.displaced));
  rep.before = before;
  rep.after = std::move(flip.after);
  return rep;
}

void require_positive_count(long long count) {
  if (count < 1) throw std::invalid_argument("added ballot count must be positive");
}

}  // namespace

Election add_ballots(const Election& election, const Ballot& ballot, long long count) {
  if (count < 0) throw std::invalid_argument("add_ballots: negative count");
  Election out = election;
  if (count > 0) {
    out.profile.add_ballots(ballot, count);
    if (out.profile.declared_total()) {
      // The published total must grow with the electorate or the quota math
      // would still use the old turnout.
      out.profile.set_declared_total(*out.profile.declared_total() + count);
    }
  }
  return out;
}

std::optional<ParadoxReport> verify_negative(const Election& election, const Ballot& ballot,
                                             long long count, const EngineConfig& config) {
  require_full_ranking(election, ballot);
  require_positive_count(count);
  const TabulationRecord before = tabulate(election, config);
  Flip flip = classify(election, before, ballot, count, config);
  if (!flip.negative) return std::nullopt;
  return make_report(election, before, std::move(flip), ballot, count,
                     /*negative_requested=*/true);
}

std::optional<ParadoxReport> verify_positive(const Election& election, const Ballot& ballot,
                                             long long count, const EngineConfig& config) {
  require_full_ranking(election, ballot);
  require_positive_count(count);
  if (election.seats == 1) {
    // Single-winner elections cannot harm a first-ranked candidate by adding
    // their ballots; debug builds double-check that claim (ties broken by
    // lot are exempt, as the added ballots can reshuffle the draw sequence).
    assert([&] {
      const TabulationRecord before = tabulate(election, config);
      if (!before.is_winner(ballot.front())) return true;
      const TabulationRecord after = tabulate(add_ballots(election, ballot, count), config);
      return after.is_winner(ballot.front()) || lot_was_drawn(before) || lot_was_drawn(after);
    }());
    return std::nullopt;
  }
  const TabulationRecord before = tabulate(election, config);
  Flip flip = classify(election, before, ballot, count, config);
  if (!flip.positive) return std::nullopt;
  return make_report(election, before, std::move(flip), ballot, count,
                     /*negative_requested=*/false);
}

std::vector<SweepHit> bullet_sweep(const Election& election, const Rational& cap_factor,
                                   long long cap_floor, const EngineConfig& config) {
  if (cap_factor <= 0) throw std::invalid_argument("cap_factor must be positive");
  const TabulationRecord before = tabulate(election, config);
  const std::vector<int> wb = sorted_winners(before);
  std::vector<SweepHit> hits;
  const auto& piles = election.profile.piles();
  for (int c = 0; c < election.profile.num_candidates(); ++c) {
    const Ballot bullet{c};
    const auto it = piles.find(bullet);
    const long long existing = it == piles.end() ? 0 : it->second;
    long long cap = existing > 0 ? ceil_to_ll(cap_factor * existing) : ceil_to_ll(cap_factor);
    cap = std::max(cap, cap_floor);
    for (long long add = 1; add <= cap; ++add) {
      const TabulationRecord after = tabulate(add_ballots(election, bullet, add), config);
      std::vector<int> wa = sorted_winners(after);
      if (wa != wb) hits.push_back(SweepHit{c, add, wb, std::move(wa)});
    }
  }
  return hits;
}

std::vector<Ballot> complete_to_ranking(const Election& election, int top, int last,
                                        CompletionStrategy strategy, const EngineConfig& config,
                                        int exhaustive_limit, long long scan_cap) {
  const int n = election.profile.num_candidates();
  if (top < 0 || top >= n || last < 0 || last >= n || top == last) {
    throw std::invalid_argument("complete_to_ranking: bad top/last pair");
  }
  if (scan_cap <= 0) scan_cap = election.profile.valid_voters();
  if (n == 2) return {Ballot{top, last}};

  const TabulationRecord before = tabulate(election, config);

  if (strategy == CompletionStrategy::Heuristic) {
    const auto in_block = [&](int c) { return c != top && c != last; };
    // Original winners right behind the top slot; the weakest winner first
    // gives the strongest setup for delaying an election by one round.
    std::vector<int> winners_weak_first;
    for (auto it = before.winners.rbegin(); it != before.winners.rend(); ++it) {
      if (in_block(*it)) winners_weak_first.push_back(*it);
    }
    std::vector<int> winners_strong_first(winners_weak_first.rbegin(),
                                          winners_weak_first.rend());

    std::vector<int> rest_roster;
    for (int c = 0; c < n; ++c) {
      if (in_block(c) && !before.is_winner(c)) rest_roster.push_back(c);
    }
    // Same candidates, ordered by when they dropped out of the original
    // count; survivors that never dropped out go last, strongest first.
    std::vector<int> rest_elim;
    for (const RoundEvent& ev : before.events) {
      if (ev.kind == EventKind::Eliminated && in_block(ev.candidate)) {
        rest_elim.push_back(ev.candidate);
      }
    }
    for (int c : before.ranking) {
      if (in_block(c) && !before.is_winner(c) &&
          std::find(rest_elim.begin(), rest_elim.end(), c) == rest_elim.end()) {
        rest_elim.push_back(c);
      }
    }

    std::vector<Ballot> out;
    const auto emit = [&](const std::vector<int>& winners, const std::vector<int>& rest) {
      Ballot b{top};
      b.insert(b.end(), winners.begin(), winners.end());
      b.insert(b.end(), rest.begin(), rest.end());
      b.push_back(last);
      if (std::find(out.begin(), out.end(), b) == out.end()) out.push_back(std::move(b));
    };
    emit(winners_weak_first, rest_roster);
    emit(winners_weak_first, rest_elim);
    emit(winners_strong_first, rest_roster);
    emit(winners_strong_first, rest_elim);
    return out;
  }

  std::vector<int> middle;
  for (int c = 0; c < n; ++c) {
    if (c != top && c != last) middle.push_back(c);
  }
  if (static_cast<int>(middle.size()) > exhaustive_limit) {
    throw std::invalid_argument("complete_to_ranking: middle block of " +
                                std::to_string(middle.size()) + " exceeds limit " +
                                std::to_string(exhaustive_limit));
  }

  struct Scored {
    Ballot ballot;
    long long witnesses;
  };
  std::vector<Scored> scored;
  do {
    Ballot b{top};
    b.insert(b.end(), middle.begin(), middle.end());
    b.push_back(last);
    long long witnesses = 0;
    for (long long count = 1; count <= scan_cap; ++count) {
      const Flip flip = classify(election, before, b, count, config);
      if (flip.negative || flip.positive) ++witnesses;
    }
    if (witnesses > 0) scored.push_back({std::move(b), witnesses});
  } while (std::next_permutation(middle.begin(), middle.end()));

  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.witnesses > b.witnesses;
  });
  std::vector<Ballot> out;
  out.reserve(scored.size());
  for (Scored& s : scored) out.push_back(std::move(s.ballot));
  return out;
}

CountIntervalSet count_intervals(const Election& election, const Ballot& ballot,
                                 ParadoxKind kind, long long scan_cap,
                                 const EngineConfig& config) {
  if (scan_cap < 1) throw std::invalid_argument("count_intervals: scan_cap must be positive");
  require_full_ranking(election, ballot);
  const TabulationRecord before = tabulate(election, config);

  CountIntervalSet result;
  result.scan_cap = scan_cap;
  bool in_run = false;
  for (long long count = 1; count <= scan_cap; ++count) {
    const Flip flip = classify(election, before, ballot, count, config);
    bool hit = false;
    switch (kind) {
      case ParadoxKind::NegativeInvolvement:
        hit = flip.negative;
        break;
      case ParadoxKind::PositiveInvolvement:
        hit = flip.positive;
        break;
      case ParadoxKind::Both:
        hit = flip.negative && flip.positive;
        break;
    }
    if (hit && !in_run) {
      result.intervals.push_back({count, count});
      in_run = true;
    } else if (hit) {
      result.intervals.back().hi = count;
    } else {
      in_run = false;
    }
  }
  return result;
}

std::vector<std::pair<long long, Rational>> margin_curve(const Election& election,
                                                         const Ballot& ballot, long long lo,
                                                         long long hi, int a, int b,
                                                         const EngineConfig& config) {
  const int n = election.profile.num_candidates();
  if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
    throw std::invalid_argument("margin_curve: bad candidate pair");
  }
  if (lo < 0 || hi < lo) throw std::invalid_argument("margin_curve: bad count range");
  std::vector<std::pair<long long, Rational>> curve;
  curve.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long long count = lo; count <= hi; ++count) {
    const TabulationRecord rec = tabulate(add_ballots(election, ballot, count), config);
    curve.emplace_back(count, penultimate_margin(rec, a, b));
  }
  return curve;
}

}  // namespace stv
