#include "stv/worst_case.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "stv/audit.hpp"
#include "stv/prng.hpp"

namespace stv {

namespace {

std::vector<Candidate> numbered_roster(int n) {
  std::vector<Candidate> roster;
  roster.reserve(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) roster.push_back(Candidate{"C" + std::to_string(i), ""});
  return roster;
}

// Completes [prefix...] to a full ranking by appending the missing
// candidates in ascending order.
Ballot fill_ascending(std::vector<int> prefix, int n) {
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int c : prefix) used[static_cast<std::size_t>(c)] = true;
  for (int c = 0; c < n; ++c) {
    if (!used[static_cast<std::size_t>(c)]) prefix.push_back(c);
  }
  return prefix;
}

// V ballots topped by `top`, second choices spread over `targets` as evenly
// as possible: floor(V/k) each, with the leftover going one apiece to the
// trailing targets.
void add_split(Profile& profile, int n, int top, const std::vector<int>& targets, long long v) {
  const auto k = static_cast<long long>(targets.size());
  const long long base = v / k;
  const long long leftover = v % k;
  for (long long i = 0; i < k; ++i) {
    const long long count = base + (i >= k - leftover ? 1 : 0);
    if (count == 0) continue;
    profile.add_ballots(fill_ascending({top, targets[static_cast<std::size_t>(i)]}, n), count);
  }
}

std::vector<int> sorted_winners(const TabulationRecord& rec) {
  std::vector<int> w = rec.winners;
  std::sort(w.begin(), w.end());
  return w;
}

std::string name_list(const Profile& profile, const std::vector<int>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ", ";
    out += profile.roster()[static_cast<std::size_t>(ids[i])].name;
  }
  return out + "}";
}

long long pow10_ll(int k) {
  long long p = 1;
  for (int i = 0; i < k; ++i) p *= 10;
  return p;
}

}  // namespace

Construction construct_s2() {
  Construction c;
  c.profile = Profile(numbered_roster(4));
  c.profile.add_ballots({0, 2, 3, 1}, 334);  // C1 > C3 > C4 > C2
  c.profile.add_ballots({1, 0, 2, 3}, 314);  // C2 > C1 > C3 > C4
  c.profile.add_ballots({2, 1, 0, 3}, 312);  // C3 > C2 > C1 > C4
  c.profile.add_ballots({3, 0, 1, 2}, 40);   // C4 > C1 > C2 > C3
  c.seats = 2;
  c.added_ballot = {1, 0, 3, 2};  // C2 > C1 > C4 > C3
  c.added_count = 3;
  return c;
}

Construction construct_general(int seats, int ceiling) {
  if (seats < 3) {
    throw std::invalid_argument("construct_general: needs seats >= 3 (the two-seat case is bespoke)");
  }
  if (seats > ceiling) {
    throw std::invalid_argument("construct_general: seats " + std::to_string(seats) +
                                " above ceiling " + std::to_string(ceiling));
  }
  const int n = 2 * seats - 1;
  const long long total = (seats + 1) * pow10_ll(seats);
  const long long v1 = pow10_ll(seats) + 3;
  const long long v2 = (total - v1) / (2 * seats - 2) - 2;

  // 0-based ids: left block C2..CS are 1..seats-1, right block
  // C(S+1)..C(2S-1) are seats..2S-2.
  std::vector<int> left;
  std::vector<int> right;
  for (int c = 1; c < seats; ++c) left.push_back(c);
  for (int c = seats; c < n; ++c) right.push_back(c);

  std::vector<long long> tally(static_cast<std::size_t>(n), 0);
  tally[1] = v2;                                     // C2
  tally[static_cast<std::size_t>(seats)] = v2 + 1;   // C(S+1)
  long long leftover = (total - v1) - v2 - (v2 + 1) -
                       (2 * seats - 4) * (v2 + 2);
  for (int c = 1; c < n; ++c) {
    if (c == 1 || c == seats) continue;
    const long long extra = std::min<long long>(2, leftover);
    leftover -= extra;
    tally[static_cast<std::size_t>(c)] = v2 + 2 + extra;
  }
  if (leftover != 0) {
    throw std::logic_error("construct_general: counts do not sum to the electorate");
  }

  Construction c;
  c.profile = Profile(numbered_roster(n));
  c.profile.add_ballots(fill_ascending({0, 1}, n), v1);  // C1 > C2 > ...
  for (int top : left) add_split(c.profile, n, top, right, tally[static_cast<std::size_t>(top)]);
  for (int top : right) add_split(c.profile, n, top, left, tally[static_cast<std::size_t>(top)]);
  c.seats = seats;

  // C3 > C4 > ... > CS > C2 > C1 > C(S+1) > ... > C(2S-1)
  for (int id = 2; id < seats; ++id) c.added_ballot.push_back(id);
  c.added_ballot.push_back(1);
  c.added_ballot.push_back(0);
  for (int id = seats; id < n; ++id) c.added_ballot.push_back(id);
  c.added_count = 2 * (seats + 1);
  return c;
}

Profile construct_table6() { return construct_general(3).profile; }

ConstructionCertificate verify_construction(int seats, const EngineConfig& config, int ceiling) {
  if (seats < 2) throw std::invalid_argument("verify_construction: seats must be at least 2");
  Construction c = seats == 2 ? construct_s2() : construct_general(seats, ceiling);

  Election election;
  election.profile = c.profile;
  election.seats = c.seats;
  TabulationRecord before = tabulate(election, config);
  TabulationRecord after = tabulate(add_ballots(election, c.added_ballot, c.added_count), config);

  const std::vector<int> wb = sorted_winners(before);
  const std::vector<int> wa = sorted_winners(after);

  std::vector<int> ballot_top(c.added_ballot.begin(), c.added_ballot.begin() + seats);
  std::sort(ballot_top.begin(), ballot_top.end());
  const bool clause1 = ballot_top == wb;

  std::vector<int> survivors;
  std::set_intersection(wb.begin(), wb.end(), wa.begin(), wa.end(),
                        std::back_inserter(survivors));
  bool top_s1_all_out = true;
  for (int i = 0; i < seats - 1; ++i) {
    if (after.is_winner(c.added_ballot[static_cast<std::size_t>(i)])) top_s1_all_out = false;
  }
  const bool clause2 = survivors.size() == 1 && top_s1_all_out;

  bool clause3 = true;
  for (std::size_t i = c.added_ballot.size() - static_cast<std::size_t>(seats - 1);
       i < c.added_ballot.size(); ++i) {
    if (!after.is_winner(c.added_ballot[i])) clause3 = false;
  }

  if (!clause1 || !clause2 || !clause3) {
    throw std::logic_error(
        "construction check failed for " + std::to_string(seats) + " seats: clause1=" +
        (clause1 ? "ok" : "FAIL") + " clause2=" + (clause2 ? "ok" : "FAIL") + " clause3=" +
        (clause3 ? "ok" : "FAIL") + "; winners before " + name_list(c.profile, wb) +
        ", after " + name_list(c.profile, wa) + ", quota " + std::to_string(before.quota) +
        " -> " + std::to_string(after.quota));
  }

  ConstructionCertificate cert;
  cert.seats = seats;
  cert.profile = std::move(c.profile);
  cert.added_ballot = std::move(c.added_ballot);
  cert.added_count = c.added_count;
  cert.clause1_ok = clause1;
  cert.clause2_ok = clause2;
  cert.clause3_ok = clause3;
  cert.before = std::move(before);
  cert.after = std::move(after);
  return cert;
}

FuzzResult prop1_fuzz(long long trials, const FuzzBounds& bounds, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("prop1_fuzz: trials must be positive");
  if (bounds.max_candidates < 2 || bounds.max_seats < 1 || bounds.max_voters < 1) {
    throw std::invalid_argument("prop1_fuzz: degenerate bounds");
  }
  const int seat_cap = std::min(bounds.max_seats, bounds.max_candidates / 2);
  if (seat_cap < 1) throw std::invalid_argument("prop1_fuzz: bounds leave no valid seat count");

  FuzzResult result;
  for (long long t = 0; t < trials; ++t) {
    SplitMix64 derive{seed + static_cast<std::uint64_t>(t)};
    const std::uint64_t trial_seed = derive.next();
    SplitMix64 rng{trial_seed};

    const int seats = 1 + rng.pick(seat_cap);
    const int n = 2 * seats + rng.pick(bounds.max_candidates - 2 * seats + 1);
    const long long voters = rng.pick_count(1, bounds.max_voters);

    Election election;
    election.profile = Profile(numbered_roster(n));
    election.seats = seats;
    std::vector<int> scratch(static_cast<std::size_t>(n));
    for (long long v = 0; v < voters; ++v) {
      for (int i = 0; i < n; ++i) scratch[static_cast<std::size_t>(i)] = i;
      for (int i = n - 1; i > 0; --i) {
        std::swap(scratch[static_cast<std::size_t>(i)],
                  scratch[static_cast<std::size_t>(rng.pick(i + 1))]);
      }
      const int length = 1 + rng.pick(n);
      election.profile.add_ballots(
          Ballot(scratch.begin(), scratch.begin() + length), 1);
    }

    EngineConfig config;
    config.tie_seed = rng.next();
    config.arithmetic = rng.pick(2) == 0 ? Arithmetic::Exact : Arithmetic::Fixed5;

    const TabulationRecord before = tabulate(election, config);

    // Added ballot: the current winners in random order up top, everyone
    // else in random order below.
    Ballot added = before.winners;
    for (int i = static_cast<int>(added.size()) - 1; i > 0; --i) {
      std::swap(added[static_cast<std::size_t>(i)], added[static_cast<std::size_t>(rng.pick(i + 1))]);
    }
    std::vector<int> rest;
    for (int c = 0; c < n; ++c) {
      if (std::find(added.begin(), added.end(), c) == added.end()) rest.push_back(c);
    }
    for (int i = static_cast<int>(rest.size()) - 1; i > 0; --i) {
      std::swap(rest[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(rng.pick(i + 1))]);
    }
    added.insert(added.end(), rest.begin(), rest.end());

    const long long count = rng.pick_count(1, bounds.max_voters);
    const TabulationRecord after = tabulate(add_ballots(election, added, count), config);

    const std::vector<int> wb = sorted_winners(before);
    const std::vector<int> wa = sorted_winners(after);
    std::vector<int> common;
    std::set_intersection(wb.begin(), wb.end(), wa.begin(), wa.end(),
                          std::back_inserter(common));
    if (common.empty()) {
      result.trials = t + 1;
      result.counterexample =
          FuzzCounterexample{std::move(election), std::move(added), count, trial_seed, wb, wa};
      return result;
    }
  }
  result.trials = trials;
  return result;
}

}  // namespace stv
