#include "oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace oracle {

using stv::Ballot;
using stv::Rational;

namespace {

struct Paper {
  Ballot ranking;
  Rational value;
};

enum class St { Hopeful, Elected, Excluded };

struct Sim {
  int n = 0;
  int seats = 0;
  stv::Arithmetic arithmetic = stv::Arithmetic::Exact;
  Rational quota;
  std::vector<St> st;
  std::vector<std::vector<Paper>> held;
  std::vector<int> pending;  // elected, surplus not yet dealt with
  stv::SplitMix64 rng;
  Result out;

  Rational total_of(int c) const {
    Rational t(0);
    for (const Paper& p : held[static_cast<std::size_t>(c)]) t += p.value;
    return t;
  }

  // Largest (or smallest) key wins; ties go to the earliest recorded round
  // where the contenders' totals differed, and a lot settles a full tie.
  int choose(std::vector<int> set, const std::vector<Rational>& key, bool want_max,
             bool allow_lot) {
    std::sort(set.begin(), set.end());
    if (set.size() > 1) {
      Rational best = key[static_cast<std::size_t>(set.front())];
      for (int c : set) {
        const Rational& v = key[static_cast<std::size_t>(c)];
        if (want_max ? v > best : v < best) best = v;
      }
      std::erase_if(set, [&](int c) { return key[static_cast<std::size_t>(c)] != best; });
    }
    for (std::size_t r = 0; r < out.rounds.size() && set.size() > 1; ++r) {
      const auto& row = out.rounds[r];
      bool all_present = true;
      for (int c : set) all_present = all_present && row[static_cast<std::size_t>(c)].has_value();
      if (!all_present) continue;
      Rational best = *row[static_cast<std::size_t>(set.front())];
      for (int c : set) {
        const Rational& v = *row[static_cast<std::size_t>(c)];
        if (want_max ? v > best : v < best) best = v;
      }
      std::erase_if(set, [&](int c) { return *row[static_cast<std::size_t>(c)] != best; });
    }
    if (set.size() == 1 || !allow_lot) return set.front();
    return set[static_cast<std::size_t>(rng.pick(static_cast<int>(set.size())))];
  }

  int next_hopeful(const Ballot& ranking) const {
    for (int c : ranking) {
      if (st[static_cast<std::size_t>(c)] == St::Hopeful) return c;
    }
    return -1;
  }

  void run_loop() {
    while (true) {
      std::vector<Rational> totals(static_cast<std::size_t>(n), Rational(0));
      std::vector<std::optional<Rational>> row(static_cast<std::size_t>(n));
      std::vector<int> hopefuls;
      for (int c = 0; c < n; ++c) {
        if (st[static_cast<std::size_t>(c)] != St::Hopeful) continue;
        totals[static_cast<std::size_t>(c)] = total_of(c);
        row[static_cast<std::size_t>(c)] = totals[static_cast<std::size_t>(c)];
        hopefuls.push_back(c);
      }
      out.rounds.push_back(std::move(row));
      out.round_nontransferable.push_back(out.nontransferable);

      std::vector<int> over;
      for (int c : hopefuls) {
        if (totals[static_cast<std::size_t>(c)] >= quota) over.push_back(c);
      }
      while (!over.empty() && static_cast<int>(out.winners.size()) < seats) {
        const int c = choose(over, totals, /*want_max=*/true, /*allow_lot=*/true);
        std::erase(over, c);
        std::erase(hopefuls, c);
        st[static_cast<std::size_t>(c)] = St::Elected;
        pending.push_back(c);
        out.winners.push_back(c);
      }
      if (static_cast<int>(out.winners.size()) == seats) return;

      if (static_cast<int>(out.winners.size()) + static_cast<int>(hopefuls.size()) == seats) {
        std::vector<int> remaining = hopefuls;
        while (!remaining.empty()) {
          const int c = choose(remaining, totals, /*want_max=*/true, /*allow_lot=*/false);
          std::erase(remaining, c);
          st[static_cast<std::size_t>(c)] = St::Elected;
          out.winners.push_back(c);
        }
        return;
      }

      if (!pending.empty()) {
        std::vector<Rational> keys(static_cast<std::size_t>(n), Rational(0));
        for (int c : pending) keys[static_cast<std::size_t>(c)] = total_of(c);
        const int c = choose(pending, keys, /*want_max=*/true, /*allow_lot=*/true);
        std::erase(pending, c);
        distribute_surplus(c);
      } else {
        const int c = choose(hopefuls, totals, /*want_max=*/false, /*allow_lot=*/true);
        st[static_cast<std::size_t>(c)] = St::Excluded;
        exclude(c);
      }
    }
  }

  void distribute_surplus(int c) {
    const Rational total = total_of(c);
    const Rational ratio = (total - quota) / total;
    auto papers = std::move(held[static_cast<std::size_t>(c)]);
    held[static_cast<std::size_t>(c)].clear();
    for (Paper& p : papers) {
      const Rational slice = p.value * ratio;
      Rational nv = slice;
      if (arithmetic == stv::Arithmetic::Fixed5) nv = stv::truncate5(slice);
      const int next = next_hopeful(p.ranking);
      if (next >= 0 && nv > 0) {
        out.nontransferable += slice - nv;
        p.value = nv;
        held[static_cast<std::size_t>(next)].push_back(std::move(p));
      } else {
        out.nontransferable += slice;
      }
    }
  }

  void exclude(int c) {
    auto papers = std::move(held[static_cast<std::size_t>(c)]);
    held[static_cast<std::size_t>(c)].clear();
    for (Paper& p : papers) {
      const int next = next_hopeful(p.ranking);
      if (next >= 0) {
        held[static_cast<std::size_t>(next)].push_back(std::move(p));
      } else {
        out.nontransferable += p.value;
      }
    }
  }
};

}  // namespace

Result run(const stv::Election& election, const stv::EngineConfig& config) {
  Sim sim;
  sim.n = election.profile.num_candidates();
  sim.seats = election.seats;
  sim.arithmetic = config.arithmetic;
  sim.rng.state = config.tie_seed;
  const long long q = config.quota_override ? *config.quota_override
                                            : election.profile.quota_basis() / (sim.seats + 1) + 1;
  sim.quota = Rational(q);
  sim.out.quota = q;
  sim.st.assign(static_cast<std::size_t>(sim.n), St::Hopeful);
  sim.held.assign(static_cast<std::size_t>(sim.n), {});
  for (const auto& [ranking, count] : election.profile.piles()) {
    for (long long i = 0; i < count; ++i) {
      sim.held[static_cast<std::size_t>(ranking.front())].push_back(Paper{ranking, Rational(1)});
    }
  }
  sim.run_loop();
  return std::move(sim.out);
}

stv::Election random_election(stv::SplitMix64& rng, int max_candidates, long long max_voters,
                              int max_seats) {
  const int n = 2 + rng.pick(max_candidates - 1);
  std::vector<stv::Candidate> roster;
  for (int i = 0; i < n; ++i) roster.push_back({"C" + std::to_string(i + 1), ""});
  stv::Election e;
  e.profile = stv::Profile(std::move(roster));
  e.seats = 1 + rng.pick(std::min(max_seats, n));
  const long long voters = rng.pick_count(1, max_voters);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (long long v = 0; v < voters; ++v) {
    std::iota(perm.begin(), perm.end(), 0);
    const int len = 1 + rng.pick(n);
    for (int i = 0; i < len; ++i) {
      const int j = i + rng.pick(n - i);
      std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
    e.profile.add_ballots(Ballot(perm.begin(), perm.begin() + len), 1);
  }
  return e;
}

}  // namespace oracle
