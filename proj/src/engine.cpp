#include "stv/engine.hpp"

#include <algorithm>
#include <stdexcept>

#include "stv/prng.hpp"

namespace stv {

long long quota_for(long long ballots, int seats) {
  if (ballots < 0) throw std::invalid_argument("quota_for: negative ballot count");
  if (seats < 1) throw std::invalid_argument("quota_for: seats must be positive");
  return ballots / (seats + 1) + 1;
}

bool TabulationRecord::is_winner(int candidate) const {
  return statuses[candidate] == CandidateStatus::Elected ||
         statuses[candidate] == CandidateStatus::ElectedWithoutQuota;
}

namespace {

// A parcel of identical papers. Papers in a parcel share one ranking, so a
// transfer always moves the parcel whole; parcels are never split.
struct Pile {
  const Ballot* ranking;
  long long count;
  Rational value;  // per paper
};

class Tabulator {
 public:
  Tabulator(const Election& election, const EngineConfig& config)
      : profile_(election.profile),
        seats_(election.seats),
        config_(config),
        n_(election.profile.num_candidates()) {
    if (n_ < 1) throw std::invalid_argument("tabulate: no candidates");
    if (seats_ < 1) throw std::invalid_argument("tabulate: seats must be positive");
    if (seats_ > n_) throw std::invalid_argument("tabulate: more seats than candidates");

    lot_.state = config.tie_seed;
    rec_.title = election.title;
    rec_.roster = profile_.roster();
    rec_.seats = seats_;
    rec_.total_voters = profile_.valid_voters();
    rec_.quota_basis = profile_.quota_basis();
    rec_.quota = config.quota_override ? *config.quota_override
                                       : quota_for(rec_.quota_basis, seats_);
    rec_.arithmetic = config.arithmetic;
    rec_.tie_seed = config.tie_seed;

    status_.assign(n_, CandidateStatus::Standing);
    held_.assign(n_, {});
    transferred_.assign(n_, false);
    final_totals_.assign(n_, Rational(0));
    for (const auto& [ranking, count] : profile_.piles()) {
      held_[ranking.front()].push_back(Pile{&ranking, count, Rational(1)});
    }
  }

  TabulationRecord run() {
    const Rational quota(rec_.quota);
    for (int round = 1;; ++round) {
      // The published convention: a candidate's column runs while they are
      // still in the running, through the round where they are elected or
      // excluded, and is blank afterwards.
      RoundSnapshot snap;
      snap.totals.resize(n_);
      std::vector<Rational> current(n_, Rational(0));
      for (int i = 0; i < n_; ++i) {
        if (status_[i] != CandidateStatus::Standing) continue;
        current[i] = held_total(i);
        snap.totals[i] = current[i];
      }
      snap.nontransferable = nontransferable_;
      rec_.rounds.push_back(std::move(snap));

      // Everyone at or over quota is elected, strongest first, until the
      // seats run out; a candidate over quota with no seat left just loses.
      std::vector<int> over;
      for (int i = 0; i < n_; ++i) {
        if (status_[i] == CandidateStatus::Standing && current[i] >= quota) over.push_back(i);
      }
      while (!over.empty() && static_cast<int>(rec_.winners.size()) < seats_) {
        bool by_lot = false;
        const int c = select(over, current, /*want_max=*/true, /*allow_lot=*/true, &by_lot);
        std::erase(over, c);
        status_[c] = CandidateStatus::Elected;
        pending_.push_back(c);
        RoundEvent ev;
        ev.kind = EventKind::Elected;
        ev.candidate = c;
        ev.round = round;
        ev.amount = current[c];
        ev.by_lot = by_lot;
        rec_.events.push_back(std::move(ev));
        rec_.winners.push_back(c);
      }

      if (static_cast<int>(rec_.winners.size()) == seats_) break;

      std::vector<int> standing;
      for (int i = 0; i < n_; ++i) {
        if (status_[i] == CandidateStatus::Standing) standing.push_back(i);
      }
      if (static_cast<int>(rec_.winners.size() + standing.size()) == seats_) {
        // As many continuing candidates as open seats: all are elected even
        // though none reached quota, and the count ends here.
        std::vector<int> remaining = standing;
        while (!remaining.empty()) {
          bool unused = false;
          const int c =
              select(remaining, current, /*want_max=*/true, /*allow_lot=*/false, &unused);
          std::erase(remaining, c);
          status_[c] = CandidateStatus::ElectedWithoutQuota;
          RoundEvent ev;
          ev.kind = EventKind::ElectedWithoutQuota;
          ev.candidate = c;
          ev.round = round;
          ev.amount = current[c];
          rec_.events.push_back(std::move(ev));
          rec_.winners.push_back(c);
        }
        break;
      }

      // One transfer per round: the largest pending surplus if any winner
      // still holds one (a zero surplus still takes its round, as official
      // counts show), otherwise the lowest continuing candidate goes out.
      if (!pending_.empty()) {
        std::vector<Rational> keys(n_, Rational(0));
        for (int c : pending_) keys[c] = held_total(c);
        bool by_lot = false;
        const int c = select(pending_, keys, /*want_max=*/true, /*allow_lot=*/true, &by_lot);
        std::erase(pending_, c);
        transfer_surplus(c, round, quota, by_lot);
      } else {
        bool by_lot = false;
        const int c = select(standing, current, /*want_max=*/false, /*allow_lot=*/true, &by_lot);
        eliminate(c, round, by_lot);
      }
    }

    finish();
    return std::move(rec_);
  }

 private:
  Rational held_total(int c) const {
    Rational t(0);
    for (const Pile& p : held_[c]) t += p.value * p.count;
    return t;
  }

  // First continuing candidate in the ranking; elected and excluded
  // candidates cannot receive papers.
  int next_standing(const Ballot& ranking) const {
    for (int c : ranking) {
      if (status_[c] == CandidateStatus::Standing) return c;
    }
    return -1;
  }

  // Chooses the largest (or smallest) of `cands` by `key`. Tied candidates
  // are compared at the earliest recorded round where their totals differed,
  // narrowing until one remains; a tie across every round is settled by lot
  // (or by roster order where a lot is not called for).
  int select(const std::vector<int>& cands, const std::vector<Rational>& key, bool want_max,
             bool allow_lot, bool* used_lot) {
    *used_lot = false;
    std::vector<int> set = cands;
    std::sort(set.begin(), set.end());
    if (set.size() > 1) {
      Rational best = key[set.front()];
      for (int c : set) {
        if (want_max ? key[c] > best : key[c] < best) best = key[c];
      }
      std::erase_if(set, [&](int c) { return key[c] != best; });
    }
    for (std::size_t r = 0; r < rec_.rounds.size() && set.size() > 1; ++r) {
      const auto& totals = rec_.rounds[r].totals;
      const bool all_present =
          std::all_of(set.begin(), set.end(), [&](int c) { return totals[c].has_value(); });
      if (!all_present) continue;
      Rational best = *totals[set.front()];
      for (int c : set) {
        if (want_max ? *totals[c] > best : *totals[c] < best) best = *totals[c];
      }
      std::erase_if(set, [&](int c) { return *totals[c] != best; });
    }
    if (set.size() == 1 || !allow_lot) return set.front();
    *used_lot = true;
    return set[lot_.pick(static_cast<int>(set.size()))];
  }

  void transfer_surplus(int c, int round, const Rational& quota, bool by_lot) {
    const Rational total = held_total(c);
    const Rational surplus = total - quota;
    const Rational ratio = surplus / total;

    RoundEvent ev;
    ev.kind = EventKind::SurplusTransferred;
    ev.candidate = c;
    ev.round = round;
    ev.amount = surplus;
    ev.transfer_value = ratio;
    ev.by_lot = by_lot;

    std::vector<Rational> got(n_, Rational(0));
    Rational received(0);
    for (Pile& p : held_[c]) {
      const int next = next_standing(*p.ranking);
      if (next < 0) continue;  // exhausted: its share lands in the difference below
      Rational value = p.value * ratio;
      if (config_.arithmetic == Arithmetic::Fixed5) value = truncate5(value);
      if (value == 0) continue;
      got[next] += value * p.count;
      received += value * p.count;
      held_[next].push_back(Pile{p.ranking, p.count, std::move(value)});
    }
    held_[c].clear();
    transferred_[c] = true;

    // Whatever the surplus did not deliver to continuing candidates --
    // exhausted papers plus truncation shavings -- leaves circulation.
    ev.to_nontransferable = surplus - received;
    nontransferable_ += ev.to_nontransferable;
    for (int i = 0; i < n_; ++i) {
      if (got[i] != 0) ev.recipients.emplace_back(i, std::move(got[i]));
    }
    const Rational lost = ev.to_nontransferable;
    rec_.events.push_back(std::move(ev));
    note_exhausted(c, round, lost);
  }

  void eliminate(int c, int round, bool by_lot) {
    RoundEvent ev;
    ev.kind = EventKind::Eliminated;
    ev.candidate = c;
    ev.round = round;
    ev.amount = held_total(c);
    ev.by_lot = by_lot;

    status_[c] = CandidateStatus::Eliminated;
    elimination_order_.push_back(c);
    final_totals_[c] = ev.amount;

    std::vector<Rational> got(n_, Rational(0));
    Rational exhausted(0);
    for (Pile& p : held_[c]) {
      const int next = next_standing(*p.ranking);
      if (next < 0) {
        exhausted += p.value * p.count;
        continue;
      }
      got[next] += p.value * p.count;
      held_[next].push_back(std::move(p));
    }
    held_[c].clear();

    ev.to_nontransferable = exhausted;
    nontransferable_ += exhausted;
    for (int i = 0; i < n_; ++i) {
      if (got[i] != 0) ev.recipients.emplace_back(i, std::move(got[i]));
    }
    rec_.events.push_back(std::move(ev));
    note_exhausted(c, round, exhausted);
  }

  void note_exhausted(int source, int round, const Rational& amount) {
    if (amount == 0) return;
    RoundEvent ev;
    ev.kind = EventKind::ExhaustedToNontransferable;
    ev.candidate = source;
    ev.round = round;
    ev.amount = amount;
    rec_.events.push_back(std::move(ev));
  }

  void finish() {
    const Rational quota(rec_.quota);
    for (int i = 0; i < n_; ++i) {
      switch (status_[i]) {
        case CandidateStatus::Elected:
          final_totals_[i] = transferred_[i] ? quota : held_total(i);
          break;
        case CandidateStatus::ElectedWithoutQuota:
        case CandidateStatus::Standing:
          final_totals_[i] = held_total(i);
          break;
        case CandidateStatus::Eliminated:
          break;  // kept from the elimination event
      }
    }
    rec_.statuses = status_;
    rec_.final_totals = final_totals_;
    rec_.final_nontransferable = nontransferable_;

    rec_.ranking = rec_.winners;
    std::vector<int> losers;
    for (int i = 0; i < n_; ++i) {
      if (status_[i] == CandidateStatus::Standing) losers.push_back(i);
    }
    std::sort(losers.begin(), losers.end(), [&](int a, int b) {
      if (final_totals_[a] != final_totals_[b]) return final_totals_[a] > final_totals_[b];
      return a < b;
    });
    rec_.ranking.insert(rec_.ranking.end(), losers.begin(), losers.end());
    for (auto it = elimination_order_.rbegin(); it != elimination_order_.rend(); ++it) {
      rec_.ranking.push_back(*it);
    }
  }

  const Profile& profile_;
  int seats_;
  EngineConfig config_;
  int n_;
  TabulationRecord rec_;
  SplitMix64 lot_;

  std::vector<CandidateStatus> status_;
  std::vector<std::vector<Pile>> held_;
  std::vector<bool> transferred_;  // winner's surplus already moved on
  std::vector<int> pending_;       // winners whose surplus has not moved yet
  std::vector<int> elimination_order_;
  std::vector<Rational> final_totals_;
  Rational nontransferable_ = Rational(0);
};

}  // namespace

TabulationRecord tabulate(const Election& election, const EngineConfig& config) {
  return Tabulator(election, config).run();
}

Rational penultimate_margin(const TabulationRecord& record, int a, int b) {
  const int n = static_cast<int>(record.roster.size());
  if (a < 0 || a >= n || b < 0 || b >= n || a == b) {
    throw std::invalid_argument("penultimate_margin: bad candidate pair");
  }
  for (std::size_t r = record.rounds.size(); r-- > 0;) {
    const auto& ta = record.rounds[r].totals[a];
    const auto& tb = record.rounds[r].totals[b];
    if (ta && tb) return *ta - *tb;
  }
  throw std::invalid_argument("penultimate_margin: candidates never counted together");
}

}  // namespace stv
