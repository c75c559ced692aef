#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stv {

struct Candidate {
  std::string name;
  std::string party;  // empty when unknown

  friend bool operator==(const Candidate&, const Candidate&) = default;
};

// A ballot is a strict preference order over a subset of candidates,
// stored as 0-based roster indices, most preferred first.
using Ballot = std::vector<int>;

// Grouped ballot data: identical rankings collapse into one pile.
class Profile {
 public:
  Profile() = default;
  explicit Profile(std::vector<Candidate> roster) : roster_(std::move(roster)) {}

  const std::vector<Candidate>& roster() const { return roster_; }
  int num_candidates() const { return static_cast<int>(roster_.size()); }

  const std::map<Ballot, long long>& piles() const { return piles_; }

  // Adds `count` copies of `ranking`. Throws std::invalid_argument on a
  // ranking with out-of-range indices, duplicates, or non-positive count.
  void add_ballots(const Ballot& ranking, long long count);

  // Total ballots cast, including fully blank ones tracked separately.
  long long total_voters() const { return total_; }
  long long blank_ballots() const { return blanks_; }
  long long valid_voters() const { return total_ - blanks_; }

  // Some published counts report more ballots cast than valid rankings
  // (rejected papers). The declared total, when present, feeds quota math.
  std::optional<long long> declared_total() const { return declared_total_; }
  void set_declared_total(long long t) { declared_total_ = t; }

  // Ballot figure the quota is computed from: the declared total when one
  // was published, otherwise the valid papers actually seen.
  long long quota_basis() const { return declared_total_ ? *declared_total_ : valid_voters(); }

  std::vector<long long> first_place_totals() const;

  int candidate_index(const std::string& name) const;  // -1 when absent

 private:
  std::vector<Candidate> roster_;
  std::map<Ballot, long long> piles_;
  long long total_ = 0;
  long long blanks_ = 0;
  std::optional<long long> declared_total_;
};

struct Election {
  Profile profile;
  int seats = 1;
  std::string title;  // empty when unknown
};

}  // namespace stv
