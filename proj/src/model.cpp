#include "stv/model.hpp"

#include <stdexcept>

namespace stv {

void Profile::add_ballots(const Ballot& ranking, long long count) {
  if (count <= 0) throw std::invalid_argument("add_ballots: count must be positive");
  std::vector<bool> seen(roster_.size(), false);
  for (int idx : ranking) {
    if (idx < 0 || idx >= num_candidates())
      throw std::invalid_argument("add_ballots: candidate index out of range");
    if (seen[idx]) throw std::invalid_argument("add_ballots: duplicate candidate in ranking");
    seen[idx] = true;
  }
  if (ranking.empty()) {
    blanks_ += count;
  } else {
    piles_[ranking] += count;
  }
  total_ += count;
}

std::vector<long long> Profile::first_place_totals() const {
  std::vector<long long> totals(roster_.size(), 0);
  for (const auto& [ranking, count] : piles_) {
    totals[ranking.front()] += count;
  }
  return totals;
}

int Profile::candidate_index(const std::string& name) const {
  for (int i = 0; i < num_candidates(); ++i) {
    if (roster_[i].name == name) return i;
  }
  return -1;
}

}  // namespace stv
