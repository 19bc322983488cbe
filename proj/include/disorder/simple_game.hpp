#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "disorder/errors.hpp"

namespace disorder {

// Coalitions over at most 24 players, encoded as bitmasks (bit r = player r).
using Coalition = std::uint32_t;
using VoteVector = std::vector<std::uint8_t>;

inline constexpr int kMaxPlayers = 24;

inline Coalition mask_from_votes(const VoteVector& votes) {
  Coalition mask = 0;
  for (std::size_t i = 0; i < votes.size(); ++i)
    if (votes[i]) mask |= Coalition{1} << i;
  return mask;
}

// Monotone simple game: the full membership table of the winning family.
// Construction validates the three axioms (full coalition wins, empty
// coalition loses, supersets of winners win); nothing is silently completed.
class SimpleGame {
 public:
  // `winning` lists every winning coalition explicitly.
  static SimpleGame make(int players, const std::vector<Coalition>& winning);
  // Up-closure of an antichain of minimal winning coalitions.
  static SimpleGame from_minimal_winning(int players,
                                         const std::vector<Coalition>& minimal);

  static SimpleGame majority(int players);   // quota floor(p/2) + 1
  static SimpleGame unanimity(int players);
  static SimpleGame dictator(int players, int player);
  static SimpleGame weighted(const std::vector<int>& weights, int quota);

  int players() const { return players_; }
  Coalition full_mask() const { return (Coalition{1} << players_) - 1; }
  bool wins(Coalition c) const { return winning_[c] != 0; }

  // Aggregated stop decision: 1 iff the yes-voters form a winning coalition.
  bool aggregate(const VoteVector& votes) const;

  // (value at v, value with player i forced to 1, value with i forced to 0).
  // The first always equals v_i * second + (1 - v_i) * third.
  struct Decomposition {
    bool at;
    bool with_one;
    bool with_zero;
  };
  Decomposition decompose(int player, const VoteVector& votes) const;

  // Antichain of minimal winning coalitions, sorted by mask.
  std::vector<Coalition> minimal_winning() const;

  // Given the other players' yes-votes, the aggregate with player i voting 0
  // and voting 1. first <= second by monotonicity; player i is pivotal where
  // the pair is (0, 1).
  std::pair<bool, bool> pivotal_gap(int player, Coalition others) const;

 private:
  SimpleGame(int players, std::vector<std::uint8_t> table)
      : players_(players), winning_(std::move(table)) {}
  static void validate(int players, const std::vector<std::uint8_t>& table);

  int players_ = 0;
  std::vector<std::uint8_t> winning_;  // indexed by coalition mask
};

}  // namespace disorder
