#include "disorder/simple_game.hpp"

#include <bit>
#include <stdexcept>

namespace disorder {

namespace {

void check_player_count(int players) {
  if (players < 1 || players > kMaxPlayers)
    throw std::invalid_argument("player count must be in [1, 24]");
}

}  // namespace

void SimpleGame::validate(int players, const std::vector<std::uint8_t>& table) {
  const Coalition full = (Coalition{1} << players) - 1;
  if (table[0]) throw EmptyWins();
  if (!table[full]) throw FullLoses();
  // Single-bit lift suffices: monotone under one-element additions implies
  // monotone under inclusion.
  for (Coalition c = 0; c <= full; ++c) {
    if (!table[c]) continue;
    for (int i = 0; i < players; ++i) {
      const Coalition up = c | (Coalition{1} << i);
      if (!table[up]) throw NotMonotone(c, up);
    }
  }
}

SimpleGame SimpleGame::make(int players, const std::vector<Coalition>& winning) {
  check_player_count(players);
  const Coalition full = (Coalition{1} << players) - 1;
  std::vector<std::uint8_t> table(static_cast<std::size_t>(full) + 1, 0);
  for (Coalition c : winning) {
    if (c > full) throw std::invalid_argument("coalition mask outside player set");
    table[c] = 1;
  }
  validate(players, table);
  return SimpleGame(players, std::move(table));
}

SimpleGame SimpleGame::from_minimal_winning(int players,
                                            const std::vector<Coalition>& minimal) {
  check_player_count(players);
  const Coalition full = (Coalition{1} << players) - 1;
  std::vector<std::uint8_t> table(static_cast<std::size_t>(full) + 1, 0);
  for (Coalition c : minimal) {
    if (c > full) throw std::invalid_argument("coalition mask outside player set");
    table[c] = 1;
  }
  // Up-closure by single-bit lifts, low masks first.
  for (Coalition c = 0; c <= full; ++c) {
    if (!table[c]) continue;
    for (int i = 0; i < players; ++i) table[c | (Coalition{1} << i)] = 1;
  }
  validate(players, table);
  return SimpleGame(players, std::move(table));
}

SimpleGame SimpleGame::majority(int players) {
  check_player_count(players);
  const int quota = players / 2 + 1;
  const Coalition full = (Coalition{1} << players) - 1;
  std::vector<std::uint8_t> table(static_cast<std::size_t>(full) + 1, 0);
  for (Coalition c = 0; c <= full; ++c)
    table[c] = std::popcount(c) >= quota ? 1 : 0;
  return SimpleGame(players, std::move(table));
}

SimpleGame SimpleGame::unanimity(int players) {
  check_player_count(players);
  const Coalition full = (Coalition{1} << players) - 1;
  std::vector<std::uint8_t> table(static_cast<std::size_t>(full) + 1, 0);
  table[full] = 1;
  return SimpleGame(players, std::move(table));
}

SimpleGame SimpleGame::dictator(int players, int player) {
  check_player_count(players);
  if (player < 0 || player >= players)
    throw std::invalid_argument("dictator index outside player set");
  const Coalition full = (Coalition{1} << players) - 1;
  std::vector<std::uint8_t> table(static_cast<std::size_t>(full) + 1, 0);
  const Coalition bit = Coalition{1} << player;
  for (Coalition c = 0; c <= full; ++c) table[c] = (c & bit) ? 1 : 0;
  return SimpleGame(players, std::move(table));
}

SimpleGame SimpleGame::weighted(const std::vector<int>& weights, int quota) {
  const int players = static_cast<int>(weights.size());
  check_player_count(players);
  if (quota < 1) throw EmptyWins();
  int total = 0;
  for (int w : weights) {
    if (w < 0) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (total < quota) throw FullLoses();
  const Coalition full = (Coalition{1} << players) - 1;
  std::vector<std::uint8_t> table(static_cast<std::size_t>(full) + 1, 0);
  for (Coalition c = 0; c <= full; ++c) {
    int sum = 0;
    for (int i = 0; i < players; ++i)
      if (c & (Coalition{1} << i)) sum += weights[i];
    table[c] = sum >= quota ? 1 : 0;
  }
  return SimpleGame(players, std::move(table));
}

bool SimpleGame::aggregate(const VoteVector& votes) const {
  if (static_cast<int>(votes.size()) != players_)
    throw std::invalid_argument("vote vector length mismatch");
  return wins(mask_from_votes(votes));
}

SimpleGame::Decomposition SimpleGame::decompose(int player,
                                                const VoteVector& votes) const {
  const Coalition mask = mask_from_votes(votes);
  const Coalition bit = Coalition{1} << player;
  return {wins(mask), wins(mask | bit), wins(mask & ~bit)};
}

std::vector<Coalition> SimpleGame::minimal_winning() const {
  std::vector<Coalition> out;
  const Coalition full = full_mask();
  for (Coalition c = 0; c <= full; ++c) {
    if (!wins(c)) continue;
    bool minimal = true;
    for (int i = 0; i < players_ && minimal; ++i) {
      const Coalition bit = Coalition{1} << i;
      if ((c & bit) && wins(c & ~bit)) minimal = false;
    }
    if (minimal) out.push_back(c);
  }
  return out;
}

std::pair<bool, bool> SimpleGame::pivotal_gap(int player, Coalition others) const {
  const Coalition bit = Coalition{1} << player;
  const Coalition base = others & ~bit;
  return {wins(base), wins(base | bit)};
}

}  // namespace disorder
