// Copyright 2026 The nmsolve Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Rules of the bundled extensive-form games.

#include <algorithm>
#include <bit>
#include <string>

#include "nmsolve/error.h"
#include "nmsolve/games.h"

namespace nmsolve {
namespace {

template <typename Derived>
class StateBase : public GameState {
 public:
  std::unique_ptr<GameState> Child(std::size_t action) const override {
    auto next = std::make_unique<Derived>(static_cast<const Derived&>(*this));
    next->Apply(action);
    return next;
  }
};

// Kuhn: cards 0 < 1 < 2, ante 1, bet 1. Actions are pass (0) and bet (1);
// after a bet, pass means fold and bet means call.
class KuhnState : public StateBase<KuhnState> {
 public:
  bool IsTerminal() const override {
    return h_ == "pp" || h_ == "pbp" || h_ == "pbb" || h_ == "bp" || h_ == "bb";
  }
  bool IsChance() const override { return cards_[1] < 0; }
  std::vector<std::pair<std::size_t, double>> ChanceOutcomes() const override {
    std::vector<std::pair<std::size_t, double>> out;
    const double p = cards_[0] < 0 ? 1.0 / 3 : 1.0 / 2;
    for (int c = 0; c < 3; ++c) {
      if (c != cards_[0]) out.emplace_back(c, p);
    }
    return out;
  }
  int CurrentPlayer() const override { return static_cast<int>(h_.size() % 2); }
  std::size_t NumActions() const override { return 2; }
  std::string InfosetKey() const override {
    return std::to_string(cards_[CurrentPlayer()]) + h_;
  }
  double PlayerOneUtility() const override {
    const double sign = cards_[0] > cards_[1] ? 1.0 : -1.0;
    if (h_ == "pp") return sign;
    if (h_ == "pbp") return -1.0;
    if (h_ == "bp") return 1.0;
    return 2.0 * sign;
  }
  void Apply(std::size_t a) {
    if (IsChance()) {
      (cards_[0] < 0 ? cards_[0] : cards_[1]) = static_cast<int>(a);
    } else {
      h_ += a == 0 ? 'p' : 'b';
    }
  }

 private:
  int cards_[2] = {-1, -1};
  std::string h_;
};

// Leduc: six cards, card c has rank c / 2. Ante 1; bets are 1 in the first
// round and 2 in the second; at most two bets (bet plus raise) per round.
class LeducState : public StateBase<LeducState> {
 public:
  bool IsTerminal() const override { return done_; }
  bool IsChance() const override {
    return !done_ && (priv_[1] < 0 || (round_ == 1 && pub_ < 0));
  }
  std::vector<std::pair<std::size_t, double>> ChanceOutcomes() const override {
    std::vector<std::pair<std::size_t, double>> out;
    for (int c = 0; c < 6; ++c) {
      if (c != priv_[0] && c != priv_[1]) out.emplace_back(c, 0.0);
    }
    for (auto& o : out) o.second = 1.0 / static_cast<double>(out.size());
    return out;
  }
  int CurrentPlayer() const override { return to_act_; }
  std::size_t NumActions() const override { return Legal().size(); }
  std::string InfosetKey() const override {
    std::string key = std::to_string(priv_[to_act_]);
    key += pub_ < 0 ? "-" : std::to_string(pub_);
    return key + ":" + history_;
  }
  double PlayerOneUtility() const override {
    if (folded_ == 0) return -contrib_[0];
    if (folded_ == 1) return contrib_[1];
    const int r0 = priv_[0] / 2, r1 = priv_[1] / 2, rp = pub_ / 2;
    if (r0 == rp) return contrib_[1];
    if (r1 == rp) return -contrib_[0];
    if (r0 == r1) return 0.0;
    return r0 > r1 ? contrib_[1] : -contrib_[0];
  }
  void Apply(std::size_t a) {
    if (IsChance()) {
      if (priv_[0] < 0) {
        priv_[0] = static_cast<int>(a);
      } else if (priv_[1] < 0) {
        priv_[1] = static_cast<int>(a);
      } else {
        pub_ = static_cast<int>(a);
        history_ += '/';
      }
      return;
    }
    const char act = Legal()[a];
    history_ += act;
    const int me = to_act_, other = 1 - to_act_;
    const double size = round_ == 0 ? 1.0 : 2.0;
    switch (act) {
      case 'k':
        if (moves_ > 0) {
          EndRound();
          return;
        }
        break;
      case 'b':
      case 'r':
        contrib_[me] = contrib_[other] + size;
        ++bets_;
        facing_ = true;
        break;
      case 'c':
        contrib_[me] = contrib_[other];
        EndRound();
        return;
      case 'f':
        folded_ = me;
        done_ = true;
        return;
    }
    ++moves_;
    to_act_ = other;
  }

 private:
  std::string Legal() const {
    if (!facing_) return "kb";
    return bets_ < 2 ? "fcr" : "fc";
  }
  void EndRound() {
    if (round_ == 1) {
      done_ = true;
      return;
    }
    round_ = 1;
    bets_ = 0;
    moves_ = 0;
    facing_ = false;
    to_act_ = 0;
  }

  int priv_[2] = {-1, -1};
  int pub_ = -1;
  int round_ = 0;
  int bets_ = 0;
  int moves_ = 0;
  bool facing_ = false;
  int to_act_ = 0;
  int folded_ = -1;
  bool done_ = false;
  double contrib_[2] = {1.0, 1.0};
  std::string history_;
};

// Goofspiel with cards 1..n and a fixed prize order. Player 2 bids without
// seeing player 1's current bid. The winner of a round takes the prize; a tie
// splits it (full information) or discards it (limited information), and
// either way leaves the score difference unchanged. Utility is the sign of
// the final score difference.
class GoofspielState : public StateBase<GoofspielState> {
 public:
  GoofspielState(int n, bool limited, bool descending)
      : n_(n), limited_(limited) {
    for (int i = 0; i < n; ++i) prizes_.push_back(descending ? n - i : i + 1);
    hands_[0] = hands_[1] = (1u << n) - 1;
  }
  bool IsTerminal() const override { return round_ == n_; }
  bool IsChance() const override { return false; }
  std::vector<std::pair<std::size_t, double>> ChanceOutcomes() const override {
    return {};
  }
  int CurrentPlayer() const override { return pending_ < 0 ? 0 : 1; }
  std::size_t NumActions() const override {
    return static_cast<std::size_t>(std::popcount(hands_[CurrentPlayer()]));
  }
  std::string InfosetKey() const override {
    return std::to_string(CurrentPlayer()) + ":" + views_[CurrentPlayer()];
  }
  double PlayerOneUtility() const override {
    return diff_ > 0 ? 1.0 : (diff_ < 0 ? -1.0 : 0.0);
  }
  void Apply(std::size_t a) {
    const int p = CurrentPlayer();
    int card = -1;
    std::size_t seen = 0;
    for (int c = 0; c < n_; ++c) {
      if ((hands_[p] >> c & 1u) && seen++ == a) card = c;
    }
    hands_[p] &= ~(1u << card);
    if (p == 0) {
      pending_ = card;
      return;
    }
    const int b0 = pending_, b1 = card;
    const int prize = prizes_[round_];
    diff_ += b0 > b1 ? prize : (b0 < b1 ? -prize : 0);
    const char o0 = b0 > b1 ? 'W' : (b0 < b1 ? 'L' : 'T');
    const char o1 = b0 > b1 ? 'L' : (b0 < b1 ? 'W' : 'T');
    views_[0] += std::to_string(b0 + 1);
    views_[1] += std::to_string(b1 + 1);
    if (limited_) {
      views_[0] += o0;
      views_[1] += o1;
    } else {
      views_[0] += std::to_string(b1 + 1);
      views_[1] += std::to_string(b0 + 1);
    }
    views_[0] += ',';
    views_[1] += ',';
    pending_ = -1;
    ++round_;
  }

 private:
  int n_;
  bool limited_;
  std::vector<int> prizes_;
  unsigned hands_[2];
  int round_ = 0;
  int pending_ = -1;
  int diff_ = 0;
  std::string views_[2];
};

// Liar's dice with one die per player. Bid b means quantity b / F + 1 of face
// b % F + 1; bids must strictly increase. Player 1 opens with a bid. Calling
// liar ends the game: the last bidder wins 1 if at least `quantity` dice show
// the face, else the caller wins 1.
class LiarsDiceState : public StateBase<LiarsDiceState> {
 public:
  explicit LiarsDiceState(int faces) : f_(faces) {}
  bool IsTerminal() const override { return called_; }
  bool IsChance() const override { return dice_[1] < 0; }
  std::vector<std::pair<std::size_t, double>> ChanceOutcomes() const override {
    std::vector<std::pair<std::size_t, double>> out;
    for (int v = 0; v < f_; ++v) out.emplace_back(v, 1.0 / f_);
    return out;
  }
  int CurrentPlayer() const override { return static_cast<int>(bids_.size() % 2); }
  std::size_t NumActions() const override {
    const int next = bids_.empty() ? 0 : bids_.back() + 1;
    return static_cast<std::size_t>(2 * f_ - next) + (bids_.empty() ? 0 : 1);
  }
  std::string InfosetKey() const override {
    std::string key = std::to_string(dice_[CurrentPlayer()]) + ":";
    for (int b : bids_) key += std::to_string(b) + ",";
    return key;
  }
  double PlayerOneUtility() const override {
    const int b = bids_.back();
    const int quantity = b / f_ + 1, face = b % f_;
    const int count = (dice_[0] == face) + (dice_[1] == face);
    const int bidder = static_cast<int>((bids_.size() - 1) % 2);
    const int winner = count >= quantity ? bidder : 1 - bidder;
    return winner == 0 ? 1.0 : -1.0;
  }
  void Apply(std::size_t a) {
    if (IsChance()) {
      (dice_[0] < 0 ? dice_[0] : dice_[1]) = static_cast<int>(a);
      return;
    }
    const int next = bids_.empty() ? 0 : bids_.back() + 1;
    const int bid = next + static_cast<int>(a);
    if (bid >= 2 * f_) {
      called_ = true;
    } else {
      bids_.push_back(bid);
    }
  }

 private:
  int f_;
  int dice_[2] = {-1, -1};
  std::vector<int> bids_;
  bool called_ = false;
};

}  // namespace

std::unique_ptr<GameState> kuhn_root() { return std::make_unique<KuhnState>(); }

std::unique_ptr<GameState> leduc_root() { return std::make_unique<LeducState>(); }

std::unique_ptr<GameState> goofspiel_root(int ranks, bool limited_info,
                                          bool descending) {
  if (ranks != 4 && ranks != 5) {
    Fail(ErrorKind::kConfig, "goofspiel supports 4 or 5 ranks");
  }
  return std::make_unique<GoofspielState>(ranks, limited_info, descending);
}

std::unique_ptr<GameState> liars_dice_root(int faces) {
  if (faces != 4 && faces != 5) {
    Fail(ErrorKind::kConfig, "liar's dice supports 4 or 5 faces");
  }
  return std::make_unique<LiarsDiceState>(faces);
}

}  // namespace nmsolve
