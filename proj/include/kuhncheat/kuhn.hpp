// Copyright 2026 The kuhncheat Authors.
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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kuhncheat/errors.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/rational.hpp"

namespace kuhncheat {

// How the single betting round ended.
enum class BettingOutcome {
  BetFold,       // P1 bets, P2 folds
  BetCall,       // P1 bets, P2 calls: showdown for $2
  CheckBetFold,  // P1 checks, P2 bets, P1 folds
  CheckBetCall,  // P1 checks, P2 bets, P1 calls: showdown for $2
  CheckCheck,    // showdown for the antes
};

// Total money (ante plus any bet) each player put in at the given outcome.
constexpr std::array<int, 2> contributions(BettingOutcome outcome) {
  switch (outcome) {
    case BettingOutcome::BetFold: return {2, 1};
    case BettingOutcome::BetCall: return {2, 2};
    case BettingOutcome::CheckBetFold: return {1, 2};
    case BettingOutcome::CheckBetCall: return {2, 2};
    case BettingOutcome::CheckCheck: return {1, 1};
  }
  return {0, 0};
}

struct RoundFlags {
  bool p1_cheated = false;
  bool p2_cheated = false;
  bool p1_caught_p2 = false;
  bool p2_caught_p1 = false;

  bool valid() const {
    return (!p1_caught_p2 || p2_cheated) && (!p2_caught_p1 || p1_cheated);
  }
  friend bool operator==(const RoundFlags&, const RoundFlags&) = default;
};

// Plain Kuhn payoff: a fold forfeits the folder's contribution, a showdown
// transfers the loser's contribution.
inline Rational kuhn_payoff(const Deal& deal, BettingOutcome outcome) {
  const auto paid = contributions(outcome);
  switch (outcome) {
    case BettingOutcome::BetFold: return paid[1];
    case BettingOutcome::CheckBetFold: return -paid[0];
    default: return beats(deal.p1, deal.p2) ? paid[1] : -paid[0];
  }
}

// Payoff to player 1 once detection has been resolved. Mutual catching voids
// the round; a single catch hands the catcher the cheater's contribution.
inline Rational compute_terminal_payoff(const Deal& deal, BettingOutcome outcome,
                                        const RoundFlags& flags) {
  if (!flags.valid()) {
    throw InvalidFlagsError("a caught flag is set for a player who did not cheat");
  }
  const auto paid = contributions(outcome);
  if (flags.p1_caught_p2 && flags.p2_caught_p1) return 0;
  if (flags.p1_caught_p2) return paid[1];
  if (flags.p2_caught_p1) return -paid[0];
  return kuhn_payoff(deal, outcome);
}

struct BuildOptions {
  // Put the player-2 cheat layer above the player-1 cheat layer. The game is
  // the same; only the tree order changes.
  bool p2_cheat_layer_first = false;
};

namespace detail {

enum class LayerEvent { P1Cheats, P2Cheats, P1Detects, P2Detects };

struct Layer {
  LayerEvent event;
  Rational probability;
  const char* yes_label;
  const char* no_label;
};

struct RoundState {
  std::array<bool, 2> cheated = {false, false};
  std::array<bool, 2> detect_fired = {false, false};

  bool caught_opponent(Player p) const {
    return detect_fired[index_of(p)] && cheated[index_of(opponent(p))];
  }
  RoundFlags flags() const {
    return {cheated[0], cheated[1], caught_opponent(Player::P1), caught_opponent(Player::P2)};
  }
};

class KuhnTreeWriter {
 public:
  explicit KuhnTreeWriter(std::vector<Layer> layers) : layers_(std::move(layers)) {}

  GameTree build(TreeMetadata metadata) && {
    layer(std::nullopt, 0, RoundState{});
    return std::move(builder_).finish(std::move(metadata));
  }

 private:
  void layer(std::optional<NodeId> parent, std::size_t depth, RoundState state) {
    if (depth == layers_.size()) {
      deal_layer(parent, state);
      return;
    }
    const Layer& l = layers_[depth];
    const NodeId id = builder_.add_chance(
        parent, {{l.yes_label, l.probability}, {l.no_label, 1 - l.probability}});
    for (bool fires : {true, false}) {
      RoundState next = state;
      switch (l.event) {
        case LayerEvent::P1Cheats: next.cheated[0] = fires; break;
        case LayerEvent::P2Cheats: next.cheated[1] = fires; break;
        case LayerEvent::P1Detects: next.detect_fired[0] = fires; break;
        case LayerEvent::P2Detects: next.detect_fired[1] = fires; break;
      }
      layer(id, depth + 1, next);
    }
  }

  void deal_layer(std::optional<NodeId> parent, const RoundState& state) {
    std::vector<ChanceBranch> branches;
    for (const Deal& deal : kDeals) branches.push_back({deal.label(), Rational(1, 6)});
    const NodeId id = builder_.add_chance(parent, std::move(branches));
    for (const Deal& deal : kDeals) betting(id, deal, state);
  }

  std::string key(Player player, const Deal& deal, const RoundState& state,
                  const std::string& history) const {
    const bool p1 = player == Player::P1;
    std::string out = p1 ? "P1 " : "P2 ";
    out += to_char(p1 ? deal.p1 : deal.p2);
    if (state.cheated[index_of(player)]) {
      out += " peek:";
      out += to_char(p1 ? deal.p2 : deal.p1);
    }
    if (state.caught_opponent(player)) out += " caught";
    out += " @";
    out += history.empty() ? "-" : history;
    return out;
  }

  void terminal(NodeId parent, const Deal& deal, BettingOutcome outcome,
                const RoundState& state) {
    builder_.add_terminal(parent, compute_terminal_payoff(deal, outcome, state.flags()));
  }

  void betting(NodeId parent, const Deal& deal, const RoundState& state) {
    const NodeId open = builder_.add_decision(parent, Player::P1, key(Player::P1, deal, state, ""),
                                              {Action::Bet, Action::Check});
    const NodeId facing_bet = builder_.add_decision(
        open, Player::P2, key(Player::P2, deal, state, "b"), {Action::Call, Action::Fold});
    terminal(facing_bet, deal, BettingOutcome::BetCall, state);
    terminal(facing_bet, deal, BettingOutcome::BetFold, state);
    const NodeId after_check = builder_.add_decision(
        open, Player::P2, key(Player::P2, deal, state, "k"), {Action::Bet, Action::Check});
    const NodeId reraise = builder_.add_decision(
        after_check, Player::P1, key(Player::P1, deal, state, "kb"), {Action::Call, Action::Fold});
    terminal(reraise, deal, BettingOutcome::CheckBetCall, state);
    terminal(reraise, deal, BettingOutcome::CheckBetFold, state);
    terminal(after_check, deal, BettingOutcome::CheckCheck, state);
  }

  std::vector<Layer> layers_;
  TreeBuilder builder_;
};

inline std::vector<Layer> cheat_layers(const CheatConfig& config, const BuildOptions& options) {
  Layer p1{LayerEvent::P1Cheats, config.p, "P1C", "P1N"};
  Layer p2{LayerEvent::P2Cheats, config.q, "P2C", "P2N"};
  if (options.p2_cheat_layer_first) return {p2, p1};
  return {p1, p2};
}

}  // namespace detail

// Classic Kuhn poker: one six-way deal node above the betting round.
inline GameTree build_classic() {
  return detail::KuhnTreeWriter({}).build({"classic", CheatConfig{}});
}

// Probabilistic peeking by either or both players, no detection. Both branches
// of each cheat layer are always built, even at probability 0 or 1.
inline GameTree build_cheating(const CheatConfig& raw, const BuildOptions& options = {}) {
  const CheatConfig config = raw.canonical();
  config.validate();
  if (config.has_detection()) {
    throw WrongVariantError("build_cheating requires r1 = r2 = 0; use build_detection");
  }
  return detail::KuhnTreeWriter(detail::cheat_layers(config, options))
      .build({"cheating", config});
}

// Cheating plus probabilistic detection. Layers: cheat, cheat, P1 detects,
// P2 detects, deal. Detection layers appear on every branch; a detection that
// fires against an honest opponent has no effect.
inline GameTree build_detection(const CheatConfig& raw, const BuildOptions& options = {}) {
  const CheatConfig config = raw.canonical();
  config.validate();
  auto layers = detail::cheat_layers(config, options);
  layers.push_back({detail::LayerEvent::P1Detects, config.r1, "P1D", "P1F"});
  layers.push_back({detail::LayerEvent::P2Detects, config.r2, "P2D", "P2F"});
  return detail::KuhnTreeWriter(std::move(layers)).build({"detection", config});
}

// Smallest variant that represents `config`.
inline GameTree build_variant(const CheatConfig& raw) {
  const CheatConfig config = raw.canonical();
  config.validate();
  if (config.is_classic()) return build_classic();
  if (!config.has_detection()) return build_cheating(config);
  return build_detection(config);
}

// What the chance layers and betting decided on the way to a node, read back
// from branch labels. Works on any tree produced by the builders, including
// one re-imported from an .efg file.
struct NodeView {
  std::optional<Deal> deal;
  RoundFlags flags;
  std::vector<Action> history;

  std::string history_string() const {
    std::string out;
    for (Action a : history) out += history_code(a);
    return out;
  }
};

inline NodeView describe_node(const GameTree& tree, NodeId id) {
  NodeView view;
  bool p1_fired = false;
  bool p2_fired = false;
  for (const PathStep& step : path_to(tree, id)) {
    const Node& node = tree.node(step.node);
    if (node.is_chance()) {
      const std::string& label = node.chance().branches.at(step.child).label;
      if (auto d = deal_index(label)) view.deal = kDeals[*d];
      else if (label == "P1C") view.flags.p1_cheated = true;
      else if (label == "P2C") view.flags.p2_cheated = true;
      else if (label == "P1D") p1_fired = true;
      else if (label == "P2D") p2_fired = true;
    } else if (node.is_decision()) {
      view.history.push_back(node.decision().actions.at(step.child));
    }
  }
  view.flags.p1_caught_p2 = p1_fired && view.flags.p2_cheated;
  view.flags.p2_caught_p1 = p2_fired && view.flags.p1_cheated;
  return view;
}

}  // namespace kuhncheat
