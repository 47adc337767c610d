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

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kuhncheat/errors.hpp"
#include "kuhncheat/rational.hpp"

namespace kuhncheat {

// ---------------------------------------------------------------------------
// Cards, deals, actions, players.

enum class Card : std::uint8_t { J = 0, Q = 1, K = 2 };

constexpr char to_char(Card card) {
  switch (card) {
    case Card::J: return 'J';
    case Card::Q: return 'Q';
    case Card::K: return 'K';
  }
  return '?';
}

inline std::optional<Card> card_from_char(char c) {
  switch (c) {
    case 'J': return Card::J;
    case 'Q': return Card::Q;
    case 'K': return Card::K;
    default: return std::nullopt;
  }
}

// K > Q > J.
constexpr bool beats(Card a, Card b) {
  return static_cast<int>(a) > static_cast<int>(b);
}

struct Deal {
  Card p1;
  Card p2;
  Card down;

  friend bool operator==(const Deal&, const Deal&) = default;

  std::string label() const { return {to_char(p1), to_char(p2)}; }
};

// The six deals in the row order used by the per-deal tables:
// KJ, KQ, QJ, QK, JK, JQ.
inline constexpr std::array<Deal, 6> kDeals = {{
    {Card::K, Card::J, Card::Q},
    {Card::K, Card::Q, Card::J},
    {Card::Q, Card::J, Card::K},
    {Card::Q, Card::K, Card::J},
    {Card::J, Card::K, Card::Q},
    {Card::J, Card::Q, Card::K},
}};

inline std::optional<std::size_t> deal_index(std::string_view label) {
  for (std::size_t i = 0; i < kDeals.size(); ++i) {
    if (kDeals[i].label() == label) return i;
  }
  return std::nullopt;
}

enum class Action : std::uint8_t { Bet = 0, Check = 1, Call = 2, Fold = 3 };

constexpr std::string_view to_string(Action action) {
  switch (action) {
    case Action::Bet: return "Bet";
    case Action::Check: return "Check";
    case Action::Call: return "Call";
    case Action::Fold: return "Fold";
  }
  return "?";
}

// One-letter history code: b, k, c, f.
constexpr char history_code(Action action) {
  switch (action) {
    case Action::Bet: return 'b';
    case Action::Check: return 'k';
    case Action::Call: return 'c';
    case Action::Fold: return 'f';
  }
  return '?';
}

inline std::optional<Action> action_from_string(std::string_view name) {
  for (Action a : {Action::Bet, Action::Check, Action::Call, Action::Fold}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

enum class Player : std::uint8_t { P1 = 0, P2 = 1 };

constexpr std::size_t index_of(Player p) { return static_cast<std::size_t>(p); }
constexpr int number_of(Player p) { return p == Player::P1 ? 1 : 2; }
constexpr Player opponent(Player p) {
  return p == Player::P1 ? Player::P2 : Player::P1;
}
inline constexpr std::array<Player, 2> kPlayers = {Player::P1, Player::P2};

// ---------------------------------------------------------------------------
// Variant parameters. Kept here because every tree carries them as metadata.

struct CheatConfig {
  Rational p = 0;   // player 1 cheats
  Rational q = 0;   // player 2 cheats
  Rational r1 = 0;  // player 1 detects
  Rational r2 = 0;  // player 2 detects

  // mpq values built from (num, den) are not reduced until canonicalized, and
  // GMP compares unreduced values incorrectly.
  CheatConfig canonical() const {
    CheatConfig out = *this;
    for (Rational* v : {&out.p, &out.q, &out.r1, &out.r2}) v->canonicalize();
    return out;
  }

  bool is_classic() const { return p == 0 && q == 0 && r1 == 0 && r2 == 0; }
  bool has_detection() const { return r1 != 0 || r2 != 0; }

  void validate() const {
    const std::pair<const char*, const Rational*> fields[] = {
        {"p", &p}, {"q", &q}, {"r1", &r1}, {"r2", &r2}};
    for (const auto& [name, value] : fields) {
      if (*value < 0 || *value > 1) {
        throw RangeError(std::string("probability ") + name + " = " +
                         to_string(*value) + " is outside [0, 1]");
      }
    }
  }

  friend bool operator==(const CheatConfig&, const CheatConfig&) = default;
};

// ---------------------------------------------------------------------------
// Tree representation.

using NodeId = std::size_t;
using InfoSetId = std::size_t;

struct ChanceBranch {
  std::string label;
  Rational probability;
};

struct ChanceNode {
  std::vector<ChanceBranch> branches;
};

struct DecisionNode {
  Player player;
  InfoSetId infoset;
  std::vector<Action> actions;
};

struct TerminalNode {
  Rational payoff;  // dollars to player 1; player 2 receives the negation
};

struct Node {
  NodeId id = 0;
  std::optional<NodeId> parent;
  std::variant<ChanceNode, DecisionNode, TerminalNode> kind;
  std::vector<NodeId> children;  // aligned with branches / actions

  bool is_chance() const { return std::holds_alternative<ChanceNode>(kind); }
  bool is_decision() const { return std::holds_alternative<DecisionNode>(kind); }
  bool is_terminal() const { return std::holds_alternative<TerminalNode>(kind); }
  const ChanceNode& chance() const { return std::get<ChanceNode>(kind); }
  const DecisionNode& decision() const { return std::get<DecisionNode>(kind); }
  const TerminalNode& terminal() const { return std::get<TerminalNode>(kind); }
};

struct InfoSet {
  InfoSetId id = 0;
  Player owner = Player::P1;
  std::vector<NodeId> members;
  std::vector<Action> actions;
  std::string label;
};

struct TreeMetadata {
  std::string variant;
  CheatConfig config;
};

// Immutable extensive-form game. Node ids are dense indices into `nodes()`;
// infoset ids are dense indices into `infosets()`.
class GameTree {
 public:
  GameTree(std::vector<Node> nodes, std::vector<InfoSet> infosets, NodeId root,
           TreeMetadata metadata)
      : nodes_(std::move(nodes)),
        infosets_(std::move(infosets)),
        root_(root),
        metadata_(std::move(metadata)) {}

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<InfoSet>& infosets() const { return infosets_; }
  const InfoSet& infoset(InfoSetId id) const { return infosets_.at(id); }
  NodeId root() const { return root_; }
  const TreeMetadata& metadata() const { return metadata_; }

  std::vector<InfoSetId> infosets_of(Player player) const {
    std::vector<InfoSetId> out;
    for (const InfoSet& info : infosets_) {
      if (info.owner == player) out.push_back(info.id);
    }
    return out;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<InfoSet> infosets_;
  NodeId root_;
  TreeMetadata metadata_;
};

// Depth-first construction helper. Nodes are numbered in creation order, so a
// recursive builder that creates a parent before its children yields preorder
// ids. Infosets are created on first use of a key.
class TreeBuilder {
 public:
  NodeId add_chance(std::optional<NodeId> parent, std::vector<ChanceBranch> branches) {
    for (ChanceBranch& b : branches) b.probability.canonicalize();
    return add(parent, ChanceNode{std::move(branches)});
  }

  NodeId add_decision(std::optional<NodeId> parent, Player player,
                      const std::string& infoset_key, std::vector<Action> actions) {
    auto [it, inserted] = infoset_index_.try_emplace(infoset_key, infosets_.size());
    if (inserted) {
      infosets_.push_back(InfoSet{infosets_.size(), player, {}, actions, infoset_key});
    }
    const InfoSetId infoset = it->second;
    const NodeId id = add(parent, DecisionNode{player, infoset, std::move(actions)});
    infosets_[infoset].members.push_back(id);
    return id;
  }

  NodeId add_terminal(std::optional<NodeId> parent, Rational payoff) {
    payoff.canonicalize();
    return add(parent, TerminalNode{std::move(payoff)});
  }

  GameTree finish(TreeMetadata metadata) && {
    return GameTree(std::move(nodes_), std::move(infosets_), 0, std::move(metadata));
  }

 private:
  template <class Kind>
  NodeId add(std::optional<NodeId> parent, Kind kind) {
    const NodeId id = nodes_.size();
    nodes_.push_back(Node{id, parent, std::move(kind), {}});
    if (parent) nodes_.at(*parent).children.push_back(id);
    return id;
  }

  std::vector<Node> nodes_;
  std::vector<InfoSet> infosets_;
  std::map<std::string, InfoSetId, std::less<>> infoset_index_;
};

// ---------------------------------------------------------------------------
// Path helpers.

// One step on the path from the root to a node.
struct PathStep {
  NodeId node;        // the node the step leaves from
  std::size_t child;  // index of the branch taken
};

inline std::vector<PathStep> path_to(const GameTree& tree, NodeId target) {
  std::vector<PathStep> steps;
  NodeId current = target;
  while (auto parent = tree.node(current).parent) {
    const auto& siblings = tree.node(*parent).children;
    const auto it = std::find(siblings.begin(), siblings.end(), current);
    steps.push_back({*parent, static_cast<std::size_t>(it - siblings.begin())});
    current = *parent;
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

// Product of chance probabilities on the root path of `target`.
inline Rational chance_reach(const GameTree& tree, NodeId target) {
  Rational reach = 1;
  for (const PathStep& step : path_to(tree, target)) {
    const Node& node = tree.node(step.node);
    if (node.is_chance()) reach *= node.chance().branches.at(step.child).probability;
  }
  return reach;
}

// The owner's (infoset, action-index) sequence on the root path of `target`.
inline std::vector<std::pair<InfoSetId, std::size_t>> own_sequence(
    const GameTree& tree, NodeId target, Player owner) {
  std::vector<std::pair<InfoSetId, std::size_t>> seq;
  for (const PathStep& step : path_to(tree, target)) {
    const Node& node = tree.node(step.node);
    if (node.is_decision() && node.decision().player == owner) {
      seq.emplace_back(node.decision().infoset, step.child);
    }
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Validation.

struct Diagnostic {
  std::string message;
  std::optional<NodeId> node;
  std::optional<InfoSetId> infoset;
};

inline std::vector<Diagnostic> validate_tree(const GameTree& tree) {
  std::vector<Diagnostic> out;
  const auto& nodes = tree.nodes();
  const auto& infosets = tree.infosets();
  auto node_text = [](NodeId id) { return "node " + std::to_string(id); };

  if (tree.root() >= nodes.size()) {
    out.push_back({"root id out of range", std::nullopt, std::nullopt});
    return out;
  }

  // Single root, consistent parent links, acyclic.
  std::vector<int> visits(nodes.size(), 0);
  std::vector<NodeId> stack = {tree.root()};
  if (nodes[tree.root()].parent) {
    out.push_back({"root has a parent", tree.root(), std::nullopt});
  }
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (++visits[id] > 1) {
      out.push_back({node_text(id) + " reached more than once (cycle or shared child)", id,
                     std::nullopt});
      continue;
    }
    for (NodeId child : nodes[id].children) {
      if (child >= nodes.size()) {
        out.push_back({node_text(id) + " has out-of-range child", id, std::nullopt});
        continue;
      }
      if (nodes[child].parent != id) {
        out.push_back({node_text(child) + " parent link does not match", child, std::nullopt});
      }
      stack.push_back(child);
    }
  }
  for (NodeId id = 0; id < nodes.size(); ++id) {
    if (nodes[id].id != id) {
      out.push_back({node_text(id) + " stores a different id", id, std::nullopt});
    }
    if (visits[id] == 0) {
      out.push_back({node_text(id) + " unreachable from root", id, std::nullopt});
    }
  }
  // Root paths are only meaningful once the parent links are sound.
  const bool linked = out.empty();

  std::vector<int> membership(nodes.size(), 0);
  for (const InfoSet& info : infosets) {
    for (NodeId member : info.members) {
      if (member < nodes.size()) ++membership[member];
    }
  }

  for (const Node& node : nodes) {
    if (const auto* chance = std::get_if<ChanceNode>(&node.kind)) {
      Rational sum = 0;
      bool negative = false;
      for (const ChanceBranch& branch : chance->branches) {
        sum += branch.probability;
        negative = negative || branch.probability < 0;
      }
      if (negative) {
        out.push_back({node_text(node.id) + ": negative chance probability", node.id,
                       std::nullopt});
      }
      if (sum != 1) {
        out.push_back({node_text(node.id) + ": chance probabilities sum ≠ 1 (sum = " +
                           to_string(sum) + ")",
                       node.id, std::nullopt});
      }
      if (chance->branches.empty() || chance->branches.size() != node.children.size()) {
        out.push_back({node_text(node.id) + ": branch count does not match children",
                       node.id, std::nullopt});
      }
    } else if (const auto* decision = std::get_if<DecisionNode>(&node.kind)) {
      if (decision->actions.empty() || decision->actions.size() != node.children.size()) {
        out.push_back({node_text(node.id) + ": action count does not match children",
                       node.id, std::nullopt});
      }
      if (membership[node.id] != 1) {
        out.push_back({node_text(node.id) + " belongs to " +
                           std::to_string(membership[node.id]) + " information sets",
                       node.id, std::nullopt});
      }
      if (decision->infoset >= infosets.size()) {
        out.push_back({node_text(node.id) + ": infoset id out of range", node.id,
                       std::nullopt});
      }
    } else if (!node.children.empty()) {
      out.push_back({node_text(node.id) + ": terminal node has children", node.id,
                     std::nullopt});
    }
  }

  for (const InfoSet& info : infosets) {
    const std::string name = "infoset " + std::to_string(info.id) + " '" + info.label + "'";
    if (info.members.empty()) {
      out.push_back({name + " has no members", std::nullopt, info.id});
      continue;
    }
    std::optional<std::vector<std::pair<InfoSetId, std::size_t>>> reference;
    for (NodeId member : info.members) {
      if (member >= nodes.size() || !nodes[member].is_decision()) {
        out.push_back({name + " contains a non-decision node", member, info.id});
        continue;
      }
      const DecisionNode& decision = nodes[member].decision();
      if (decision.player != info.owner) {
        out.push_back({name + ": infoset owner mismatch at " + node_text(member), member,
                       info.id});
      }
      if (decision.infoset != info.id) {
        out.push_back({name + ": member " + node_text(member) + " points elsewhere", member,
                       info.id});
      }
      if (decision.actions != info.actions) {
        out.push_back({name + ": infoset action mismatch at " + node_text(member), member,
                       info.id});
      }
      if (linked) {
        auto seq = own_sequence(tree, member, info.owner);
        if (!reference) {
          reference = std::move(seq);
        } else if (*reference != seq) {
          out.push_back({name + ": perfect recall violated at " + node_text(member), member,
                         info.id});
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counts.

struct TreeStats {
  std::size_t chance_nodes = 0;
  std::size_t decision_nodes = 0;
  std::size_t terminal_nodes = 0;
  std::array<std::size_t, 2> infosets_per_player = {0, 0};

  std::size_t total_nodes() const { return chance_nodes + decision_nodes + terminal_nodes; }
  std::size_t total_infosets() const {
    return infosets_per_player[0] + infosets_per_player[1];
  }
  friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

inline TreeStats tree_stats(const GameTree& tree) {
  TreeStats stats;
  for (const Node& node : tree.nodes()) {
    if (node.is_chance()) ++stats.chance_nodes;
    else if (node.is_decision()) ++stats.decision_nodes;
    else ++stats.terminal_nodes;
  }
  for (const InfoSet& info : tree.infosets()) ++stats.infosets_per_player[index_of(info.owner)];
  return stats;
}

}  // namespace kuhncheat
