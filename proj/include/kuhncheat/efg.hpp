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

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kuhncheat/errors.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/rational.hpp"

namespace kuhncheat {

namespace detail {

inline std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string efg_title(const TreeMetadata& meta) {
  const CheatConfig& c = meta.config;
  return meta.variant + " p=" + to_string(c.p) + " q=" + to_string(c.q) + " r1=" + to_string(c.r1) +
         " r2=" + to_string(c.r2);
}

inline TreeMetadata metadata_from_title(const std::string& title) {
  std::istringstream in(title);
  TreeMetadata meta;
  in >> meta.variant;
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) return {title, {}};
    const std::string key = field.substr(0, eq);
    Rational value;
    try {
      value = parse_rational(field.substr(eq + 1));
    } catch (const ParseError&) {
      return {title, {}};
    }
    if (key == "p") meta.config.p = value;
    else if (key == "q") meta.config.q = value;
    else if (key == "r1") meta.config.r1 = value;
    else if (key == "r2") meta.config.r2 = value;
    else return {title, {}};
  }
  return meta;
}

}  // namespace detail

// Gambit-style "EFG 2 R" text, one node per line in preorder. Chance nodes
// get distinct chance infoset numbers, personal infosets are numbered per
// player from 1 in infoset-id order, and each terminal has its own outcome.
inline std::string export_efg(const GameTree& tree) {
  std::vector<std::size_t> infoset_number(tree.infosets().size(), 0);
  std::array<std::size_t, 2> next_number = {1, 1};
  for (const InfoSet& info : tree.infosets()) {
    infoset_number[info.id] = next_number[index_of(info.owner)]++;
  }

  std::string out = "EFG 2 R " + detail::quote(detail::efg_title(tree.metadata())) +
                    " { \"Player 1\" \"Player 2\" }\n\"\"\n\n";
  std::size_t chance_number = 1;
  std::size_t outcome_number = 1;

  std::vector<NodeId> stack = {tree.root()};
  while (!stack.empty()) {
    const Node& node = tree.node(stack.back());
    stack.pop_back();
    for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) stack.push_back(*it);

    if (const auto* chance = std::get_if<ChanceNode>(&node.kind)) {
      out += "c \"\" " + std::to_string(chance_number++) + " \"\" {";
      for (const ChanceBranch& b : chance->branches) {
        out += " " + detail::quote(b.label) + " " + to_string(b.probability);
      }
      out += " } 0\n";
    } else if (const auto* decision = std::get_if<DecisionNode>(&node.kind)) {
      const InfoSet& info = tree.infoset(decision->infoset);
      out += "p \"\" " + std::to_string(number_of(decision->player)) + " " +
             std::to_string(infoset_number[info.id]) + " " + detail::quote(info.label) + " {";
      for (Action a : decision->actions) out += " " + detail::quote(to_string(a));
      out += " } 0\n";
    } else {
      const Rational& payoff = node.terminal().payoff;
      out += "t \"\" " + std::to_string(outcome_number++) + " \"\" { " + to_string(payoff) + " " +
             to_string(Rational(-payoff)) + " }\n";
    }
  }
  return out;
}

namespace detail {

class EfgReader {
 public:
  explicit EfgReader(std::string_view text) : text_(text) {}

  GameTree read() {
    expect("EFG");
    expect("2");
    const std::string kind = next();
    if (kind != "R" && kind != "D") fail("expected R or D after 'EFG 2', got '" + kind + "'");
    const std::string title = next_quoted();
    expect("{");
    std::size_t players = 0;
    while (peek_quoted()) {
      next_quoted();
      ++players;
    }
    expect("}");
    if (players != 2) fail("only two-player games are supported");
    if (peek_quoted()) next_quoted();  // comment

    read_node(std::nullopt);
    skip_space();
    if (pos_ != text_.size()) fail("trailing content after the game tree");
    return GameTree(std::move(nodes_), std::move(infosets_), 0, metadata_from_title(title));
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    std::size_t line = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) line += text_[i] == '\n';
    throw ParseError("efg line " + std::to_string(line) + ": " + message);
  }

  // Commas may separate payoffs; they carry no meaning.
  static bool separator(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == ','; }

  void skip_space() {
    while (pos_ < text_.size() && separator(text_[pos_])) ++pos_;
  }

  bool peek_quoted() {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == '"';
  }

  bool peek(std::string_view token) {
    skip_space();
    return text_.substr(pos_, token.size()) == token;
  }

  std::string next_quoted() {
    if (!peek_quoted()) fail("expected a quoted string");
    std::string out;
    for (++pos_; pos_ < text_.size() && text_[pos_] != '"'; ++pos_) {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      out += text_[pos_];
    }
    if (pos_ >= text_.size()) fail("unterminated string");
    ++pos_;
    return out;
  }

  std::string next() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '{' || text_[pos_] == '}') return std::string(1, text_[pos_++]);
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !separator(text_[pos_]) && text_[pos_] != '{' &&
           text_[pos_] != '}' && text_[pos_] != '"') {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(std::string_view token) {
    const std::string got = next();
    if (got != token) fail("expected '" + std::string(token) + "', got '" + got + "'");
  }

  std::size_t next_count() {
    const std::string token = next();
    std::size_t value = 0;
    for (char c : token) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("expected a number, got '" + token + "'");
      value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    if (token.empty()) fail("expected a number");
    return value;
  }

  Rational next_rational() {
    const std::string token = next();
    try {
      return parse_rational(token);
    } catch (const ParseError&) {
      fail("bad number '" + token + "'");
    }
  }

  NodeId add(std::optional<NodeId> parent, std::variant<ChanceNode, DecisionNode, TerminalNode> kind) {
    const NodeId id = nodes_.size();
    nodes_.push_back(Node{id, parent, std::move(kind), {}});
    if (parent) nodes_[*parent].children.push_back(id);
    return id;
  }

  void interior_outcome() {
    if (next_count() != 0) fail("outcomes on non-terminal nodes are not supported");
  }

  void read_node(std::optional<NodeId> parent) {
    const std::string kind = next();
    next_quoted();  // node name
    if (kind == "c") {
      next_count();  // chance infoset number
      if (peek_quoted()) next_quoted();
      expect("{");
      ChanceNode chance;
      while (peek_quoted()) {
        std::string label = next_quoted();
        chance.branches.push_back({std::move(label), next_rational()});
      }
      expect("}");
      interior_outcome();
      const std::size_t n = chance.branches.size();
      const NodeId id = add(parent, std::move(chance));
      for (std::size_t i = 0; i < n; ++i) read_node(id);
    } else if (kind == "p") {
      const std::size_t player_number = next_count();
      if (player_number != 1 && player_number != 2) fail("player must be 1 or 2");
      const Player player = player_number == 1 ? Player::P1 : Player::P2;
      const std::size_t number = next_count();
      std::optional<std::string> name;
      if (peek_quoted()) name = next_quoted();
      std::optional<std::vector<Action>> actions;
      if (peek("{")) {
        expect("{");
        actions.emplace();
        while (peek_quoted()) {
          const std::string action_name = next_quoted();
          auto action = action_from_string(action_name);
          if (!action) fail("unknown action '" + action_name + "'");
          actions->push_back(*action);
        }
        expect("}");
      }
      interior_outcome();

      auto [it, inserted] = infoset_index_.try_emplace({player_number, number}, infosets_.size());
      if (inserted) {
        if (!actions) fail("first node of an information set must list its actions");
        infosets_.push_back(InfoSet{infosets_.size(), player, {}, *actions,
                                    name ? *name : "P" + std::to_string(player_number) + " #" +
                                                       std::to_string(number)});
      }
      InfoSet& info = infosets_[it->second];
      const std::vector<Action> node_actions = actions ? *actions : info.actions;
      const NodeId id = add(parent, DecisionNode{player, info.id, node_actions});
      info.members.push_back(id);
      for (std::size_t i = 0; i < node_actions.size(); ++i) read_node(id);
    } else if (kind == "t") {
      const std::size_t outcome = next_count();
      if (peek_quoted()) next_quoted();
      Rational payoff;
      if (peek("{")) {
        expect("{");
        const Rational first = next_rational();
        const Rational second = next_rational();
        expect("}");
        if (first + second != 0) fail("payoffs are not zero-sum");
        payoff = first;
        outcomes_[outcome] = payoff;
      } else {
        auto found = outcomes_.find(outcome);
        if (found == outcomes_.end()) fail("outcome " + std::to_string(outcome) + " has no payoffs");
        payoff = found->second;
      }
      add(parent, TerminalNode{payoff});
    } else {
      fail("unknown node type '" + kind + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<Node> nodes_;
  std::vector<InfoSet> infosets_;
  std::map<std::pair<std::size_t, std::size_t>, InfoSetId> infoset_index_;
  std::map<std::size_t, Rational> outcomes_;
};

}  // namespace detail

// Reads the subset of the format that export_efg writes, plus optional
// infoset names/action lists and shared outcomes. Actions must be named
// Bet, Check, Call or Fold.
inline GameTree parse_efg(std::string_view text) { return detail::EfgReader(text).read(); }

}  // namespace kuhncheat
