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
#include <cstddef>
#include <numeric>
#include <optional>
#include <vector>

#include "kuhncheat/evaluate.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/profile.hpp"

namespace kuhncheat {

template <class Scalar>
struct BestResponse {
  BasicBehaviorProfile<Scalar> strategy;  // pure, responder's infosets only
  Scalar value;                           // to player 1, against the fixed side
};

namespace detail {

template <class Scalar>
class BestResponder {
 public:
  BestResponder(const GameTree& tree, const BasicBehaviorProfile<Scalar>& fixed, Player responder)
      : tree_(tree), fixed_(fixed), responder_(responder),
        reach_(tree.nodes().size(), Scalar(0)),
        choice_(tree.infosets().size()) {}

  BestResponse<Scalar> run() {
    external_reach(tree_.root(), Scalar(1));

    // Deepest infosets first: everything below a responder node is then fixed
    // by the time the node's infoset is scored.
    std::vector<InfoSetId> order = tree_.infosets_of(responder_);
    std::vector<std::size_t> depth(tree_.infosets().size(), 0);
    for (InfoSetId id : order) {
      depth[id] = own_sequence(tree_, tree_.infoset(id).members.front(), responder_).size();
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](InfoSetId a, InfoSetId b) { return depth[a] > depth[b]; });

    const Scalar sign = responder_ == Player::P1 ? Scalar(1) : Scalar(-1);
    for (InfoSetId id : order) {
      const InfoSet& info = tree_.infoset(id);
      std::optional<Scalar> best;
      std::size_t best_action = 0;
      for (std::size_t a = 0; a < info.actions.size(); ++a) {
        Scalar score(0);
        for (NodeId member : info.members) {
          if (reach_[member] == Scalar(0)) continue;
          score += reach_[member] * value_at(tree_.node(member).children[a]);
        }
        score *= sign;
        if (!best || score > *best) {
          best = score;
          best_action = a;
        }
      }
      choice_[id] = best_action;
    }

    BasicBehaviorProfile<Scalar> strategy(tree_.infosets().size());
    for (InfoSetId id : tree_.infosets_of(responder_)) {
      std::vector<Scalar> d(tree_.infoset(id).actions.size(), Scalar(0));
      d[*choice_[id]] = Scalar(1);
      strategy.set(id, std::move(d));
    }
    return {strategy, value_at(tree_.root())};
  }

 private:
  // Probability of reaching each node from chance and the fixed player only.
  void external_reach(NodeId id, const Scalar& reach) {
    reach_[id] = reach;
    const Node& node = tree_.node(id);
    if (const auto* chance = std::get_if<ChanceNode>(&node.kind)) {
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        external_reach(node.children[i],
                       reach * scalar_cast<Scalar>(chance->branches[i].probability));
      }
    } else if (const auto* decision = std::get_if<DecisionNode>(&node.kind)) {
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (decision->player == responder_) {
          external_reach(node.children[i], reach);
        } else {
          external_reach(node.children[i], reach * fixed_.probability(decision->infoset, i));
        }
      }
    }
  }

  // Expected value to player 1 of the subtree, with the responder playing the
  // choices made so far.
  Scalar value_at(NodeId id) const {
    const Node& node = tree_.node(id);
    if (const auto* terminal = std::get_if<TerminalNode>(&node.kind)) {
      return scalar_cast<Scalar>(terminal->payoff);
    }
    if (const auto* chance = std::get_if<ChanceNode>(&node.kind)) {
      Scalar v(0);
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        const Rational& p = chance->branches[i].probability;
        if (sgn(p) != 0) v += scalar_cast<Scalar>(p) * value_at(node.children[i]);
      }
      return v;
    }
    const DecisionNode& decision = node.decision();
    if (decision.player == responder_) {
      return value_at(node.children[choice_[decision.infoset].value()]);
    }
    Scalar v(0);
    const auto& dist = fixed_.at(decision.infoset);
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (dist[i] != Scalar(0)) v += dist[i] * value_at(node.children[i]);
    }
    return v;
  }

  const GameTree& tree_;
  const BasicBehaviorProfile<Scalar>& fixed_;
  Player responder_;
  std::vector<Scalar> reach_;
  std::vector<std::optional<std::size_t>> choice_;
};

}  // namespace detail

// Exact best response of `responder` to the opponent's part of `fixed`, by
// backward induction over the responder's information sets. Ties go to the
// first action in the infoset's action order (Bet, Check, Call, Fold).
template <class Scalar>
BestResponse<Scalar> best_response(const GameTree& tree, const BasicBehaviorProfile<Scalar>& fixed,
                                   Player responder) {
  require_coverage(tree, fixed, opponent(responder));
  return detail::BestResponder<Scalar>(tree, fixed, responder).run();
}

// Sum of both players' best-response gains; zero exactly at an equilibrium.
template <class Scalar>
Scalar exploitability(const GameTree& tree, const BasicBehaviorProfile<Scalar>& profile) {
  require_coverage(tree, profile);
  const Scalar br1 = best_response(tree, profile, Player::P1).value;
  const Scalar br2 = best_response(tree, profile, Player::P2).value;
  return br1 - br2;
}

}  // namespace kuhncheat
