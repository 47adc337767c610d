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
#include <vector>

#include "kuhncheat/gametree.hpp"
#include "kuhncheat/profile.hpp"
#include "kuhncheat/rational.hpp"

namespace kuhncheat {

namespace detail {

template <class Scalar>
Scalar expected_value_at(const GameTree& tree, const BasicBehaviorProfile<Scalar>& profile,
                         NodeId id) {
  const Node& node = tree.node(id);
  if (const auto* terminal = std::get_if<TerminalNode>(&node.kind)) {
    return scalar_cast<Scalar>(terminal->payoff);
  }
  Scalar value(0);
  if (const auto* chance = std::get_if<ChanceNode>(&node.kind)) {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const Rational& p = chance->branches[i].probability;
      if (sgn(p) == 0) continue;
      value += scalar_cast<Scalar>(p) * expected_value_at(tree, profile, node.children[i]);
    }
    return value;
  }
  const auto& dist = profile.at(node.decision().infoset);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (dist[i] == Scalar(0)) continue;
    value += dist[i] * expected_value_at(tree, profile, node.children[i]);
  }
  return value;
}

}  // namespace detail

// Expected payoff to player 1 in dollars.
template <class Scalar>
Scalar expected_value(const GameTree& tree, const BasicBehaviorProfile<Scalar>& profile) {
  require_coverage(tree, profile);
  return detail::expected_value_at(tree, profile, tree.root());
}

// Per-deal gross winnings, each weighted by the probability of reaching the
// outcome (deal probability included). Gains go only to the winner of each
// terminal, so a row with both players winning sometimes has two entries.
struct DealBreakdown {
  std::array<Rational, 6> p1_gross;  // rows in kDeals order
  std::array<Rational, 6> p2_gross;

  Rational net() const {
    Rational total = 0;
    for (std::size_t i = 0; i < 6; ++i) total += p1_gross[i] - p2_gross[i];
    return total;
  }
  friend bool operator==(const DealBreakdown&, const DealBreakdown&) = default;
};

namespace detail {

inline void accumulate_breakdown(const GameTree& tree, const BehaviorProfile& profile,
                                 NodeId id, const Rational& reach,
                                 std::optional<std::size_t> deal, bool& saw_deal,
                                 DealBreakdown& out) {
  if (sgn(reach) == 0) return;
  const Node& node = tree.node(id);
  if (const auto* terminal = std::get_if<TerminalNode>(&node.kind)) {
    if (!deal) throw UnsupportedVariantError("terminal node reached without a deal layer");
    const Rational& payoff = terminal->payoff;
    if (payoff > 0) out.p1_gross[*deal] += reach * payoff;
    if (payoff < 0) out.p2_gross[*deal] -= reach * payoff;
    return;
  }
  if (const auto* chance = std::get_if<ChanceNode>(&node.kind)) {
    // A deal layer is a six-way chance node labelled with the six deals.
    bool is_deal_layer = chance->branches.size() == kDeals.size();
    for (const ChanceBranch& b : chance->branches) {
      is_deal_layer = is_deal_layer && deal_index(b.label).has_value();
    }
    if (is_deal_layer) saw_deal = true;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      const ChanceBranch& b = chance->branches[i];
      accumulate_breakdown(tree, profile, node.children[i], reach * b.probability,
                           is_deal_layer ? deal_index(b.label) : deal, saw_deal, out);
    }
    return;
  }
  const auto& dist = profile.at(node.decision().infoset);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    accumulate_breakdown(tree, profile, node.children[i], reach * dist[i], deal, saw_deal,
                         out);
  }
}

}  // namespace detail

inline DealBreakdown per_deal_breakdown(const GameTree& tree, const BehaviorProfile& profile) {
  require_coverage(tree, profile);
  DealBreakdown out;
  bool saw_deal = false;
  detail::accumulate_breakdown(tree, profile, tree.root(), Rational(1), std::nullopt, saw_deal,
                               out);
  if (!saw_deal) throw UnsupportedVariantError("tree has no six-way deal layer");
  return out;
}

}  // namespace kuhncheat
