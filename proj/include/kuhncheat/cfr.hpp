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
#include <cstdint>
#include <vector>

#include "kuhncheat/best_response.hpp"
#include "kuhncheat/evaluate.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/profile.hpp"
#include "kuhncheat/solve_result.hpp"

namespace kuhncheat {

namespace detail {

// Array-of-structs copy of a GameTree in doubles for the CFR inner loop.
class CfrTables {
 public:
  explicit CfrTables(const GameTree& tree) : tree_(tree) {
    const auto& nodes = tree.nodes();
    flat_.resize(nodes.size());
    for (const Node& node : nodes) {
      Flat& f = flat_[node.id];
      f.first_child = static_cast<std::uint32_t>(children_.size());
      f.num_children = static_cast<std::uint32_t>(node.children.size());
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        children_.push_back(static_cast<std::uint32_t>(node.children[i]));
        edge_prob_.push_back(node.is_chance() ? node.chance().branches[i].probability.get_d()
                                              : 0.0);
      }
      if (node.is_terminal()) {
        f.kind = Kind::Terminal;
        f.payoff = node.terminal().payoff.get_d();
      } else if (node.is_chance()) {
        f.kind = Kind::Chance;
      } else {
        f.kind = node.decision().player == Player::P1 ? Kind::P1 : Kind::P2;
        f.infoset = static_cast<std::uint32_t>(node.decision().infoset);
      }
    }
    offset_.resize(tree.infosets().size() + 1, 0);
    for (const InfoSet& info : tree.infosets()) {
      offset_[info.id + 1] = offset_[info.id] + info.actions.size();
    }
    regret_.assign(offset_.back(), 0.0);
    current_.assign(offset_.back(), 0.0);
    strategy_sum_.assign(offset_.back(), 0.0);
  }

  // Each pass plays the regret-matched strategy frozen at its start; the
  // second pass already sees the first player's new regrets.
  void iterate() {
    refresh();
    walk(static_cast<std::uint32_t>(tree_.root()), Kind::P1, 1.0, 1.0);
    refresh();
    walk(static_cast<std::uint32_t>(tree_.root()), Kind::P2, 1.0, 1.0);
  }

  BasicBehaviorProfile<double> average() const {
    BasicBehaviorProfile<double> out(tree_.infosets().size());
    for (const InfoSet& info : tree_.infosets()) {
      const std::size_t n = info.actions.size();
      double total = 0;
      for (std::size_t a = 0; a < n; ++a) total += strategy_sum_[offset_[info.id] + a];
      std::vector<double> d(n, 1.0 / static_cast<double>(n));
      if (total > 0) {
        for (std::size_t a = 0; a < n; ++a) d[a] = strategy_sum_[offset_[info.id] + a] / total;
      }
      out.set(info.id, std::move(d));
    }
    return out;
  }

 private:
  enum class Kind : std::uint8_t { Chance, P1, P2, Terminal };
  struct Flat {
    Kind kind = Kind::Terminal;
    std::uint32_t first_child = 0;
    std::uint32_t num_children = 0;
    std::uint32_t infoset = 0;
    double payoff = 0;
  };

  void refresh() {
    for (std::size_t infoset = 0; infoset + 1 < offset_.size(); ++infoset) {
      const std::size_t begin = offset_[infoset];
      const std::size_t n = offset_[infoset + 1] - begin;
      double positive = 0;
      for (std::size_t a = 0; a < n; ++a) positive += std::max(regret_[begin + a], 0.0);
      for (std::size_t a = 0; a < n; ++a) {
        current_[begin + a] = positive > 0 ? std::max(regret_[begin + a], 0.0) / positive
                                           : 1.0 / static_cast<double>(n);
      }
    }
  }

  // Returns the subtree value to player 1. `own` is the updating player's
  // reach, `other` the opponent-and-chance reach.
  double walk(std::uint32_t id, Kind updating, double own, double other) {
    const Flat& f = flat_[id];
    switch (f.kind) {
      case Kind::Terminal:
        return f.payoff;
      case Kind::Chance: {
        double v = 0;
        for (std::uint32_t i = 0; i < f.num_children; ++i) {
          const double p = edge_prob_[f.first_child + i];
          if (p == 0) continue;
          v += p * walk(children_[f.first_child + i], updating, own, other * p);
        }
        return v;
      }
      default:
        break;
    }
    const double* sigma = &current_[offset_[f.infoset]];
    double child_value[4];
    double v = 0;
    if (f.kind != updating) {
      for (std::uint32_t a = 0; a < f.num_children; ++a) {
        // The average strategy below is weighted by `own`, so a subtree the
        // opponent never enters still has to be walked while own > 0.
        if (sigma[a] == 0 && own == 0) continue;
        v += sigma[a] * walk(children_[f.first_child + a], updating, own, other * sigma[a]);
      }
      return v;
    }
    for (std::uint32_t a = 0; a < f.num_children; ++a) {
      child_value[a] = walk(children_[f.first_child + a], updating, own * sigma[a], other);
      v += sigma[a] * child_value[a];
    }
    const double sign = updating == Kind::P1 ? 1.0 : -1.0;
    const std::size_t begin = offset_[f.infoset];
    for (std::uint32_t a = 0; a < f.num_children; ++a) {
      regret_[begin + a] += other * sign * (child_value[a] - v);
      strategy_sum_[begin + a] += own * sigma[a];
    }
    return v;
  }

  const GameTree& tree_;
  std::vector<Flat> flat_;
  std::vector<std::uint32_t> children_;
  std::vector<double> edge_prob_;
  std::vector<std::size_t> offset_;
  std::vector<double> regret_;
  std::vector<double> current_;
  std::vector<double> strategy_sum_;
};

}  // namespace detail

// Counterfactual regret minimization with regret matching and alternating
// updates. Returns the average profile, its value and its exploitability, all
// in floating point.
inline BasicSolveResult<double> solve_cfr(const GameTree& tree, std::size_t iterations) {
  if (iterations == 0) iterations = 1;
  detail::CfrTables tables(tree);
  for (std::size_t t = 0; t < iterations; ++t) tables.iterate();
  BasicSolveResult<double> out;
  out.profile = tables.average();
  out.value = expected_value(tree, out.profile);
  out.exploitability = exploitability(tree, out.profile);
  out.method = Method::Cfr;
  out.iterations = iterations;
  return out;
}

}  // namespace kuhncheat
