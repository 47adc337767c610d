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
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "kuhncheat/best_response.hpp"
#include "kuhncheat/errors.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/profile.hpp"
#include "kuhncheat/rational.hpp"
#include "kuhncheat/simplex.hpp"
#include "kuhncheat/solve_result.hpp"

namespace kuhncheat {

// Sequences of one player. Sequence 0 is the empty sequence; the sequences
// extending infoset I are first_sequence[I] + action index.
struct SequenceIndex {
  std::size_t num_sequences = 1;
  std::vector<InfoSetId> infosets;  // constraint row 1 + k belongs to infosets[k]
  std::vector<std::size_t> first_sequence;   // by global infoset id
  std::vector<std::size_t> parent_sequence;  // by global infoset id

  std::size_t sequence(InfoSetId infoset, std::size_t action) const {
    return first_sequence[infoset] + action;
  }
};

struct ConstraintEntry {
  std::size_t row;
  std::size_t sequence;
  int coefficient;  // +1 or -1
};

// Sequence form of a two-player zero-sum tree: per-player realization-plan
// constraints  C x = e_0,  x >= 0  and the payoff to player 1 of every
// sequence pair reached by some terminal (chance probabilities folded in).
struct SequenceFormLP {
  std::array<SequenceIndex, 2> sequences;
  std::map<std::pair<std::size_t, std::size_t>, Rational> payoff;

  std::size_t num_rows(Player p) const { return 1 + sequences[index_of(p)].infosets.size(); }

  // Row 0: x_empty = 1. Row of infoset I: -x_parent(I) + sum_a x_(I,a) = 0.
  std::vector<ConstraintEntry> constraints(Player p) const {
    const SequenceIndex& s = sequences[index_of(p)];
    std::vector<ConstraintEntry> out = {{0, 0, 1}};
    for (std::size_t k = 0; k < s.infosets.size(); ++k) {
      const InfoSetId id = s.infosets[k];
      out.push_back({k + 1, s.parent_sequence[id], -1});
      const std::size_t next =
          k + 1 < s.infosets.size() ? s.first_sequence[s.infosets[k + 1]] : s.num_sequences;
      for (std::size_t seq = s.first_sequence[id]; seq < next; ++seq) {
        out.push_back({k + 1, seq, 1});
      }
    }
    return out;
  }
};

namespace detail {

inline void collect_payoffs(const GameTree& tree, NodeId id, std::size_t s1, std::size_t s2,
                            const Rational& chance, SequenceFormLP& out,
                            std::vector<bool>& parent_seen) {
  const Node& node = tree.node(id);
  if (const auto* terminal = std::get_if<TerminalNode>(&node.kind)) {
    if (sgn(chance) != 0 && sgn(terminal->payoff) != 0) {
      out.payoff[{s1, s2}] += chance * terminal->payoff;
    }
    return;
  }
  if (const auto* c = std::get_if<ChanceNode>(&node.kind)) {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      collect_payoffs(tree, node.children[i], s1, s2, chance * c->branches[i].probability, out,
                      parent_seen);
    }
    return;
  }
  const DecisionNode& d = node.decision();
  SequenceIndex& seqs = out.sequences[index_of(d.player)];
  const std::size_t current = d.player == Player::P1 ? s1 : s2;
  if (!parent_seen[d.infoset]) {
    parent_seen[d.infoset] = true;
    seqs.parent_sequence[d.infoset] = current;
  } else if (seqs.parent_sequence[d.infoset] != current) {
    throw UnsupportedVariantError("tree violates perfect recall at infoset '" +
                                  tree.infoset(d.infoset).label + "'");
  }
  for (std::size_t a = 0; a < node.children.size(); ++a) {
    const std::size_t next = seqs.sequence(d.infoset, a);
    if (d.player == Player::P1) {
      collect_payoffs(tree, node.children[a], next, s2, chance, out, parent_seen);
    } else {
      collect_payoffs(tree, node.children[a], s1, next, chance, out, parent_seen);
    }
  }
}

}  // namespace detail

inline SequenceFormLP build_sequence_form(const GameTree& tree) {
  SequenceFormLP out;
  for (auto& s : out.sequences) {
    s.first_sequence.assign(tree.infosets().size(), 0);
    s.parent_sequence.assign(tree.infosets().size(), 0);
  }
  for (const InfoSet& info : tree.infosets()) {
    SequenceIndex& s = out.sequences[index_of(info.owner)];
    s.infosets.push_back(info.id);
    s.first_sequence[info.id] = s.num_sequences;
    s.num_sequences += info.actions.size();
  }
  std::vector<bool> parent_seen(tree.infosets().size(), false);
  detail::collect_payoffs(tree, tree.root(), 0, 0, Rational(1), out, parent_seen);
  return out;
}

namespace detail {

struct RealizationPlan {
  Rational value;  // to the maximizing player
  std::vector<Rational> plan;
  std::size_t pivots = 0;
};

// Optimal realization plan of `player`, who maximizes their own payoff:
//   max v_0  s.t.  C_opp^T v <= M^T x,  C_self x = e_0,  x >= 0,  v free.
inline RealizationPlan solve_player(const SequenceFormLP& sf, Player player) {
  const Player opp = opponent(player);
  const auto& own = sf.sequences[index_of(player)];
  const auto& theirs = sf.sequences[index_of(opp)];
  const Rational sign = player == Player::P1 ? 1 : -1;

  lp::LinearProgram<Rational> program;
  for (std::size_t s = 0; s < own.num_sequences; ++s) program.add_variable(false);
  const std::size_t v0 = own.num_sequences;
  for (std::size_t r = 0; r < sf.num_rows(opp); ++r) {
    program.add_variable(true, r == 0 ? Rational(1) : Rational(0));
  }

  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(theirs.num_sequences);
  for (const ConstraintEntry& e : sf.constraints(opp)) {
    rows[e.sequence].emplace_back(v0 + e.row, Rational(e.coefficient));
  }
  for (const auto& [pair, value] : sf.payoff) {
    const auto [s1, s2] = pair;
    const std::size_t mine = player == Player::P1 ? s1 : s2;
    const std::size_t other = player == Player::P1 ? s2 : s1;
    rows[other].emplace_back(mine, -sign * value);
  }
  for (auto& terms : rows) program.add_row(std::move(terms), lp::Sense::LessEqual, Rational(0));

  std::vector<std::vector<std::pair<std::size_t, Rational>>> own_rows(sf.num_rows(player));
  for (const ConstraintEntry& e : sf.constraints(player)) {
    own_rows[e.row].emplace_back(e.sequence, Rational(e.coefficient));
  }
  for (std::size_t r = 0; r < own_rows.size(); ++r) {
    program.add_row(std::move(own_rows[r]), lp::Sense::Equal, r == 0 ? Rational(1) : Rational(0));
  }

  auto solution = lp::solve(program, lp::PivotRule::DantzigThenBland);
  if (solution.status != lp::Status::Optimal) {
    throw InternalError("sequence-form LP is infeasible or unbounded");
  }
  RealizationPlan out;
  out.value = solution.objective;
  out.plan.assign(solution.values.begin(), solution.values.begin() + own.num_sequences);
  out.pivots = solution.pivots;
  return out;
}

}  // namespace detail

// Behavior strategy of `player` induced by a realization plan. Infosets the
// plan never reaches play their first action.
inline void realization_to_behavior(const GameTree& tree, const SequenceIndex& seqs,
                                    const std::vector<Rational>& plan, Player player,
                                    BehaviorProfile& out) {
  for (InfoSetId id : tree.infosets_of(player)) {
    const std::size_t n = tree.infoset(id).actions.size();
    const Rational& parent = plan.at(seqs.parent_sequence[id]);
    std::vector<Rational> d(n, Rational(0));
    if (sgn(parent) == 0) {
      d[0] = 1;
    } else {
      for (std::size_t a = 0; a < n; ++a) d[a] = plan.at(seqs.sequence(id, a)) / parent;
    }
    out.set(id, std::move(d));
  }
}

// Exact equilibrium by the sequence-form LP. Both players' programs are
// solved; their optimal values must coincide, which certifies the value.
inline SolveResult solve_lp(const GameTree& tree) {
  const SequenceFormLP sf = build_sequence_form(tree);
  const auto p1 = detail::solve_player(sf, Player::P1);
  const auto p2 = detail::solve_player(sf, Player::P2);
  if (p1.value != -p2.value) {
    throw InternalError("sequence-form duality gap: " + to_string(p1.value) + " vs " +
                        to_string(-p2.value));
  }
  BehaviorProfile profile(tree.infosets().size());
  realization_to_behavior(tree, sf.sequences[0], p1.plan, Player::P1, profile);
  realization_to_behavior(tree, sf.sequences[1], p2.plan, Player::P2, profile);

  SolveResult result{p1.value, std::move(profile), Rational(0), Method::Lp,
                     p1.pivots + p2.pivots};
  result.exploitability = exploitability(tree, result.profile);
  if (sgn(result.exploitability) != 0) {
    throw InternalError("LP profile is not an equilibrium (exploitability " +
                        to_string(result.exploitability) + ")");
  }
  return result;
}

}  // namespace kuhncheat
