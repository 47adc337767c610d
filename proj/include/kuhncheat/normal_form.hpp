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
#include <string>
#include <vector>

#include "kuhncheat/best_response.hpp"
#include "kuhncheat/errors.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/profile.hpp"
#include "kuhncheat/rational.hpp"
#include "kuhncheat/sequence_form.hpp"
#include "kuhncheat/simplex.hpp"
#include "kuhncheat/solve_result.hpp"

namespace kuhncheat {

inline constexpr std::size_t kDefaultStrategyCap = std::size_t{1} << 20;

// Pure-strategy payoff matrix. A pure strategy picks one action at every
// information set of its player; infosets that chance never reaches cannot
// change any payoff and are held at their first action instead of being
// enumerated.
struct NormalForm {
  std::array<std::vector<InfoSetId>, 2> enumerated;
  std::array<std::size_t, 2> num_strategies = {1, 1};
  std::vector<std::vector<Rational>> payoff;  // [player-1 strategy][player-2 strategy]

  // Action index per infoset (all infosets of the tree) for a strategy pair.
  std::vector<std::size_t> choices(const GameTree& tree, std::size_t row, std::size_t col) const {
    std::vector<std::size_t> out(tree.infosets().size(), 0);
    decode(tree, Player::P1, row, out);
    decode(tree, Player::P2, col, out);
    return out;
  }

  void decode(const GameTree& tree, Player player, std::size_t index,
              std::vector<std::size_t>& out) const {
    for (InfoSetId id : enumerated[index_of(player)]) {
      const std::size_t n = tree.infoset(id).actions.size();
      out[id] = index % n;
      index /= n;
    }
  }
};

namespace detail {

inline void chance_reach_all(const GameTree& tree, NodeId id, const Rational& reach,
                             std::vector<bool>& reachable) {
  reachable[id] = true;
  const Node& node = tree.node(id);
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (node.is_chance()) {
      const Rational& p = node.chance().branches[i].probability;
      if (sgn(p) == 0) continue;
      chance_reach_all(tree, node.children[i], reach * p, reachable);
    } else {
      chance_reach_all(tree, node.children[i], reach, reachable);
    }
  }
}

// Chance-weighted terminal payoffs scaled to integers by a common
// denominator, so each matrix entry is a sum of machine integers.
class WeightedTerminals {
 public:
  explicit WeightedTerminals(const GameTree& tree)
      : tree_(tree), weight_(tree.nodes().size(), 0) {
    std::vector<Rational> exact(tree.nodes().size());
    collect(tree.root(), Rational(1), exact);
    mpz_class common = 1;
    for (const Rational& w : exact) {
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), w.get_den_mpz_t());
    }
    denominator_ = common;
    for (NodeId id = 0; id < exact.size(); ++id) {
      const mpz_class scaled = exact[id].get_num() * (common / exact[id].get_den());
      if (!scaled.fits_slong_p()) throw SizeError("payoff weights too large for enumeration");
      weight_[id] = scaled.get_si();
    }
  }

  Rational value(const std::vector<std::size_t>& choice) const {
    Rational out(mpz_class(sum(tree_.root(), choice)), denominator_);
    out.canonicalize();
    return out;
  }

 private:
  void collect(NodeId id, const Rational& reach, std::vector<Rational>& exact) {
    const Node& node = tree_.node(id);
    if (node.is_terminal()) {
      exact[id] = reach * node.terminal().payoff;
      return;
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (node.is_chance()) {
        const Rational& p = node.chance().branches[i].probability;
        if (sgn(p) != 0) collect(node.children[i], reach * p, exact);
      } else {
        collect(node.children[i], reach, exact);
      }
    }
  }

  long sum(NodeId id, const std::vector<std::size_t>& choice) const {
    const Node& node = tree_.node(id);
    if (node.is_terminal()) return weight_[id];
    if (node.is_decision()) return sum(node.children[choice[node.decision().infoset]], choice);
    long total = 0;
    const auto& branches = node.chance().branches;
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      if (sgn(branches[i].probability) != 0) total += sum(node.children[i], choice);
    }
    return total;
  }

  const GameTree& tree_;
  std::vector<long> weight_;
  mpz_class denominator_;
};

}  // namespace detail

inline NormalForm enumerate_normal_form(const GameTree& tree,
                                        std::size_t cap = kDefaultStrategyCap) {
  std::vector<bool> reachable(tree.nodes().size(), false);
  detail::chance_reach_all(tree, tree.root(), Rational(1), reachable);

  NormalForm nf;
  for (const InfoSet& info : tree.infosets()) {
    const bool live = std::any_of(info.members.begin(), info.members.end(),
                                  [&](NodeId m) { return reachable[m]; });
    if (!live) continue;
    const std::size_t p = index_of(info.owner);
    nf.enumerated[p].push_back(info.id);
    const std::size_t n = info.actions.size();
    if (nf.num_strategies[p] > cap / n) {
      throw SizeError("player " + std::to_string(p + 1) +
                      " has more than " + std::to_string(cap) +
                      " pure strategies (at least " +
                      std::to_string(nf.num_strategies[p]) + " x " + std::to_string(n) + ")");
    }
    nf.num_strategies[p] *= n;
  }

  nf.payoff.assign(nf.num_strategies[0], std::vector<Rational>(nf.num_strategies[1]));
  const detail::WeightedTerminals weights(tree);
  std::vector<std::size_t> choice(tree.infosets().size(), 0);
  for (std::size_t row = 0; row < nf.num_strategies[0]; ++row) {
    nf.decode(tree, Player::P1, row, choice);
    for (std::size_t col = 0; col < nf.num_strategies[1]; ++col) {
      nf.decode(tree, Player::P2, col, choice);
      nf.payoff[row][col] = weights.value(choice);
    }
  }
  return nf;
}

struct MatrixGameSolution {
  Rational value;
  std::vector<Rational> row_mix;  // player 1, maximizer
  std::vector<Rational> col_mix;  // player 2, minimizer
};

namespace detail {

// Maximin mixture of the row player over the submatrix rows x cols.
inline std::pair<Rational, std::vector<Rational>> maximin(
    const std::vector<std::vector<Rational>>& m, const std::vector<std::size_t>& rows,
    const std::vector<std::size_t>& cols, bool transpose) {
  lp::LinearProgram<Rational> program;
  const std::size_t k = rows.size();
  for (std::size_t i = 0; i < k; ++i) program.add_variable(false);
  const std::size_t v = program.add_variable(true, Rational(1));
  const Rational sign = transpose ? -1 : 1;
  for (std::size_t j : cols) {
    std::vector<std::pair<std::size_t, Rational>> terms = {{v, Rational(1)}};
    for (std::size_t i = 0; i < k; ++i) {
      const Rational& entry = transpose ? m[j][rows[i]] : m[rows[i]][j];
      if (sgn(entry) != 0) terms.emplace_back(i, -sign * entry);
    }
    program.add_row(std::move(terms), lp::Sense::LessEqual, Rational(0));
  }
  std::vector<std::pair<std::size_t, Rational>> simplex_row;
  for (std::size_t i = 0; i < k; ++i) simplex_row.emplace_back(i, Rational(1));
  program.add_row(std::move(simplex_row), lp::Sense::Equal, Rational(1));
  auto solution = lp::solve(program, lp::PivotRule::DantzigThenBland);
  if (solution.status != lp::Status::Optimal) throw InternalError("matrix-game LP failed");
  std::vector<Rational> mix(solution.values.begin(), solution.values.begin() + k);
  return {sign * solution.objective, std::move(mix)};
}

}  // namespace detail

// Exact minimax of a zero-sum matrix game. Strategies are added to a
// restricted game only when they are a best response to its equilibrium
// (double oracle), so large matrices with small supports stay cheap.
inline MatrixGameSolution solve_matrix_game(const std::vector<std::vector<Rational>>& m) {
  if (m.empty() || m.front().empty()) throw InternalError("empty payoff matrix");
  const std::size_t num_rows = m.size();
  const std::size_t num_cols = m.front().size();
  std::vector<std::size_t> rows = {0};
  std::vector<std::size_t> cols = {0};
  for (;;) {
    auto [value, x] = detail::maximin(m, rows, cols, false);
    auto [neg_value, y] = detail::maximin(m, cols, rows, true);
    if (value != neg_value) throw InternalError("matrix-game duality gap");

    Rational best_row_value;
    std::size_t best_row = num_rows;
    for (std::size_t i = 0; i < num_rows; ++i) {
      Rational s = 0;
      for (std::size_t c = 0; c < cols.size(); ++c) s += m[i][cols[c]] * y[c];
      if (best_row == num_rows || s > best_row_value) {
        best_row_value = s;
        best_row = i;
      }
    }
    Rational best_col_value;
    std::size_t best_col = num_cols;
    for (std::size_t j = 0; j < num_cols; ++j) {
      Rational s = 0;
      for (std::size_t r = 0; r < rows.size(); ++r) s += m[rows[r]][j] * x[r];
      if (best_col == num_cols || s < best_col_value) {
        best_col_value = s;
        best_col = j;
      }
    }
    const bool row_improves = best_row_value > value;
    const bool col_improves = best_col_value < value;
    if (!row_improves && !col_improves) {
      MatrixGameSolution out{value, std::vector<Rational>(num_rows), std::vector<Rational>(num_cols)};
      for (std::size_t r = 0; r < rows.size(); ++r) out.row_mix[rows[r]] = x[r];
      for (std::size_t c = 0; c < cols.size(); ++c) out.col_mix[cols[c]] = y[c];
      return out;
    }
    if (row_improves) rows.push_back(best_row);
    if (col_improves) cols.push_back(best_col);
  }
}

// Equilibrium through the normal form: enumerate, solve the matrix game, and
// turn the mixed strategies back into behavior strategies via realization
// weights.
inline SolveResult solve_normal_form(const GameTree& tree, std::size_t cap = kDefaultStrategyCap) {
  const NormalForm nf = enumerate_normal_form(tree, cap);
  const MatrixGameSolution game = solve_matrix_game(nf.payoff);
  const SequenceFormLP sf = build_sequence_form(tree);

  BehaviorProfile profile(tree.infosets().size());
  for (Player player : kPlayers) {
    const SequenceIndex& seqs = sf.sequences[index_of(player)];
    const auto& mix = player == Player::P1 ? game.row_mix : game.col_mix;
    std::vector<InfoSetId> owner_of(seqs.num_sequences, 0);
    for (InfoSetId id : tree.infosets_of(player)) {
      for (std::size_t a = 0; a < tree.infoset(id).actions.size(); ++a) {
        owner_of[seqs.sequence(id, a)] = id;
      }
    }
    std::vector<Rational> plan(seqs.num_sequences, Rational(0));
    std::vector<std::size_t> choice(tree.infosets().size(), 0);
    for (std::size_t s = 0; s < mix.size(); ++s) {
      if (sgn(mix[s]) == 0) continue;
      nf.decode(tree, player, s, choice);
      plan[0] += mix[s];
      // (I, a) is realized when the strategy picks a at I and every earlier
      // sequence on the way to I.
      for (InfoSetId id : tree.infosets_of(player)) {
        bool realized = true;
        for (std::size_t seq = seqs.parent_sequence[id]; seq != 0 && realized;) {
          const InfoSetId owner = owner_of[seq];
          realized = seqs.sequence(owner, choice[owner]) == seq;
          seq = seqs.parent_sequence[owner];
        }
        if (realized) plan[seqs.sequence(id, choice[id])] += mix[s];
      }
    }
    realization_to_behavior(tree, seqs, plan, player, profile);
  }

  SolveResult result{game.value, std::move(profile), Rational(0), Method::NormalForm, 0};
  result.exploitability = exploitability(tree, result.profile);
  return result;
}

}  // namespace kuhncheat
