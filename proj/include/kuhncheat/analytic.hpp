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

#include "kuhncheat/best_response.hpp"
#include "kuhncheat/errors.hpp"
#include "kuhncheat/evaluate.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/kuhn.hpp"
#include "kuhncheat/profile.hpp"
#include "kuhncheat/rational.hpp"

namespace kuhncheat {

// Player 1's bluffing parameter in the family of classic equilibria.
struct FairParam {
  Rational a = 0;

  explicit FairParam(Rational value = 0) : a(std::move(value)) {
    a.canonicalize();
    if (a < 0 || a > Rational(1, 3)) {
      throw RangeError("fair parameter a = " + to_string(a) + " is outside [0, 1/3]");
    }
  }
};

// constant + slope * a
struct AffineInA {
  Rational constant = 0;
  Rational slope = 0;

  Rational at(const Rational& a) const { return constant + slope * a; }
  friend bool operator==(const AffineInA&, const AffineInA&) = default;
};

// A per-deal table whose entries are affine in a, in kDeals row order.
struct AffineBreakdown {
  std::array<AffineInA, 6> p1_gross;
  std::array<AffineInA, 6> p2_gross;
  AffineInA net;

  DealBreakdown at(const Rational& a) const {
    DealBreakdown out;
    for (std::size_t i = 0; i < 6; ++i) {
      out.p1_gross[i] = p1_gross[i].at(a);
      out.p2_gross[i] = p2_gross[i].at(a);
    }
    return out;
  }
};

namespace detail {

inline Rational q(long n, long d) { return Rational(n, d); }

// Fair (Table I / Table II) distribution at a decision point identified by
// the acting player's own card and the betting history so far.
inline std::vector<Rational> fair_distribution(Player player, Card card, const std::string& history,
                                               const Rational& a) {
  if (player == Player::P1) {
    if (history.empty()) {  // Bet, Check
      switch (card) {
        case Card::K: return {3 * a, 1 - 3 * a};
        case Card::Q: return {0, 1};
        case Card::J: return {a, 1 - a};
      }
    }
    if (history == "kb") {  // Call, Fold
      switch (card) {
        case Card::K: return {1, 0};
        case Card::Q: return {q(1, 3) + a, q(2, 3) - a};
        case Card::J: return {0, 1};
      }
    }
  } else {
    if (history == "k") {  // Bet, Check
      switch (card) {
        case Card::K: return {1, 0};
        case Card::Q: return {0, 1};
        case Card::J: return {q(1, 3), q(2, 3)};
      }
    }
    if (history == "b") {  // Call, Fold
      switch (card) {
        case Card::K: return {1, 0};
        case Card::Q: return {q(1, 3), q(2, 3)};
        case Card::J: return {0, 1};
      }
    }
  }
  throw UnsupportedVariantError("no fair strategy for history '" + history + "'");
}

}  // namespace detail

// The fair strategies of both players on any Kuhn variant tree. Every
// infoset plays according to its owner's card and the betting history,
// ignoring whatever extra information (peeking, catching) it carries.
inline BehaviorProfile fair_profile(const GameTree& tree, const FairParam& param) {
  BehaviorProfile profile(tree.infosets().size());
  for (const InfoSet& info : tree.infosets()) {
    const NodeView view = describe_node(tree, info.members.front());
    if (!view.deal) throw UnsupportedVariantError("infoset '" + info.label + "' has no deal");
    const Card own = info.owner == Player::P1 ? view.deal->p1 : view.deal->p2;
    profile.set(info.id,
                detail::fair_distribution(info.owner, own, view.history_string(), param.a));
  }
  return profile;
}

inline BehaviorProfile fair_profile(const FairParam& param) {
  return fair_profile(build_classic(), param);
}

// Closed-form per-deal winnings when both players play fairly.
inline AffineBreakdown fair_breakdown_table() {
  using detail::q;
  AffineBreakdown t;
  t.p1_gross = {{{q(2, 9), q(-1, 6)}, {q(1, 6), q(1, 6)}, {q(4, 27), q(1, 9)}, {}, {}, {0, q(1, 9)}}};
  t.p2_gross = {{{}, {}, {q(1, 27), q(-1, 18)}, {q(2, 9), q(1, 6)}, {q(1, 6), q(1, 6)},
                 {q(1, 6), q(-1, 18)}}};
  t.net = {q(-1, 18), 0};
  return t;
}

inline DealBreakdown fair_breakdown_formula(const FairParam& param) {
  return fair_breakdown_table().at(param.a);
}

// The per-deal tables printed for a cheater facing a fair opponent, as
// published. They are kept only for comparison; see naive_exploitation.
inline AffineBreakdown published_naive_table(Player cheater) {
  using detail::q;
  AffineBreakdown t;
  if (cheater == Player::P2) {
    t.p1_gross = {{{q(1, 6), 0}, {q(1, 6), 0}, {q(1, 9), q(1, 9)}, {}, {}, {}}};
    t.p2_gross = {{{}, {}, {q(1, 9), q(-1, 6)}, {q(2, 9), q(1, 6)}, {q(1, 6), 0}, {q(1, 6), 0}}};
    t.net = {q(-2, 3), q(-1, 9)};
  } else {
    t.p1_gross = {{{q(2, 9), 0}, {q(2, 9), 0}, {q(2, 9), 0}, {}, {}, {q(1, 9), 0}}};
    t.p2_gross = {{{}, {}, {}, {q(1, 6), 0}, {q(1, 6), 0}, {q(1, 18), 0}}};
    t.net = {q(7, 18), 0};
  }
  return t;
}

struct NaiveExploitation {
  Rational value;  // to player 1
  DealBreakdown breakdown;
  BehaviorProfile cheater_strategy;  // cheater's infosets only
  BehaviorProfile profile;           // fair victim + cheater's best response
};

// The cheater always peeks; the victim keeps playing fair_profile(a) without
// adapting. The cheater's strategy is the exact best response.
inline NaiveExploitation naive_exploitation(Player cheater, const FairParam& param) {
  CheatConfig config;
  (cheater == Player::P1 ? config.p : config.q) = 1;
  const GameTree tree = build_cheating(config);
  const BehaviorProfile victim = fair_profile(tree, param).restricted_to(tree, opponent(cheater));
  BestResponse<Rational> br = best_response(tree, victim, cheater);

  NaiveExploitation out;
  out.value = br.value;
  out.profile = cheater == Player::P1 ? BehaviorProfile::combine(tree, br.strategy, victim)
                                      : BehaviorProfile::combine(tree, victim, br.strategy);
  out.breakdown = per_deal_breakdown(tree, out.profile);
  out.cheater_strategy = std::move(br.strategy);
  return out;
}

struct RowMismatch {
  std::size_t row;  // index into kDeals
  Player side;      // whose gross column
  Rational published;
  Rational computed;
};

// Where a computed breakdown departs from the published table at the same a.
struct PaperDiscrepancy {
  Rational published_value;
  Rational computed_value;
  std::vector<RowMismatch> rows;

  bool any() const { return published_value != computed_value || !rows.empty(); }
};

inline PaperDiscrepancy compare_with_published(const AffineBreakdown& published,
                                               const DealBreakdown& computed,
                                               const Rational& a) {
  PaperDiscrepancy out{published.net.at(a), computed.net(), {}};
  for (std::size_t i = 0; i < 6; ++i) {
    const Rational p1 = published.p1_gross[i].at(a);
    const Rational p2 = published.p2_gross[i].at(a);
    if (p1 != computed.p1_gross[i]) out.rows.push_back({i, Player::P1, p1, computed.p1_gross[i]});
    if (p2 != computed.p2_gross[i]) out.rows.push_back({i, Player::P2, p2, computed.p2_gross[i]});
  }
  return out;
}

}  // namespace kuhncheat
