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

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "kuhncheat/analytic.hpp"
#include "kuhncheat/sequence_form.hpp"

namespace kuhncheat {
namespace {

const std::vector<Rational> kAGrid = {0, Rational(1, 12), Rational(1, 6), Rational(1, 4),
                                      Rational(1, 3)};

InfoSetId find_infoset(const GameTree& t, const std::string& label) {
  for (const InfoSet& info : t.infosets()) {
    if (info.label == label) return info.id;
  }
  ADD_FAILURE() << "no infoset " << label;
  return 0;
}

// Fair play written out independently of the library, card by card.
// Each returns the probability of the aggressive action (Bet or Call).
Rational p1_open_bet(Card c, const Rational& a) {
  return c == Card::K ? 3 * a : (c == Card::J ? a : Rational(0));
}
Rational p1_call(Card c, const Rational& a) {
  return c == Card::K ? Rational(1) : (c == Card::Q ? Rational(1, 3) + a : Rational(0));
}
Rational p2_bet_after_check(Card c) {
  return c == Card::K ? Rational(1) : (c == Card::J ? Rational(1, 3) : Rational(0));
}
Rational p2_call(Card c) {
  return c == Card::K ? Rational(1) : (c == Card::Q ? Rational(1, 3) : Rational(0));
}

// Winner of a showdown, +1 for player 1.
int sign(Card mine, Card theirs) { return mine > theirs ? 1 : -1; }

// A cheater who sees both cards plays the best reply in each deal separately.
// Returns the per-deal value to player 1, not yet weighted by 1/6.
Rational p1_cheats(Card c1, Card c2) {
  const int s = sign(c1, c2);
  const Rational bet = p2_call(c2) * 2 * s + (1 - p2_call(c2)) * 1;
  const Rational facing = std::max(Rational(2 * s), Rational(-1));
  const Rational check = p2_bet_after_check(c2) * facing + (1 - p2_bet_after_check(c2)) * s;
  return std::max(bet, check);
}

Rational p2_cheats(Card c1, Card c2, const Rational& a) {
  const int s = sign(c1, c2);
  const Rational facing_bet = std::min(Rational(2 * s), Rational(1));
  const Rational bet_line = p1_call(c1, a) * 2 * s + (1 - p1_call(c1, a)) * -1;
  const Rational after_check = std::min(bet_line, Rational(s));
  return p1_open_bet(c1, a) * facing_bet + (1 - p1_open_bet(c1, a)) * after_check;
}

Rational oracle_naive(Player cheater, const Rational& a) {
  Rational total = 0;
  for (const Deal& d : kDeals) {
    total += cheater == Player::P1 ? p1_cheats(d.p1, d.p2) : p2_cheats(d.p1, d.p2, a);
  }
  return total / 6;
}

TEST(FairParam, Range) {
  EXPECT_NO_THROW(FairParam(0));
  EXPECT_NO_THROW(FairParam(Rational(1, 3)));
  EXPECT_THROW(FairParam(Rational(-1, 100)), RangeError);
  EXPECT_THROW(FairParam(Rational(34, 100)), RangeError);
}

TEST(FairProfile, MatchesTheStrategyTables) {
  const GameTree t = build_classic();
  for (const Rational& a : kAGrid) {
    const BehaviorProfile f = fair_profile(t, FairParam(a));
    for (Card c : {Card::J, Card::Q, Card::K}) {
      const std::string card(1, to_char(c));
      EXPECT_EQ(f.at(find_infoset(t, "P1 " + card + " @-"))[0], p1_open_bet(c, a));
      EXPECT_EQ(f.at(find_infoset(t, "P1 " + card + " @kb"))[0], p1_call(c, a));
      EXPECT_EQ(f.at(find_infoset(t, "P2 " + card + " @k"))[0], p2_bet_after_check(c));
      EXPECT_EQ(f.at(find_infoset(t, "P2 " + card + " @b"))[0], p2_call(c));
    }
  }
}

TEST(FairProfile, Endpoints) {
  const GameTree t = build_classic();
  const BehaviorProfile zero = fair_profile(t, FairParam(0));
  EXPECT_EQ(zero.at(find_infoset(t, "P1 J @-"))[0], 0);
  EXPECT_EQ(zero.at(find_infoset(t, "P1 K @-"))[0], 0);
  const BehaviorProfile third = fair_profile(t, FairParam(Rational(1, 3)));
  EXPECT_EQ(third.at(find_infoset(t, "P1 K @-"))[0], 1);
  for (InfoSetId id : t.infosets_of(Player::P2)) EXPECT_EQ(zero.at(id), third.at(id));
}

TEST(FairProfile, EveryMemberOfTheFamilyIsAnEquilibrium) {
  const GameTree t = build_classic();
  for (const Rational& a : kAGrid) {
    const BehaviorProfile f = fair_profile(FairParam(a));
    EXPECT_EQ(expected_value(t, f), Rational(-1, 18));
    EXPECT_EQ(exploitability(t, f), 0);
  }
}

TEST(FairBreakdown, ClosedFormEntries) {
  for (const Rational& a : kAGrid) {
    const DealBreakdown b = fair_breakdown_formula(FairParam(a));
    // Rows: KJ, KQ, QJ, QK, JK, JQ.
    const Rational p1[] = {Rational(2, 9) - a / 6, Rational(1, 6) + a / 6, Rational(4, 27) + a / 9,
                           0, 0, a / 9};
    const Rational p2[] = {0, 0, Rational(1, 27) - a / 18, Rational(2, 9) + a / 6,
                           Rational(1, 6) + a / 6, Rational(1, 6) - a / 18};
    for (std::size_t i = 0; i < 6; ++i) {
      EXPECT_EQ(b.p1_gross[i], p1[i]) << kDeals[i].label();
      EXPECT_EQ(b.p2_gross[i], p2[i]) << kDeals[i].label();
    }
    EXPECT_EQ(b.net(), Rational(-1, 18));
  }
}

TEST(FairBreakdown, EvaluatorAgreesWithTheFormula) {
  const GameTree t = build_classic();
  for (const Rational& a : kAGrid) {
    EXPECT_EQ(per_deal_breakdown(t, fair_profile(t, FairParam(a))),
              fair_breakdown_formula(FairParam(a)));
  }
}

TEST(Oracle, HandDerivedPerDealValues) {
  // Cheating player 1 facing fair player 2, per deal before the 1/6 weight.
  EXPECT_EQ(p1_cheats(Card::K, Card::J), Rational(4, 3));
  EXPECT_EQ(p1_cheats(Card::K, Card::Q), Rational(4, 3));
  EXPECT_EQ(p1_cheats(Card::Q, Card::J), Rational(4, 3));
  EXPECT_EQ(p1_cheats(Card::Q, Card::K), -1);
  EXPECT_EQ(p1_cheats(Card::J, Card::K), -1);
  EXPECT_EQ(p1_cheats(Card::J, Card::Q), 0);
  const Rational a(1, 5);
  EXPECT_EQ(p2_cheats(Card::K, Card::J, a), 1);
  EXPECT_EQ(p2_cheats(Card::K, Card::Q, a), 1);
  EXPECT_EQ(p2_cheats(Card::Q, Card::J, a), 3 * a);
  EXPECT_EQ(p2_cheats(Card::Q, Card::K, a), -(Rational(4, 3) + a));
  EXPECT_EQ(p2_cheats(Card::J, Card::K, a), -(1 + a));
  EXPECT_EQ(p2_cheats(Card::J, Card::Q, a), -(1 + a));
}

TEST(Naive, MatchesTheOracle) {
  for (const Rational& a : kAGrid) {
    const auto p1 = naive_exploitation(Player::P1, FairParam(a));
    const auto p2 = naive_exploitation(Player::P2, FairParam(a));
    EXPECT_EQ(p1.value, oracle_naive(Player::P1, a));
    EXPECT_EQ(p2.value, oracle_naive(Player::P2, a));
    EXPECT_EQ(p2.value, Rational(-2, 9));
    EXPECT_EQ(p1.breakdown.net(), p1.value);
    EXPECT_EQ(p2.breakdown.net(), p2.value);
  }
  EXPECT_EQ(naive_exploitation(Player::P1, FairParam(0)).value, Rational(1, 3));
}

TEST(Naive, CheatingNeverHurtsTheCheater) {
  for (const Rational& a : kAGrid) {
    EXPECT_GE(naive_exploitation(Player::P1, FairParam(a)).value, Rational(-1, 18));
    EXPECT_LE(naive_exploitation(Player::P2, FairParam(a)).value, Rational(-1, 18));
  }
}

TEST(Naive, AdaptingHelpsTheVictim) {
  const Rational adaptive_p1 = solve_lp(build_cheating({1, 0, 0, 0})).value;
  const Rational adaptive_p2 = solve_lp(build_cheating({0, 1, 0, 0})).value;
  for (const Rational& a : kAGrid) {
    EXPECT_LE(adaptive_p1, naive_exploitation(Player::P1, FairParam(a)).value);
    EXPECT_GE(adaptive_p2, naive_exploitation(Player::P2, FairParam(a)).value);
  }
}

TEST(Naive, CheaterStrategyIsPureAndOwnOnly) {
  const auto r = naive_exploitation(Player::P1, FairParam(Rational(1, 6)));
  const GameTree t = build_cheating({1, 0, 0, 0});
  for (const InfoSet& info : t.infosets()) {
    EXPECT_EQ(r.cheater_strategy.covers(info.id), info.owner == Player::P1);
    if (info.owner != Player::P1) continue;
    const auto& d = r.cheater_strategy.at(info.id);
    EXPECT_EQ(std::count(d.begin(), d.end(), Rational(1)), 1);
  }
}

TEST(PublishedTables, ConsistentRowsReproduce) {
  const DealBreakdown p2 = naive_exploitation(Player::P2, FairParam(0)).breakdown;
  EXPECT_EQ(p2.p1_gross[0], Rational(1, 6));  // KJ
  EXPECT_EQ(p2.p1_gross[1], Rational(1, 6));  // KQ

  const DealBreakdown p1 = naive_exploitation(Player::P1, FairParam(0)).breakdown;
  EXPECT_EQ(p1.p1_gross[0], Rational(2, 9));  // KJ
  EXPECT_EQ(p1.p1_gross[1], Rational(2, 9));  // KQ
  EXPECT_EQ(p1.p1_gross[2], Rational(2, 9));  // QJ
  EXPECT_EQ(p1.p2_gross[3], Rational(1, 6));  // QK
  EXPECT_EQ(p1.p2_gross[4], Rational(1, 6));  // JK
}

TEST(PublishedTables, InconsistenciesAreFlagged) {
  const auto p1 = naive_exploitation(Player::P1, FairParam(0));
  const PaperDiscrepancy d1 =
      compare_with_published(published_naive_table(Player::P1), p1.breakdown, 0);
  EXPECT_TRUE(d1.any());
  EXPECT_EQ(d1.published_value, Rational(7, 18));
  EXPECT_EQ(d1.computed_value, Rational(1, 3));
  ASSERT_EQ(d1.rows.size(), 1u);
  EXPECT_EQ(kDeals[d1.rows[0].row].label(), "JQ");
  EXPECT_EQ(d1.rows[0].side, Player::P2);
  EXPECT_EQ(d1.rows[0].published, Rational(1, 18));
  EXPECT_EQ(d1.rows[0].computed, Rational(1, 9));

  for (const Rational& a : kAGrid) {
    const auto p2 = naive_exploitation(Player::P2, FairParam(a));
    const PaperDiscrepancy d2 =
        compare_with_published(published_naive_table(Player::P2), p2.breakdown, a);
    EXPECT_TRUE(d2.any());
    EXPECT_EQ(d2.published_value, Rational(-2, 3) - a / 9);
    EXPECT_EQ(d2.computed_value, Rational(-2, 9));
  }
}

TEST(PublishedTables, PrintedRowsDoNotAddUpToThePrintedNet) {
  const AffineBreakdown t = published_naive_table(Player::P2);
  for (const Rational& a : kAGrid) {
    Rational sum = 0;
    for (std::size_t i = 0; i < 6; ++i) sum += t.p1_gross[i].at(a) - t.p2_gross[i].at(a);
    EXPECT_EQ(sum, Rational(-2, 9) + a / 9);
    EXPECT_NE(sum, t.net.at(a));
  }
}

}  // namespace
}  // namespace kuhncheat
