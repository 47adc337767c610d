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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "kuhncheat/analytic.hpp"
#include "kuhncheat/cfr.hpp"
#include "kuhncheat/normal_form.hpp"
#include "kuhncheat/sequence_form.hpp"
#include "kuhncheat/simplex.hpp"

namespace kuhncheat {
namespace {

using Terms = std::vector<std::pair<std::size_t, Rational>>;

std::vector<Rational> at_label(const GameTree& t, const BehaviorProfile& p, const std::string& label) {
  for (const InfoSet& info : t.infosets()) {
    if (info.label == label) return p.at(info.id);
  }
  ADD_FAILURE() << "no infoset " << label;
  return {};
}

// A random full profile with small-denominator probabilities.
BehaviorProfile random_profile(const GameTree& t, std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 6);
  BehaviorProfile p(t.infosets().size());
  for (const InfoSet& info : t.infosets()) {
    const Rational x(pick(rng), 6);
    p.set(info.id, {x, 1 - x});
  }
  return p;
}

TEST(Simplex, SmallOptimum) {
  // max 3x + 2y  s.t.  x + y <= 4,  x + 3y <= 6,  x <= 3
  lp::LinearProgram<Rational> prog;
  const auto x = prog.add_variable(false, 3);
  const auto y = prog.add_variable(false, 2);
  prog.add_row({{x, 1}, {y, 1}}, lp::Sense::LessEqual, 4);
  prog.add_row({{x, 1}, {y, 3}}, lp::Sense::LessEqual, 6);
  prog.add_row({{x, 1}}, lp::Sense::LessEqual, 3);
  for (auto rule : {lp::PivotRule::Bland, lp::PivotRule::DantzigThenBland}) {
    const auto s = lp::solve(prog, rule);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_EQ(s.objective, 11);
    EXPECT_EQ(s.values[x], 3);
    EXPECT_EQ(s.values[y], 1);
  }
}

TEST(Simplex, EqualityFreeAndGreaterEqual) {
  // max -z  s.t.  z - x >= -1/2,  x + y = 1,  y >= 3/4 ; z free
  lp::LinearProgram<Rational> prog;
  const auto x = prog.add_variable();
  const auto y = prog.add_variable();
  const auto z = prog.add_variable(true, -1);
  prog.add_row({{z, 1}, {x, -1}}, lp::Sense::GreaterEqual, Rational(-1, 2));
  prog.add_row({{x, 1}, {y, 1}}, lp::Sense::Equal, 1);
  prog.add_row({{y, 1}}, lp::Sense::GreaterEqual, Rational(3, 4));
  const auto s = lp::solve(prog);
  ASSERT_EQ(s.status, lp::Status::Optimal);
  EXPECT_EQ(s.values[z], Rational(-1, 2));
  EXPECT_EQ(s.objective, Rational(1, 2));
}

TEST(Simplex, InfeasibleAndUnbounded) {
  lp::LinearProgram<Rational> bad;
  const auto x = bad.add_variable(false, 1);
  bad.add_row({{x, 1}}, lp::Sense::LessEqual, 1);
  bad.add_row({{x, 1}}, lp::Sense::GreaterEqual, 2);
  EXPECT_EQ(lp::solve(bad).status, lp::Status::Infeasible);

  lp::LinearProgram<Rational> open;
  const auto u = open.add_variable(false, 1);
  const auto w = open.add_variable(false, 0);
  open.add_row({{u, 1}, {w, -1}}, lp::Sense::LessEqual, 1);
  EXPECT_EQ(lp::solve(open).status, lp::Status::Unbounded);
}

TEST(Simplex, CyclingExampleTerminates) {
  // Beale's degenerate program; the textbook Dantzig rule cycles on it.
  lp::LinearProgram<Rational> prog;
  const auto x1 = prog.add_variable(false, Rational(3, 4));
  const auto x2 = prog.add_variable(false, -150);
  const auto x3 = prog.add_variable(false, Rational(1, 50));
  const auto x4 = prog.add_variable(false, -6);
  prog.add_row({{x1, Rational(1, 4)}, {x2, -60}, {x3, Rational(-1, 25)}, {x4, 9}}, lp::Sense::LessEqual, 0);
  prog.add_row({{x1, Rational(1, 2)}, {x2, -90}, {x3, Rational(-1, 50)}, {x4, 3}}, lp::Sense::LessEqual, 0);
  prog.add_row({{x3, 1}}, lp::Sense::LessEqual, 1);
  for (auto rule : {lp::PivotRule::Bland, lp::PivotRule::DantzigThenBland}) {
    const auto s = lp::solve(prog, rule);
    ASSERT_EQ(s.status, lp::Status::Optimal);
    EXPECT_EQ(s.objective, Rational(1, 20));
  }
}

TEST(SequenceForm, ConstraintShape) {
  for (const GameTree& t : {build_classic(), build_detection({1, Rational(1, 2), Rational(1, 3), 0})}) {
    const SequenceFormLP sf = build_sequence_form(t);
    for (Player p : kPlayers) {
      const auto entries = sf.constraints(p);
      std::vector<int> minus(sf.num_rows(p), 0), plus(sf.num_rows(p), 0);
      for (const auto& e : entries) (e.coefficient < 0 ? minus : plus)[e.row]++;
      EXPECT_EQ(minus[0], 0);
      EXPECT_EQ(plus[0], 1);  // the empty sequence
      for (std::size_t r = 1; r < sf.num_rows(p); ++r) {
        EXPECT_EQ(minus[r], 1);
        EXPECT_EQ(static_cast<std::size_t>(plus[r]),
                  t.infoset(sf.sequences[index_of(p)].infosets[r - 1]).actions.size());
      }
    }
  }
}

TEST(SequenceForm, DualityIsExact) {
  for (const CheatConfig& c : {CheatConfig{}, CheatConfig{Rational(1, 2), Rational(1, 3), 0, 0},
                               CheatConfig{1, 1, Rational(1, 2), Rational(1, 2)}}) {
    const SequenceFormLP sf = build_sequence_form(build_variant(c));
    const auto p1 = detail::solve_player(sf, Player::P1);
    const auto p2 = detail::solve_player(sf, Player::P2);
    EXPECT_EQ(p1.value, -p2.value);
  }
}

TEST(Lp, ClassicValueAndPlayerTwoStrategy) {
  const GameTree t = build_classic();
  const SolveResult r = solve_lp(t);
  EXPECT_EQ(r.value, Rational(-1, 18));
  EXPECT_EQ(r.exploitability, 0);
  EXPECT_EQ(r.method, Method::Lp);
  using V = std::vector<Rational>;
  EXPECT_EQ(at_label(t, r.profile, "P2 Q @b"), (V{Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(at_label(t, r.profile, "P2 J @k"), (V{Rational(1, 3), Rational(2, 3)}));
  EXPECT_EQ(at_label(t, r.profile, "P2 K @b"), (V{1, 0}));
  EXPECT_EQ(at_label(t, r.profile, "P2 K @k"), (V{1, 0}));
  EXPECT_EQ(at_label(t, r.profile, "P2 Q @k"), (V{0, 1}));
  EXPECT_EQ(at_label(t, r.profile, "P2 J @b"), (V{0, 1}));
}

TEST(Lp, OneSidedCheating) {
  EXPECT_EQ(solve_lp(build_cheating({0, 1, 0, 0})).value, Rational(-1, 9));
  EXPECT_EQ(solve_lp(build_cheating({1, 0, 0, 0})).value, Rational(1, 9));
}

// The adaptive tables list conditional per-deal winnings, i.e. six times the
// weighted breakdown. They are checked only because the solver happens to
// pick the same equilibrium; the values above are what must hold.
TEST(Lp, AdaptiveBreakdownsOfTheChosenEquilibria) {
  const auto conditional = [](const CheatConfig& c) {
    const GameTree t = build_cheating(c);
    DealBreakdown b = per_deal_breakdown(t, solve_lp(t).profile);
    for (std::size_t i = 0; i < 6; ++i) {
      b.p1_gross[i] *= 6;
      b.p2_gross[i] *= 6;
    }
    return b;
  };
  const DealBreakdown p1 = conditional({1, 0, 0, 0});
  EXPECT_EQ(p1.p1_gross, (std::array<Rational, 6>{1, Rational(5, 3), 1, 0, 0, Rational(1, 9)}));
  EXPECT_EQ(p1.p2_gross, (std::array<Rational, 6>{0, 0, 0, 1, 1, Rational(10, 9)}));
  const DealBreakdown p2 = conditional({0, 1, 0, 0});
  EXPECT_EQ(p2.p1_gross, (std::array<Rational, 6>{1, 1, Rational(10, 9), 0, 0, 0}));
  EXPECT_EQ(p2.p2_gross, (std::array<Rational, 6>{0, 0, Rational(1, 9), Rational(5, 3), 1, 1}));
}

TEST(Lp, PlateauAroundNinetyPercent) {
  for (const auto& [p, q] : {std::pair{Rational(9, 10), Rational(9, 10)},
                             std::pair{Rational(89, 100), Rational(9, 10)},
                             std::pair{Rational(91, 100), Rational(9, 10)}}) {
    EXPECT_EQ(solve_lp(build_cheating({p, q, 0, 0})).value, 0);
  }
}

TEST(Lp, ValuesBoundedAndProfilesValid) {
  const Rational v[] = {0, Rational(1, 2), 1};
  for (const auto& p : v)
    for (const auto& r2 : v) {
      const GameTree t = build_variant({p, 1, Rational(1, 2), r2});
      const SolveResult r = solve_lp(t);
      EXPECT_LE(abs(r.value), 2);
      EXPECT_TRUE(profile_problems(t, r.profile).empty());
      EXPECT_EQ(expected_value(t, r.profile), r.value);
    }
}

TEST(BestResponse, CheaterAgainstFairPlay) {
  const GameTree q1 = build_cheating({0, 1, 0, 0});
  const auto p1_fair = fair_profile(q1, FairParam(0)).restricted_to(q1, Player::P1);
  EXPECT_EQ(best_response(q1, p1_fair, Player::P2).value, Rational(-2, 9));
  const GameTree p1 = build_cheating({1, 0, 0, 0});
  const auto p2_fair = fair_profile(p1, FairParam(0)).restricted_to(p1, Player::P2);
  EXPECT_EQ(best_response(p1, p2_fair, Player::P1).value, Rational(1, 3));
}

TEST(BestResponse, NoProfitableDeviationFromEquilibrium) {
  const GameTree t = build_classic();
  const SolveResult r = solve_lp(t);
  for (Player p : kPlayers) {
    const auto fixed = r.profile.restricted_to(t, p);
    EXPECT_EQ(best_response(t, fixed, opponent(p)).value, Rational(-1, 18));
  }
}

TEST(BestResponse, DominatesEveryProfile) {
  std::mt19937 rng(7);
  const GameTree t = build_detection({Rational(1, 2), Rational(1, 2), Rational(1, 4), Rational(3, 4)});
  for (int i = 0; i < 5; ++i) {
    const BehaviorProfile p = random_profile(t, rng);
    const Rational v = expected_value(t, p);
    EXPECT_GE(best_response(t, p, Player::P1).value, v);
    EXPECT_LE(best_response(t, p, Player::P2).value, v);
    EXPECT_GE(exploitability(t, p), 0);
  }
}

TEST(BestResponse, RequiresTheOpponentsStrategy) {
  const GameTree t = build_classic();
  const auto only_p1 = BehaviorProfile::uniform(t).restricted_to(t, Player::P1);
  EXPECT_THROW(best_response(t, only_p1, Player::P1), CoverageError);
  EXPECT_NO_THROW(best_response(t, only_p1, Player::P2));
}

TEST(Exploitability, ZeroForFairFamilyAndLp) {
  const GameTree t = build_classic();
  EXPECT_EQ(exploitability(t, fair_profile(t, FairParam(Rational(1, 6)))), 0);
  EXPECT_EQ(exploitability(t, solve_lp(t).profile), 0);
}

// Against a uniformly random opponent every pure strategy of the opponent is
// equally likely, so the best responses are the best row and column averages.
TEST(Exploitability, UniformMatchesTheMatrixOracle) {
  const GameTree t = build_classic();
  const NormalForm nf = enumerate_normal_form(t);
  const std::size_t rows = nf.num_strategies[0], cols = nf.num_strategies[1];
  Rational best_row = -100, worst_col = 100;
  for (std::size_t i = 0; i < rows; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < cols; ++j) s += nf.payoff[i][j];
    best_row = std::max<Rational>(best_row, s / cols);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    Rational s = 0;
    for (std::size_t i = 0; i < rows; ++i) s += nf.payoff[i][j];
    worst_col = std::min<Rational>(worst_col, s / rows);
  }
  const Rational e = exploitability(t, BehaviorProfile::uniform(t));
  EXPECT_GT(e, 0);
  EXPECT_EQ(e, best_row - worst_col);
}

TEST(NormalForm, ClassicMatrix) {
  const GameTree t = build_classic();
  const NormalForm nf = enumerate_normal_form(t);
  EXPECT_EQ(nf.num_strategies[0], 64u);
  EXPECT_EQ(nf.num_strategies[1], 64u);
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, 63);
  for (int k = 0; k < 40; ++k) {
    const std::size_t i = pick(rng), j = pick(rng);
    EXPECT_EQ(nf.payoff[i][j], expected_value(t, BehaviorProfile::pure(t, nf.choices(t, i, j))));
  }
  EXPECT_EQ(solve_matrix_game(nf.payoff).value, Rational(-1, 18));
}

TEST(NormalForm, AgreesWithLp) {
  for (const CheatConfig& c : {CheatConfig{}, CheatConfig{1, 0, 0, 0}, CheatConfig{0, 1, 0, 0}}) {
    const GameTree t = build_cheating(c);
    const SolveResult nf = solve_normal_form(t);
    EXPECT_EQ(nf.value, solve_lp(t).value);
    EXPECT_EQ(nf.exploitability, 0);
    EXPECT_EQ(nf.method, Method::NormalForm);
  }
}

TEST(NormalForm, CapIsEnforced) {
  EXPECT_THROW(enumerate_normal_form(build_detection({1, 1, Rational(1, 2), Rational(1, 2)})),
               SizeError);
  EXPECT_THROW(enumerate_normal_form(build_classic(), 63), SizeError);
}

TEST(MatrixGame, MatchingPennies) {
  const std::vector<std::vector<Rational>> m = {{1, -1}, {-1, 1}};
  const auto s = solve_matrix_game(m);
  EXPECT_EQ(s.value, 0);
  EXPECT_EQ(s.row_mix, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(s.col_mix, (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
}

TEST(Cfr, ClassicConverges) {
  const GameTree t = build_classic();
  const auto r = solve_cfr(t, 100000);
  EXPECT_NEAR(r.value, -1.0 / 18, 1e-3);
  EXPECT_LE(r.exploitability, 1e-2);
  EXPECT_EQ(r.method, Method::Cfr);
  EXPECT_EQ(r.iterations, 100000u);
}

TEST(Cfr, BothCheatingConverges) {
  const auto r = solve_cfr(build_cheating({1, 1, 0, 0}), 100000);
  EXPECT_NEAR(r.value, 0.0, 1e-3);
}

TEST(Cfr, SingleIterationIsUniform) {
  const GameTree t = build_classic();
  const auto r = solve_cfr(t, 1);
  EXPECT_EQ(r.profile, BehaviorProfile::uniform(t).convert<double>());
  EXPECT_TRUE(std::isfinite(r.exploitability));
  EXPECT_GT(r.exploitability, 0);
}

TEST(Cfr, ExploitabilityShrinks) {
  const GameTree t = build_cheating({Rational(1, 2), Rational(1, 2), 0, 0});
  const double e1 = solve_cfr(t, 100).exploitability;
  const double e2 = solve_cfr(t, 10000).exploitability;
  EXPECT_LT(e2, e1 / 5);
}

TEST(Cfr, AgreesWithLpOnSampleConfigs) {
  for (const CheatConfig& c : {CheatConfig{Rational(1, 2), 0, 0, 0},
                               CheatConfig{1, Rational(1, 2), Rational(1, 2), 0},
                               CheatConfig{Rational(1, 2), Rational(1, 2), Rational(1, 2), Rational(1, 2)}}) {
    const GameTree t = build_variant(c);
    const auto r = solve_cfr(t, 100000);
    EXPECT_NEAR(r.value, solve_lp(t).value.get_d(), 1e-2);
    EXPECT_LE(r.exploitability, 1e-2);
  }
}

}  // namespace
}  // namespace kuhncheat
