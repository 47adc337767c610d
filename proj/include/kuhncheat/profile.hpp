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

#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "kuhncheat/errors.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/rational.hpp"

namespace kuhncheat {

// Behavior strategies for both players: one distribution per information set,
// aligned with the infoset's action list. An infoset without a distribution
// is "uncovered"; restricted (single-player) profiles leave the opponent's
// infosets uncovered.
template <class Scalar>
class BasicBehaviorProfile {
 public:
  BasicBehaviorProfile() = default;
  explicit BasicBehaviorProfile(std::size_t num_infosets) : dist_(num_infosets) {}

  static BasicBehaviorProfile uniform(const GameTree& tree) {
    BasicBehaviorProfile profile(tree.infosets().size());
    for (const InfoSet& info : tree.infosets()) {
      const auto n = static_cast<long>(info.actions.size());
      profile.dist_[info.id].assign(info.actions.size(),
                                    scalar_cast<Scalar>(Rational(1, n)));
    }
    return profile;
  }

  // Every infoset plays its action at `choice[id]` with probability 1.
  static BasicBehaviorProfile pure(const GameTree& tree, const std::vector<std::size_t>& choice) {
    BasicBehaviorProfile profile(tree.infosets().size());
    for (const InfoSet& info : tree.infosets()) {
      std::vector<Scalar> d(info.actions.size(), Scalar(0));
      d.at(choice.at(info.id)) = Scalar(1);
      profile.dist_[info.id] = std::move(d);
    }
    return profile;
  }

  std::size_t size() const { return dist_.size(); }
  bool covers(InfoSetId id) const { return id < dist_.size() && !dist_[id].empty(); }

  const std::vector<Scalar>& at(InfoSetId id) const { return dist_.at(id); }
  const Scalar& probability(InfoSetId id, std::size_t action) const {
    return dist_.at(id).at(action);
  }

  void set(InfoSetId id, std::vector<Scalar> distribution) {
    if (id >= dist_.size()) dist_.resize(id + 1);
    if constexpr (std::is_same_v<Scalar, Rational>) {
      for (Rational& x : distribution) x.canonicalize();
    }
    dist_[id] = std::move(distribution);
  }

  // Copy of this profile keeping only `player`'s infosets.
  BasicBehaviorProfile restricted_to(const GameTree& tree, Player player) const {
    BasicBehaviorProfile out(tree.infosets().size());
    for (InfoSetId id : tree.infosets_of(player)) {
      if (covers(id)) out.dist_[id] = dist_[id];
    }
    return out;
  }

  // Player 1's part from `p1`, player 2's part from `p2`.
  static BasicBehaviorProfile combine(const GameTree& tree, const BasicBehaviorProfile& p1,
                                      const BasicBehaviorProfile& p2) {
    BasicBehaviorProfile out(tree.infosets().size());
    for (const InfoSet& info : tree.infosets()) {
      const auto& src = info.owner == Player::P1 ? p1 : p2;
      if (src.covers(info.id)) out.dist_[info.id] = src.dist_[info.id];
    }
    return out;
  }

  template <class Other>
  BasicBehaviorProfile<Other> convert() const {
    BasicBehaviorProfile<Other> out(dist_.size());
    for (std::size_t id = 0; id < dist_.size(); ++id) {
      if (dist_[id].empty()) continue;
      std::vector<Other> d;
      d.reserve(dist_[id].size());
      for (const Scalar& v : dist_[id]) d.push_back(scalar_cast<Other>(v));
      out.set(id, std::move(d));
    }
    return out;
  }

  friend bool operator==(const BasicBehaviorProfile&, const BasicBehaviorProfile&) = default;

 private:
  std::vector<std::vector<Scalar>> dist_;
};

using BehaviorProfile = BasicBehaviorProfile<Rational>;

// Throws CoverageError naming the first infoset (of `player`, or of both
// players) that `profile` leaves uncovered.
template <class Scalar>
void require_coverage(const GameTree& tree, const BasicBehaviorProfile<Scalar>& profile,
                      std::optional<Player> player = std::nullopt) {
  for (const InfoSet& info : tree.infosets()) {
    if (player && info.owner != *player) continue;
    if (!profile.covers(info.id)) {
      throw CoverageError("profile does not cover infoset " + std::to_string(info.id) +
                          " '" + info.label + "'");
    }
    if (profile.at(info.id).size() != info.actions.size()) {
      throw CoverageError("profile distribution at infoset " + std::to_string(info.id) +
                          " '" + info.label + "' has the wrong number of actions");
    }
  }
}

// Exact check that every covered distribution is nonnegative and sums to 1.
inline std::vector<std::string> profile_problems(const GameTree& tree,
                                                 const BehaviorProfile& profile) {
  std::vector<std::string> problems;
  for (const InfoSet& info : tree.infosets()) {
    if (!profile.covers(info.id)) continue;
    Rational sum = 0;
    for (const Rational& v : profile.at(info.id)) {
      if (v < 0) problems.push_back("negative probability at '" + info.label + "'");
      sum += v;
    }
    if (sum != 1) problems.push_back("distribution at '" + info.label + "' sums to " + to_string(sum));
  }
  return problems;
}

}  // namespace kuhncheat
