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

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "kuhncheat/rational.hpp"

namespace kuhncheat::lp {

template <class Scalar>
struct ScalarTraits {
  static int sign(const Scalar& x) { return sgn(x); }
};

template <>
struct ScalarTraits<double> {
  static int sign(double x) {
    constexpr double kEps = 1e-12;
    return x > kEps ? 1 : (x < -kEps ? -1 : 0);
  }
};

enum class Sense { LessEqual, Equal, GreaterEqual };

// maximize  objective . x
// s.t.      rows (terms . x  <sense>  rhs)
//           x_j >= 0 unless the variable is free.
template <class Scalar>
struct LinearProgram {
  struct Row {
    std::vector<std::pair<std::size_t, Scalar>> terms;
    Sense sense = Sense::LessEqual;
    Scalar rhs = Scalar(0);
  };

  std::vector<Scalar> objective;
  std::vector<bool> is_free;
  std::vector<Row> rows;

  std::size_t num_vars() const { return objective.size(); }

  std::size_t add_variable(bool free = false, Scalar cost = Scalar(0)) {
    objective.push_back(std::move(cost));
    is_free.push_back(free);
    return objective.size() - 1;
  }

  void add_row(std::vector<std::pair<std::size_t, Scalar>> terms, Sense sense, Scalar rhs) {
    rows.push_back(Row{std::move(terms), sense, std::move(rhs)});
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

enum class PivotRule {
  Bland,  // smallest-index entering and leaving variables; never cycles
  // Most negative reduced cost, falling back to Bland after a run of
  // degenerate pivots.
  DantzigThenBland,
};

template <class Scalar>
struct Solution {
  Status status = Status::Infeasible;
  Scalar objective = Scalar(0);
  std::vector<Scalar> values;
  std::size_t pivots = 0;
};

namespace detail {

// Dense two-phase tableau. Column layout: structural columns (free variables
// split into +/- parts), then slack/surplus, then artificials; last column is
// the right-hand side. Row `m` holds reduced costs.
template <class Scalar>
class Tableau {
  using Traits = ScalarTraits<Scalar>;

 public:
  Tableau(const LinearProgram<Scalar>& lp, PivotRule rule) : lp_(lp), rule_(rule) {
    const std::size_t n = lp.num_vars();
    plus_col_.resize(n);
    minus_col_.assign(n, kNone);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n; ++j) {
      plus_col_[j] = cols++;
      if (lp.is_free[j]) minus_col_[j] = cols++;
    }
    structural_ = cols;

    m_ = lp.rows.size();
    std::vector<int> row_flip(m_, 1);
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      Sense sense = row.sense;
      if (Traits::sign(row.rhs) < 0) {
        row_flip[i] = -1;
        if (sense == Sense::LessEqual) sense = Sense::GreaterEqual;
        else if (sense == Sense::GreaterEqual) sense = Sense::LessEqual;
      }
      if (sense != Sense::Equal) ++slacks;
      if (sense != Sense::LessEqual) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    width_ = first_artificial_ + artificials;
    rhs_ = width_;

    t_.assign(m_ + 1, std::vector<Scalar>(width_ + 1, Scalar(0)));
    basis_.assign(m_, kNone);
    std::size_t next_slack = structural_;
    std::size_t next_art = first_artificial_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = lp.rows[i];
      const Scalar flip(row_flip[i]);
      for (const auto& [var, coeff] : row.terms) {
        t_[i][plus_col_[var]] += flip * coeff;
        if (minus_col_[var] != kNone) t_[i][minus_col_[var]] -= flip * coeff;
      }
      t_[i][rhs_] = flip * row.rhs;
      Sense sense = row.sense;
      if (row_flip[i] < 0 && sense != Sense::Equal) {
        sense = sense == Sense::LessEqual ? Sense::GreaterEqual : Sense::LessEqual;
      }
      if (sense == Sense::LessEqual) {
        t_[i][next_slack] = Scalar(1);
        basis_[i] = next_slack++;
      } else {
        if (sense == Sense::GreaterEqual) t_[i][next_slack++] = Scalar(-1);
        t_[i][next_art] = Scalar(1);
        basis_[i] = next_art++;
      }
    }
  }

  Solution<Scalar> solve() {
    Solution<Scalar> out;
    // Phase 1: maximize -(sum of artificials).
    std::vector<Scalar> phase1(width_, Scalar(0));
    for (std::size_t j = first_artificial_; j < width_; ++j) phase1[j] = Scalar(-1);
    load_objective(phase1);
    if (iterate(width_, out.pivots) != Status::Optimal) {
      out.status = Status::Infeasible;  // phase 1 is bounded; cannot happen
      return out;
    }
    if (Traits::sign(t_[m_][rhs_]) != 0) {
      out.status = Status::Infeasible;
      return out;
    }
    drive_out_artificials(out.pivots);

    // Phase 2 on the original objective; artificial columns may not enter.
    std::vector<Scalar> phase2(width_, Scalar(0));
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      phase2[plus_col_[j]] = lp_.objective[j];
      if (minus_col_[j] != kNone) phase2[minus_col_[j]] = -lp_.objective[j];
    }
    load_objective(phase2);
    out.status = iterate(first_artificial_, out.pivots);
    if (out.status != Status::Optimal) return out;

    std::vector<Scalar> column_value(width_, Scalar(0));
    for (std::size_t i = 0; i < m_; ++i) column_value[basis_[i]] = t_[i][rhs_];
    out.values.resize(lp_.num_vars());
    for (std::size_t j = 0; j < lp_.num_vars(); ++j) {
      out.values[j] = column_value[plus_col_[j]];
      if (minus_col_[j] != kNone) out.values[j] -= column_value[minus_col_[j]];
    }
    out.objective = t_[m_][rhs_];
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  // Reduced-cost row for maximizing `cost`: z_j - c_j over the current basis.
  void load_objective(const std::vector<Scalar>& cost) {
    auto& z = t_[m_];
    for (std::size_t j = 0; j < width_; ++j) z[j] = -cost[j];
    z[rhs_] = Scalar(0);
    for (std::size_t i = 0; i < m_; ++i) {
      const Scalar& cb = cost[basis_[i]];
      if (Traits::sign(cb) == 0) continue;
      for (std::size_t j = 0; j <= width_; ++j) {
        if (Traits::sign(t_[i][j]) != 0) z[j] += cb * t_[i][j];
      }
    }
  }

  std::optional<std::size_t> entering(std::size_t limit, bool bland) const {
    const auto& z = t_[m_];
    std::optional<std::size_t> best;
    for (std::size_t j = 0; j < limit; ++j) {
      if (Traits::sign(z[j]) >= 0) continue;
      if (bland) return j;
      if (!best || z[j] < z[*best]) best = j;
    }
    return best;
  }

  std::optional<std::size_t> leaving(std::size_t col) const {
    std::optional<std::size_t> best;
    Scalar best_ratio(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (Traits::sign(t_[i][col]) <= 0) continue;
      Scalar ratio = t_[i][rhs_] / t_[i][col];
      if (!best || ratio < best_ratio ||
          (Traits::sign(ratio - best_ratio) == 0 && basis_[i] < basis_[*best])) {
        best = i;
        best_ratio = std::move(ratio);
      }
    }
    return best;
  }

  Status iterate(std::size_t limit, std::size_t& pivots) {
    std::size_t degenerate_run = 0;
    constexpr std::size_t kDegenerateLimit = 50;
    for (;;) {
      const bool bland = rule_ == PivotRule::Bland || degenerate_run >= kDegenerateLimit;
      const auto col = entering(limit, bland);
      if (!col) return Status::Optimal;
      const auto row = leaving(*col);
      if (!row) return Status::Unbounded;
      if (Traits::sign(t_[*row][rhs_]) == 0) ++degenerate_run;
      else degenerate_run = 0;
      pivot(*row, *col);
      ++pivots;
    }
  }

  void drive_out_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (Traits::sign(t_[i][j]) != 0) {
          pivot(i, j);
          ++pivots;
          break;
        }
      }
      // Otherwise the row is redundant and the artificial stays basic at 0.
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = t_[row];
    const Scalar inv = Scalar(1) / pr[col];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= width_; ++j) {
      if (Traits::sign(pr[j]) != 0) {
        pr[j] *= inv;
        nonzero.push_back(j);
      }
    }
    pr[col] = Scalar(1);
    Scalar scaled;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == row) continue;
      auto& r = t_[i];
      if (Traits::sign(r[col]) == 0) continue;
      const Scalar factor = r[col];
      for (std::size_t j : nonzero) {
        scaled = factor * pr[j];
        r[j] -= scaled;
      }
      r[col] = Scalar(0);
    }
    basis_[row] = col;
  }

  const LinearProgram<Scalar>& lp_;
  PivotRule rule_;
  std::vector<std::size_t> plus_col_;
  std::vector<std::size_t> minus_col_;
  std::size_t structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t width_ = 0;
  std::size_t rhs_ = 0;
  std::size_t m_ = 0;
  std::vector<std::vector<Scalar>> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

template <class Scalar>
Solution<Scalar> solve(const LinearProgram<Scalar>& lp, PivotRule rule = PivotRule::Bland) {
  return detail::Tableau<Scalar>(lp, rule).solve();
}

}  // namespace kuhncheat::lp
