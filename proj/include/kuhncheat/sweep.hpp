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
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "json.hpp"

#include "kuhncheat/errors.hpp"
#include "kuhncheat/kuhn.hpp"
#include "kuhncheat/rational.hpp"
#include "kuhncheat/sequence_form.hpp"
#include "kuhncheat/solve_result.hpp"

namespace kuhncheat {

enum class SweepMode {
  Cheat,   // axes (p, q), no detection
  Detect,  // axes (r1, r2) at fixed p, q
};

enum class SurfaceFormat { Csv, Json };

struct SweepSpec {
  SweepMode mode = SweepMode::Cheat;
  std::size_t n = 21;  // points per axis: i / (n - 1)
  Rational fixed_p = 1;
  Rational fixed_q = 1;
  // When non-empty these replace the regular grid on the respective axis.
  std::vector<Rational> axis1_values;
  std::vector<Rational> axis2_values;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (n < 2) throw RangeError("sweep resolution n must be at least 2");
    CheatConfig{fixed_p, fixed_q, 0, 0}.validate();
  }

  std::vector<Rational> axis(std::size_t which) const {
    std::vector<Rational> out = which == 1 ? axis1_values : axis2_values;
    if (!out.empty()) {
      for (Rational& v : out) v.canonicalize();
      return out;
    }
    for (std::size_t i = 0; i < n; ++i) {
      Rational v(static_cast<long>(i), static_cast<long>(n - 1));
      v.canonicalize();
      out.push_back(v);
    }
    return out;
  }

  CheatConfig config_at(const Rational& axis1, const Rational& axis2) const {
    if (mode == SweepMode::Cheat) return {axis1, axis2, 0, 0};
    return {fixed_p, fixed_q, axis1, axis2};
  }
};

struct SurfaceCell {
  Rational axis1;
  Rational axis2;
  Rational value;  // to player 1
  Method method = Method::Lp;

  std::string value_decimal() const { return to_decimal(value, 12); }
  friend bool operator==(const SurfaceCell&, const SurfaceCell&) = default;
};

inline Rational solve_cell(const SweepSpec& spec, const Rational& axis1, const Rational& axis2) {
  const CheatConfig config = spec.config_at(axis1, axis2);
  const GameTree tree =
      spec.mode == SweepMode::Cheat ? build_cheating(config) : build_detection(config);
  return solve_lp(tree).value;
}

// One exact LP solve per grid cell, row-major in (axis1, axis2). Cells are
// independent and may be solved on several threads; the output order does not
// depend on scheduling.
inline std::vector<SurfaceCell> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto a1 = spec.axis(1);
  const auto a2 = spec.axis(2);
  for (const auto* axis : {&a1, &a2}) {
    for (const Rational& v : *axis) {
      if (v < 0 || v > 1) throw RangeError("axis value " + to_string(v) + " is outside [0, 1]");
    }
  }
  std::vector<SurfaceCell> cells(a1.size() * a2.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      SurfaceCell& cell = cells[k];
      cell.axis1 = a1[k / a2.size()];
      cell.axis2 = a2[k % a2.size()];
      try {
        cell.value = solve_cell(spec, cell.axis1, cell.axis2);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cells.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (!errors[k]) continue;
    const std::string where = "sweep cell (" + to_string(cells[k].axis1) + ", " +
                              to_string(cells[k].axis2) + ")";
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      throw Error(where + ": " + e.what());
    }
  }
  return cells;
}

inline std::string emit_surface(const std::vector<SurfaceCell>& cells, SurfaceFormat format) {
  if (format == SurfaceFormat::Csv) {
    std::string out = "axis1,axis2,value_exact,value_decimal\n";
    for (const SurfaceCell& c : cells) {
      out += to_string(c.axis1) + "," + to_string(c.axis2) + "," + to_string(c.value) + "," +
             c.value_decimal() + "\n";
    }
    return out;
  }
  nlohmann::json array = nlohmann::json::array();
  for (const SurfaceCell& c : cells) {
    array.push_back({{"axis1", to_string(c.axis1)},
                     {"axis2", to_string(c.axis2)},
                     {"value_exact", to_string(c.value)},
                     {"value_decimal", c.value_decimal()},
                     {"method", std::string(to_string(c.method))}});
  }
  return array.dump(2) + "\n";
}

inline std::vector<SurfaceCell> parse_surface(std::string_view text, SurfaceFormat format) {
  std::vector<SurfaceCell> cells;
  if (format == SurfaceFormat::Csv) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "axis1,axis2,value_exact,value_decimal") {
      throw ParseError("surface CSV has an unexpected header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::istringstream row(line);
      for (std::string field; std::getline(row, field, ',');) fields.push_back(field);
      if (fields.size() != 4) throw ParseError("surface CSV row has " + std::to_string(fields.size()) + " fields");
      cells.push_back({parse_rational(fields[0]), parse_rational(fields[1]),
                       parse_rational(fields[2]), Method::Lp});
    }
    return cells;
  }
  nlohmann::json array;
  try {
    array = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("surface JSON: ") + e.what());
  }
  if (!array.is_array()) throw ParseError("surface JSON is not an array");
  for (const auto& obj : array) {
    try {
      const std::string method = obj.value("method", "lp");
      cells.push_back({parse_rational(obj.at("axis1").get<std::string>()),
                       parse_rational(obj.at("axis2").get<std::string>()),
                       parse_rational(obj.at("value_exact").get<std::string>()),
                       method == "cfr" ? Method::Cfr
                                       : (method == "normal-form" ? Method::NormalForm : Method::Lp)});
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("surface JSON cell: ") + e.what());
    }
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Post-processing reports on a finished sweep.

// Extent of the cells whose value is exactly zero.
struct PlateauReport {
  std::size_t zero_cells = 0;
  std::optional<Rational> axis1_min, axis1_max, axis2_min, axis2_max;
};

inline PlateauReport zero_plateau(const std::vector<SurfaceCell>& cells) {
  PlateauReport r;
  for (const SurfaceCell& c : cells) {
    if (sgn(c.value) != 0) continue;
    ++r.zero_cells;
    if (!r.axis1_min || c.axis1 < *r.axis1_min) r.axis1_min = c.axis1;
    if (!r.axis1_max || c.axis1 > *r.axis1_max) r.axis1_max = c.axis1;
    if (!r.axis2_min || c.axis2 < *r.axis2_min) r.axis2_min = c.axis2;
    if (!r.axis2_max || c.axis2 > *r.axis2_max) r.axis2_max = c.axis2;
  }
  return r;
}

// Grid cells laid out as rows over axis1, columns over axis2.
class SurfaceGrid {
 public:
  explicit SurfaceGrid(const std::vector<SurfaceCell>& cells) : cells_(cells) {
    for (const SurfaceCell& c : cells) {
      if (std::find(a1_.begin(), a1_.end(), c.axis1) == a1_.end()) a1_.push_back(c.axis1);
      if (std::find(a2_.begin(), a2_.end(), c.axis2) == a2_.end()) a2_.push_back(c.axis2);
    }
    if (a1_.size() * a2_.size() != cells.size()) throw Error("cells do not form a full grid");
  }
  std::size_t rows() const { return a1_.size(); }
  std::size_t cols() const { return a2_.size(); }
  const SurfaceCell& at(std::size_t i, std::size_t j) const { return cells_[i * a2_.size() + j]; }

 private:
  const std::vector<SurfaceCell>& cells_;
  std::vector<Rational> a1_, a2_;
};

struct MonotonicityViolation {
  SurfaceCell lower;  // the earlier cell on the grid line
  SurfaceCell upper;
  bool along_axis1;
};

// Detection sweeps: the value should not decrease as player 1 detects more
// (axis1) and should not increase as player 2 detects more (axis2).
inline std::vector<MonotonicityViolation> detection_monotonicity(
    const std::vector<SurfaceCell>& cells) {
  const SurfaceGrid grid(cells);
  std::vector<MonotonicityViolation> out;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      if (i + 1 < grid.rows() && grid.at(i + 1, j).value < grid.at(i, j).value) {
        out.push_back({grid.at(i, j), grid.at(i + 1, j), true});
      }
      if (j + 1 < grid.cols() && grid.at(i, j + 1).value > grid.at(i, j).value) {
        out.push_back({grid.at(i, j), grid.at(i, j + 1), false});
      }
    }
  }
  return out;
}

// Largest absolute difference between neighbouring cells.
inline Rational max_adjacent_difference(const std::vector<SurfaceCell>& cells) {
  const SurfaceGrid grid(cells);
  Rational worst = 0;
  for (std::size_t i = 0; i < grid.rows(); ++i) {
    for (std::size_t j = 0; j < grid.cols(); ++j) {
      if (i + 1 < grid.rows()) worst = std::max<Rational>(worst, abs(grid.at(i + 1, j).value - grid.at(i, j).value));
      if (j + 1 < grid.cols()) worst = std::max<Rational>(worst, abs(grid.at(i, j + 1).value - grid.at(i, j).value));
    }
  }
  return worst;
}

struct BilinearPatch {
  Rational axis1_lo, axis1_hi, axis2_lo, axis2_hi;
  Rational midpoint_value;
  Rational interpolated;  // bilinear interpolant of the corners at the midpoint
  Rational deviation;     // |midpoint_value - interpolated|
};

// For every grid square, solve the game at its midpoint and compare with the
// bilinear interpolant of the four corner values. No threshold is applied.
inline std::vector<BilinearPatch> bilinear_report(const SweepSpec& spec,
                                                  const std::vector<SurfaceCell>& cells) {
  const SurfaceGrid grid(cells);
  std::vector<BilinearPatch> out;
  for (std::size_t i = 0; i + 1 < grid.rows(); ++i) {
    for (std::size_t j = 0; j + 1 < grid.cols(); ++j) {
      const SurfaceCell& c00 = grid.at(i, j);
      const SurfaceCell& c11 = grid.at(i + 1, j + 1);
      BilinearPatch patch;
      patch.axis1_lo = c00.axis1;
      patch.axis1_hi = c11.axis1;
      patch.axis2_lo = c00.axis2;
      patch.axis2_hi = c11.axis2;
      patch.interpolated =
          (c00.value + grid.at(i + 1, j).value + grid.at(i, j + 1).value + c11.value) / 4;
      patch.midpoint_value = solve_cell(spec, (c00.axis1 + c11.axis1) / 2, (c00.axis2 + c11.axis2) / 2);
      patch.deviation = abs(patch.midpoint_value - patch.interpolated);
      out.push_back(patch);
    }
  }
  return out;
}

}  // namespace kuhncheat
