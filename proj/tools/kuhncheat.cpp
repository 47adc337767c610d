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

// Command-line front end: solve, eval, naive, sweep, export-efg, stats.
//
// Exit status: 0 on success, 2 for usage errors (unknown flags, values that do
// not parse or are out of range), 1 for anything that fails afterwards.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kuhncheat/kuhncheat.hpp"

namespace {

using kuhncheat::Rational;
using nlohmann::json;

// Thrown while turning flag strings into typed values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string p = "0", q = "0", r1 = "0", r2 = "0";
  std::string algo = "lp";
  std::string a = "0";
  int cheater = 1;
  std::size_t iterations = 100000;
  std::string mode = "cheat";
  std::string fixed_p = "1", fixed_q = "1";
  std::size_t n = 21;
  unsigned threads = 0;
  bool bilinear = false;
  std::string out;
  std::string format = "csv";
  std::string from;
};

Rational parse_flag(const std::string& name, const std::string& text) {
  try {
    return kuhncheat::parse_rational(text);
  } catch (const kuhncheat::ParseError& e) {
    throw UsageError("--" + name + ": " + e.what());
  }
}

kuhncheat::CheatConfig config_from(const Flags& f) {
  kuhncheat::CheatConfig c{parse_flag("p", f.p), parse_flag("q", f.q), parse_flag("r1", f.r1),
                           parse_flag("r2", f.r2)};
  try {
    c.validate();
  } catch (const kuhncheat::RangeError& e) {
    throw UsageError(e.what());
  }
  return c;
}

kuhncheat::FairParam fair_from(const Flags& f) {
  try {
    return kuhncheat::FairParam(parse_flag("a", f.a));
  } catch (const kuhncheat::RangeError& e) {
    throw UsageError(std::string("--a: ") + e.what());
  }
}

std::string decimal(const Rational& r) { return kuhncheat::to_decimal(r, 12); }
std::string decimal(double d) { return kuhncheat::to_decimal(Rational(d), 12); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw kuhncheat::Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << data) || !out.flush()) throw kuhncheat::Error("cannot write " + path);
}

std::string config_text(const kuhncheat::CheatConfig& c) {
  return "p=" + kuhncheat::to_string(c.p) + " q=" + kuhncheat::to_string(c.q) +
         " r1=" + kuhncheat::to_string(c.r1) + " r2=" + kuhncheat::to_string(c.r2);
}

json config_json(const kuhncheat::CheatConfig& c) {
  return {{"p", kuhncheat::to_string(c.p)},
          {"q", kuhncheat::to_string(c.q)},
          {"r1", kuhncheat::to_string(c.r1)},
          {"r2", kuhncheat::to_string(c.r2)}};
}

// Both the text and the JSON form of a report are built side by side.
struct Report {
  std::ostringstream text;
  json doc = json::object();

  void header(const kuhncheat::TreeMetadata& meta, std::string_view method) {
    text << "variant: " << meta.variant << "\n"
         << "config: " << config_text(meta.config) << "\n"
         << "method: " << method << "\n";
    doc["variant"] = meta.variant;
    doc["config"] = config_json(meta.config);
    doc["method"] = std::string(method);
  }

  void exact(const std::string& key, const std::string& label, const Rational& v) {
    text << label << ": " << kuhncheat::to_string(v) << " (" << decimal(v) << ")\n";
    doc[key + "_exact"] = kuhncheat::to_string(v);
    doc[key + "_decimal"] = decimal(v);
  }

  void breakdown(const kuhncheat::DealBreakdown& b, bool exact_values) {
    text << "breakdown:\n";
    json rows = json::array();
    for (std::size_t i = 0; i < 6; ++i) {
      const std::string deal = kuhncheat::kDeals[i].label();
      json row = {{"deal", deal},
                  {"p1_gross_decimal", decimal(b.p1_gross[i])},
                  {"p2_gross_decimal", decimal(b.p2_gross[i])}};
      if (exact_values) {
        row["p1_gross"] = kuhncheat::to_string(b.p1_gross[i]);
        row["p2_gross"] = kuhncheat::to_string(b.p2_gross[i]);
        text << "  " << deal << " p1=" << kuhncheat::to_string(b.p1_gross[i])
             << " p2=" << kuhncheat::to_string(b.p2_gross[i]) << "\n";
      } else {
        row["p1_gross"] = nullptr;
        row["p2_gross"] = nullptr;
        text << "  " << deal << " p1~" << decimal(b.p1_gross[i]) << " p2~"
             << decimal(b.p2_gross[i]) << "\n";
      }
      rows.push_back(std::move(row));
    }
    doc["breakdown"] = std::move(rows);
  }

  template <class Scalar>
  void strategy(const kuhncheat::GameTree& tree,
                const kuhncheat::BasicBehaviorProfile<Scalar>& profile) {
    text << "strategy:\n";
    json rows = json::array();
    for (const kuhncheat::InfoSet& info : tree.infosets()) {
      if (!profile.covers(info.id)) continue;
      json probs = json::array();
      text << "  " << info.label << ":";
      for (std::size_t k = 0; k < info.actions.size(); ++k) {
        std::string value;
        if constexpr (std::is_same_v<Scalar, Rational>) {
          value = kuhncheat::to_string(profile.at(info.id)[k]);
        } else {
          value = decimal(profile.at(info.id)[k]);
        }
        const std::string action(kuhncheat::to_string(info.actions[k]));
        text << " " << action << "=" << value;
        probs.push_back({{"action", action}, {"probability", value}});
      }
      text << "\n";
      rows.push_back({{"infoset", info.label},
                      {"player", kuhncheat::number_of(info.owner)},
                      {"probabilities", std::move(probs)}});
    }
    doc["strategy"] = std::move(rows);
  }

  void finish(const Flags& f) {
    std::cout << text.str();
    if (!f.out.empty()) write_file(f.out, doc.dump(2) + "\n");
  }
};

bool has_deal_layer(const kuhncheat::GameTree& tree) {
  try {
    kuhncheat::per_deal_breakdown(tree, kuhncheat::BehaviorProfile::uniform(tree));
    return true;
  } catch (const kuhncheat::UnsupportedVariantError&) {
    return false;
  }
}

kuhncheat::GameTree tree_from(const Flags& f, const kuhncheat::CheatConfig& config) {
  if (!f.from.empty()) return kuhncheat::parse_efg(read_file(f.from));
  return kuhncheat::build_variant(config);
}

int cmd_solve(const Flags& f) {
  const auto config = config_from(f);
  const kuhncheat::GameTree tree = tree_from(f, config);
  Report r;
  if (f.algo == "cfr") {
    if (f.iterations < 1) throw UsageError("--iterations must be at least 1");
    const auto result = kuhncheat::solve_cfr(tree, f.iterations);
    r.header(tree.metadata(), to_string(result.method));
    r.text << "iterations: " << result.iterations << "\n"
           << "value: ~" << decimal(result.value) << "\n"
           << "exploitability: ~" << decimal(result.exploitability) << "\n";
    r.doc["iterations"] = result.iterations;
    r.doc["value_exact"] = nullptr;
    r.doc["value_decimal"] = decimal(result.value);
    r.doc["exploitability"] = decimal(result.exploitability);
    if (has_deal_layer(tree)) {
      r.breakdown(kuhncheat::per_deal_breakdown(tree, result.profile.convert<Rational>()), false);
    }
    r.strategy(tree, result.profile);
  } else {
    const kuhncheat::SolveResult result =
        f.algo == "enum" ? kuhncheat::solve_normal_form(tree) : kuhncheat::solve_lp(tree);
    r.header(tree.metadata(), to_string(result.method));
    r.exact("value", "value", result.value);
    r.text << "exploitability: " << kuhncheat::to_string(result.exploitability) << "\n";
    r.doc["exploitability"] = kuhncheat::to_string(result.exploitability);
    if (has_deal_layer(tree)) r.breakdown(kuhncheat::per_deal_breakdown(tree, result.profile), true);
    r.strategy(tree, result.profile);
  }
  r.finish(f);
  return 0;
}

// Both players follow the fair strategies on the chosen variant.
int cmd_eval(const Flags& f) {
  const auto config = config_from(f);
  const auto param = fair_from(f);
  const kuhncheat::GameTree tree = kuhncheat::build_variant(config);
  const kuhncheat::BehaviorProfile profile = kuhncheat::fair_profile(tree, param);
  Report r;
  r.header(tree.metadata(), "fair");
  r.text << "a: " << kuhncheat::to_string(param.a) << "\n";
  r.doc["a"] = kuhncheat::to_string(param.a);
  r.exact("value", "value", kuhncheat::expected_value(tree, profile));
  const Rational expl = kuhncheat::exploitability(tree, profile);
  r.text << "exploitability: " << kuhncheat::to_string(expl) << "\n";
  r.doc["exploitability"] = kuhncheat::to_string(expl);
  r.breakdown(kuhncheat::per_deal_breakdown(tree, profile), true);
  r.finish(f);
  return 0;
}

int cmd_naive(const Flags& f) {
  const auto param = fair_from(f);
  const kuhncheat::Player cheater = f.cheater == 1 ? kuhncheat::Player::P1 : kuhncheat::Player::P2;
  const auto result = kuhncheat::naive_exploitation(cheater, param);
  const auto published = kuhncheat::published_naive_table(cheater);
  const auto diff = kuhncheat::compare_with_published(published, result.breakdown, param.a);

  kuhncheat::CheatConfig config;
  (cheater == kuhncheat::Player::P1 ? config.p : config.q) = 1;
  const kuhncheat::GameTree tree = kuhncheat::build_cheating(config);

  Report r;
  r.header(tree.metadata(), "best-response");
  r.text << "cheater: " << f.cheater << "\n"
         << "a: " << kuhncheat::to_string(param.a) << "\n";
  r.doc["cheater"] = f.cheater;
  r.doc["a"] = kuhncheat::to_string(param.a);
  r.exact("value", "value", result.value);
  r.text << "published: " << kuhncheat::to_string(diff.published_value) << " ("
         << decimal(diff.published_value) << ")\n";
  r.doc["published_value"] = kuhncheat::to_string(diff.published_value);
  const Rational expl = kuhncheat::exploitability(tree, result.profile);
  r.text << "exploitability: " << kuhncheat::to_string(expl) << "\n";
  r.doc["exploitability"] = kuhncheat::to_string(expl);
  r.breakdown(result.breakdown, true);
  if (diff.any()) {
    r.text << "paper_discrepancy: value published " << kuhncheat::to_string(diff.published_value)
           << " computed " << kuhncheat::to_string(diff.computed_value) << "\n";
    json rows = json::array();
    for (const auto& m : diff.rows) {
      const std::string deal = kuhncheat::kDeals[m.row].label();
      r.text << "  " << deal << " p" << kuhncheat::number_of(m.side) << " published "
             << kuhncheat::to_string(m.published) << " computed "
             << kuhncheat::to_string(m.computed) << "\n";
      rows.push_back({{"deal", deal},
                      {"player", kuhncheat::number_of(m.side)},
                      {"published", kuhncheat::to_string(m.published)},
                      {"computed", kuhncheat::to_string(m.computed)}});
    }
    r.doc["paper_discrepancy"] = {{"published_value", kuhncheat::to_string(diff.published_value)},
                                  {"computed_value", kuhncheat::to_string(diff.computed_value)},
                                  {"rows", std::move(rows)}};
  } else {
    r.text << "paper_discrepancy: none\n";
  }
  r.finish(f);
  return 0;
}

int cmd_sweep(const Flags& f) {
  kuhncheat::SweepSpec spec;
  spec.mode = f.mode == "detect" ? kuhncheat::SweepMode::Detect : kuhncheat::SweepMode::Cheat;
  spec.n = f.n;
  spec.threads = f.threads;
  if (spec.mode == kuhncheat::SweepMode::Detect) {
    spec.fixed_p = parse_flag("p", f.fixed_p);
    spec.fixed_q = parse_flag("q", f.fixed_q);
  }
  try {
    spec.validate();
  } catch (const kuhncheat::RangeError& e) {
    throw UsageError(e.what());
  }
  const auto format =
      f.format == "json" ? kuhncheat::SurfaceFormat::Json : kuhncheat::SurfaceFormat::Csv;
  const auto cells = kuhncheat::run_sweep(spec);
  const std::string surface = kuhncheat::emit_surface(cells, format);
  if (f.out.empty()) {
    std::cout << surface;
    return 0;
  }
  write_file(f.out, surface);

  std::cout << "cells: " << cells.size() << "\n";
  const auto plateau = kuhncheat::zero_plateau(cells);
  std::cout << "zero_cells: " << plateau.zero_cells << "\n";
  if (plateau.zero_cells > 0) {
    std::cout << "zero_extent: axis1 [" << kuhncheat::to_string(*plateau.axis1_min) << ", "
              << kuhncheat::to_string(*plateau.axis1_max) << "] axis2 ["
              << kuhncheat::to_string(*plateau.axis2_min) << ", "
              << kuhncheat::to_string(*plateau.axis2_max) << "]\n";
  }
  std::cout << "max_adjacent_difference: "
            << kuhncheat::to_string(kuhncheat::max_adjacent_difference(cells)) << "\n";
  if (spec.mode == kuhncheat::SweepMode::Detect) {
    std::cout << "monotonicity_violations: " << kuhncheat::detection_monotonicity(cells).size()
              << "\n";
  }
  if (f.bilinear) {
    Rational worst = 0;
    for (const auto& patch : kuhncheat::bilinear_report(spec, cells)) {
      worst = std::max(worst, patch.deviation);
    }
    std::cout << "bilinear_max_midpoint_deviation: " << kuhncheat::to_string(worst) << " ("
              << decimal(worst) << ")\n";
  }
  return 0;
}

int cmd_export(const Flags& f) {
  const kuhncheat::GameTree tree = kuhncheat::build_variant(config_from(f));
  const std::string text = kuhncheat::export_efg(tree);
  if (f.out.empty()) {
    std::cout << text;
  } else {
    write_file(f.out, text);
  }
  return 0;
}

int cmd_stats(const Flags& f) {
  const kuhncheat::GameTree tree = tree_from(f, config_from(f));
  const auto s = kuhncheat::tree_stats(tree);
  std::cout << "nodes=" << s.total_nodes() << " chance_nodes=" << s.chance_nodes
            << " terminal_nodes=" << s.terminal_nodes << " decision_nodes=" << s.decision_nodes
            << " infosets=" << s.total_infosets() << " infosets_p1=" << s.infosets_per_player[0]
            << " infosets_p2=" << s.infosets_per_player[1] << "\n";
  return 0;
}

void add_variant_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--p", f.p, "Probability player 1 cheats (fraction or decimal)");
  cmd->add_option("--q", f.q, "Probability player 2 cheats");
  cmd->add_option("--r1", f.r1, "Probability player 1 detects a cheat");
  cmd->add_option("--r2", f.r2, "Probability player 2 detects a cheat");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kuhn poker with cheating: exact equilibria, oracles and sweeps"};
  app.require_subcommand(1);
  Flags f;

  auto* solve = app.add_subcommand("solve", "Solve a variant for an equilibrium");
  add_variant_flags(solve, f);
  solve->add_option("--algo", f.algo, "lp, cfr or enum")
      ->check(CLI::IsMember({"lp", "cfr", "enum"}));
  solve->add_option("--iterations", f.iterations, "CFR iterations");
  solve->add_option("--from", f.from, "Read the game from an .efg file instead");
  solve->add_option("--out", f.out, "Write a JSON report here");

  auto* eval = app.add_subcommand("eval", "Evaluate the fair strategies on a variant");
  add_variant_flags(eval, f);
  eval->add_option("--a", f.a, "Player 1 bluffing parameter in [0, 1/3]");
  eval->add_option("--out", f.out, "Write a JSON report here");

  auto* naive = app.add_subcommand("naive", "A cheater's best response to fair play");
  naive->add_option("--cheater", f.cheater, "1 or 2")->check(CLI::IsMember({1, 2}));
  naive->add_option("--a", f.a, "Player 1 bluffing parameter in [0, 1/3]");
  naive->add_option("--out", f.out, "Write a JSON report here");

  auto* sweep = app.add_subcommand("sweep", "Tabulate the game value over a grid");
  sweep->add_option("--mode", f.mode, "cheat (p, q) or detect (r1, r2)")
      ->check(CLI::IsMember({"cheat", "detect"}));
  sweep->add_option("--n", f.n, "Points per axis");
  sweep->add_option("--p", f.fixed_p, "Fixed p in detect mode (default 1)");
  sweep->add_option("--q", f.fixed_q, "Fixed q in detect mode (default 1)");
  sweep->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--threads", f.threads, "Worker threads (0: all cores)");
  sweep->add_flag("--bilinear", f.bilinear, "Report midpoint deviation from bilinear patches");
  sweep->add_option("--out", f.out, "Write the surface here and print a summary");

  auto* exp = app.add_subcommand("export-efg", "Write a variant as a Gambit .efg file");
  add_variant_flags(exp, f);
  exp->add_option("--out", f.out, "Output path (default stdout)");

  auto* stats = app.add_subcommand("stats", "Node and information set counts");
  add_variant_flags(stats, f);
  stats->add_option("--from", f.from, "Read the game from an .efg file instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(f);
    if (*eval) return cmd_eval(f);
    if (*naive) return cmd_naive(f);
    if (*sweep) return cmd_sweep(f);
    if (*exp) return cmd_export(f);
    if (*stats) return cmd_stats(f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
