#pragma once

// Command-line front end. `run_cli` is the whole program minus main().
//
// Exit codes: 0 success, 1 usage or validation error, 2 internal error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "percept/experiments.hpp"
#include "percept/io.hpp"
#include "percept/report.hpp"

namespace percept {

/// Failure attributable to the input rather than the tool.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what, std::vector<std::string> details = {})
      : std::runtime_error(what), details_(std::move(details)) {}
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::vector<std::string> details_;
};

namespace detail {

struct CliOptions {
  std::string game_path;
  std::string mode = "upper";
  std::optional<int> grid;
  std::optional<double> step;
  double tol = kTolerance;
  std::vector<double> eps;
  std::string alphas;
  std::string format = "text";
  std::uint64_t seed = 0;
  std::string profile_path;
  std::string out_path;
  std::string example_name;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GameDocument load_game(const std::string& path) {
  if (path.empty()) throw InputError("--game is required");
  auto parsed = parse_game(read_file(path));
  if (!parsed.ok()) throw InputError("invalid game file '" + path + "'", parsed.errors);
  return *parsed.document;
}

inline std::vector<double> parse_alphas(const std::string& text) {
  if (text.empty()) return default_alpha_grid();
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double x = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(x);
    } catch (const std::exception&) {
      throw InputError("--alphas: '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw InputError("--alphas: empty list");
  return out;
}

/// Grid used for grid-certified ranges: only built for tabulated utilities.
struct GridChoice {
  std::unique_ptr<SimplexGrid> grid;
  std::optional<int> resolution;
  const SimplexGrid* get() const { return grid.get(); }
};

inline GridChoice grid_for(bool analytic, std::size_t dimension, const std::optional<int>& requested) {
  GridChoice g;
  if (analytic) return g;
  const int k = requested ? *requested : default_grid_resolution(dimension);
  if (k < 1) throw InputError("--grid must be a positive integer");
  g.grid = std::make_unique<SimplexGrid>(k, dimension);
  g.resolution = k;
  return g;
}

inline const SingleGameSpec& need_single(const GameDocument& doc, const std::string& command) {
  if (doc.kind() != GameKind::kSingle) throw InputError(command + " needs a single-player game");
  return std::get<SingleGameSpec>(doc.game);
}

// Profile files for `verify`.
//
// single:     {"strategy": {type: action | {action: p}}, "perception": {type: {action: [weights]}}}
// two_player: {"players": [{"strategy": ..., "perception": {type: {opp_type: {action: [weights]}}}}, ...]}
// "perception" is optional; when absent the least deterring consistent perception is used.

inline Strategy read_strategy(const nlohmann::json& j, const std::vector<std::string>& types, const std::vector<std::string>& actions,
                              const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object keyed by type");
  std::vector<std::vector<double>> rows(types.size(), std::vector<double>(actions.size(), 0.0));
  for (std::size_t t = 0; t < types.size(); ++t) {
    auto it = j.find(types[t]);
    if (it == j.end()) throw InputError(path + "/" + types[t] + ": missing");
    if (it->is_string()) {
      auto a = std::find(actions.begin(), actions.end(), it->get<std::string>());
      if (a == actions.end()) throw InputError(path + "/" + types[t] + ": unknown action '" + it->get<std::string>() + "'");
      rows[t][static_cast<std::size_t>(a - actions.begin())] = 1.0;
    } else if (it->is_object()) {
      for (const auto& [label, p] : it->items()) {
        auto a = std::find(actions.begin(), actions.end(), label);
        if (a == actions.end()) throw InputError(path + "/" + types[t] + ": unknown action '" + label + "'");
        if (!p.is_number()) throw InputError(path + "/" + types[t] + "/" + label + ": expected a number");
        rows[t][static_cast<std::size_t>(a - actions.begin())] = p.get<double>();
      }
    } else {
      throw InputError(path + "/" + types[t] + ": expected an action label or a map of probabilities");
    }
  }
  try {
    return Strategy(std::move(rows));
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline Belief read_belief(const nlohmann::json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n) throw InputError(path + ": expected " + std::to_string(n) + " weights");
  std::vector<double> w;
  for (const auto& x : j) {
    if (!x.is_number()) throw InputError(path + ": expected numbers");
    w.push_back(x.get<double>());
  }
  try {
    return Belief(std::move(w));
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline int cmd_validate(const CliOptions& o, AnalysisReport& rep) {
  const auto doc = load_game(o.game_path);
  rep.command = "validate";
  rep.body["kind"] = to_string(doc.kind());
  rep.body["valid"] = true;
  std::string text = "valid " + std::string(to_string(doc.kind())) + " game\n";
  if (const auto* s = std::get_if<SingleGameSpec>(&doc.game)) {
    const auto v = validate(*s);
    rep.body["continuous"] = v.continuous;
    ReportJson l = ReportJson::object();
    for (std::size_t t = 0; t < s->types.size(); ++t)
      l[s->types[t]] = v.lipschitz[0][t] ? ReportJson(format_number(*v.lipschitz[0][t])) : ReportJson(nullptr);
    rep.body["lipschitz_l1"] = l;
    text += std::string("continuous in the belief: ") + (v.continuous ? "yes" : "no") + "\n";
    Table table({"type", "L1 Lipschitz constant"});
    for (const auto& [t, x] : rep.body["lipschitz_l1"].items()) table.add({t, x.is_null() ? "none" : x.get<std::string>()});
    text += table.render();
  } else if (const auto* s = std::get_if<TwoPlayerSpec>(&doc.game)) {
    const auto v = validate(*s);
    rep.body["continuous"] = v.continuous;
    text += std::string("continuous in the belief: ") + (v.continuous ? "yes" : "no") + "\n";
  }
  rep.text = header_line(rep) + text;
  return 0;
}

inline int cmd_equilibria(const CliOptions& o, AnalysisReport& rep) {
  const auto doc = load_game(o.game_path);
  if (const auto* s = std::get_if<SingleGameSpec>(&doc.game)) {
    const PerceptionGame game(*s);
    const auto grid = grid_for(game.analytic(), game.type_count(), o.grid);
    rep = equilibria_report(game, enumerate_pure_equilibria(game, grid.get(), o.tol), o.tol, grid.resolution);
    if (o.step) add_mixed_search(rep, game, search_mixed_equilibria(game, *o.step, o.tol, o.seed, grid.get()), *o.step, o.seed);
    if (!o.eps.empty()) {
      if (game.continuous()) throw InputError("--eps: the discontinuity sweep needs a game with a discontinuous penalty");
      const double step = o.step.value_or(0.05);
      add_counterexample(rep, game, counterexample_check(game, step, o.eps, grid.get()));
    }
  } else if (const auto* s = std::get_if<TwoPlayerSpec>(&doc.game)) {
    if (o.step || !o.eps.empty()) throw InputError("--step and --eps apply to single-player games");
    const TwoPlayerPerceptionGame game(*s);
    const auto grid = grid_for(game.analytic(), game.types(0).size(), o.grid);
    rep = equilibria_report_2p(game, enumerate_pure_equilibria_2p(game, grid.get(), o.tol), o.tol, grid.resolution);
  } else {
    if (o.step || !o.eps.empty()) throw InputError("--step and --eps apply to single-player games");
    const BayesianGame game(std::get<BayesianGameSpec>(doc.game));
    rep = bne_report(game, enumerate_pure_bne(game, o.tol), o.tol);
  }
  return 0;
}

inline int cmd_pooling(const CliOptions& o, AnalysisReport& rep) {
  const PerceptionGame game(need_single(load_game(o.game_path), "pooling"));
  PoolingMode mode;
  if (o.mode == "upper") mode = PoolingMode::kUpper;
  else if (o.mode == "lower") mode = PoolingMode::kLower;
  else throw InputError("--mode must be 'upper' or 'lower'");
  const auto grid = grid_for(game.analytic(), game.type_count(), o.grid);
  rep = pooling_report(game, pooling_check(game, mode, grid.get(), o.tol), o.tol, grid.resolution);
  return 0;
}

inline int cmd_privacy(const CliOptions& o, AnalysisReport& rep) {
  const PerceptionGame game(need_single(load_game(o.game_path), "privacy"));
  const auto grid = grid_for(game.analytic(), game.type_count(), o.grid);
  rep = privacy_report(game, classify_privacy(game, grid.get()), grid.resolution);
  return 0;
}

inline int cmd_welfare(const CliOptions& o, AnalysisReport& rep) {
  const auto doc = load_game(o.game_path);
  if (const auto* s = std::get_if<SingleGameSpec>(&doc.game)) {
    const PerceptionGame game(*s);
    const auto grid = grid_for(game.analytic(), game.type_count(), o.grid);
    rep = welfare_report_json(welfare_report(game, grid.get(), o.tol), o.tol, grid.resolution,
                              game.analytic() ? Certification::kExact : Certification::kGridCertified);
  } else if (const auto* s = std::get_if<TwoPlayerSpec>(&doc.game)) {
    const TwoPlayerPerceptionGame game(*s);
    const auto grid = grid_for(game.analytic(), game.types(0).size(), o.grid);
    rep = welfare_report_json(welfare_report(game, grid.get(), o.tol), o.tol, grid.resolution,
                              game.analytic() ? Certification::kExact : Certification::kGridCertified);
  } else {
    throw InputError("welfare needs a single-player or two-player perception game");
  }
  return 0;
}

inline int cmd_majority_scan(const CliOptions& o, AnalysisReport& rep) {
  SingleGameSpec spec = o.game_path.empty() ? fixtures::majority_default() : need_single(load_game(o.game_path), "majority-scan");
  std::optional<SeparableGame> family;
  try {
    family.emplace(PerceptionGame(std::move(spec)));
  } catch (const ValidationError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("majority-scan: ") + e.what());
  }
  const auto grid = grid_for(family->game().analytic(), family->game().type_count(), o.grid);
  ScanOptions options;
  options.mixed_step = o.step;
  options.tol = o.tol;
  options.seed = o.seed;
  rep = scan_report(*family, scan_alpha(*family, parse_alphas(o.alphas), grid.get(), options), o.tol, grid.resolution);
  return 0;
}

inline int cmd_verify(const CliOptions& o, AnalysisReport& rep) {
  const auto doc = load_game(o.game_path);
  if (o.profile_path.empty()) throw InputError("verify needs --profile PATH");
  nlohmann::json profile;
  try {
    profile = nlohmann::json::parse(read_file(o.profile_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("profile '" + o.profile_path + "': " + e.what());
  }
  if (const auto* s = std::get_if<SingleGameSpec>(&doc.game)) {
    const PerceptionGame game(*s);
    const auto grid = grid_for(game.analytic(), game.type_count(), o.grid);
    const auto& types = game.types().labels();
    const auto& actions = game.actions().labels();
    if (!profile.contains("strategy")) throw InputError("/strategy: required field is missing");
    const Strategy sigma = read_strategy(profile["strategy"], types, actions, "/strategy");
    PerceptionMap tau = assess_profile(game, sigma, grid.get()).perception;
    if (profile.contains("perception")) {
      const auto& pj = profile["perception"];
      for (std::size_t t = 0; t < types.size(); ++t)
        for (std::size_t a = 0; a < actions.size(); ++a) {
          if (!pj.contains(types[t]) || !pj[types[t]].contains(actions[a]))
            throw InputError("/perception/" + types[t] + "/" + actions[a] + ": missing");
          tau.set(t, a, read_belief(pj[types[t]][actions[a]], types.size(), "/perception/" + types[t] + "/" + actions[a]));
        }
    }
    rep = verify_report(game, verify_equilibrium(game, sigma, tau, o.tol), o.tol, grid.resolution);
  } else if (const auto* s = std::get_if<TwoPlayerSpec>(&doc.game)) {
    const TwoPlayerPerceptionGame game(*s);
    const auto grid = grid_for(game.analytic(), game.types(0).size(), o.grid);
    if (!profile.contains("players") || !profile["players"].is_array() || profile["players"].size() != 2)
      throw InputError("/players: expected two entries");
    TwoPlayerStrategy sigma;
    for (std::size_t i = 0; i < 2; ++i)
      sigma.players[i] = read_strategy(profile["players"][i].value("strategy", nlohmann::json()), game.types(i).labels(),
                                       game.actions(i).labels(), "/players/" + std::to_string(i) + "/strategy");
    TwoPlayerPerception tau = assess_profile_2p(game, sigma, grid.get()).perception;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& pj = profile["players"][i];
      if (!pj.contains("perception")) continue;
      const auto& own = game.types(i).labels();
      const auto& opp = game.types(1 - i).labels();
      const auto& acts = game.actions(i).labels();
      for (std::size_t t = 0; t < own.size(); ++t)
        for (std::size_t u = 0; u < opp.size(); ++u)
          for (std::size_t a = 0; a < acts.size(); ++a) {
            const std::string at = "/players/" + std::to_string(i) + "/perception/" + own[t] + "/" + opp[u] + "/" + acts[a];
            const auto& p = pj["perception"];
            if (!p.contains(own[t]) || !p[own[t]].contains(opp[u]) || !p[own[t]][opp[u]].contains(acts[a]))
              throw InputError(at + ": missing");
            tau.set(i, t, u, a, read_belief(p[own[t]][opp[u]][acts[a]], own.size(), at));
          }
    }
    rep = verify_report_2p(game, verify_equilibrium_2p(game, sigma, tau, o.tol), o.tol, grid.resolution);
  } else {
    throw InputError("verify needs a perception game");
  }
  return 0;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using detail::CliOptions;
  CliOptions o;
  CLI::App app{"Equilibria of games where players care about what their actions reveal", "percept"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  auto add_common = [&](CLI::App* sub, bool needs_game) {
    auto* g = sub->add_option("--game", o.game_path, "game file");
    if (needs_game) g->required();
    sub->add_option("--grid", o.grid, "belief-grid resolution for tabulated utilities")->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "tolerance for best replies and consistency")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "machine"}));
    sub->add_option("--out", o.out_path, "write the report to a file instead of stdout");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check a game file");
  add_common(validate_cmd, true);
  auto* eq_cmd = app.add_subcommand("equilibria", "enumerate pure equilibria");
  add_common(eq_cmd, true);
  eq_cmd->add_option("--step", o.step, "also search mixed profiles on this probability step");
  eq_cmd->add_option("--eps", o.eps, "epsilons for the discontinuity sweep")->delimiter(',');
  eq_cmd->add_option("--seed", o.seed, "seed for sampling when the mixed grid is too large");
  auto* pool_cmd = app.add_subcommand("pooling", "full-pooling test");
  add_common(pool_cmd, true);
  pool_cmd->add_option("--mode", o.mode, "upper or lower")->check(CLI::IsMember({"upper", "lower"}));
  auto* priv_cmd = app.add_subcommand("privacy", "classify privacy concerns");
  add_common(priv_cmd, true);
  auto* welfare_cmd = app.add_subcommand("welfare", "compare equilibria with unobserved actions");
  add_common(welfare_cmd, true);
  auto* scan_cmd = app.add_subcommand("majority-scan", "scan the mass of privacy-indifferent types");
  add_common(scan_cmd, false);
  scan_cmd->add_option("--alphas", o.alphas, "comma-separated masses (default: 21 points on [0,1])");
  scan_cmd->add_option("--step", o.step, "corroborate with a mixed search on this step");
  scan_cmd->add_option("--seed", o.seed, "seed for sampling when the mixed grid is too large");
  auto* verify_cmd = app.add_subcommand("verify", "verify a strategy profile");
  add_common(verify_cmd, true);
  verify_cmd->add_option("--profile", o.profile_path, "profile file")->required();
  auto* example_cmd = app.add_subcommand("example", "write a bundled game file");
  example_cmd->add_option("name", o.example_name, "fixture name")->required()->check(CLI::IsMember(fixture_names()));
  example_cmd->add_option("--out", o.out_path, "output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  auto emit = [&](const std::string& text) -> int {
    if (o.out_path.empty()) {
      out << text;
      return 0;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << o.out_path << "'\n";
      return 1;
    }
    f << text;
    return 0;
  };

  try {
    if (example_cmd->parsed()) return emit(serialize_game(*bundled_fixture(o.example_name)));
    AnalysisReport rep;
    if (validate_cmd->parsed()) detail::cmd_validate(o, rep);
    else if (eq_cmd->parsed()) detail::cmd_equilibria(o, rep);
    else if (pool_cmd->parsed()) detail::cmd_pooling(o, rep);
    else if (priv_cmd->parsed()) detail::cmd_privacy(o, rep);
    else if (welfare_cmd->parsed()) detail::cmd_welfare(o, rep);
    else if (scan_cmd->parsed()) detail::cmd_majority_scan(o, rep);
    else if (verify_cmd->parsed()) detail::cmd_verify(o, rep);
    return emit(o.format == "machine" ? rep.machine_text() : rep.text);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto& d : e.details()) err << "  " << d << "\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "error: invalid game\n";
    for (const auto& d : e.errors()) err << "  " << d << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace percept
