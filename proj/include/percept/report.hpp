#pragma once

// Analysis reports. Each command fills a JSON body whose numbers are decimal
// strings with 12 significant digits; the text rendering reads those strings
// back, so both formats carry the same figures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "percept/experiments.hpp"
#include "percept/game_model.hpp"
#include "percept/solver_single.hpp"
#include "percept/solver_two.hpp"

namespace percept {

inline constexpr const char* kToolVersion = "0.1.0";

using ReportJson = nlohmann::ordered_json;

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

struct AnalysisReport {
  std::string command;
  double tolerance = kTolerance;
  /// Resolution of the belief grid used for grid-certified ranges, if any.
  std::optional<int> grid_resolution;
  Certification certification = Certification::kExact;
  ReportJson body = ReportJson::object();
  /// Text rendering built from `body`.
  std::string text;

  ReportJson machine() const {
    ReportJson j;
    j["tool"] = "percept";
    j["version"] = kToolVersion;
    j["command"] = command;
    j["tolerance"] = format_number(tolerance);
    j["grid_resolution"] = grid_resolution ? ReportJson(std::to_string(*grid_resolution)) : ReportJson(nullptr);
    j["certification"] = to_string(certification);
    j["result"] = body;
    return j;
  }
  std::string machine_text() const { return machine().dump(2) + "\n"; }
};

namespace detail {

inline ReportJson labelled(const std::vector<std::string>& labels, std::span<const double> values) {
  ReportJson j = ReportJson::object();
  for (std::size_t i = 0; i < labels.size(); ++i) j[labels[i]] = format_number(values[i]);
  return j;
}

inline ReportJson labelled(const std::vector<std::string>& labels, const std::vector<double>& values) {
  return labelled(labels, std::span<const double>(values));
}

inline ReportJson belief_json(const std::vector<std::string>& labels, const Belief& b) { return labelled(labels, b.weights()); }

inline ReportJson strategy_json(const std::vector<std::string>& types, const std::vector<std::string>& actions, const Strategy& s) {
  ReportJson j = ReportJson::object();
  for (std::size_t t = 0; t < s.type_count(); ++t) {
    if (auto a = s.pure_action(t)) j[types[t]] = actions[*a];
    else j[types[t]] = labelled(actions, s.row(t));
  }
  return j;
}

/// "L" for pure rows, "L:0.3 R:0.7" for mixed ones.
inline std::string strategy_cell(const ReportJson& row) {
  if (row.is_string()) return row.get<std::string>();
  std::string out;
  for (const auto& [k, v] : row.items()) {
    if (!out.empty()) out += " ";
    out += k + ":" + v.get<std::string>();
  }
  return out;
}

inline std::string belief_cell(const ReportJson& b) {
  std::string out = "(";
  bool first = true;
  for (const auto& [k, v] : b.items()) {
    if (!first) out += ", ";
    out += k + ":" + v.get<std::string>();
    first = false;
  }
  return out + ")";
}

/// Left-aligned plain-text table.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string render() const {
    std::vector<std::size_t> width;
    for (const auto& r : rows_)
      for (std::size_t c = 0; c < r.size(); ++c) {
        if (width.size() <= c) width.push_back(0);
        width[c] = std::max(width[c], r[c].size());
      }
    std::string out;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      std::string line;
      for (std::size_t c = 0; c < rows_[i].size(); ++c) {
        line += rows_[i][c];
        if (c + 1 < rows_[i].size()) line += std::string(width[c] - rows_[i][c].size() + 2, ' ');
      }
      out += line + "\n";
      if (i == 0) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) total += width[c] + (c + 1 < width.size() ? 2 : 0);
        out += std::string(total, '-') + "\n";
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

inline std::vector<std::string> keys_of(const ReportJson& obj) {
  std::vector<std::string> out;
  for (const auto& [k, v] : obj.items()) out.push_back(k);
  return out;
}

inline std::string header_line(const AnalysisReport& r) {
  std::string line = r.command + " (" + to_string(r.certification);
  if (r.grid_resolution) line += ", belief grid " + std::to_string(*r.grid_resolution);
  return line + ", tolerance " + format_number(r.tolerance) + ")\n";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders

inline ReportJson equilibrium_json(const PerceptionGame& game, const EquilibriumReport& r) {
  const auto& types = game.types().labels();
  const auto& actions = game.actions().labels();
  ReportJson j;
  j["strategy"] = detail::strategy_json(types, actions, r.strategy);
  j["payoff"] = detail::labelled(types, r.payoff);
  j["deviation_gain"] = detail::labelled(types, r.deviation_gain);
  j["margin"] = detail::labelled(types, r.margin);
  ReportJson on = ReportJson::array();
  for (std::size_t a : r.on_path) on.push_back(actions[a]);
  j["on_path"] = on;
  ReportJson w = ReportJson::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"type", types[x.type]}, {"action", actions[x.action]}, {"belief", detail::belief_json(types, x.belief)}});
  j["off_path_perceptions"] = w;
  j["certification"] = to_string(r.certification);
  return j;
}

inline void render_equilibria_single(AnalysisReport& rep) {
  const auto& b = rep.body;
  std::string out = detail::header_line(rep);
  out += b["count"].get<std::string>() + " pure equilibria\n";
  if (!b["equilibria"].empty()) {
    std::vector<std::string> header{"#", "strategy"};
    const auto types = detail::keys_of(b["equilibria"][0]["payoff"]);
    for (const auto& t : types) header.push_back("payoff " + t);
    header.push_back("min margin");
    detail::Table table(header);
    std::size_t i = 0;
    for (const auto& e : b["equilibria"]) {
      std::vector<std::string> row{std::to_string(++i)};
      std::string strat;
      for (const auto& [t, s] : e["strategy"].items()) strat += (strat.empty() ? "" : ", ") + t + "->" + detail::strategy_cell(s);
      row.push_back(strat);
      for (const auto& t : types) row.push_back(e["payoff"][t].get<std::string>());
      row.push_back(e["min_margin"].get<std::string>());
      table.add(row);
    }
    out += table.render();
  }
  if (b.contains("mixed")) {
    const auto& m = b["mixed"];
    out += "\nmixed search, step " + m["step"].get<std::string>() + ": " + m["profiles_examined"].get<std::string>() +
           " profiles examined" + (m["covered_whole_grid"].get<bool>() ? "" : " (random sample)") + ", " +
           m["candidate_count"].get<std::string>() + " candidates within tolerance, smallest max gain " +
           m["min_max_gain"].get<std::string>() + "\n";
    for (const auto& c : m["candidates"]) {
      std::string strat;
      for (const auto& [t, s] : c["strategy"].items()) strat += (strat.empty() ? "" : ", ") + t + "->" + detail::strategy_cell(s);
      out += "  " + strat + "  (max gain " + c["max_gain"].get<std::string>() + ")\n";
    }
  }
  if (b.contains("counterexample")) {
    const auto& c = b["counterexample"];
    out += "\ndiscontinuity sweep, step " + c["step"].get<std::string>() + "\n";
    out += "  pure profiles: smallest max deviation gain " + c["pure_min_gain"].get<std::string>() + "\n";
    out += "  grid mixed profiles (" + c["mixed_examined"].get<std::string>() + "): smallest max deviation gain " +
           c["mixed_min_gain"].get<std::string>() + "\n";
    std::string strat;
    for (const auto& [t, s] : c["mixed_min_strategy"].items()) strat += (strat.empty() ? "" : ", ") + t + "->" + detail::strategy_cell(s);
    out += "  attained at " + strat + "\n";
    detail::Table table({"epsilon", "min gain", "epsilon-equilibrium on grid"});
    for (const auto& v : c["verdicts"])
      table.add({v["epsilon"].get<std::string>(), v["min_gain"].get<std::string>(), v["no_equilibrium"].get<bool>() ? "none" : "exists"});
    out += table.render();
  }
  rep.text = out;
}

inline AnalysisReport equilibria_report(const PerceptionGame& game, const std::vector<EquilibriumReport>& eqs, double tol,
                                        const std::optional<int>& grid_resolution) {
  AnalysisReport rep;
  rep.command = "equilibria";
  rep.tolerance = tol;
  rep.grid_resolution = grid_resolution;
  rep.certification = game.analytic() ? Certification::kExact : Certification::kGridCertified;
  rep.body["kind"] = "single";
  rep.body["count"] = std::to_string(eqs.size());
  rep.body["equilibria"] = ReportJson::array();
  for (const auto& e : eqs) {
    auto j = equilibrium_json(game, e);
    double m = std::numeric_limits<double>::infinity();
    for (double x : e.margin) m = std::min(m, x);
    j["min_margin"] = format_number(m);
    rep.body["equilibria"].push_back(j);
    rep.certification = combine(rep.certification, e.certification);
  }
  render_equilibria_single(rep);
  return rep;
}

inline void add_mixed_search(AnalysisReport& rep, const PerceptionGame& game, const MixedSearchResult& m, double step,
                             std::uint64_t seed) {
  const auto& types = game.types().labels();
  const auto& actions = game.actions().labels();
  ReportJson j;
  j["step"] = format_number(step);
  j["seed"] = std::to_string(seed);
  j["profiles_examined"] = std::to_string(m.profiles_examined);
  j["covered_whole_grid"] = m.covered_whole_grid;
  j["candidate_count"] = std::to_string(m.candidates.size());
  j["min_max_gain"] = format_number(m.min_max_gain);
  j["candidates"] = ReportJson::array();
  for (const auto& c : m.candidates)
    j["candidates"].push_back({{"strategy", detail::strategy_json(types, actions, c.strategy)}, {"max_gain", format_number(c.max_gain)}});
  rep.body["mixed"] = j;
  render_equilibria_single(rep);
}

inline void add_counterexample(AnalysisReport& rep, const PerceptionGame& game, const CounterexampleReport& c) {
  const auto& types = game.types().labels();
  const auto& actions = game.actions().labels();
  ReportJson j;
  j["step"] = format_number(c.step);
  j["pure_min_gain"] = format_number(c.pure_min_gain);
  ReportJson pure = ReportJson::array();
  for (double g : c.pure_gains) pure.push_back(format_number(g));
  j["pure_gains"] = pure;
  j["mixed_examined"] = std::to_string(c.mixed_examined);
  j["mixed_min_gain"] = format_number(c.mixed_min_gain);
  j["mixed_min_strategy"] = detail::strategy_json(types, actions, c.mixed_min_strategy);
  j["verdicts"] = ReportJson::array();
  for (const auto& v : c.verdicts)
    j["verdicts"].push_back({{"epsilon", format_number(v.epsilon)}, {"min_gain", format_number(v.min_gain)}, {"no_equilibrium", v.no_equilibrium}});
  rep.body["counterexample"] = j;
  render_equilibria_single(rep);
}

inline ReportJson equilibrium_json_2p(const TwoPlayerPerceptionGame& game, const TwoPlayerReport& r) {
  ReportJson j;
  ReportJson players = ReportJson::array();
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& types = game.types(i).labels();
    ReportJson p;
    p["strategy"] = detail::strategy_json(types, game.actions(i).labels(), r.strategy.players[i]);
    p["payoff"] = detail::labelled(types, r.payoff[i]);
    p["deviation_gain"] = detail::labelled(types, r.deviation_gain[i]);
    p["margin"] = detail::labelled(types, r.margin[i]);
    players.push_back(p);
  }
  j["players"] = players;
  j["certification"] = to_string(r.certification);
  return j;
}

inline std::string strategy_text_2p(const ReportJson& e) {
  std::string strat;
  for (const auto& p : e["players"])
    for (const auto& [t, s] : p["strategy"].items()) strat += (strat.empty() ? "" : ", ") + t + "->" + detail::strategy_cell(s);
  return strat;
}

inline AnalysisReport equilibria_report_2p(const TwoPlayerPerceptionGame& game, const std::vector<TwoPlayerReport>& eqs,
                                           double tol, const std::optional<int>& grid_resolution) {
  AnalysisReport rep;
  rep.command = "equilibria";
  rep.tolerance = tol;
  rep.grid_resolution = grid_resolution;
  rep.certification = game.analytic() ? Certification::kExact : Certification::kGridCertified;
  rep.body["kind"] = "two_player";
  rep.body["count"] = std::to_string(eqs.size());
  rep.body["equilibria"] = ReportJson::array();
  for (const auto& e : eqs) {
    rep.body["equilibria"].push_back(equilibrium_json_2p(game, e));
    rep.certification = combine(rep.certification, e.certification);
  }
  std::string out = detail::header_line(rep) + rep.body["count"].get<std::string>() + " pure equilibria\n";
  if (!eqs.empty()) {
    std::vector<std::string> header{"#", "strategy"};
    for (std::size_t i = 0; i < 2; ++i)
      for (const auto& t : game.types(i).labels()) header.push_back("payoff " + t);
    detail::Table table(header);
    std::size_t n = 0;
    for (const auto& e : rep.body["equilibria"]) {
      std::vector<std::string> row{std::to_string(++n), strategy_text_2p(e)};
      for (const auto& p : e["players"])
        for (const auto& [t, v] : p["payoff"].items()) row.push_back(v.get<std::string>());
      table.add(row);
    }
    out += table.render();
  }
  rep.text = out;
  return rep;
}

inline AnalysisReport bne_report(const BayesianGame& game, const std::vector<BneProfile>& bnes, double tol) {
  AnalysisReport rep;
  rep.command = "equilibria";
  rep.tolerance = tol;
  rep.body["kind"] = "bayesian";
  rep.body["count"] = std::to_string(bnes.size());
  rep.body["scope"] = "pure profiles";
  rep.body["equilibria"] = ReportJson::array();
  const auto& spec = game.spec();
  for (const auto& b : bnes) {
    ReportJson players = ReportJson::array();
    for (std::size_t i = 0; i < 2; ++i) {
      ReportJson p;
      ReportJson s = ReportJson::object();
      for (std::size_t t = 0; t < b.actions[i].size(); ++t) s[spec.players[i].types[t]] = spec.players[i].actions[b.actions[i][t]];
      p["strategy"] = s;
      p["payoff"] = detail::labelled(spec.players[i].types, b.payoff[i]);
      players.push_back(p);
    }
    rep.body["equilibria"].push_back({{"players", players}, {"undominated", b.undominated}});
  }
  std::string out = detail::header_line(rep) + rep.body["count"].get<std::string>() + " pure Bayesian Nash equilibria\n";
  if (!bnes.empty()) {
    std::vector<std::string> header{"#", "strategy"};
    for (std::size_t i = 0; i < 2; ++i)
      for (const auto& t : spec.players[i].types) header.push_back("payoff " + t);
    header.push_back("undominated");
    detail::Table table(header);
    std::size_t n = 0;
    for (const auto& e : rep.body["equilibria"]) {
      std::vector<std::string> row{std::to_string(++n), strategy_text_2p(e)};
      for (const auto& p : e["players"])
        for (const auto& [t, v] : p["payoff"].items()) row.push_back(v.get<std::string>());
      row.push_back(e["undominated"].get<bool>() ? "yes" : "no");
      table.add(row);
    }
    out += table.render();
  }
  rep.text = out;
  return rep;
}

inline AnalysisReport pooling_report(const PerceptionGame& game, const PoolingResult& r, double tol,
                                     const std::optional<int>& grid_resolution) {
  const auto& types = game.types().labels();
  const auto& actions = game.actions().labels();
  AnalysisReport rep;
  rep.command = "pooling";
  rep.tolerance = tol;
  rep.grid_resolution = grid_resolution;
  rep.certification = r.certification;
  auto& b = rep.body;
  b["mode"] = to_string(r.mode);
  b["exists"] = r.exists;
  b["concern_confirmed"] = r.concern_confirmed;
  ReportJson w = ReportJson::array();
  for (std::size_t i = 0; i < r.witness_actions.size(); ++i)
    w.push_back({{"action", actions[r.witness_actions[i]]}, {"verified", static_cast<bool>(r.witness_verified[i])}});
  b["witnesses"] = w;
  ReportJson sets = ReportJson::object();
  for (std::size_t t = 0; t < types.size(); ++t) {
    ReportJson s = ReportJson::array();
    for (std::size_t a : r.sets[t]) s.push_back(actions[a]);
    sets[types[t]] = s;
  }
  b["sets"] = sets;

  std::string out = detail::header_line(rep);
  out += std::string("mode ") + b["mode"].get<std::string>() + ": full pooling " + (r.exists ? "exists" : "does not exist") + "\n";
  if (!r.concern_confirmed)
    out += std::string("note: the game does not have ") + (r.mode == PoolingMode::kUpper ? "upper" : "lower") +
           " privacy concerns for every type; the set test is advisory\n";
  detail::Table table({"type", r.mode == PoolingMode::kUpper ? "potentially optimal" : "potentially optimal at extremes"});
  for (const auto& [t, s] : b["sets"].items()) {
    std::string cell;
    for (const auto& a : s) cell += (cell.empty() ? "" : ", ") + a.get<std::string>();
    table.add({t, cell.empty() ? "-" : cell});
  }
  out += table.render();
  for (const auto& x : b["witnesses"])
    out += "witness " + x["action"].get<std::string>() + (x["verified"].get<bool>() ? " (pooling profile verified)" : " (pooling profile not verified)") + "\n";
  rep.text = out;
  return rep;
}

inline AnalysisReport privacy_report(const PerceptionGame& game, const std::vector<PrivacyClass>& c,
                                     const std::optional<int>& grid_resolution) {
  const auto& types = game.types().labels();
  AnalysisReport rep;
  rep.command = "privacy";
  rep.grid_resolution = grid_resolution;
  rep.certification = game.analytic() ? Certification::kExact : Certification::kGridCertified;
  ReportJson per = ReportJson::object();
  for (std::size_t t = 0; t < types.size(); ++t) per[types[t]] = {{"upper", to_string(c[t].upper)}, {"lower", to_string(c[t].lower)}};
  rep.body["types"] = per;
  rep.body["upper"] = has_upper_privacy(c);
  rep.body["lower"] = has_lower_privacy(c);
  detail::Table table({"type", "upper", "lower"});
  for (const auto& [t, v] : rep.body["types"].items()) table.add({t, v["upper"].get<std::string>(), v["lower"].get<std::string>()});
  rep.text = detail::header_line(rep) + table.render();
  return rep;
}

inline AnalysisReport welfare_report_json(const WelfareReport& w, double tol, const std::optional<int>& grid_resolution,
                                          Certification cert) {
  AnalysisReport rep;
  rep.command = "welfare";
  rep.tolerance = tol;
  rep.grid_resolution = grid_resolution;
  rep.certification = cert;
  rep.body["types"] = w.type_labels;
  rep.body["weights"] = detail::labelled(w.type_labels, w.weights);
  auto rows = [&](const std::vector<WelfareRow>& v) {
    ReportJson out = ReportJson::array();
    for (const auto& r : v)
      out.push_back({{"label", r.label}, {"payoff", detail::labelled(w.type_labels, r.payoff)}, {"total", format_number(r.total)}});
    return out;
  };
  rep.body["legislation"] = rows(w.legislation);
  rep.body["equilibria"] = rows(w.equilibria);

  std::vector<std::string> header{"regime"};
  for (const auto& t : w.type_labels) header.push_back(t);
  header.push_back("total");
  detail::Table table(header);
  for (const char* key : {"legislation", "equilibria"})
    for (const auto& r : rep.body[key]) {
      std::vector<std::string> row{r["label"].get<std::string>()};
      for (const auto& [t, v] : r["payoff"].items()) row.push_back(v.get<std::string>());
      row.push_back(r["total"].get<std::string>());
      table.add(row);
    }
  rep.text = detail::header_line(rep) + table.render();
  return rep;
}

inline AnalysisReport scan_report(const SeparableGame& family, const ScanResult& s, double tol, const std::optional<int>& grid_resolution) {
  const auto& types = family.game().types().labels();
  const auto& actions = family.game().actions().labels();
  AnalysisReport rep;
  rep.command = "majority-scan";
  rep.tolerance = tol;
  rep.grid_resolution = grid_resolution;
  rep.certification = family.game().analytic() ? Certification::kExact : Certification::kGridCertified;
  auto& b = rep.body;
  b["alpha_hat"] = s.alpha_hat ? ReportJson(format_number(*s.alpha_hat)) : ReportJson(nullptr);
  b["analytic_bound"] = s.points.empty() ? ReportJson(nullptr) : ReportJson(format_number(s.points.front().analytic_bound));
  ReportJson mono = ReportJson::array();
  for (double a : s.monotonicity_violations) mono.push_back(format_number(a));
  b["monotonicity_violations"] = mono;
  b["mixed_step"] = s.mixed_step ? ReportJson(format_number(*s.mixed_step)) : ReportJson(nullptr);
  b["points"] = ReportJson::array();
  for (const auto& p : s.points) {
    ReportJson j;
    j["alpha"] = format_number(p.alpha);
    j["equilibrium_count"] = std::to_string(p.equilibria.size());
    ReportJson eqs = ReportJson::array();
    for (const auto& e : p.equilibria) eqs.push_back(detail::strategy_json(types, actions, e));
    j["equilibria"] = eqs;
    j["separation_present"] = p.separation_present;
    j["separation_unique"] = p.separation_unique;
    j["pooling_present"] = p.pooling_present;
    j["analytic_bound"] = format_number(p.analytic_bound);
    j["mixed_additional"] = p.mixed_additional ? ReportJson(std::to_string(*p.mixed_additional)) : ReportJson(nullptr);
    b["points"].push_back(j);
  }

  std::string out = detail::header_line(rep);
  out += "estimated threshold: " + (s.alpha_hat ? b["alpha_hat"].get<std::string>() : std::string("none")) + "\n";
  detail::Table table({"alpha", "equilibria", "separation", "unique", "pooling", "bound", "extra mixed"});
  for (const auto& p : b["points"])
    table.add({p["alpha"].get<std::string>(), p["equilibrium_count"].get<std::string>(), p["separation_present"].get<bool>() ? "yes" : "no",
               p["separation_unique"].get<bool>() ? "yes" : "no", p["pooling_present"].get<bool>() ? "yes" : "no",
               p["analytic_bound"].get<std::string>(), p["mixed_additional"].is_null() ? "-" : p["mixed_additional"].get<std::string>()});
  out += table.render();
  if (!s.monotonicity_violations.empty()) {
    out += "uniqueness fails again at:";
    for (const auto& a : b["monotonicity_violations"]) out += " " + a.get<std::string>();
    out += "\n";
  }
  rep.text = out;
  return rep;
}

inline AnalysisReport verify_report(const PerceptionGame& game, const VerificationResult& v, double tol,
                                    const std::optional<int>& grid_resolution) {
  AnalysisReport rep;
  rep.command = "verify";
  rep.tolerance = tol;
  rep.grid_resolution = grid_resolution;
  rep.certification = v.report.certification;
  rep.body["accepted"] = v.accepted();
  rep.body["rejection"] = v.rejection ? ReportJson(v.rejection->reason) : ReportJson(nullptr);
  rep.body["profile"] = equilibrium_json(game, v.report);
  std::string out = detail::header_line(rep);
  out += v.accepted() ? "accepted\n" : "rejected: " + v.rejection->reason + "\n";
  detail::Table table({"type", "strategy", "payoff", "deviation gain"});
  const auto& p = rep.body["profile"];
  for (const auto& [t, s] : p["strategy"].items())
    table.add({t, detail::strategy_cell(s), p["payoff"][t].get<std::string>(), p["deviation_gain"][t].get<std::string>()});
  rep.text = out + table.render();
  return rep;
}

inline AnalysisReport verify_report_2p(const TwoPlayerPerceptionGame& game, const VerificationResult2p& v, double tol,
                                       const std::optional<int>& grid_resolution) {
  AnalysisReport rep;
  rep.command = "verify";
  rep.tolerance = tol;
  rep.grid_resolution = grid_resolution;
  rep.certification = v.report.certification;
  rep.body["accepted"] = v.accepted();
  rep.body["rejection"] = v.rejection ? ReportJson(v.rejection->reason) : ReportJson(nullptr);
  rep.body["profile"] = equilibrium_json_2p(game, v.report);
  std::string out = detail::header_line(rep);
  out += v.accepted() ? "accepted\n" : "rejected: " + v.rejection->reason + "\n";
  detail::Table table({"player", "type", "strategy", "payoff", "deviation gain"});
  std::size_t i = 0;
  for (const auto& p : rep.body["profile"]["players"]) {
    ++i;
    for (const auto& [t, s] : p["strategy"].items())
      table.add({std::to_string(i), t, detail::strategy_cell(s), p["payoff"][t].get<std::string>(), p["deviation_gain"][t].get<std::string>()});
  }
  rep.text = out + table.render();
  return rep;
}

}  // namespace percept
