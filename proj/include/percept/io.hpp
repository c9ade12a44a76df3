#pragma once

// Game files: a JSON document with fixed field names.
//
//   single      {format_version, kind, types, actions, factorization?, prior, utility, flags?}
//   two_player  {format_version, kind, players: [{types, actions, beliefs, utility}] x2, flags?}
//   bayesian    {format_version, kind, players: [{types, actions, beliefs, payoffs}] x2}
//
// Utility blocks are {kind: "additive_separable", v, penalties} or
// {kind: "tabulated_grid", resolution, values}. Tensors are nested arrays in
// label order: (type, action) for single games, (own type, opponent type, own
// action, opponent action) for two players. Tabulated leaves are the values
// on the belief grid in SimplexGrid order.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "percept/experiments.hpp"
#include "percept/game_model.hpp"

namespace percept {

inline constexpr const char* kFormatVersion = "1";

enum class GameKind { kSingle, kTwoPlayer, kBayesian };

inline const char* to_string(GameKind k) {
  switch (k) {
    case GameKind::kSingle: return "single";
    case GameKind::kTwoPlayer: return "two_player";
    case GameKind::kBayesian: return "bayesian";
  }
  return "unknown";
}

struct GameDocument {
  std::string format_version = kFormatVersion;
  std::variant<SingleGameSpec, TwoPlayerSpec, BayesianGameSpec> game;

  GameKind kind() const { return static_cast<GameKind>(game.index()); }
  friend bool operator==(const GameDocument&, const GameDocument&) = default;
};

struct ParseResult {
  std::optional<GameDocument> document;
  std::vector<std::string> errors;
  bool ok() const { return document.has_value(); }
};

namespace detail {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Collects schema errors while reading a JSON tree.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  void object(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return;
    }
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) error(path + "/" + key, "unknown field");
    }
  }

  const Json* field(const Json& j, const char* key, const std::string& path, bool required = true) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    if (it == j.end()) {
      if (required) error(path + "/" + key, "required field is missing");
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::string> string(const Json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_string()) return error(path, "expected a string"), std::nullopt;
    return j->get<std::string>();
  }

  std::optional<double> number(const Json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_number()) return error(path, "expected a number"), std::nullopt;
    return j->get<double>();
  }

  std::optional<bool> boolean(const Json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_boolean()) return error(path, "expected true or false"), std::nullopt;
    return j->get<bool>();
  }

  std::optional<std::vector<std::string>> strings(const Json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_array()) return error(path, "expected an array of strings"), std::nullopt;
    std::vector<std::string> out;
    bool ok = true;
    for (std::size_t i = 0; i < j->size(); ++i) {
      auto s = string(&(*j)[i], path + "/" + std::to_string(i));
      if (s) out.push_back(*s);
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  std::optional<std::vector<double>> numbers(const Json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_array()) return error(path, "expected an array of numbers"), std::nullopt;
    std::vector<double> out;
    bool ok = true;
    for (std::size_t i = 0; i < j->size(); ++i) {
      auto x = number(&(*j)[i], path + "/" + std::to_string(i));
      if (x) out.push_back(*x);
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  std::optional<std::vector<std::vector<double>>> rows(const Json* j, const std::string& path) {
    if (!j) return std::nullopt;
    if (!j->is_array()) return error(path, "expected an array of arrays"), std::nullopt;
    std::vector<std::vector<double>> out;
    bool ok = true;
    for (std::size_t i = 0; i < j->size(); ++i) {
      auto r = numbers(&(*j)[i], path + "/" + std::to_string(i));
      if (r) out.push_back(*r);
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  /// Flattens a nested array with the given shape; leaves are numbers, or
  /// arrays of numbers when `leaf_arrays` is set.
  bool tensor(const Json& j, const std::vector<std::size_t>& shape, std::size_t depth, const std::string& path,
              std::vector<double>* flat, std::vector<std::vector<double>>* leaves) {
    if (depth == shape.size()) {
      if (leaves) {
        auto r = numbers(&j, path);
        if (!r) return false;
        leaves->push_back(*r);
        return true;
      }
      auto x = number(&j, path);
      if (!x) return false;
      flat->push_back(*x);
      return true;
    }
    if (!j.is_array()) return error(path, "expected an array"), false;
    if (j.size() != shape[depth]) {
      error(path, "expected " + std::to_string(shape[depth]) + " entries, got " + std::to_string(j.size()));
      return false;
    }
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) ok = tensor(j[i], shape, depth + 1, path + "/" + std::to_string(i), flat, leaves) && ok;
    return ok;
  }

  void error(const std::string& path, const std::string& message) { errors_.push_back(path + ": " + message); }
  std::size_t error_count() const { return errors_.size(); }

 private:
  std::vector<std::string>& errors_;
};

inline std::optional<PenaltySpec> read_penalty(Reader& r, const Json& j, const std::string& path) {
  r.object(j, path, {"kind", "weight", "knots", "pieces", "event", "marginal_over", "reference"});
  if (!j.is_object()) return std::nullopt;
  const std::size_t before = r.error_count();
  PenaltySpec p;
  if (auto kind = r.string(r.field(j, "kind", path), path + "/kind")) {
    if (auto k = penalty_kind_from_string(*kind)) p.kind = *k;
    else r.error(path + "/kind", "unknown penalty kind '" + *kind + "'");
  }
  if (auto w = r.number(r.field(j, "weight", path, false), path + "/weight")) p.weight = *w;
  if (const Json* knots = r.field(j, "knots", path, false)) {
    if (auto rows = r.rows(knots, path + "/knots")) {
      for (std::size_t i = 0; i < rows->size(); ++i) {
        if ((*rows)[i].size() != 2) r.error(path + "/knots/" + std::to_string(i), "expected [position, value]");
        else p.knots.push_back({(*rows)[i][0], (*rows)[i][1]});
      }
    }
  }
  if (const Json* pieces = r.field(j, "pieces", path, false)) {
    if (!pieces->is_array()) r.error(path + "/pieces", "expected an array of pieces");
    else
      for (std::size_t i = 0; i < pieces->size(); ++i) {
        const std::string at = path + "/pieces/" + std::to_string(i);
        const Json& pj = (*pieces)[i];
        r.object(pj, at, {"lo", "hi", "lo_closed", "hi_closed", "value"});
        StepPiece s;
        auto lo = r.number(r.field(pj, "lo", at), at + "/lo");
        auto hi = r.number(r.field(pj, "hi", at), at + "/hi");
        auto value = r.number(r.field(pj, "value", at), at + "/value");
        if (auto c = r.boolean(r.field(pj, "lo_closed", at, false), at + "/lo_closed")) s.lo_closed = *c;
        if (auto c = r.boolean(r.field(pj, "hi_closed", at, false), at + "/hi_closed")) s.hi_closed = *c;
        if (lo && hi && value) {
          s.lo = *lo;
          s.hi = *hi;
          s.value = *value;
          p.pieces.push_back(s);
        }
      }
  }
  if (auto e = r.strings(r.field(j, "event", path, false), path + "/event")) p.event = *e;
  if (auto m = r.string(r.field(j, "marginal_over", path, false), path + "/marginal_over")) {
    if (*m == "outcome") p.marginal_over_outcome = true;
    else if (*m != "type") r.error(path + "/marginal_over", "expected 'type' or 'outcome'");
  }
  if (auto ref = r.numbers(r.field(j, "reference", path, false), path + "/reference")) p.reference = *ref;
  if (r.error_count() != before) return std::nullopt;
  return p;
}

/// Reads a utility block whose cells have the given shape (cells-major).
inline std::optional<UtilityModel> read_utility(Reader& r, const Json* j, const std::string& path,
                                                const std::vector<std::size_t>& cell_shape) {
  if (!j) return std::nullopt;
  const std::size_t before = r.error_count();
  UtilityModel u;
  auto kind = r.string(r.field(*j, "kind", path), path + "/kind");
  if (!j->is_object()) {
    r.error(path, "expected an object");
    return std::nullopt;
  }
  if (!kind) return std::nullopt;
  if (*kind == "additive_separable") {
    r.object(*j, path, {"kind", "v", "penalties"});
    u.kind = UtilityKind::kAdditiveSeparable;
    if (const Json* v = r.field(*j, "v", path)) r.tensor(*v, cell_shape, 0, path + "/v", &u.v, nullptr);
    if (const Json* pens = r.field(*j, "penalties", path)) {
      if (!pens->is_array()) r.error(path + "/penalties", "expected an array of penalties");
      else
        for (std::size_t i = 0; i < pens->size(); ++i)
          if (auto p = read_penalty(r, (*pens)[i], path + "/penalties/" + std::to_string(i))) u.penalties.push_back(*p);
    }
  } else if (*kind == "tabulated_grid") {
    r.object(*j, path, {"kind", "resolution", "values"});
    u.kind = UtilityKind::kTabulatedGrid;
    if (auto k = r.number(r.field(*j, "resolution", path), path + "/resolution")) {
      if (*k != std::floor(*k) || *k < 1 || *k > 1e6) r.error(path + "/resolution", "must be a positive integer");
      else u.table_resolution = static_cast<int>(*k);
    }
    if (const Json* values = r.field(*j, "values", path)) r.tensor(*values, cell_shape, 0, path + "/values", nullptr, &u.tables);
  } else {
    r.error(path + "/kind", "expected 'additive_separable' or 'tabulated_grid'");
  }
  if (r.error_count() != before) return std::nullopt;
  return u;
}

inline void read_flags(Reader& r, const Json& root, bool& allow_discontinuous) {
  if (const Json* flags = r.field(root, "flags", "", false)) {
    r.object(*flags, "/flags", {"allow_discontinuous"});
    if (auto b = r.boolean(r.field(*flags, "allow_discontinuous", "/flags", false), "/flags/allow_discontinuous"))
      allow_discontinuous = *b;
  }
}

inline std::optional<SingleGameSpec> read_single(Reader& r, const Json& root) {
  r.object(root, "", {"format_version", "kind", "types", "actions", "factorization", "prior", "utility", "flags"});
  SingleGameSpec s;
  auto types = r.strings(r.field(root, "types", ""), "/types");
  auto actions = r.strings(r.field(root, "actions", ""), "/actions");
  auto prior = r.numbers(r.field(root, "prior", ""), "/prior");
  if (types) s.types = *types;
  if (actions) s.actions = *actions;
  if (prior) s.prior = *prior;
  if (const Json* f = r.field(root, "factorization", "", false)) {
    r.object(*f, "/factorization", {"outcome", "privacy", "indifferent", "optimal_actions"});
    Factorization fac;
    if (auto o = r.strings(r.field(*f, "outcome", "/factorization"), "/factorization/outcome")) fac.outcome = *o;
    if (auto p = r.strings(r.field(*f, "privacy", "/factorization"), "/factorization/privacy")) fac.privacy = *p;
    fac.indifferent = r.string(r.field(*f, "indifferent", "/factorization", false), "/factorization/indifferent");
    if (auto a = r.strings(r.field(*f, "optimal_actions", "/factorization", false), "/factorization/optimal_actions"))
      fac.optimal_actions = *a;
    s.factorization = fac;
  }
  read_flags(r, root, s.allow_discontinuous);
  const Json* utility = r.field(root, "utility", "");
  if (types && actions) {
    if (auto u = read_utility(r, utility, "/utility", {types->size(), actions->size()})) s.utility = *u;
  }
  if (!types || !actions || !prior) return std::nullopt;
  return s;
}

inline std::optional<std::array<PlayerSpec, 2>> read_players(Reader& r, const Json& root, bool bayesian,
                                                             std::array<std::vector<double>, 2>* payoffs) {
  const Json* players = r.field(root, "players", "");
  if (!players) return std::nullopt;
  if (!players->is_array() || players->size() != 2) {
    r.error("/players", "expected an array of exactly two players");
    return std::nullopt;
  }
  std::array<PlayerSpec, 2> out;
  bool ok = true;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string at = "/players/" + std::to_string(i);
    const Json& pj = (*players)[i];
    if (bayesian) r.object(pj, at, {"types", "actions", "beliefs", "payoffs"});
    else r.object(pj, at, {"types", "actions", "beliefs", "utility"});
    if (!pj.is_object()) {
      ok = false;
      continue;
    }
    auto types = r.strings(r.field(pj, "types", at), at + "/types");
    auto actions = r.strings(r.field(pj, "actions", at), at + "/actions");
    auto beliefs = r.rows(r.field(pj, "beliefs", at), at + "/beliefs");
    if (types) out[i].types = *types;
    if (actions) out[i].actions = *actions;
    if (beliefs) out[i].beliefs = *beliefs;
    ok = ok && types && actions && beliefs;
  }
  if (!ok) return std::nullopt;
  for (std::size_t i = 0; i < 2; ++i) {
    const std::string at = "/players/" + std::to_string(i);
    const Json& pj = (*players)[i];
    const std::vector<std::size_t> shape{out[i].types.size(), out[1 - i].types.size(), out[i].actions.size(),
                                         out[1 - i].actions.size()};
    if (bayesian) {
      if (const Json* p = r.field(pj, "payoffs", at)) r.tensor(*p, shape, 0, at + "/payoffs", &(*payoffs)[i], nullptr);
    } else if (auto u = read_utility(r, r.field(pj, "utility", at), at + "/utility", shape)) {
      out[i].utility = *u;
    }
  }
  return out;
}

inline std::string location_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

// Serialization

inline OrderedJson tensor_json(const std::vector<double>& flat, const std::vector<std::size_t>& shape, std::size_t depth,
                               std::size_t& pos) {
  OrderedJson out = OrderedJson::array();
  for (std::size_t i = 0; i < shape[depth]; ++i) {
    if (depth + 1 == shape.size()) out.push_back(flat.at(pos++));
    else out.push_back(tensor_json(flat, shape, depth + 1, pos));
  }
  return out;
}

inline OrderedJson tables_json(const std::vector<std::vector<double>>& tables, const std::vector<std::size_t>& shape,
                               std::size_t depth, std::size_t& pos) {
  OrderedJson out = OrderedJson::array();
  for (std::size_t i = 0; i < shape[depth]; ++i) {
    if (depth + 1 == shape.size()) out.push_back(tables.at(pos++));
    else out.push_back(tables_json(tables, shape, depth + 1, pos));
  }
  return out;
}

inline OrderedJson penalty_json(const PenaltySpec& p) {
  OrderedJson j;
  j["kind"] = to_string(p.kind);
  j["weight"] = p.weight;
  if (!p.knots.empty()) {
    j["knots"] = OrderedJson::array();
    for (const auto& k : p.knots) j["knots"].push_back({k.position, k.value});
  }
  if (!p.pieces.empty()) {
    j["pieces"] = OrderedJson::array();
    for (const auto& s : p.pieces) {
      OrderedJson pj;
      pj["lo"] = s.lo;
      pj["hi"] = s.hi;
      pj["lo_closed"] = s.lo_closed;
      pj["hi_closed"] = s.hi_closed;
      pj["value"] = s.value;
      j["pieces"].push_back(pj);
    }
  }
  if (!p.event.empty()) j["event"] = p.event;
  if (p.marginal_over_outcome) j["marginal_over"] = "outcome";
  if (p.reference) j["reference"] = *p.reference;
  return j;
}

inline OrderedJson utility_json(const UtilityModel& u, const std::vector<std::size_t>& shape) {
  OrderedJson j;
  std::size_t pos = 0;
  if (u.kind == UtilityKind::kAdditiveSeparable) {
    j["kind"] = "additive_separable";
    j["v"] = tensor_json(u.v, shape, 0, pos);
    j["penalties"] = OrderedJson::array();
    for (const auto& p : u.penalties) j["penalties"].push_back(penalty_json(p));
  } else {
    j["kind"] = "tabulated_grid";
    j["resolution"] = u.table_resolution;
    j["values"] = tables_json(u.tables, shape, 0, pos);
  }
  return j;
}

}  // namespace detail

/// Parses and validates a game document. On failure every schema and
/// invariant error is reported with its document path; syntax errors carry
/// line:column.
inline ParseResult parse_game(const std::string& text) {
  ParseResult out;
  detail::Json root;
  try {
    root = detail::Json::parse(text);
  } catch (const detail::Json::parse_error& e) {
    out.errors.push_back("syntax error at " + detail::location_of(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
    return out;
  }
  detail::Reader r(out.errors);
  if (!root.is_object()) {
    r.error("", "expected an object at the top level");
    return out;
  }
  auto version = r.string(r.field(root, "format_version", ""), "/format_version");
  if (version && *version != kFormatVersion) r.error("/format_version", "unsupported version '" + *version + "'");
  auto kind = r.string(r.field(root, "kind", ""), "/kind");
  if (!kind) return out;

  GameDocument doc;
  if (version) doc.format_version = *version;
  if (*kind == "single") {
    auto s = detail::read_single(r, root);
    if (!s || !out.errors.empty()) return out;
    auto report = validate(*s);
    if (!report.ok()) return out.errors = report.errors, out;
    doc.game = std::move(*s);
  } else if (*kind == "two_player") {
    r.object(root, "", {"format_version", "kind", "players", "flags"});
    TwoPlayerSpec s;
    detail::read_flags(r, root, s.allow_discontinuous);
    auto players = detail::read_players(r, root, false, nullptr);
    if (!players || !out.errors.empty()) return out;
    s.players = std::move(*players);
    auto report = validate(s);
    if (!report.ok()) return out.errors = report.errors, out;
    doc.game = std::move(s);
  } else if (*kind == "bayesian") {
    r.object(root, "", {"format_version", "kind", "players"});
    std::array<std::vector<double>, 2> payoffs;
    auto players = detail::read_players(r, root, true, &payoffs);
    if (!players || !out.errors.empty()) return out;
    BayesianGameSpec s;
    for (std::size_t i = 0; i < 2; ++i) {
      s.players[i].types = (*players)[i].types;
      s.players[i].actions = (*players)[i].actions;
      s.players[i].beliefs = (*players)[i].beliefs;
      s.players[i].payoffs = payoffs[i];
    }
    auto report = validate(s);
    if (!report.ok()) return out.errors = report.errors, out;
    doc.game = std::move(s);
  } else {
    r.error("/kind", "expected 'single', 'two_player' or 'bayesian'");
    return out;
  }
  out.document = std::move(doc);
  return out;
}

inline std::string serialize_game(const GameDocument& doc) {
  using detail::OrderedJson;
  OrderedJson j;
  j["format_version"] = doc.format_version;
  j["kind"] = to_string(doc.kind());
  if (const auto* s = std::get_if<SingleGameSpec>(&doc.game)) {
    j["types"] = s->types;
    j["actions"] = s->actions;
    if (s->factorization) {
      OrderedJson f;
      f["outcome"] = s->factorization->outcome;
      f["privacy"] = s->factorization->privacy;
      if (s->factorization->indifferent) f["indifferent"] = *s->factorization->indifferent;
      if (!s->factorization->optimal_actions.empty()) f["optimal_actions"] = s->factorization->optimal_actions;
      j["factorization"] = f;
    }
    j["prior"] = s->prior;
    j["utility"] = detail::utility_json(s->utility, {s->types.size(), s->actions.size()});
    j["flags"] = {{"allow_discontinuous", s->allow_discontinuous}};
  } else if (const auto* s = std::get_if<TwoPlayerSpec>(&doc.game)) {
    j["players"] = OrderedJson::array();
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& p = s->players[i];
      const auto& q = s->players[1 - i];
      OrderedJson pj;
      pj["types"] = p.types;
      pj["actions"] = p.actions;
      pj["beliefs"] = p.beliefs;
      pj["utility"] = detail::utility_json(p.utility, {p.types.size(), q.types.size(), p.actions.size(), q.actions.size()});
      j["players"].push_back(pj);
    }
    j["flags"] = {{"allow_discontinuous", s->allow_discontinuous}};
  } else {
    const auto& bs = std::get<BayesianGameSpec>(doc.game);
    j["players"] = OrderedJson::array();
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& p = bs.players[i];
      const auto& q = bs.players[1 - i];
      OrderedJson pj;
      pj["types"] = p.types;
      pj["actions"] = p.actions;
      pj["beliefs"] = p.beliefs;
      std::size_t pos = 0;
      pj["payoffs"] = detail::tensor_json(p.payoffs, {p.types.size(), q.types.size(), p.actions.size(), q.actions.size()}, 0, pos);
      j["players"].push_back(pj);
    }
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Bundled fixtures by name

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"blog", "two_player", "two_player_bayesian", "counterexample_lsc",
                                              "counterexample_usc", "majority_default"};
  return names;
}

inline std::optional<GameDocument> bundled_fixture(const std::string& name) {
  GameDocument doc;
  if (name == "blog") doc.game = fixtures::blog();
  else if (name == "two_player") doc.game = fixtures::two_player();
  else if (name == "two_player_bayesian") doc.game = fixtures::two_player_bayesian();
  else if (name == "counterexample_lsc") doc.game = fixtures::counterexample_lsc();
  else if (name == "counterexample_usc") doc.game = fixtures::counterexample_usc();
  else if (name == "majority_default") doc.game = fixtures::majority_default();
  else return std::nullopt;
  return doc;
}

}  // namespace percept
