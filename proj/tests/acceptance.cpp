// Acceptance checks: one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "oracle.hpp"
#include "percept/percept.hpp"

using namespace percept;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string num(double x) { return format_number(x); }

std::string mixed_profile(const PerceptionGame& g, const Strategy& s) {
  std::string out;
  for (std::size_t t = 0; t < g.types().size(); ++t) {
    out += (t ? ", " : "") + g.types()[t] + "->(";
    for (std::size_t a = 0; a < g.actions().size(); ++a) out += (a ? "/" : "") + num(s.prob(t, a));
    out += ")";
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  const auto parsed = parse_game(serialize_game(*bundled_fixture("blog")));
  o.require(parsed.ok(), "blog fixture does not parse");
  if (!parsed.ok()) return o;
  const PerceptionGame g(std::get<SingleGameSpec>(parsed.document->game));
  const auto eqs = enumerate_pure_equilibria(g);
  o.require(eqs.size() == 3, "found " + std::to_string(eqs.size()) + " equilibria");
  const std::vector<std::pair<std::vector<std::size_t>, std::vector<double>>> want{
      {{0, 0}, {1, 0}}, {{0, 1}, {0, 0}}, {{1, 1}, {0, 1}}};
  for (const auto& [profile, payoff] : want) {
    bool found = false;
    for (const auto& e : eqs) {
      if (!e.strategy.is_pure()) continue;
      std::vector<std::size_t> p{*e.strategy.pure_action(0), *e.strategy.pure_action(1)};
      if (p == profile && std::abs(e.payoff[0] - payoff[0]) <= 1e-9 && std::abs(e.payoff[1] - payoff[1]) <= 1e-9) found = true;
    }
    o.require(found, "missing (" + num(payoff[0]) + "," + num(payoff[1]) + ")");
  }
  if (o.pass) o.detail = "pool-L (1,0), separating (0,0), pool-R (0,1)";
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  int games = 0, agree = 0;
  const std::size_t types[] = {2, 3}, actions[] = {2, 3, 4};
  for (int mode = 0; mode < 2; ++mode) {
    const auto kind = mode == 0 ? oracle::Game::Kind::kTv : oracle::Game::Kind::kExposure;
    for (int i = 0; i < 120; ++i) {
      const auto og = oracle::random_game(rng, types[i % 2], actions[(i / 2) % 3], kind);
      const PerceptionGame g(og.spec());
      const auto r = pooling_check(g, mode == 0 ? PoolingMode::kUpper : PoolingMode::kLower);
      ++games;
      if (r.exists == oracle::full_pooling_equilibrium_exists(og)) ++agree;
      else o.require(false, std::string(mode == 0 ? "upper" : "lower") + " instance " + std::to_string(i) + " disagrees");
    }
  }
  o.detail = std::to_string(agree) + "/" + std::to_string(games) + " games agree" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const TwoPlayerPerceptionGame g(fixtures::two_player(0.1));
  auto tau = TwoPlayerPerception::sized(g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t opp = 0; opp < 2; ++opp) {
      tau.set_all_own(i, opp, 0, Belief({0.5, 0.5}));
      tau.set_all_own(i, opp, 1, dirac(1, 2));
    }
  const auto v = verify_equilibrium_2p(g, pure_profile_2p(g, {0, 0}, {0, 0}), tau);
  o.require(v.accepted(), "all-U/all-L rejected");
  const bool exact = v.report.payoff[0] == std::vector<double>{5, 3} && v.report.payoff[1] == std::vector<double>{5, 3};
  o.require(exact, "interim payoffs differ from (5,3,5,3)");

  const auto bnes = enumerate_pure_bne(BayesianGame(fixtures::two_player_bayesian()));
  bool target = false;
  std::size_t undominated = 0;
  for (const auto& b : bnes) {
    if (b.undominated) ++undominated;
    if (b.actions[0] == std::vector<std::size_t>{0, 1} && b.actions[1] == std::vector<std::size_t>{0, 1} &&
        b.payoff[0] == std::vector<double>{2.5, 2.5} && b.payoff[1] == std::vector<double>{2.5, 2.5})
      target = true;
  }
  o.require(target, "u->U, d->D, l->L, r->R with 2.5 payoffs not found");
  o.require(bnes.size() == 1, std::to_string(bnes.size()) + " pure BNE, not unique (" + std::to_string(undominated) +
                                  " without weakly dominated actions)");
  if (o.pass) o.detail = "verified (5,3,5,3); unique pure BNE at 2.5";
  else if (v.accepted() && exact) o.detail = "verified (5,3,5,3); " + o.detail;
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4242);
  int games = 0;
  double worst = -1e300;
  for (int i = 0; i < 120; ++i) {
    const auto og = oracle::random_game(rng, 2 + i % 2, 2 + i % 3, oracle::Game::Kind::kTv);
    const PerceptionGame g(og.spec());
    if (!has_upper_privacy(classify_privacy(g))) continue;
    ++games;
    const auto w = welfare_report(g);
    if (!w.equilibria.empty()) worst = std::max(worst, w.max_equilibrium_advantage());
  }
  o.require(games >= 100, "only " + std::to_string(games) + " upper-privacy games");
  o.require(worst <= 1e-9, "an equilibrium beats legislation by " + num(worst));

  const auto w2 = welfare_report(TwoPlayerPerceptionGame(fixtures::two_player()));
  bool reversal = false;
  for (const auto& l : w2.legislation) {
    if (l.payoff != std::vector<double>{2.5, 2.5, 2.5, 2.5}) continue;
    for (const auto& e : w2.equilibria) {
      if (e.payoff != std::vector<double>{5, 3, 5, 3}) continue;
      bool strict = true;
      for (std::size_t t = 0; t < 4; ++t) strict = strict && e.payoff[t] > l.payoff[t];
      reversal = reversal || strict;
    }
  }
  o.require(reversal, "two-player report lacks the strict reversal");
  o.detail = std::to_string(games) + " games, max equilibrium advantage " + num(worst) + "; two-player 5,3,5,3 > 2.5" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5150);
  int checked = 0, accepted = 0, drawn = 0;
  while (checked < 120 && drawn < 5000) {
    ++drawn;
    const SeparableGame sg(PerceptionGame(oracle::random_separable(rng)));
    if (!check_assumption2(sg).holds) continue;
    ++checked;
    if (build_separating_equilibrium(sg).verification.accepted()) ++accepted;
  }
  o.require(checked >= 100, "only " + std::to_string(checked) + " specs pass the assumption");
  o.require(accepted == checked, std::to_string(checked - accepted) + " constructions rejected");
  o.detail = std::to_string(accepted) + "/" + std::to_string(checked) + " separating constructions verified" +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion6() {
  Outcome o;
  const SeparableGame family(PerceptionGame(fixtures::majority_default()));
  ScanOptions options;
  options.mixed_step = 0.05;
  const auto scan = scan_alpha(family, default_alpha_grid(), nullptr, options);
  o.require(!scan.points.empty() && scan.points.front().alpha == 0.0 && scan.points.front().pooling_present,
            "no pooling equilibrium at alpha 0");
  double bound = 0.0;
  for (const auto& p : scan.points) {
    bound = p.analytic_bound;
    if (p.alpha > p.analytic_bound && !p.separation_unique) o.require(false, "not unique at alpha " + num(p.alpha));
    if (scan.alpha_hat && p.alpha >= *scan.alpha_hat && p.mixed_additional.value_or(1) != 0)
      o.require(false, "mixed search finds more at alpha " + num(p.alpha));
  }
  o.require(scan.alpha_hat && *scan.alpha_hat < 1.0, "no empirical threshold below 1");
  o.detail = "alpha_hat " + (scan.alpha_hat ? num(*scan.alpha_hat) : std::string("none")) + ", bound " + num(bound) +
             (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::string summary;
  for (const auto& [name, spec] : {std::pair{"lower", fixtures::counterexample_lsc()}, std::pair{"upper", fixtures::counterexample_usc(0.05)}}) {
    const PerceptionGame g(spec);
    const auto r = counterexample_check(g, 0.05, {0.1});
    o.require(r.pure_min_gain >= 1.0 - 1e-9, std::string(name) + ": pure gain " + num(r.pure_min_gain));
    const bool none = r.verdicts.front().no_equilibrium;
    if (!none)
      o.require(false, std::string(name) + ": step grid has a " + num(r.mixed_min_gain) + "-equilibrium at " +
                           mixed_profile(g, r.mixed_min_strategy));
    summary += (summary.empty() ? "" : ", ") + std::string(name) + " pure min gain " + num(r.pure_min_gain) + ", grid min gain " +
               num(r.mixed_min_gain);
  }
  o.detail = summary + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8080);
  int same = 0;
  for (int i = 0; i < 50; ++i) {
    const auto og = oracle::random_game(rng, 2 + i % 2, 2 + i % 3, static_cast<oracle::Game::Kind>(i % 3));
    const PerceptionGame single(og.spec());
    const auto a = enumerate_pure_equilibria(single);
    const auto b = enumerate_pure_equilibria_2p(embed_single_player(single));
    bool ok = a.size() == b.size();
    for (std::size_t k = 0; ok && k < a.size(); ++k) ok = a[k].strategy == b[k].strategy.players[0] && a[k].payoff == b[k].payoff[0];
    if (ok) ++same;
    else o.require(false, "instance " + std::to_string(i) + " differs");
  }
  o.detail = std::to_string(same) + "/50 embeddings identical" + (o.detail.empty() ? "" : "; " + o.detail);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 blog game has three pure equilibria", 1.0, criterion1},
      {"2 pooling tests match brute force", 30.0, criterion2},
      {"3 two-player example and pure BNE", 1.0, criterion3},
      {"4 welfare under legislation", 0.0, criterion4},
      {"5 separating construction verifies", 0.0, criterion5},
      {"6 majority scan threshold", 60.0, criterion6},
      {"7 discontinuous games lack equilibria", 0.0, criterion7},
      {"8 single-player embedding", 0.0, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_s > 0.0 && secs >= c.budget_s) o.require(false, "runtime over " + num(c.budget_s) + "s");
    if (!o.pass) ++failed;
    std::printf("%s  %-40s %7.3fs  %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
