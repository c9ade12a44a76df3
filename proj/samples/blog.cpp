// Enumerates the equilibria of the two-blog game and compares them with the
// outcome when reading choices are not observed.

#include <cstdio>

#include "percept/percept.hpp"

int main() {
  using namespace percept;
  const PerceptionGame game(fixtures::blog());

  for (const auto& eq : enumerate_pure_equilibria(game)) {
    std::printf("%-22s", describe_profile(game, eq.strategy).c_str());
    for (std::size_t t = 0; t < game.type_count(); ++t)
      std::printf("  %s: %g", game.types()[t].c_str(), eq.payoff[t]);
    std::printf("\n");
  }

  const auto legislation = legislation_welfare(game);
  std::printf("unobserved actions:   ");
  for (std::size_t t = 0; t < game.type_count(); ++t)
    std::printf("  %s: %g", game.types()[t].c_str(), legislation[t].value);
  std::printf("\n");

  const auto upper = pooling_check(game, PoolingMode::kUpper);
  std::printf("full pooling possible: %s\n", upper.exists ? "yes" : "no");
}
