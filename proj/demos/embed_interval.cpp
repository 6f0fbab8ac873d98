// Extracts the partial table of an integer interval, builds the constructive
// mod-m witness, and cross-checks it against the exhaustive cyclic sweep.

#include <iostream>
#include <variant>

#include "lefkit/lefkit.hpp"
#include "lefkit/serialize.hpp"

int main() {
  using namespace lefkit;

  std::vector<std::int64_t> subset{2, 5, 9};
  AbelianWitness constructive = cyclic_witness(subset);
  std::cout << "constructive witness:\n"
            << witness_to_json(constructive.witness).dump(2) << "\n";

  SearchBudget budget;
  budget.max_cyclic_m = std::get<CyclicGroup>(constructive.witness.target.kind()).modulus;
  SweepResult swept = sweep_cyclic(constructive.table, budget);
  if (const auto* w = std::get_if<EmbeddingWitness>(&swept))
    std::cout << "minimal sweep witness:\n" << witness_to_json(*w).dump(2) << "\n";
  return 0;
}
