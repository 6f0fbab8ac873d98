#include <doctest.h>

#include <random>
#include <set>
#include <variant>
#include <vector>

#include "lefkit/abelian.hpp"

using namespace lefkit;

namespace {

std::int64_t modulus_of(const GroupBackend& g) {
  return std::get<CyclicGroup>(g.kind()).modulus;
}

std::vector<std::int64_t> product_moduli(const GroupBackend& g) {
  std::vector<std::int64_t> out;
  for (const auto& f : std::get<ProductGroup>(g.kind()).factors)
    out.push_back(modulus_of(f));
  return out;
}

std::vector<std::int64_t> random_distinct_ints(std::mt19937& rng, int max_size, int lo, int hi) {
  std::uniform_int_distribution<int> size_dist(1, max_size);
  std::uniform_int_distribution<std::int64_t> value_dist(lo, hi);
  std::set<std::int64_t> values;
  int target = size_dist(rng);
  while (static_cast<int>(values.size()) < target) values.insert(value_dist(rng));
  return {values.begin(), values.end()};
}

} // namespace

TEST_CASE("spread is the coordinatewise max minus min") {
  CHECK(spread({{2}, {5}, {9}}).spread == std::vector<std::int64_t>{7});
  CHECK(spread({{42}}).spread == std::vector<std::int64_t>{0});
  CHECK(spread({{0, 3}, {4, 3}, {1, 8}}).spread == std::vector<std::int64_t>{4, 5});
  CHECK_THROWS_AS(spread({}), InvalidInput);
  CHECK_THROWS_AS(spread({{1, 2}, {1}}), InvalidInput);
}

TEST_CASE("the mod-m witness uses the smallest legal modulus") {
  AbelianWitness w = cyclic_witness({2, 5, 9});
  CHECK(modulus_of(w.witness.target) == 8);
  CHECK(w.witness.assignment.images ==
        std::vector<Element>{Element{std::int64_t{2}}, Element{std::int64_t{5}},
                             Element{std::int64_t{1}}});
  CHECK(w.witness.verified);
  CHECK(w.witness.construction == "abelian-mod-m");

  CHECK(modulus_of(cyclic_witness({0}).witness.target) == 1);

  AbelianWitness negatives = cyclic_witness({-3, 0, 3});
  CHECK(modulus_of(negatives.witness.target) == 7);
  CHECK(negatives.witness.assignment.images ==
        std::vector<Element>{Element{std::int64_t{4}}, Element{std::int64_t{0}},
                             Element{std::int64_t{3}}});
}

TEST_CASE("lattice witnesses reduce componentwise") {
  AbelianWitness origin = lattice_witness({{0, 0}});
  CHECK(product_moduli(origin.witness.target) == std::vector<std::int64_t>{1, 1});

  AbelianWitness w = lattice_witness({{0, 3}, {4, 3}, {1, 8}});
  CHECK(product_moduli(w.witness.target) == std::vector<std::int64_t>{5, 6});
  Element expected{Element::Tuple{Element{std::int64_t{1}}, Element{std::int64_t{2}}}};
  CHECK(w.witness.assignment.images[2] == expected);

  AbelianWitness degenerate =
      lattice_witness({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
  CHECK(product_moduli(degenerate.witness.target) == std::vector<std::int64_t>{5, 1});
}

TEST_CASE("fg-abelian witnesses pass torsion through untouched") {
  GroupBackend ambient = fg_abelian(1, {4});
  std::vector<Element> subset{Element{Element::Vec{0, 1}}, Element{Element::Vec{3, 2}}};
  AbelianWitness w = fg_abelian_witness(ambient, subset);
  CHECK(product_moduli(w.witness.target) == std::vector<std::int64_t>{4, 4});
  CHECK(w.witness.assignment.images ==
        std::vector<Element>{
            Element{Element::Tuple{Element{std::int64_t{0}}, Element{std::int64_t{1}}}},
            Element{Element::Tuple{Element{std::int64_t{3}}, Element{std::int64_t{2}}}}});

  GroupBackend z_x_z2 = fg_abelian(1, {2});
  AbelianWitness neg = fg_abelian_witness(
      z_x_z2, {Element{Element::Vec{-2, 0}}, Element{Element::Vec{2, 0}}});
  CHECK(product_moduli(neg.witness.target) == std::vector<std::int64_t>{5, 2});
  CHECK(neg.witness.assignment.images ==
        std::vector<Element>{
            Element{Element::Tuple{Element{std::int64_t{3}}, Element{std::int64_t{0}}}},
            Element{Element::Tuple{Element{std::int64_t{2}}, Element{std::int64_t{0}}}}});
}

TEST_CASE("a purely finite fg-abelian subset maps by the identity") {
  GroupBackend ambient = fg_abelian(0, {3, 2});
  auto subset = ambient.elements();
  AbelianWitness w = fg_abelian_witness(ambient, subset);
  CHECK(product_moduli(w.witness.target) == std::vector<std::int64_t>{3, 2});
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const auto& coords = std::get<Element::Vec>(subset[i].payload);
    const auto& image = std::get<Element::Tuple>(w.witness.assignment.images[i].payload);
    REQUIRE(image.size() == coords.size());
    for (std::size_t c = 0; c < coords.size(); ++c)
      CHECK(std::get<Element::Int>(image[c].payload) == coords[c]);
  }
}

TEST_CASE("mod-m witnesses always verify") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 500; ++trial) {
    auto a = random_distinct_ints(rng, 8, -50, 50);
    AbelianWitness w = cyclic_witness(a);
    CHECK(verify_local_embedding(w.table, w.witness.target, w.witness.assignment)
              .is_local_embedding());
  }
}

TEST_CASE("lattice witnesses always verify") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> dim_dist(1, 3);
  std::uniform_int_distribution<int> size_dist(1, 6);
  std::uniform_int_distribution<std::int64_t> value_dist(-20, 20);
  for (int trial = 0; trial < 500; ++trial) {
    int k = dim_dist(rng);
    std::set<std::vector<std::int64_t>> points;
    int target = size_dist(rng);
    while (static_cast<int>(points.size()) < target) {
      std::vector<std::int64_t> p(static_cast<std::size_t>(k));
      for (auto& c : p) c = value_dist(rng);
      points.insert(std::move(p));
    }
    AbelianWitness w = lattice_witness({points.begin(), points.end()});
    CHECK(verify_local_embedding(w.table, w.witness.target, w.witness.assignment)
              .is_local_embedding());
  }
}

TEST_CASE("fg-abelian witnesses always verify") {
  std::mt19937 rng(47);
  std::uniform_int_distribution<int> rank_dist(0, 2);
  std::uniform_int_distribution<int> slots_dist(0, 2);
  std::uniform_int_distribution<std::int64_t> torsion_dist(2, 6);
  std::uniform_int_distribution<std::int64_t> value_dist(-15, 15);
  std::uniform_int_distribution<int> size_dist(1, 6);
  for (int trial = 0; trial < 500; ++trial) {
    int r = rank_dist(rng);
    std::vector<std::int64_t> torsion(static_cast<std::size_t>(slots_dist(rng)));
    for (auto& d : torsion) d = torsion_dist(rng);
    if (r == 0 && torsion.empty()) torsion.push_back(2);
    GroupBackend ambient = fg_abelian(r, torsion);
    std::int64_t max_points =
        ambient.is_finite() ? static_cast<std::int64_t>(ambient.order()) : 64;
    int target = static_cast<int>(std::min<std::int64_t>(size_dist(rng), max_points));
    std::set<std::vector<std::int64_t>> points;
    while (static_cast<int>(points.size()) < target) {
      std::vector<std::int64_t> p;
      for (int c = 0; c < r; ++c) p.push_back(value_dist(rng));
      for (std::int64_t d : torsion)
        p.push_back(static_cast<std::int64_t>(rng() % static_cast<unsigned>(d)));
      points.insert(std::move(p));
    }
    std::vector<Element> subset;
    for (const auto& p : points) subset.push_back(Element{Element::Vec(p)});
    AbelianWitness w = fg_abelian_witness(ambient, subset);
    CHECK(verify_local_embedding(w.table, w.witness.target, w.witness.assignment)
              .is_local_embedding());
  }
}

TEST_CASE("sweeps never beat the spread bound") {
  std::mt19937 rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_distinct_ints(rng, 6, -25, 25);
    AbelianWitness constructive = cyclic_witness(a);
    std::int64_t bound = modulus_of(constructive.witness.target);
    SearchBudget budget;
    budget.max_cyclic_m = bound;
    SweepResult r = sweep_cyclic(constructive.table, budget);
    const auto* w = std::get_if<EmbeddingWitness>(&r);
    REQUIRE(w);
    CHECK(modulus_of(w->target) <= bound);
  }
}

TEST_CASE("the witness map is the canonical reduction on the nose") {
  std::mt19937 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_distinct_ints(rng, 8, -50, 50);
    AbelianWitness w = cyclic_witness(a);
    std::int64_t m = modulus_of(w.witness.target);
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::int64_t expected = ((a[i] % m) + m) % m;
      CHECK(std::get<Element::Int>(w.witness.assignment.images[i].payload) == expected);
    }
  }
}

TEST_CASE("the trivial ambient group maps through an empty product") {
  GroupBackend ambient = fg_abelian(0, {});
  CHECK(ambient.order() == 1);
  AbelianWitness w = fg_abelian_witness(ambient, {Element{Element::Vec{}}});
  CHECK(std::get<ProductGroup>(w.witness.target.kind()).factors.empty());
  CHECK(w.witness.target.order() == 1);
  CHECK(w.witness.verified);
}

TEST_CASE("construction inputs are validated") {
  CHECK_THROWS_AS(cyclic_witness({}), InvalidInput);
  CHECK_THROWS_AS(cyclic_witness({3, 3}), InvalidInput);
  CHECK_THROWS_AS(lattice_witness({{1, 2}, {1, 2}}), InvalidInput);
  CHECK_THROWS_AS(fg_abelian_witness(cyclic(5), {Element{std::int64_t{1}}}), InvalidInput);
  GroupBackend ambient = fg_abelian(1, {2});
  CHECK_THROWS_AS(fg_abelian_witness(ambient, {Element{Element::Vec{0, 5}}}), InvalidInput);
}
