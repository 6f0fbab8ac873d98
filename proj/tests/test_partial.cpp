#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "lefkit/partial.hpp"
#include "lefkit/search.hpp"

using namespace lefkit;

namespace {

Element zint(std::int64_t v) { return Element{Element::Vec{v}}; }
Element res(std::int64_t v) { return Element{v}; }

std::vector<Element> z_subset(std::initializer_list<std::int64_t> values) {
  std::vector<Element> out;
  for (auto v : values) out.push_back(zint(v));
  return out;
}

std::vector<Element> full_subset(const GroupBackend& g) { return g.elements(); }

} // namespace

TEST_CASE("extraction records exactly the products landing in the subset") {
  GroupBackend z = lattice(1);
  PartialGroupTable t = extract_table(z, z_subset({1, 2, 3}));
  CHECK(t.size == 3);
  CHECK_FALSE(t.identity_index.has_value());
  CHECK(t.triples == std::vector<std::array<int, 3>>{{0, 0, 1}, {0, 1, 2}, {1, 0, 2}});

  GroupBackend z2 = cyclic(2);
  PartialGroupTable full = extract_table(z2, full_subset(z2));
  CHECK(full.identity_index == 0);
  CHECK(full.triples.size() == 4);

  PartialGroupTable zero = extract_table(z, z_subset({0}));
  CHECK(zero.identity_index == 0);
  CHECK(zero.triples == std::vector<std::array<int, 3>>{{0, 0, 0}});
}

TEST_CASE("extraction rejects bad subsets") {
  GroupBackend z = lattice(1);
  CHECK_THROWS_AS(extract_table(z, z_subset({1, 1})), InvalidInput);
  CHECK_THROWS_AS(extract_table(z, std::vector<Element>{}), InvalidInput);
  CHECK_THROWS_AS(extract_table(z, std::vector<Element>{res(3)}), InvalidInput);
  GroupBackend z4 = cyclic(4);
  CHECK_THROWS_AS(extract_table(z4, std::vector<Element>{res(4)}), InvalidInput);
}

TEST_CASE("extraction is sound") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    GroupBackend g = trial % 2 == 0 ? cyclic(3 + trial % 10) : symmetric(1 + trial % 4);
    auto elems = g.elements();
    std::vector<Element> subset;
    for (const auto& e : elems)
      if (rng() % 2 == 0) subset.push_back(e);
    if (subset.empty()) subset.push_back(elems.front());
    PartialGroupTable t = extract_table(g, subset);
    std::vector<std::vector<bool>> recorded(subset.size(),
                                            std::vector<bool>(subset.size(), false));
    for (const auto& [i, j, k] : t.triples) {
      recorded[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
      CHECK(g.multiply(subset[static_cast<std::size_t>(i)], subset[static_cast<std::size_t>(j)]) ==
            subset[static_cast<std::size_t>(k)]);
    }
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = 0; j < subset.size(); ++j) {
        if (recorded[i][j]) continue;
        Element p = g.multiply(subset[i], subset[j]);
        for (const auto& m : subset) CHECK_FALSE(p == m);
      }
  }
}

TEST_CASE("table validation enforces the invariants") {
  PartialGroupTable t;
  t.size = 2;
  t.triples = {{0, 0, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(validate_table(t), InvalidInput);  // conflicting products

  t.triples = {{0, 0, 2}};
  CHECK_THROWS_AS(validate_table(t), InvalidInput);  // index out of range

  t.triples = {{0, 0, 0}};
  t.identity_index = 1;
  CHECK_THROWS_AS(validate_table(t), InvalidInput);  // (e,e,e) not recorded

  t.identity_index = 0;
  CHECK_NOTHROW(validate_table(t));

  t.labels = {"a", "a"};
  CHECK_THROWS_AS(validate_table(t), InvalidInput);  // duplicate labels

  PartialGroupTable empty;
  empty.size = 0;
  CHECK_THROWS_AS(validate_table(empty), InvalidInput);
}

TEST_CASE("restricting the identity map is a local embedding") {
  GroupBackend z6 = cyclic(6);
  PartialGroupTable t = extract_table(z6, full_subset(z6));
  Assignment f{full_subset(z6)};
  VerificationReport r = verify_local_embedding(t, z6, f);
  CHECK(r.is_partial_hom);
  CHECK(r.is_injective);
  CHECK(r.is_local_embedding());
}

TEST_CASE("mod-2 reduction of A = {0,1,2} is a hom but not injective") {
  GroupBackend z = lattice(1);
  PartialGroupTable t = extract_table(z, z_subset({0, 1, 2}));
  GroupBackend z2 = cyclic(2);
  Assignment f{{res(0), res(1), res(0)}};
  VerificationReport r = verify_partial_hom(t, z2, f);
  CHECK(r.is_partial_hom);
  CHECK_FALSE(r.is_injective);
  CHECK(r.collisions == std::vector<std::array<int, 2>>{{0, 2}});
}

TEST_CASE("mod-3 reduction of A = {1,2,3} is a local embedding") {
  GroupBackend z = lattice(1);
  PartialGroupTable t = extract_table(z, z_subset({1, 2, 3}));
  Assignment f{{res(1), res(2), res(0)}};
  VerificationReport r = verify_partial_hom(t, cyclic(3), f);
  CHECK(r.is_partial_hom);
  CHECK(r.is_injective);
}

TEST_CASE("the mod-8 witness for A = {2,5,9}") {
  GroupBackend z = lattice(1);
  PartialGroupTable t = extract_table(z, z_subset({2, 5, 9}));
  CHECK(t.triples.empty());  // no pairwise sum lands back in A
  Assignment f{{res(2), res(5), res(1)}};
  CHECK(verify_local_embedding(t, cyclic(8), f).is_local_embedding());
}

TEST_CASE("constant maps fail injectivity") {
  GroupBackend z = lattice(1);
  PartialGroupTable t = extract_table(z, z_subset({1, 2}));
  Assignment f{{res(0), res(0)}};
  VerificationReport r = verify_local_embedding(t, cyclic(5), f);
  CHECK_FALSE(r.is_injective);
  CHECK(r.collisions.size() == 1);
}

TEST_CASE("a corrupted image shows up as a product violation") {
  GroupBackend z4 = cyclic(4);
  PartialGroupTable t = extract_table(z4, full_subset(z4));
  Assignment f{full_subset(z4)};
  f.images[1] = res(3);  // corrupt f(1); injectivity breaks too (3 repeats)
  VerificationReport r = verify_partial_hom(t, z4, f);
  CHECK_FALSE(r.is_partial_hom);
  CHECK_FALSE(r.violations.empty());
  for (const auto& [i, j, k] : r.violations) {
    Element p = z4.multiply(f.images[static_cast<std::size_t>(i)],
                            f.images[static_cast<std::size_t>(j)]);
    CHECK_FALSE(p == f.images[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("reports partition the recorded triples exactly") {
  GroupBackend z4 = cyclic(4);
  PartialGroupTable t = extract_table(z4, full_subset(z4));
  std::mt19937 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    Assignment f;
    for (int i = 0; i < t.size; ++i) f.images.push_back(res(static_cast<std::int64_t>(rng() % 4)));
    VerificationReport r = verify_partial_hom(t, z4, f);
    std::size_t satisfied = 0;
    for (const auto& [i, j, k] : t.triples) {
      Element p = z4.multiply(f.images[static_cast<std::size_t>(i)],
                              f.images[static_cast<std::size_t>(j)]);
      bool ok = p == f.images[static_cast<std::size_t>(k)];
      bool listed = std::find(r.violations.begin(), r.violations.end(),
                              std::array<int, 3>{i, j, k}) != r.violations.end();
      CHECK(ok != listed);
      if (ok) ++satisfied;
    }
    CHECK(satisfied + r.violations.size() == t.triples.size());
  }
}

TEST_CASE("restrictions of genuine homomorphisms verify") {
  std::mt19937 rng(37);
  struct Hom {
    GroupBackend domain;
    GroupBackend target;
    Element (*map)(const Element&);
  };
  std::vector<Hom> homs;
  homs.push_back({cyclic(12), cyclic(4),
                  [](const Element& e) { return res(std::get<Element::Int>(e.payload) % 4); }});
  homs.push_back({cyclic(6), cyclic(3),
                  [](const Element& e) { return res(std::get<Element::Int>(e.payload) % 3); }});
  homs.push_back({symmetric(3), cyclic(2), [](const Element& e) {
                    const auto& p = std::get<Element::Perm>(e.payload);
                    int inversions = 0;
                    for (std::size_t i = 0; i < p.size(); ++i)
                      for (std::size_t j = i + 1; j < p.size(); ++j)
                        if (p[i] > p[j]) ++inversions;
                    return res(inversions % 2);
                  }});
  for (const auto& hom : homs) {
    auto elems = hom.domain.elements();
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Element> subset;
      for (const auto& e : elems)
        if (rng() % 2 == 0) subset.push_back(e);
      if (subset.empty()) subset.push_back(elems.front());
      PartialGroupTable t = extract_table(hom.domain, subset);
      Assignment f;
      for (const auto& e : subset) f.images.push_back(hom.map(e));
      CHECK(verify_partial_hom(t, hom.target, f).is_partial_hom);
    }
  }
}

TEST_CASE("inverse coherence is a consequence, not a stored constraint") {
  // When e, a and a^-1 all sit in A, the recorded triples force
  // f(a^-1) = f(a)^-1 for every passing assignment.
  GroupBackend z = lattice(1);
  for (std::vector<std::int64_t> values :
       {std::vector<std::int64_t>{-2, 0, 2}, std::vector<std::int64_t>{-5, -1, 0, 1, 5}}) {
    std::vector<Element> subset;
    for (auto v : values) subset.push_back(zint(v));
    PartialGroupTable t = extract_table(z, subset);
    SweepResult r = sweep_cyclic(t, SearchBudget{.max_cyclic_m = 16});
    const auto* w = std::get_if<EmbeddingWitness>(&r);
    REQUIRE(w);
    for (std::size_t i = 0; i < values.size(); ++i) {
      auto neg = std::find(values.begin(), values.end(), -values[i]);
      if (neg == values.end()) continue;
      std::size_t ni = static_cast<std::size_t>(neg - values.begin());
      CHECK(w->assignment.images[ni] == w->target.inverse(w->assignment.images[i]));
    }
  }
}

TEST_CASE("verification rejects images outside the target") {
  GroupBackend z = lattice(1);
  PartialGroupTable t = extract_table(z, z_subset({1, 2}));
  Assignment f{{res(0), res(9)}};
  CHECK_THROWS_AS(verify_partial_hom(t, cyclic(3), f), InvalidInput);
  Assignment wrong_size{{res(0)}};
  CHECK_THROWS_AS(verify_partial_hom(t, cyclic(3), wrong_size), InvalidInput);
}
