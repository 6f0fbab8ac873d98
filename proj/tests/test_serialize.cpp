#include <doctest.h>

#include <string>
#include <variant>
#include <vector>

#include "lefkit/serialize.hpp"

using namespace lefkit;

TEST_CASE("backend specs round trip") {
  for (const char* text : {
           R"({"kind":"cyclic","m":8})",
           R"({"kind":"symmetric","n":4})",
           R"({"kind":"product","factors":[{"kind":"cyclic","m":2},{"kind":"cyclic","m":3}]})",
           R"({"kind":"fg-abelian","rank":1,"torsion":[4]})",
           R"({"kind":"free","rank":2})",
       }) {
    GroupBackend g = backend_from_json(Json::parse(text));
    CHECK(backend_from_json(backend_to_json(g)) == g);
  }
}

TEST_CASE("the lattice alias parses as torsion-free fg-abelian") {
  GroupBackend g = backend_from_json(Json::parse(R"({"kind":"lattice","rank":3})"));
  CHECK(g == lattice(3));
  CHECK(backend_to_json(g)["kind"] == "fg-abelian");
}

TEST_CASE("cayley specs validate on parse") {
  Json good = Json::parse(R"({"kind":"cayley","order":2,"table":[[0,1],[1,0]]})");
  GroupBackend g = backend_from_json(good);  // identity inferred
  CHECK(backend_to_json(g)["identity"] == 0);
  CHECK(backend_from_json(backend_to_json(g)) == g);

  Json bad = Json::parse(R"({"kind":"cayley","order":2,"table":[[0,0],[1,0]]})");
  CHECK_THROWS_AS(backend_from_json(bad), CayleyError);
}

TEST_CASE("elements round trip through their backend representation") {
  GroupBackend s3 = symmetric(3);
  for (const auto& e : s3.elements())
    CHECK(element_from_json(s3, element_to_json(s3, e)) == e);

  GroupBackend prod = direct_product(cyclic(4), symmetric(2));
  for (const auto& e : prod.elements())
    CHECK(element_from_json(prod, element_to_json(prod, e)) == e);

  GroupBackend f2 = free_group(2);
  Element w{parse_word("x0 x1^-2", make_alphabet(2))};
  CHECK(element_to_json(f2, w) == "x0 x1^-2");
  CHECK(element_from_json(f2, element_to_json(f2, w)) == w);

  GroupBackend z = lattice(1);
  CHECK(element_from_json(z, Json(7)) == Element{Element::Vec{7}});  // scalar shorthand
}

TEST_CASE("element parsing rejects non-members") {
  CHECK_THROWS_AS(element_from_json(cyclic(5), Json(5)), InvalidInput);
  CHECK_THROWS_AS(element_from_json(symmetric(3), Json::parse("[0,0,1]")), InvalidInput);
  CHECK_THROWS_AS(element_from_json(fg_abelian(0, {2}), Json::parse("[2]")), InvalidInput);
  CHECK_THROWS_AS(element_from_json(free_group(1), Json("x1")), InvalidInput);
}

TEST_CASE("tables round trip and validate on parse") {
  GroupBackend z6 = cyclic(6);
  PartialGroupTable t = extract_table(z6, z6.elements());
  Json j = table_to_json(t);
  CHECK(j["schema"] == "lefkit/1");
  PartialGroupTable back = table_from_json(j);
  CHECK(back.size == t.size);
  CHECK(back.triples == t.triples);
  CHECK(back.identity_index == t.identity_index);
  CHECK(back.labels == t.labels);

  Json conflicting = Json::parse(
      R"({"size":2,"triples":[[0,0,0],[0,0,1]]})");
  CHECK_THROWS_AS(table_from_json(conflicting), InvalidInput);
  Json wrong_kind = Json::parse(R"({"kind":"witness","size":1,"triples":[]})");
  CHECK_THROWS_AS(table_from_json(wrong_kind), InvalidInput);
  Json bad_schema = Json::parse(R"({"schema":"lefkit/9","size":1,"triples":[]})");
  CHECK_THROWS_AS(table_from_json(bad_schema), InvalidInput);
}

TEST_CASE("witnesses round trip") {
  PartialGroupTable t;
  t.size = 2;
  t = validate_table(std::move(t));
  SearchResult r = search_embedding(t, cyclic(3));
  REQUIRE(r.status == SearchStatus::Witness);
  Json j = witness_to_json(*r.witness);
  CHECK(j["verified"] == true);
  CHECK_FALSE(j.contains("construction"));  // annotation is for the constructive path
  EmbeddingWitness back = witness_from_json(j);
  CHECK(back.target == r.witness->target);
  CHECK(back.assignment.images == r.witness->assignment.images);
  CHECK(back.nodes == r.witness->nodes);
}

TEST_CASE("abelian witnesses carry the construction annotation") {
  AbelianWitness w = cyclic_witness({2, 5, 9});
  Json j = witness_to_json(w.witness);
  CHECK(j["construction"] == "abelian-mod-m");
  CHECK(j["target"] == Json::parse(R"({"kind":"cyclic","m":8})"));
  CHECK(j["images"] == Json::parse("[2,5,1]"));
}

TEST_CASE("certificates round trip") {
  PartialGroupTable t;
  t.size = 3;
  t.triples = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {0, 2, 2}, {2, 0, 2}, {1, 2, 1}};
  t.identity_index = 0;
  t = validate_table(std::move(t));
  SweepResult r = sweep_cyclic(t, SearchBudget{.max_cyclic_m = 4});
  const auto* cert = std::get_if<ExhaustionCertificate>(&r);
  REQUIRE(cert);
  Json j = certificate_to_json(*cert);
  ExhaustionCertificate back = certificate_from_json(j);
  CHECK(certificate_to_json(back) == j);
}

TEST_CASE("presentations round trip") {
  Json j = Json::parse(R"({"rank":2,"relators":["x0^2","x0 x1 x0^-1 x1^-1"]})");
  Presentation p = presentation_from_json(j);
  CHECK(p.alphabet.rank == 2);
  REQUIRE(p.relators.size() == 2);
  CHECK(to_string(p.relators[1]) == "x0 x1 x0^-1 x1^-1");
  Json out = presentation_to_json(p);
  CHECK(out["relators"] == j["relators"]);
  CHECK(presentation_from_json(out).relators == p.relators);
}

TEST_CASE("ball reports serialize with words in shortlex order") {
  Ball b = ball(make_alphabet(1), 2);
  Json j = ball_to_json(b, false);
  CHECK(j["count"] == 5);
  CHECK(j["words"] == Json::parse(R"(["e","x0","x0^-1","x0^2","x0^-2"])"));
  Json count_only = ball_to_json(b, true);
  CHECK_FALSE(count_only.contains("words"));
}

TEST_CASE("budget serialization keeps all knobs") {
  SearchBudget b;
  b.max_cyclic_m = 9;
  b.node_limit = 1234;
  Json j = budget_to_json(b);
  SearchBudget back = budget_from_json(j);
  CHECK(back.max_cyclic_m == 9);
  CHECK(back.node_limit == 1234);
  CHECK(back.time_limit == b.time_limit);
}
