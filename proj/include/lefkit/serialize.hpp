#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lefkit/abelian.hpp"
#include "lefkit/errors.hpp"
#include "lefkit/fpgroups.hpp"
#include "lefkit/groups.hpp"
#include "lefkit/partial.hpp"
#include "lefkit/search.hpp"
#include "lefkit/words.hpp"

// JSON forms for every artifact the tools exchange. Output key order is
// fixed (insertion order) and no timestamps appear in result bodies, so
// identical runs emit identical bytes. Every emitted artifact carries
// {"schema":"lefkit/1","kind":...}; both tags are optional on input.

namespace lefkit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaTag = "lefkit/1";

namespace detail {

inline const Json& require_field(const Json& j, const char* name, const char* what) {
  auto it = j.find(name);
  if (it == j.end())
    throw InvalidInput(std::string(what) + " is missing required field '" + name + "'");
  return *it;
}

inline std::int64_t require_int(const Json& j, const char* name, const char* what) {
  const Json& f = require_field(j, name, what);
  if (!f.is_number_integer())
    throw InvalidInput(std::string(what) + " field '" + name + "' must be an integer");
  return f.get<std::int64_t>();
}

inline void check_envelope(const Json& j, const char* expected_kind, const char* what) {
  if (!j.is_object()) throw InvalidInput(std::string(what) + " must be a JSON object");
  if (auto it = j.find("schema"); it != j.end() && *it != kSchemaTag)
    throw InvalidInput(std::string(what) + " has unsupported schema tag " + it->dump());
  if (expected_kind)
    if (auto it = j.find("kind"); it != j.end() && *it != expected_kind)
      throw InvalidInput(std::string(what) + " has kind " + it->dump() + ", expected '" +
                         expected_kind + "'");
}

} // namespace detail

// --- backends ----------------------------------------------------------------

inline Json backend_to_json(const GroupBackend& g) {
  struct ToJson {
    Json operator()(const CyclicGroup& g) const {
      return Json{{"kind", "cyclic"}, {"m", g.modulus}};
    }
    Json operator()(const SymmetricGroup& g) const {
      return Json{{"kind", "symmetric"}, {"n", g.degree}};
    }
    Json operator()(const CayleyGroup& g) const {
      Json rows = Json::array();
      for (int i = 0; i < g.order; ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.order; ++j) row.push_back(g.at(i, j));
        rows.push_back(std::move(row));
      }
      return Json{{"kind", "cayley"}, {"order", g.order}, {"identity", g.identity},
                  {"table", std::move(rows)}};
    }
    Json operator()(const ProductGroup& p) const {
      Json factors = Json::array();
      for (const auto& f : p.factors) factors.push_back(backend_to_json(f));
      return Json{{"kind", "product"}, {"factors", std::move(factors)}};
    }
    Json operator()(const FgAbelianGroup& g) const {
      return Json{{"kind", "fg-abelian"}, {"rank", g.free_rank}, {"torsion", g.torsion}};
    }
    Json operator()(const FreeGroup& g) const {
      return Json{{"kind", "free"}, {"rank", g.rank}};
    }
  };
  return std::visit(ToJson{}, g.kind());
}

inline GroupBackend backend_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidInput("backend spec must be an object with a string 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "cyclic") return cyclic(detail::require_int(j, "m", "cyclic spec"));
  if (kind == "symmetric")
    return symmetric(static_cast<int>(detail::require_int(j, "n", "symmetric spec")));
  if (kind == "cayley") {
    CayleyTable t;
    t.order = static_cast<int>(detail::require_int(j, "order", "cayley spec"));
    if (auto it = j.find("identity"); it != j.end() && !it->is_null())
      t.identity = it->get<int>();
    const Json& rows = detail::require_field(j, "table", "cayley spec");
    if (!rows.is_array()) throw InvalidInput("cayley 'table' must be an array of rows");
    for (const Json& row : rows) {
      if (!row.is_array()) throw InvalidInput("cayley table rows must be arrays");
      std::vector<int> r;
      for (const Json& v : row) {
        if (!v.is_number_integer()) throw InvalidInput("cayley table entries must be integers");
        r.push_back(v.get<int>());
      }
      t.table.push_back(std::move(r));
    }
    return validate_cayley(t);
  }
  if (kind == "product") {
    const Json& factors = detail::require_field(j, "factors", "product spec");
    if (!factors.is_array()) throw InvalidInput("product 'factors' must be an array");
    std::vector<GroupBackend> fs;
    for (const Json& f : factors) fs.push_back(backend_from_json(f));
    return product_of(std::move(fs));
  }
  if (kind == "fg-abelian") {
    int rank = static_cast<int>(detail::require_int(j, "rank", "fg-abelian spec"));
    std::vector<std::int64_t> torsion;
    if (auto it = j.find("torsion"); it != j.end()) {
      if (!it->is_array()) throw InvalidInput("fg-abelian 'torsion' must be an array");
      for (const Json& d : *it) {
        if (!d.is_number_integer()) throw InvalidInput("torsion orders must be integers");
        torsion.push_back(d.get<std::int64_t>());
      }
    }
    return fg_abelian(rank, std::move(torsion));
  }
  if (kind == "lattice")  // input alias for fg-abelian with no torsion
    return lattice(static_cast<int>(detail::require_int(j, "rank", "lattice spec")));
  if (kind == "free")
    return free_group(static_cast<int>(detail::require_int(j, "rank", "free spec")));
  throw InvalidInput("unknown backend kind '" + kind + "'");
}

// --- elements ----------------------------------------------------------------

inline Json element_to_json(const GroupBackend& g, const Element& e) {
  struct ToJson {
    const Element* e;
    const GroupBackend* g;
    Json operator()(const CyclicGroup&) const { return std::get<Element::Int>(e->payload); }
    Json operator()(const SymmetricGroup&) const { return std::get<Element::Perm>(e->payload); }
    Json operator()(const CayleyGroup&) const { return std::get<Element::Int>(e->payload); }
    Json operator()(const ProductGroup& p) const {
      const auto& t = std::get<Element::Tuple>(e->payload);
      Json out = Json::array();
      for (std::size_t i = 0; i < t.size(); ++i)
        out.push_back(element_to_json(p.factors[i], t[i]));
      return out;
    }
    Json operator()(const FgAbelianGroup&) const { return std::get<Element::Vec>(e->payload); }
    Json operator()(const FreeGroup&) const {
      return to_string(std::get<ReducedWord>(e->payload));
    }
  };
  if (!g.contains(e))
    throw InvalidInput("element " + element_to_string(e) + " is not an element of " +
                       g.describe());
  return std::visit(ToJson{&e, &g}, g.kind());
}

inline Element element_from_json(const GroupBackend& g, const Json& j) {
  struct FromJson {
    const Json* j;
    const GroupBackend* g;
    Element operator()(const CyclicGroup&) const { return Element{as_int()}; }
    Element operator()(const CayleyGroup&) const { return Element{as_int()}; }
    Element operator()(const SymmetricGroup&) const {
      if (!j->is_array()) throw InvalidInput("symmetric element must be an image array");
      Element::Perm p;
      for (const Json& v : *j) p.push_back(v.get<int>());
      return Element{std::move(p)};
    }
    Element operator()(const ProductGroup& pg) const {
      if (!j->is_array() || j->size() != pg.factors.size())
        throw InvalidInput("product element must be a tuple of " +
                           std::to_string(pg.factors.size()) + " components");
      Element::Tuple t;
      for (std::size_t i = 0; i < pg.factors.size(); ++i)
        t.push_back(element_from_json(pg.factors[i], (*j)[i]));
      return Element{std::move(t)};
    }
    Element operator()(const FgAbelianGroup& a) const {
      // A bare integer is accepted for one-dimensional groups.
      if (j->is_number_integer() && a.free_rank + static_cast<int>(a.torsion.size()) == 1)
        return Element{Element::Vec{j->get<std::int64_t>()}};
      if (!j->is_array()) throw InvalidInput("fg-abelian element must be a coordinate array");
      Element::Vec v;
      for (const Json& c : *j) {
        if (!c.is_number_integer()) throw InvalidInput("coordinates must be integers");
        v.push_back(c.get<std::int64_t>());
      }
      return Element{std::move(v)};
    }
    Element operator()(const FreeGroup& f) const {
      if (!j->is_string()) throw InvalidInput("free-group element must be a word string");
      return Element{parse_word(j->get<std::string>(), Alphabet{f.rank})};
    }
    std::int64_t as_int() const {
      if (!j->is_number_integer()) throw InvalidInput("element must be an integer");
      return j->get<std::int64_t>();
    }
  };
  Element e = std::visit(FromJson{&j, &g}, g.kind());
  if (!g.contains(e))
    throw InvalidInput("element " + j.dump() + " is not an element of " + g.describe());
  return e;
}

// --- tables ------------------------------------------------------------------

inline Json table_to_json(const PartialGroupTable& t) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "table";
  j["size"] = t.size;
  j["labels"] = t.labels;
  if (t.identity_index.has_value())
    j["identity"] = *t.identity_index;
  else
    j["identity"] = nullptr;
  Json triples = Json::array();
  for (const auto& [a, b, c] : t.triples) triples.push_back(Json::array({a, b, c}));
  j["triples"] = std::move(triples);
  return j;
}

inline PartialGroupTable table_from_json(const Json& j) {
  detail::check_envelope(j, "table", "table");
  PartialGroupTable t;
  t.size = static_cast<int>(detail::require_int(j, "size", "table"));
  if (auto it = j.find("labels"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw InvalidInput("table 'labels' must be an array");
    for (const Json& l : *it) {
      if (!l.is_string()) throw InvalidInput("table labels must be strings");
      t.labels.push_back(l.get<std::string>());
    }
  }
  if (auto it = j.find("identity"); it != j.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw InvalidInput("table 'identity' must be an integer or null");
    t.identity_index = it->get<int>();
  }
  const Json& triples = detail::require_field(j, "triples", "table");
  if (!triples.is_array()) throw InvalidInput("table 'triples' must be an array");
  for (const Json& triple : triples) {
    if (!triple.is_array() || triple.size() != 3)
      throw InvalidInput("each triple must be a [i,j,k] array");
    t.triples.push_back({triple[0].get<int>(), triple[1].get<int>(), triple[2].get<int>()});
  }
  return validate_table(std::move(t));
}

// --- assignments and witnesses -------------------------------------------------

inline Json assignment_to_json(const GroupBackend& target, const Assignment& a) {
  Json images = Json::array();
  for (const Element& e : a.images) images.push_back(element_to_json(target, e));
  return Json{{"target", backend_to_json(target)}, {"images", std::move(images)}};
}

inline Json witness_to_json(const EmbeddingWitness& w) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "witness";
  j["target"] = backend_to_json(w.target);
  Json images = Json::array();
  for (const Element& e : w.assignment.images) images.push_back(element_to_json(w.target, e));
  j["images"] = std::move(images);
  j["verified"] = w.verified;
  j["nodes"] = w.nodes;
  if (w.construction == "abelian-mod-m") j["construction"] = w.construction;
  return j;
}

inline EmbeddingWitness witness_from_json(const Json& j) {
  detail::check_envelope(j, "witness", "witness");
  EmbeddingWitness w{backend_from_json(detail::require_field(j, "target", "witness")),
                     {}, false, 0, "search"};
  const Json& images = detail::require_field(j, "images", "witness");
  if (!images.is_array()) throw InvalidInput("witness 'images' must be an array");
  for (const Json& e : images) w.assignment.images.push_back(element_from_json(w.target, e));
  if (auto it = j.find("verified"); it != j.end()) w.verified = it->get<bool>();
  if (auto it = j.find("nodes"); it != j.end()) w.nodes = it->get<std::uint64_t>();
  if (auto it = j.find("construction"); it != j.end()) w.construction = it->get<std::string>();
  return w;
}

// --- budgets and certificates ---------------------------------------------------

inline Json budget_to_json(const SearchBudget& b) {
  return Json{{"max_cyclic_m", b.max_cyclic_m},
              {"max_symmetric_n", b.max_symmetric_n},
              {"node_limit", b.node_limit},
              {"time_limit_ms", b.time_limit.count()}};
}

inline SearchBudget budget_from_json(const Json& j) {
  SearchBudget b;
  if (auto it = j.find("max_cyclic_m"); it != j.end()) b.max_cyclic_m = it->get<std::int64_t>();
  if (auto it = j.find("max_symmetric_n"); it != j.end()) b.max_symmetric_n = it->get<int>();
  if (auto it = j.find("node_limit"); it != j.end()) b.node_limit = it->get<std::uint64_t>();
  if (auto it = j.find("time_limit_ms"); it != j.end())
    b.time_limit = std::chrono::milliseconds(it->get<std::int64_t>());
  validate_budget(b);
  return b;
}

inline Json certificate_to_json(const ExhaustionCertificate& c) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "certificate";
  j["outcome"] = c.outcome;
  j["table_digest"] = c.table_digest;
  j["family"] = c.family;
  Json targets = Json::array();
  for (const auto& t : c.targets) targets.push_back(backend_to_json(t));
  j["targets"] = std::move(targets);
  j["nodes_per_target"] = c.nodes_per_target;
  j["budget"] = budget_to_json(c.budget);
  return j;
}

inline ExhaustionCertificate certificate_from_json(const Json& j) {
  detail::check_envelope(j, "certificate", "certificate");
  ExhaustionCertificate c;
  c.outcome = detail::require_field(j, "outcome", "certificate").get<std::string>();
  c.table_digest = detail::require_field(j, "table_digest", "certificate").get<std::string>();
  c.family = detail::require_field(j, "family", "certificate").get<std::string>();
  for (const Json& t : detail::require_field(j, "targets", "certificate"))
    c.targets.push_back(backend_from_json(t));
  for (const Json& n : detail::require_field(j, "nodes_per_target", "certificate"))
    c.nodes_per_target.push_back(n.get<std::uint64_t>());
  c.budget = budget_from_json(detail::require_field(j, "budget", "certificate"));
  return c;
}

// --- reports -------------------------------------------------------------------

inline Json report_to_json(const VerificationReport& r) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "report";
  j["is_partial_hom"] = r.is_partial_hom;
  j["is_injective"] = r.is_injective;
  j["is_local_embedding"] = r.is_local_embedding();
  Json violations = Json::array();
  for (const auto& [a, b, c] : r.violations) violations.push_back(Json::array({a, b, c}));
  j["violations"] = std::move(violations);
  Json collisions = Json::array();
  for (const auto& [a, b] : r.collisions) collisions.push_back(Json::array({a, b}));
  j["collisions"] = std::move(collisions);
  return j;
}

inline Json ball_image_to_json(const GroupBackend& target, const BallImageReport& r) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "ball-image";
  j["radius"] = r.radius;
  j["total_words"] = r.total_words;
  j["distinct_images"] = r.distinct_images;
  j["nontrivial_classes"] = r.nontrivial_classes();
  j["relators_vanish"] = r.relators_vanish;
  Json classes = Json::array();
  for (const auto& [image, words] : r.classes) {
    Json cls;
    cls["image"] = element_to_json(target, image);
    Json ws = Json::array();
    for (const ReducedWord& w : words) ws.push_back(to_string(w));
    cls["words"] = std::move(ws);
    classes.push_back(std::move(cls));
  }
  j["classes"] = std::move(classes);
  return j;
}

// --- presentations ---------------------------------------------------------------

inline Json presentation_to_json(const Presentation& p) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "presentation";
  j["rank"] = p.alphabet.rank;
  Json relators = Json::array();
  for (const auto& r : p.relators) relators.push_back(to_string(r));
  j["relators"] = std::move(relators);
  return j;
}

inline Presentation presentation_from_json(const Json& j) {
  detail::check_envelope(j, "presentation", "presentation");
  Alphabet a = make_alphabet(static_cast<int>(detail::require_int(j, "rank", "presentation")));
  std::vector<ReducedWord> relators;
  if (auto it = j.find("relators"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw InvalidInput("presentation 'relators' must be an array");
    for (const Json& r : *it) {
      if (!r.is_string()) throw InvalidInput("relators must be word strings");
      relators.push_back(parse_word(r.get<std::string>(), a));
    }
  }
  return make_presentation(a, std::move(relators));
}

// --- balls ------------------------------------------------------------------------

inline Json ball_to_json(const Ball& b, bool count_only) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "ball";
  j["rank"] = b.alphabet.rank;
  j["radius"] = b.radius;
  j["count"] = b.members.size();
  if (!count_only) {
    Json words = Json::array();
    for (const ReducedWord& w : b.members) words.push_back(to_string(w));
    j["words"] = std::move(words);
  }
  return j;
}

// --- quotient results ---------------------------------------------------------------

inline Json quotient_to_json(const Presentation& p, const QuotientSearchResult& q) {
  Json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "quotient";
  j["outcome"] = q.found ? "found" : "no-quotient-found";
  j["complete"] = q.complete;
  j["presentation"] = presentation_to_json(p);
  if (q.found) {
    j["target"] = backend_to_json(q.best->target);
    Json images = Json::array();
    for (const Element& e : q.best->images)
      images.push_back(element_to_json(q.best->target, e));
    j["images"] = std::move(images);
    j["report"] = ball_image_to_json(q.best->target, *q.report);
  }
  return j;
}

} // namespace lefkit
