#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lefkit/errors.hpp"
#include "lefkit/groups.hpp"
#include "lefkit/partial.hpp"
#include "lefkit/search.hpp"

namespace lefkit {

/// Coordinate-wise max minus min over the free coordinates of a subset.
struct SpreadProfile {
  std::vector<std::int64_t> spread;
};

inline SpreadProfile spread(const std::vector<std::vector<std::int64_t>>& points) {
  if (points.empty()) throw InvalidInput("spread of an empty subset is undefined");
  const std::size_t dim = points.front().size();
  for (const auto& p : points)
    if (p.size() != dim)
      throw InvalidInput("subset members have mixed dimensions");
  SpreadProfile s;
  s.spread.reserve(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::int64_t lo = points.front()[c], hi = lo;
    for (const auto& p : points) {
      lo = std::min(lo, p[c]);
      hi = std::max(hi, p[c]);
    }
    s.spread.push_back(hi - lo);
  }
  return s;
}

/// A constructively built embedding: the ambient backend the subset lives in,
/// the table it induces, and the verified mod-m witness.
struct AbelianWitness {
  GroupBackend ambient;
  PartialGroupTable table;
  EmbeddingWitness witness;
};

namespace detail {

inline std::int64_t canonical_residue(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline void check_distinct(const std::vector<std::vector<std::int64_t>>& points) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j])
        throw InvalidInput("subset members must be distinct");
}

inline AbelianWitness finish(GroupBackend ambient, std::vector<Element> subset,
                             GroupBackend target, Assignment assignment) {
  AbelianWitness w{std::move(ambient), {}, EmbeddingWitness{std::move(target), {}, false, 0,
                                                            "abelian-mod-m"}};
  w.table = extract_table(w.ambient, subset);
  auto report = verify_local_embedding(w.table, w.witness.target, assignment);
  if (!report.is_local_embedding())
    throw std::logic_error("mod-m construction failed verification");
  w.witness.assignment = std::move(assignment);
  w.witness.verified = true;
  return w;
}

} // namespace detail

/// The mod-m embedding of a finite subset of Z: m = spread + 1, each member
/// mapped to its canonical residue. Always verifies; m is the least modulus
/// the spread bound permits.
inline AbelianWitness cyclic_witness(const std::vector<std::int64_t>& subset) {
  if (subset.empty()) throw InvalidInput("subset must be nonempty");
  std::vector<std::vector<std::int64_t>> points;
  points.reserve(subset.size());
  for (std::int64_t a : subset) points.push_back({a});
  detail::check_distinct(points);
  std::int64_t m = spread(points).spread.front() + 1;
  Assignment f;
  f.images.reserve(subset.size());
  for (std::int64_t a : subset) f.images.push_back(Element{detail::canonical_residue(a, m)});
  std::vector<Element> elems;
  elems.reserve(subset.size());
  for (std::int64_t a : subset) elems.push_back(Element{Element::Vec{a}});
  return detail::finish(lattice(1), std::move(elems), cyclic(m), std::move(f));
}

/// Componentwise mod-m embedding of a finite subset of Z^k into a product of
/// cyclic groups, one factor per coordinate.
inline AbelianWitness lattice_witness(const std::vector<std::vector<std::int64_t>>& subset) {
  if (subset.empty()) throw InvalidInput("subset must be nonempty");
  const std::size_t k = subset.front().size();
  if (k < 1) throw InvalidInput("lattice subset members must have dimension >= 1");
  detail::check_distinct(subset);
  SpreadProfile s = spread(subset);
  std::vector<GroupBackend> factors;
  factors.reserve(k);
  for (std::int64_t d : s.spread) factors.push_back(cyclic(d + 1));
  Assignment f;
  f.images.reserve(subset.size());
  std::vector<Element> elems;
  elems.reserve(subset.size());
  for (const auto& p : subset) {
    Element::Tuple t;
    t.reserve(k);
    for (std::size_t c = 0; c < k; ++c)
      t.push_back(Element{detail::canonical_residue(p[c], s.spread[c] + 1)});
    f.images.push_back(Element{std::move(t)});
    elems.push_back(Element{Element::Vec(p)});
  }
  return detail::finish(lattice(static_cast<int>(k)), std::move(elems),
                        product_of(std::move(factors)), std::move(f));
}

/// Structure-theorem form: free coordinates reduced mod (spread + 1),
/// torsion coordinates passed through into their own cyclic factors.
/// The ambient must already be in fg-abelian coordinates.
inline AbelianWitness fg_abelian_witness(const GroupBackend& ambient,
                                         const std::vector<Element>& subset) {
  const auto* g = std::get_if<FgAbelianGroup>(&ambient.kind());
  if (!g) throw InvalidInput("ambient backend must be fg-abelian, got " + ambient.describe());
  if (subset.empty()) throw InvalidInput("subset must be nonempty");
  const std::size_t r = static_cast<std::size_t>(g->free_rank);
  std::vector<std::vector<std::int64_t>> points;
  points.reserve(subset.size());
  for (const Element& e : subset) {
    if (!ambient.contains(e))
      throw InvalidInput("subset member " + element_to_string(e) + " is not an element of " +
                         ambient.describe());
    points.push_back(std::get<Element::Vec>(e.payload));
  }
  detail::check_distinct(points);
  std::vector<std::int64_t> moduli;
  moduli.reserve(r + g->torsion.size());
  if (r > 0) {
    std::vector<std::vector<std::int64_t>> free_part;
    free_part.reserve(points.size());
    for (const auto& p : points)
      free_part.emplace_back(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(r));
    for (std::int64_t d : spread(free_part).spread) moduli.push_back(d + 1);
  }
  for (std::int64_t d : g->torsion) moduli.push_back(d);
  std::vector<GroupBackend> factors;
  factors.reserve(moduli.size());
  for (std::int64_t m : moduli) factors.push_back(cyclic(m));
  Assignment f;
  f.images.reserve(points.size());
  for (const auto& p : points) {
    Element::Tuple t;
    t.reserve(moduli.size());
    for (std::size_t c = 0; c < moduli.size(); ++c)
      t.push_back(Element{detail::canonical_residue(p[c], moduli[c])});
    f.images.push_back(Element{std::move(t)});
  }
  return detail::finish(ambient, subset, product_of(std::move(factors)), std::move(f));
}

} // namespace lefkit
