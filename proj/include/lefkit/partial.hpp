#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lefkit/errors.hpp"
#include "lefkit/groups.hpp"

namespace lefkit {

/// The recorded multiplication fragment of a finite subset A = {a_0..a_{n-1}}:
/// a triple (i,j,k) means a_i * a_j = a_k with all three in A. Labels carry
/// provenance only; verification depends on the combinatorial table alone.
struct PartialGroupTable {
  int size = 0;
  std::vector<std::string> labels;
  std::optional<int> identity_index;
  std::vector<std::array<int, 3>> triples;  // sorted, at most one k per (i,j)
};

/// Checks the table invariants; returns the normalized table (triples sorted
/// and deduplicated, default labels filled in).
inline PartialGroupTable validate_table(PartialGroupTable t) {
  if (t.size < 1) throw InvalidInput("table size must be >= 1");
  if (t.labels.empty()) {
    t.labels.reserve(static_cast<std::size_t>(t.size));
    for (int i = 0; i < t.size; ++i) t.labels.push_back("a" + std::to_string(i));
  }
  if (static_cast<int>(t.labels.size()) != t.size)
    throw InvalidInput("expected " + std::to_string(t.size) + " labels, got " +
                       std::to_string(t.labels.size()));
  {
    auto sorted = t.labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("duplicate labels in table");
  }
  std::sort(t.triples.begin(), t.triples.end());
  t.triples.erase(std::unique(t.triples.begin(), t.triples.end()), t.triples.end());
  for (std::size_t i = 0; i < t.triples.size(); ++i) {
    const auto& [a, b, c] = t.triples[i];
    if (a < 0 || a >= t.size || b < 0 || b >= t.size || c < 0 || c >= t.size)
      throw InvalidInput("triple index out of range in (" + std::to_string(a) + "," +
                         std::to_string(b) + "," + std::to_string(c) + ")");
    if (i > 0 && t.triples[i - 1][0] == a && t.triples[i - 1][1] == b)
      throw InvalidInput("conflicting products recorded for pair (" + std::to_string(a) + "," +
                         std::to_string(b) + ")");
  }
  if (t.identity_index.has_value()) {
    int e = *t.identity_index;
    if (e < 0 || e >= t.size) throw InvalidInput("identity index out of range");
    if (!std::binary_search(t.triples.begin(), t.triples.end(), std::array<int, 3>{e, e, e}))
      throw InvalidInput("identity index " + std::to_string(e) +
                         " requires the triple (e,e,e) to be recorded");
  }
  return t;
}

/// Records every product of subset members that lands back in the subset.
inline PartialGroupTable extract_table(const GroupBackend& backend,
                                       std::span<const Element> subset) {
  if (subset.empty()) throw InvalidInput("subset must be nonempty");
  const int n = static_cast<int>(subset.size());
  for (int i = 0; i < n; ++i) {
    if (!backend.contains(subset[static_cast<std::size_t>(i)]))
      throw InvalidInput("subset member " +
                         element_to_string(subset[static_cast<std::size_t>(i)]) +
                         " is not an element of " + backend.describe());
    for (int j = i + 1; j < n; ++j)
      if (subset[static_cast<std::size_t>(i)] == subset[static_cast<std::size_t>(j)])
        throw InvalidInput("duplicate subset members at positions " + std::to_string(i) + " and " +
                           std::to_string(j));
  }
  PartialGroupTable t;
  t.size = n;
  t.labels.reserve(static_cast<std::size_t>(n));
  for (const Element& e : subset) t.labels.push_back(element_to_string(e));
  Element identity = backend.identity();
  for (int i = 0; i < n; ++i)
    if (subset[static_cast<std::size_t>(i)] == identity) {
      t.identity_index = i;
      break;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Element p = backend.multiply(subset[static_cast<std::size_t>(i)],
                                   subset[static_cast<std::size_t>(j)]);
      for (int k = 0; k < n; ++k)
        if (p == subset[static_cast<std::size_t>(k)]) {
          t.triples.push_back({i, j, k});
          break;
        }
    }
  std::sort(t.triples.begin(), t.triples.end());
  return t;
}

/// An image vector f: indices 0..n-1 into a fixed target backend.
struct Assignment {
  std::vector<Element> images;
};

struct VerificationReport {
  bool is_partial_hom = false;
  bool is_injective = false;
  std::vector<std::array<int, 3>> violations;   // recorded triples that fail
  std::vector<std::array<int, 2>> collisions;   // pairs i < i' with equal images

  bool is_local_embedding() const { return is_partial_hom && is_injective; }
};

/// Checks f(a_i) f(a_j) = f(a_k) on every recorded triple and lists every
/// image collision. Read-only; the report is exact.
inline VerificationReport verify_partial_hom(const PartialGroupTable& table,
                                             const GroupBackend& target, const Assignment& f) {
  if (static_cast<int>(f.images.size()) != table.size)
    throw InvalidInput("assignment has " + std::to_string(f.images.size()) + " images, table has " +
                       std::to_string(table.size) + " members");
  for (const Element& e : f.images)
    if (!target.contains(e))
      throw InvalidInput("image " + element_to_string(e) + " is not an element of " +
                         target.describe());
  VerificationReport r;
  for (const auto& [i, j, k] : table.triples) {
    Element p = target.multiply(f.images[static_cast<std::size_t>(i)],
                                f.images[static_cast<std::size_t>(j)]);
    if (!(p == f.images[static_cast<std::size_t>(k)])) r.violations.push_back({i, j, k});
  }
  for (int i = 0; i < table.size; ++i)
    for (int j = i + 1; j < table.size; ++j)
      if (f.images[static_cast<std::size_t>(i)] == f.images[static_cast<std::size_t>(j)])
        r.collisions.push_back({i, j});
  r.is_partial_hom = r.violations.empty();
  r.is_injective = r.collisions.empty();
  return r;
}

/// Same check; success means both flags hold (a one-to-one partial
/// homomorphism).
inline VerificationReport verify_local_embedding(const PartialGroupTable& table,
                                                 const GroupBackend& target, const Assignment& f) {
  return verify_partial_hom(table, target, f);
}

} // namespace lefkit
