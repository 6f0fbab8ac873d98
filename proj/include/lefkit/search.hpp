#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lefkit/errors.hpp"
#include "lefkit/groups.hpp"
#include "lefkit/partial.hpp"

namespace lefkit {

struct SearchBudget {
  std::int64_t max_cyclic_m = 16;
  int max_symmetric_n = 5;
  std::uint64_t node_limit = 1'000'000;
  std::chrono::milliseconds time_limit{600'000};
};

inline void validate_budget(const SearchBudget& b) {
  if (b.max_cyclic_m < 1 || b.max_symmetric_n < 1 || b.node_limit < 1 ||
      b.time_limit.count() < 1)
    throw InvalidInput("search budget fields must all be positive");
}

struct EmbeddingWitness {
  GroupBackend target;
  Assignment assignment;
  bool verified = false;
  std::uint64_t nodes = 0;
  std::string construction = "search";
};

enum class SearchStatus { Witness, Exhausted, BudgetExceeded };

struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<EmbeddingWitness> witness;
  std::uint64_t nodes = 0;
};

/// Proof-of-search record: which targets were tried, in order, and how many
/// branch nodes each one cost. `outcome` is "exhausted" only when every
/// target search ran to completion; a sweep that hit a budget reports
/// "budget-exceeded" and claims nothing about existence.
struct ExhaustionCertificate {
  std::string table_digest;
  std::string family;  // "cyclic" or "symmetric"
  std::vector<GroupBackend> targets;
  std::vector<std::uint64_t> nodes_per_target;
  std::string outcome;  // "exhausted" | "budget-exceeded"
  SearchBudget budget;
};

using SweepResult = std::variant<EmbeddingWitness, ExhaustionCertificate>;

/// FNV-1a over the combinatorial content (size, identity, triples). Labels
/// are provenance and excluded.
inline std::string table_digest(const PartialGroupTable& t) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::int64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>(v >> (8 * b)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  mix(t.size);
  mix(t.identity_index.value_or(-1));
  for (const auto& [i, j, k] : t.triples) {
    mix(i);
    mix(j);
    mix(k);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

namespace detail {

class EmbeddingSearcher {
public:
  EmbeddingSearcher(const PartialGroupTable& table, const GroupBackend& target,
                    const SearchBudget& budget)
      : table_(table), target_(target), budget_(budget), start_(Clock::now()) {
    elements_ = target.elements();  // NotEnumerable propagates as invalid input
    for (std::size_t i = 0; i < elements_.size(); ++i)
      index_.emplace(elements_[i], static_cast<int>(i));
    images_.assign(static_cast<std::size_t>(table.size), -1);
    used_.assign(elements_.size(), false);
    // Triples indexed by every variable they touch, so a fresh assignment
    // wakes exactly the constraints that mention it.
    watching_.assign(static_cast<std::size_t>(table.size), {});
    for (std::size_t t = 0; t < table.triples.size(); ++t) {
      const auto& [i, j, k] = table.triples[t];
      for (int v : {i, j, k}) {
        auto& w = watching_[static_cast<std::size_t>(v)];
        if (w.empty() || w.back() != t) w.push_back(t);
      }
    }
  }

  SearchResult run() {
    SearchResult result;
    if (elements_.size() < static_cast<std::size_t>(table_.size)) {
      result.status = SearchStatus::Exhausted;  // pigeonhole, zero nodes
      return result;
    }
    std::vector<int> trail;
    if (table_.identity_index.has_value()) {
      int e = index_.at(target_.identity());
      if (!assign(*table_.identity_index, e, trail)) {
        undo(trail);
        result.status = SearchStatus::Exhausted;
        return result;
      }
    }
    Outcome o = backtrack();
    result.nodes = nodes_;
    switch (o) {
      case Outcome::Found: {
        Assignment a;
        a.images.reserve(images_.size());
        for (int idx : images_) a.images.push_back(elements_[static_cast<std::size_t>(idx)]);
        auto report = verify_local_embedding(table_, target_, a);
        if (!report.is_local_embedding())
          throw std::logic_error("search produced an assignment that fails re-verification");
        result.status = SearchStatus::Witness;
        result.witness = EmbeddingWitness{target_, std::move(a), true, nodes_, "search"};
        break;
      }
      case Outcome::Exhausted:
        result.status = SearchStatus::Exhausted;
        break;
      case Outcome::Budget:
        result.status = SearchStatus::BudgetExceeded;
        break;
    }
    return result;
  }

private:
  using Clock = std::chrono::steady_clock;
  enum class Outcome { Found, Exhausted, Budget };

  Outcome backtrack() {
    int var = -1;
    for (int v = 0; v < table_.size; ++v)
      if (images_[static_cast<std::size_t>(v)] < 0) {
        var = v;
        break;
      }
    if (var < 0) return Outcome::Found;
    for (int val = 0; val < static_cast<int>(elements_.size()); ++val) {
      if (used_[static_cast<std::size_t>(val)]) continue;
      if (++nodes_ > budget_.node_limit) return Outcome::Budget;
      if ((nodes_ & 0xfff) == 0 && Clock::now() - start_ > budget_.time_limit)
        return Outcome::Budget;
      std::vector<int> trail;
      if (assign(var, val, trail)) {
        Outcome o = backtrack();
        if (o != Outcome::Exhausted) return o;
      }
      undo(trail);
    }
    return Outcome::Exhausted;
  }

  // Assigns var := val and propagates forced triple images transitively.
  // Returns false on contradiction (product mismatch or injectivity clash);
  // the trail records every variable set, for undo.
  bool assign(int var, int val, std::vector<int>& trail) {
    images_[static_cast<std::size_t>(var)] = val;
    used_[static_cast<std::size_t>(val)] = true;
    trail.push_back(var);
    for (std::size_t q = trail.size() - 1; q < trail.size(); ++q) {
      int u = trail[q];
      for (std::size_t t : watching_[static_cast<std::size_t>(u)]) {
        const auto& [i, j, k] = table_.triples[t];
        int fi = images_[static_cast<std::size_t>(i)];
        int fj = images_[static_cast<std::size_t>(j)];
        if (fi < 0 || fj < 0) continue;
        int prod = product_index(fi, fj);
        int fk = images_[static_cast<std::size_t>(k)];
        if (fk >= 0) {
          if (fk != prod) return false;
        } else {
          if (used_[static_cast<std::size_t>(prod)]) return false;
          images_[static_cast<std::size_t>(k)] = prod;
          used_[static_cast<std::size_t>(prod)] = true;
          trail.push_back(k);
        }
      }
    }
    return true;
  }

  void undo(std::vector<int>& trail) {
    for (auto it = trail.rbegin(); it != trail.rend(); ++it) {
      used_[static_cast<std::size_t>(images_[static_cast<std::size_t>(*it)])] = false;
      images_[static_cast<std::size_t>(*it)] = -1;
    }
    trail.clear();
  }

  int product_index(int a, int b) {
    auto key = std::make_pair(a, b);
    if (auto it = product_cache_.find(key); it != product_cache_.end()) return it->second;
    Element p = target_.multiply(elements_[static_cast<std::size_t>(a)],
                                 elements_[static_cast<std::size_t>(b)]);
    int idx = index_.at(p);
    product_cache_.emplace(key, idx);
    return idx;
  }

  const PartialGroupTable& table_;
  const GroupBackend& target_;
  SearchBudget budget_;
  Clock::time_point start_;
  std::vector<Element> elements_;
  std::map<Element, int, ElementLess> index_;
  std::map<std::pair<int, int>, int> product_cache_;
  std::vector<int> images_;
  std::vector<bool> used_;
  std::vector<std::vector<std::size_t>> watching_;
  std::uint64_t nodes_ = 0;
};

} // namespace detail

/// Complete backtracking search for a local embedding of `table` into one
/// finite target. Variables are tried in table-index order, values in the
/// target's canonical element order; a recorded triple whose two inputs are
/// assigned forces the output image, and injectivity is maintained
/// incrementally. Witnesses are re-verified before being returned.
inline SearchResult search_embedding(const PartialGroupTable& table, const GroupBackend& target,
                                     const SearchBudget& budget = {}) {
  validate_budget(budget);
  if (!target.is_finite())
    throw InvalidInput("search target must be a finite backend, got " + target.describe());
  return detail::EmbeddingSearcher(table, target, budget).run();
}

namespace detail {

template <typename MakeTarget>
SweepResult sweep_family(const PartialGroupTable& table, const SearchBudget& budget,
                         const std::string& family, std::int64_t max_param,
                         MakeTarget make_target) {
  validate_budget(budget);
  ExhaustionCertificate cert;
  cert.table_digest = table_digest(table);
  cert.family = family;
  cert.budget = budget;
  cert.outcome = "exhausted";
  for (std::int64_t p = 1; p <= max_param; ++p) {
    GroupBackend target = make_target(p);
    SearchResult r = search_embedding(table, target, budget);
    cert.targets.push_back(target);
    cert.nodes_per_target.push_back(r.nodes);
    if (r.status == SearchStatus::Witness) return std::move(*r.witness);
    if (r.status == SearchStatus::BudgetExceeded) {
      // Continuing could return a non-minimal witness, so stop honestly.
      cert.outcome = "budget-exceeded";
      return cert;
    }
  }
  return cert;
}

} // namespace detail

/// Tries cyclic targets m = 1, 2, ... in order; the returned witness has the
/// minimal m admitting a local embedding.
inline SweepResult sweep_cyclic(const PartialGroupTable& table, const SearchBudget& budget = {}) {
  return detail::sweep_family(table, budget, "cyclic", budget.max_cyclic_m,
                              [](std::int64_t m) { return cyclic(m); });
}

/// Tries symmetric targets n = 1, 2, ... in order; minimal-n witness.
inline SweepResult sweep_symmetric(const PartialGroupTable& table,
                                   const SearchBudget& budget = {}) {
  return detail::sweep_family(table, budget, "symmetric", budget.max_symmetric_n,
                              [&budget](std::int64_t n) {
                                return symmetric(static_cast<int>(n),
                                                 std::max(budget.max_symmetric_n,
                                                          kDefaultSymmetricCap));
                              });
}

inline constexpr double kBruteOracleGuard = 1e7;

/// Testing oracle: enumerates every injective assignment in canonical order
/// (no pruning beyond injectivity) and returns the first that verifies.
/// Deliberately independent of the backtracking engine.
inline SearchResult brute_oracle(const PartialGroupTable& table, const GroupBackend& target) {
  if (!target.is_finite())
    throw InvalidInput("oracle target must be a finite backend, got " + target.describe());
  auto elements = target.elements();
  double space = 1;
  for (int i = 0; i < table.size; ++i) space *= static_cast<double>(elements.size());
  if (space > kBruteOracleGuard)
    throw ResourceLimit("oracle space |target|^n exceeds the guard of 1e7");
  SearchResult result;
  const int n = table.size;
  std::vector<int> pick(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(elements.size(), false);
  std::uint64_t tried = 0;
  auto recurse = [&](auto&& self, int depth) -> bool {
    if (depth == n) {
      ++tried;
      Assignment a;
      a.images.reserve(static_cast<std::size_t>(n));
      for (int idx : pick) a.images.push_back(elements[static_cast<std::size_t>(idx)]);
      if (verify_local_embedding(table, target, a).is_local_embedding()) {
        result.witness = EmbeddingWitness{target, std::move(a), true, tried, "oracle"};
        return true;
      }
      return false;
    }
    for (int val = 0; val < static_cast<int>(elements.size()); ++val) {
      if (used[static_cast<std::size_t>(val)]) continue;
      used[static_cast<std::size_t>(val)] = true;
      pick[static_cast<std::size_t>(depth)] = val;
      if (self(self, depth + 1)) return true;
      used[static_cast<std::size_t>(val)] = false;
    }
    return false;
  };
  result.status = recurse(recurse, 0) ? SearchStatus::Witness : SearchStatus::Exhausted;
  result.nodes = tried;
  return result;
}

} // namespace lefkit
