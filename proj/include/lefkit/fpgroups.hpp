#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lefkit/errors.hpp"
#include "lefkit/groups.hpp"
#include "lefkit/search.hpp"
#include "lefkit/words.hpp"

namespace lefkit {

/// A finite presentation <X;R>: the quotient of the free group on `alphabet`
/// by the normal closure of `relators`. The normal closure itself is held
/// symbolically; nothing here decides the word problem.
struct Presentation {
  Alphabet alphabet;
  std::vector<ReducedWord> relators;
};

inline Presentation make_presentation(Alphabet a, std::vector<ReducedWord> relators) {
  for (const auto& r : relators)
    if (r.rank() != a.rank)
      throw InvalidInput("relator '" + to_string(r) + "' is not over the presentation alphabet");
  return Presentation{a, std::move(relators)};
}

/// Identity relators are legal but carry no information.
inline std::vector<int> redundant_relators(const Presentation& p) {
  std::vector<int> out;
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    if (p.relators[i].is_identity()) out.push_back(static_cast<int>(i));
  return out;
}

/// Generator images in a finite target; determines the unique homomorphism
/// from the free group extending x_i -> images[i].
struct GeneratorImages {
  GroupBackend target;
  std::vector<Element> images;
};

inline GeneratorImages make_generator_images(GroupBackend target, std::vector<Element> images,
                                             Alphabet a) {
  if (static_cast<int>(images.size()) != a.rank)
    throw InvalidInput("expected " + std::to_string(a.rank) + " generator images, got " +
                       std::to_string(images.size()));
  for (const Element& e : images)
    if (!target.contains(e))
      throw InvalidInput("generator image " + element_to_string(e) + " is not an element of " +
                         target.describe());
  return GeneratorImages{std::move(target), std::move(images)};
}

/// Evaluates the induced homomorphism on a word: the signed product of the
/// generator images, left to right.
inline Element induced_hom_eval(const GeneratorImages& gi, const ReducedWord& w) {
  if (w.rank() != static_cast<int>(gi.images.size()))
    throw InvalidInput("word rank " + std::to_string(w.rank()) + " does not match the " +
                       std::to_string(gi.images.size()) + " generator images");
  Element acc = gi.target.identity();
  for (Letter l : w.letters()) {
    const Element& img = gi.images[static_cast<std::size_t>(l.symbol)];
    acc = gi.target.multiply(acc, l.sign > 0 ? img : gi.target.inverse(img));
  }
  return acc;
}

struct RelatorCheck {
  bool all_vanish = true;
  std::optional<int> first_failing;  // index into relators
};

/// True iff every relator evaluates to the target identity, i.e. the images
/// factor through the presented group.
inline RelatorCheck check_relators(const Presentation& p, const GeneratorImages& gi) {
  Element id = gi.target.identity();
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    if (!(induced_hom_eval(gi, p.relators[i]) == id))
      return RelatorCheck{false, static_cast<int>(i)};
  return RelatorCheck{true, std::nullopt};
}

/// Image classes of the free ball B_L under the induced homomorphism.
/// Collisions are measured on the free ball; which ball words coincide in
/// the presented group is the word problem and is not decided here.
struct BallImageReport {
  int radius = 0;
  std::uint64_t total_words = 0;
  std::uint64_t distinct_images = 0;
  bool relators_vanish = false;
  // One entry per image, in order of first occurrence over the shortlex ball;
  // class members keep shortlex order. Singleton classes are included, so
  // class sizes sum to total_words.
  std::vector<std::pair<Element, std::vector<ReducedWord>>> classes;

  std::uint64_t nontrivial_classes() const {
    std::uint64_t c = 0;
    for (const auto& cls : classes)
      if (cls.second.size() > 1) ++c;
    return c;
  }
};

inline BallImageReport ball_image(const Presentation& p, const GeneratorImages& gi, int radius,
                                  int cap = kDefaultBallCap) {
  Ball b = ball(p.alphabet, radius, cap);
  BallImageReport report;
  report.radius = radius;
  report.total_words = b.members.size();
  report.relators_vanish = check_relators(p, gi).all_vanish;
  std::map<Element, std::size_t, ElementLess> class_of;
  for (const ReducedWord& w : b.members) {
    Element img = induced_hom_eval(gi, w);
    auto [it, inserted] = class_of.try_emplace(img, report.classes.size());
    if (inserted) report.classes.push_back({std::move(img), {}});
    report.classes[it->second].second.push_back(w);
  }
  report.distinct_images = report.classes.size();
  return report;
}

/// The least radius containing every generator and relator.
inline int min_radius(const Presentation& p) {
  int radius = 1;  // generators have length 1
  for (const auto& r : p.relators) radius = std::max(radius, r.length());
  return radius;
}

enum class TargetFamily { Cyclic, Symmetric };

struct QuotientSearchResult {
  bool found = false;
  bool complete = true;  // false when a budget truncated the enumeration
  std::optional<GeneratorImages> best;
  std::optional<BallImageReport> report;
  std::uint64_t candidates = 0;  // relator-vanishing image tuples inspected
};

/// Sweeps generator-image tuples over the cyclic then symmetric families in
/// canonical order, keeps those killing every relator, and returns one
/// minimizing the number of nontrivial collision classes on the free ball
/// B_radius (ties broken by enumeration order). A candidate with zero
/// nontrivial collisions ends the sweep early; nothing can beat it.
inline QuotientSearchResult lef_quotient_search(
    const Presentation& p, int radius, const SearchBudget& budget = {},
    std::vector<TargetFamily> families = {TargetFamily::Cyclic, TargetFamily::Symmetric},
    int cap = kDefaultBallCap) {
  validate_budget(budget);
  QuotientSearchResult result;
  std::uint64_t best_score = 0;
  std::uint64_t tuples_tried = 0;
  auto consider_target = [&](const GroupBackend& target) -> bool {
    auto elements = target.elements();
    const int rank = p.alphabet.rank;
    std::vector<int> pick(static_cast<std::size_t>(rank), 0);
    for (;;) {
      if (++tuples_tried > budget.node_limit) {
        result.complete = false;
        return true;  // stop the whole sweep
      }
      std::vector<Element> images;
      images.reserve(static_cast<std::size_t>(rank));
      for (int idx : pick) images.push_back(elements[static_cast<std::size_t>(idx)]);
      GeneratorImages gi{target, std::move(images)};
      if (check_relators(p, gi).all_vanish) {
        ++result.candidates;
        BallImageReport report = ball_image(p, gi, radius, cap);
        std::uint64_t score = report.nontrivial_classes();
        if (!result.found || score < best_score) {
          result.found = true;
          best_score = score;
          result.best = std::move(gi);
          result.report = std::move(report);
          if (score == 0) return true;
        }
      }
      // next tuple, lexicographic with the leftmost index most significant
      int c = rank - 1;
      while (c >= 0 && ++pick[static_cast<std::size_t>(c)] == static_cast<int>(elements.size())) {
        pick[static_cast<std::size_t>(c)] = 0;
        --c;
      }
      if (c < 0) return false;
    }
  };
  for (TargetFamily family : families) {
    if (family == TargetFamily::Cyclic) {
      for (std::int64_t m = 1; m <= budget.max_cyclic_m; ++m)
        if (consider_target(cyclic(m))) return result;
    } else {
      for (int n = 1; n <= budget.max_symmetric_n; ++n)
        if (consider_target(symmetric(n, std::max(budget.max_symmetric_n, kDefaultSymmetricCap))))
          return result;
    }
  }
  return result;
}

} // namespace lefkit
