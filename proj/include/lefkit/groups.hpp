#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lefkit/errors.hpp"
#include "lefkit/words.hpp"

namespace lefkit {

class GroupBackend;

/// A group element. The payload kind is dictated by the owning backend:
/// cyclic and cayley use integers, symmetric uses image sequences,
/// fg-abelian uses coordinate vectors, product uses tuples, free uses words.
struct Element {
  using Int = std::int64_t;
  using Perm = std::vector<int>;
  using Vec = std::vector<std::int64_t>;
  using Tuple = std::vector<Element>;

  std::variant<Int, Perm, Vec, Tuple, ReducedWord> payload;

  friend bool operator==(const Element&, const Element&) = default;
};

/// Total order on elements of one backend; used for index maps during search.
inline bool element_less(const Element& a, const Element& b) {
  if (a.payload.index() != b.payload.index())
    return a.payload.index() < b.payload.index();
  switch (a.payload.index()) {
    case 0: return std::get<0>(a.payload) < std::get<0>(b.payload);
    case 1: return std::get<1>(a.payload) < std::get<1>(b.payload);
    case 2: return std::get<2>(a.payload) < std::get<2>(b.payload);
    case 3: {
      const auto& x = std::get<3>(a.payload);
      const auto& y = std::get<3>(b.payload);
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                          element_less);
    }
    default: {
      const auto& x = std::get<4>(a.payload);
      const auto& y = std::get<4>(b.payload);
      if (x == y) return false;
      return shortlex_less(x, y);
    }
  }
}

struct ElementLess {
  bool operator()(const Element& a, const Element& b) const { return element_less(a, b); }
};

namespace detail {

template <typename T>
std::string join_ints(const std::vector<T>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

} // namespace detail

/// Compact display form, used for diagnostics and table labels.
inline std::string element_to_string(const Element& e) {
  struct Printer {
    std::string operator()(Element::Int v) const { return std::to_string(v); }
    std::string operator()(const Element::Perm& v) const { return detail::join_ints(v); }
    std::string operator()(const Element::Vec& v) const { return detail::join_ints(v); }
    std::string operator()(const Element::Tuple& v) const {
      std::string out = "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += element_to_string(v[i]);
      }
      return out + ")";
    }
    std::string operator()(const ReducedWord& w) const { return to_string(w); }
  };
  return std::visit(Printer{}, e.payload);
}

// --- concrete backend kinds --------------------------------------------------

struct CyclicGroup {
  std::int64_t modulus = 1;
};

struct SymmetricGroup {
  int degree = 1;
};

/// An explicit multiplication table over indices 0..order-1. `identity` may
/// be omitted on input; validation resolves it.
struct CayleyTable {
  int order = 0;
  std::vector<std::vector<int>> table;
  std::optional<int> identity;
};

struct CayleyGroup {
  int order = 0;
  std::vector<int> table;  // row-major order x order
  int identity = 0;
  std::vector<int> inverses;

  int at(int i, int j) const { return table[static_cast<std::size_t>(i) * order + j]; }
};

struct ProductGroup {
  std::vector<GroupBackend> factors;
};

struct FgAbelianGroup {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;  // each >= 2
};

struct FreeGroup {
  int rank = 1;
};

/// Why a Cayley table was rejected, with the offending row/column or triple.
class CayleyError : public InvalidInput {
public:
  enum class Reason { BadShape, NotLatinRow, NotLatinColumn, NonAssociative, NoIdentity };

  CayleyError(Reason reason, std::array<int, 3> witness, const std::string& what)
      : InvalidInput(what), reason(reason), witness(witness) {}

  Reason reason;
  std::array<int, 3> witness;  // triple for NonAssociative, else {index,-1,-1}
};

inline constexpr int kDefaultAssociativityCap = 256;
inline constexpr std::uint64_t kEnumerationCap = 1'000'000;
inline constexpr int kDefaultSymmetricCap = 8;

/// A group with decidable equality, multiplication, inversion and identity.
/// Finite backends additionally enumerate their elements in a canonical
/// order; infinite ones refuse enumeration with NotEnumerable.
class GroupBackend {
public:
  using Kind =
      std::variant<CyclicGroup, SymmetricGroup, CayleyGroup, ProductGroup, FgAbelianGroup, FreeGroup>;

  explicit GroupBackend(Kind kind) : kind_(std::move(kind)) {}

  const Kind& kind() const { return kind_; }

  const char* kind_name() const {
    struct Namer {
      const char* operator()(const CyclicGroup&) const { return "cyclic"; }
      const char* operator()(const SymmetricGroup&) const { return "symmetric"; }
      const char* operator()(const CayleyGroup&) const { return "cayley"; }
      const char* operator()(const ProductGroup&) const { return "product"; }
      const char* operator()(const FgAbelianGroup&) const { return "fg-abelian"; }
      const char* operator()(const FreeGroup&) const { return "free"; }
    };
    return std::visit(Namer{}, kind_);
  }

  bool is_finite() const {
    struct Finite {
      bool operator()(const CyclicGroup&) const { return true; }
      bool operator()(const SymmetricGroup&) const { return true; }
      bool operator()(const CayleyGroup&) const { return true; }
      bool operator()(const ProductGroup& p) const {
        for (const auto& f : p.factors)
          if (!f.is_finite()) return false;
        return true;
      }
      bool operator()(const FgAbelianGroup& g) const { return g.free_rank == 0; }
      bool operator()(const FreeGroup&) const { return false; }
    };
    return std::visit(Finite{}, kind_);
  }

  std::uint64_t order() const {
    if (!is_finite())
      throw NotEnumerable(std::string("backend '") + kind_name() + "' is infinite");
    struct Order {
      std::uint64_t operator()(const CyclicGroup& g) const {
        return static_cast<std::uint64_t>(g.modulus);
      }
      std::uint64_t operator()(const SymmetricGroup& g) const {
        std::uint64_t f = 1;
        for (int i = 2; i <= g.degree; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
      }
      std::uint64_t operator()(const CayleyGroup& g) const {
        return static_cast<std::uint64_t>(g.order);
      }
      std::uint64_t operator()(const ProductGroup& p) const {
        std::uint64_t n = 1;
        for (const auto& f : p.factors) {
          std::uint64_t m = f.order();
          if (m != 0 && n > UINT64_MAX / m)
            throw ResourceLimit("product order overflows");
          n *= m;
        }
        return n;
      }
      std::uint64_t operator()(const FgAbelianGroup& g) const {
        std::uint64_t n = 1;
        for (std::int64_t d : g.torsion) {
          if (n > UINT64_MAX / static_cast<std::uint64_t>(d))
            throw ResourceLimit("fg-abelian order overflows");
          n *= static_cast<std::uint64_t>(d);
        }
        return n;
      }
      std::uint64_t operator()(const FreeGroup&) const { return 0; }  // unreachable
    };
    return std::visit(Order{}, kind_);
  }

  Element identity() const {
    struct Identity {
      Element operator()(const CyclicGroup&) const { return Element{Element::Int{0}}; }
      Element operator()(const SymmetricGroup& g) const {
        Element::Perm p(static_cast<std::size_t>(g.degree));
        std::iota(p.begin(), p.end(), 0);
        return Element{std::move(p)};
      }
      Element operator()(const CayleyGroup& g) const {
        return Element{Element::Int{g.identity}};
      }
      Element operator()(const ProductGroup& p) const {
        Element::Tuple t;
        t.reserve(p.factors.size());
        for (const auto& f : p.factors) t.push_back(f.identity());
        return Element{std::move(t)};
      }
      Element operator()(const FgAbelianGroup& g) const {
        return Element{Element::Vec(static_cast<std::size_t>(g.free_rank) + g.torsion.size(), 0)};
      }
      Element operator()(const FreeGroup& g) const {
        return Element{ReducedWord::identity(Alphabet{g.rank})};
      }
    };
    return std::visit(Identity{}, kind_);
  }

  bool contains(const Element& e) const {
    struct Contains {
      const GroupBackend* self;
      bool operator()(const CyclicGroup& g) const {
        const auto* v = std::get_if<Element::Int>(&elem->payload);
        return v && *v >= 0 && *v < g.modulus;
      }
      bool operator()(const SymmetricGroup& g) const {
        const auto* p = std::get_if<Element::Perm>(&elem->payload);
        if (!p || static_cast<int>(p->size()) != g.degree) return false;
        std::vector<bool> seen(p->size(), false);
        for (int image : *p) {
          if (image < 0 || image >= g.degree || seen[static_cast<std::size_t>(image)]) return false;
          seen[static_cast<std::size_t>(image)] = true;
        }
        return true;
      }
      bool operator()(const CayleyGroup& g) const {
        const auto* v = std::get_if<Element::Int>(&elem->payload);
        return v && *v >= 0 && *v < g.order;
      }
      bool operator()(const ProductGroup& p) const {
        const auto* t = std::get_if<Element::Tuple>(&elem->payload);
        if (!t || t->size() != p.factors.size()) return false;
        for (std::size_t i = 0; i < t->size(); ++i)
          if (!p.factors[i].contains((*t)[i])) return false;
        return true;
      }
      bool operator()(const FgAbelianGroup& g) const {
        const auto* v = std::get_if<Element::Vec>(&elem->payload);
        if (!v || v->size() != static_cast<std::size_t>(g.free_rank) + g.torsion.size())
          return false;
        for (std::size_t i = 0; i < g.torsion.size(); ++i) {
          std::int64_t c = (*v)[static_cast<std::size_t>(g.free_rank) + i];
          if (c < 0 || c >= g.torsion[i]) return false;
        }
        return true;
      }
      bool operator()(const FreeGroup& g) const {
        const auto* w = std::get_if<ReducedWord>(&elem->payload);
        if (!w || w->rank() != g.rank) return false;
        for (Letter l : w->letters())
          if (l.symbol < 0 || l.symbol >= g.rank) return false;
        return true;
      }
      const Element* elem;
    };
    return std::visit(Contains{this, &e}, kind_);
  }

  Element multiply(const Element& a, const Element& b) const {
    require_member(a, "left factor");
    require_member(b, "right factor");
    struct Multiply {
      const Element* a;
      const Element* b;
      Element operator()(const CyclicGroup& g) const {
        return Element{(std::get<Element::Int>(a->payload) + std::get<Element::Int>(b->payload)) %
                       g.modulus};
      }
      Element operator()(const SymmetricGroup&) const {
        // Convention: (p*q)(i) = p(q(i)), the right factor applies first.
        const auto& p = std::get<Element::Perm>(a->payload);
        const auto& q = std::get<Element::Perm>(b->payload);
        Element::Perm r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
          r[i] = p[static_cast<std::size_t>(q[i])];
        return Element{std::move(r)};
      }
      Element operator()(const CayleyGroup& g) const {
        return Element{Element::Int{g.at(static_cast<int>(std::get<Element::Int>(a->payload)),
                                         static_cast<int>(std::get<Element::Int>(b->payload)))}};
      }
      Element operator()(const ProductGroup& p) const {
        const auto& x = std::get<Element::Tuple>(a->payload);
        const auto& y = std::get<Element::Tuple>(b->payload);
        Element::Tuple r;
        r.reserve(p.factors.size());
        for (std::size_t i = 0; i < p.factors.size(); ++i)
          r.push_back(p.factors[i].multiply(x[i], y[i]));
        return Element{std::move(r)};
      }
      Element operator()(const FgAbelianGroup& g) const {
        const auto& x = std::get<Element::Vec>(a->payload);
        const auto& y = std::get<Element::Vec>(b->payload);
        Element::Vec r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          r[i] = x[i] + y[i];
          if (i >= static_cast<std::size_t>(g.free_rank))
            r[i] %= g.torsion[i - static_cast<std::size_t>(g.free_rank)];
        }
        return Element{std::move(r)};
      }
      Element operator()(const FreeGroup&) const {
        return Element{lefkit::multiply(std::get<ReducedWord>(a->payload),
                                        std::get<ReducedWord>(b->payload))};
      }
    };
    return std::visit(Multiply{&a, &b}, kind_);
  }

  Element inverse(const Element& e) const {
    require_member(e, "element");
    struct Inverse {
      const Element* e;
      Element operator()(const CyclicGroup& g) const {
        std::int64_t v = std::get<Element::Int>(e->payload);
        return Element{(g.modulus - v) % g.modulus};
      }
      Element operator()(const SymmetricGroup&) const {
        const auto& p = std::get<Element::Perm>(e->payload);
        Element::Perm r(p.size());
        for (std::size_t i = 0; i < p.size(); ++i)
          r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
        return Element{std::move(r)};
      }
      Element operator()(const CayleyGroup& g) const {
        return Element{
            Element::Int{g.inverses[static_cast<std::size_t>(std::get<Element::Int>(e->payload))]}};
      }
      Element operator()(const ProductGroup& p) const {
        const auto& x = std::get<Element::Tuple>(e->payload);
        Element::Tuple r;
        r.reserve(p.factors.size());
        for (std::size_t i = 0; i < p.factors.size(); ++i)
          r.push_back(p.factors[i].inverse(x[i]));
        return Element{std::move(r)};
      }
      Element operator()(const FgAbelianGroup& g) const {
        const auto& x = std::get<Element::Vec>(e->payload);
        Element::Vec r(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
          if (i < static_cast<std::size_t>(g.free_rank))
            r[i] = -x[i];
          else {
            std::int64_t d = g.torsion[i - static_cast<std::size_t>(g.free_rank)];
            r[i] = (d - x[i]) % d;
          }
        }
        return Element{std::move(r)};
      }
      Element operator()(const FreeGroup&) const {
        return Element{invert(std::get<ReducedWord>(e->payload))};
      }
    };
    return std::visit(Inverse{&e}, kind_);
  }

  /// Elements in canonical order: cyclic/cayley by index, symmetric by
  /// lexicographic image sequence, product and finite fg-abelian by
  /// lexicographic tuples with the leftmost coordinate most significant.
  std::vector<Element> elements() const {
    std::uint64_t n = order();  // throws NotEnumerable if infinite
    if (n > kEnumerationCap)
      throw ResourceLimit("backend of order " + std::to_string(n) +
                          " exceeds the enumeration cap " + std::to_string(kEnumerationCap));
    struct Enumerate {
      const GroupBackend* self;
      std::vector<Element> operator()(const CyclicGroup& g) const {
        std::vector<Element> out;
        out.reserve(static_cast<std::size_t>(g.modulus));
        for (std::int64_t i = 0; i < g.modulus; ++i) out.push_back(Element{i});
        return out;
      }
      std::vector<Element> operator()(const SymmetricGroup& g) const {
        std::vector<Element> out;
        Element::Perm p(static_cast<std::size_t>(g.degree));
        std::iota(p.begin(), p.end(), 0);
        do {
          out.push_back(Element{p});
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
      }
      std::vector<Element> operator()(const CayleyGroup& g) const {
        std::vector<Element> out;
        out.reserve(static_cast<std::size_t>(g.order));
        for (int i = 0; i < g.order; ++i) out.push_back(Element{Element::Int{i}});
        return out;
      }
      std::vector<Element> operator()(const ProductGroup& p) const {
        std::vector<std::vector<Element>> per_factor;
        per_factor.reserve(p.factors.size());
        for (const auto& f : p.factors) per_factor.push_back(f.elements());
        std::vector<Element> out;
        Element::Tuple current(p.factors.size());
        cartesian(per_factor, 0, current, out);
        return out;
      }
      std::vector<Element> operator()(const FgAbelianGroup& g) const {
        std::vector<Element> out;
        Element::Vec current(g.torsion.size(), 0);
        do {
          out.push_back(Element{current});
        } while (increment(current, g.torsion));
        return out;
      }
      std::vector<Element> operator()(const FreeGroup&) const { return {}; }  // unreachable
      static void cartesian(const std::vector<std::vector<Element>>& per_factor, std::size_t i,
                            Element::Tuple& current, std::vector<Element>& out) {
        if (i == per_factor.size()) {
          out.push_back(Element{current});
          return;
        }
        for (const auto& e : per_factor[i]) {
          current[i] = e;
          cartesian(per_factor, i + 1, current, out);
        }
      }
      static bool increment(Element::Vec& v, const std::vector<std::int64_t>& radix) {
        for (std::size_t i = v.size(); i-- > 0;) {
          if (++v[i] < radix[i]) return true;
          v[i] = 0;
        }
        return false;
      }
    };
    return std::visit(Enumerate{this}, kind_);
  }

  std::string describe() const {
    struct Describe {
      std::string operator()(const CyclicGroup& g) const {
        return "cyclic(" + std::to_string(g.modulus) + ")";
      }
      std::string operator()(const SymmetricGroup& g) const {
        return "symmetric(" + std::to_string(g.degree) + ")";
      }
      std::string operator()(const CayleyGroup& g) const {
        return "cayley(order " + std::to_string(g.order) + ")";
      }
      std::string operator()(const ProductGroup& p) const {
        std::string out = "product(";
        for (std::size_t i = 0; i < p.factors.size(); ++i) {
          if (i) out += " x ";
          out += p.factors[i].describe();
        }
        return out + ")";
      }
      std::string operator()(const FgAbelianGroup& g) const {
        std::string out = "fg-abelian(rank " + std::to_string(g.free_rank) + "; torsion";
        for (std::int64_t d : g.torsion) out += " " + std::to_string(d);
        return out + ")";
      }
      std::string operator()(const FreeGroup& g) const {
        return "free(" + std::to_string(g.rank) + ")";
      }
    };
    return std::visit(Describe{}, kind_);
  }

  friend bool operator==(const GroupBackend& a, const GroupBackend& b) {
    if (a.kind_.index() != b.kind_.index()) return false;
    struct Eq {
      const GroupBackend::Kind* other;
      bool operator()(const CyclicGroup& g) const {
        return std::get<CyclicGroup>(*other).modulus == g.modulus;
      }
      bool operator()(const SymmetricGroup& g) const {
        return std::get<SymmetricGroup>(*other).degree == g.degree;
      }
      bool operator()(const CayleyGroup& g) const {
        const auto& o = std::get<CayleyGroup>(*other);
        return o.order == g.order && o.table == g.table && o.identity == g.identity;
      }
      bool operator()(const ProductGroup& p) const {
        return std::get<ProductGroup>(*other).factors == p.factors;
      }
      bool operator()(const FgAbelianGroup& g) const {
        const auto& o = std::get<FgAbelianGroup>(*other);
        return o.free_rank == g.free_rank && o.torsion == g.torsion;
      }
      bool operator()(const FreeGroup& g) const {
        return std::get<FreeGroup>(*other).rank == g.rank;
      }
    };
    return std::visit(Eq{&b.kind_}, a.kind_);
  }

private:
  void require_member(const Element& e, const char* role) const {
    if (!contains(e))
      throw InvalidInput(std::string(role) + " " + element_to_string(e) +
                         " is not an element of " + describe());
  }

  Kind kind_;
};

// --- constructors ------------------------------------------------------------

inline GroupBackend cyclic(std::int64_t m) {
  if (m < 1) throw InvalidInput("cyclic modulus must be >= 1, got " + std::to_string(m));
  return GroupBackend(CyclicGroup{m});
}

inline GroupBackend symmetric(int n, int cap = kDefaultSymmetricCap) {
  if (n < 1) throw InvalidInput("symmetric degree must be >= 1, got " + std::to_string(n));
  if (n > cap)
    throw ResourceLimit("symmetric degree " + std::to_string(n) + " exceeds the cap " +
                        std::to_string(cap));
  return GroupBackend(SymmetricGroup{n});
}

inline GroupBackend direct_product(GroupBackend g, GroupBackend h) {
  ProductGroup p;
  p.factors.push_back(std::move(g));
  p.factors.push_back(std::move(h));
  return GroupBackend(std::move(p));
}

inline GroupBackend product_of(std::vector<GroupBackend> factors) {
  return GroupBackend(ProductGroup{std::move(factors)});
}

inline GroupBackend fg_abelian(int free_rank, std::vector<std::int64_t> torsion) {
  if (free_rank < 0) throw InvalidInput("fg-abelian free rank must be >= 0");
  for (std::int64_t d : torsion)
    if (d < 2)
      throw InvalidInput("fg-abelian torsion order must be >= 2, got " + std::to_string(d));
  return GroupBackend(FgAbelianGroup{free_rank, std::move(torsion)});
}

/// The lattice Z^k, i.e. fg-abelian with no torsion part.
inline GroupBackend lattice(int k) {
  if (k < 1) throw InvalidInput("lattice rank must be >= 1, got " + std::to_string(k));
  return fg_abelian(k, {});
}

inline GroupBackend free_group(int rank) {
  if (rank < 1) throw InvalidInput("free group rank must be >= 1, got " + std::to_string(rank));
  return GroupBackend(FreeGroup{rank});
}

/// Validates a raw multiplication table: entries in range, Latin rows and
/// columns, exhaustive associativity over all n^3 triples (first violating
/// triple reported), then identity resolution and inverse extraction.
inline GroupBackend validate_cayley(const CayleyTable& t, int cap = kDefaultAssociativityCap) {
  using Reason = CayleyError::Reason;
  const int n = t.order;
  if (n < 1)
    throw CayleyError(Reason::BadShape, {-1, -1, -1}, "cayley order must be >= 1");
  if (n > cap)
    throw ResourceLimit("cayley order " + std::to_string(n) +
                        " exceeds the associativity-check cap " + std::to_string(cap));
  if (static_cast<int>(t.table.size()) != n)
    throw CayleyError(Reason::BadShape, {-1, -1, -1},
                      "cayley table must have " + std::to_string(n) + " rows");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(t.table[static_cast<std::size_t>(i)].size()) != n)
      throw CayleyError(Reason::BadShape, {i, -1, -1},
                        "cayley row " + std::to_string(i) + " must have " + std::to_string(n) +
                            " entries");
    for (int j = 0; j < n; ++j) {
      int v = t.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v < 0 || v >= n)
        throw CayleyError(Reason::BadShape, {i, j, -1},
                          "entry (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range");
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
      int v = t.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (seen[static_cast<std::size_t>(v)])
        throw CayleyError(Reason::NotLatinRow, {i, -1, -1},
                          "row " + std::to_string(i) + " is not a permutation of 0.." +
                              std::to_string(n - 1));
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
      int v = t.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (seen[static_cast<std::size_t>(v)])
        throw CayleyError(Reason::NotLatinColumn, {j, -1, -1},
                          "column " + std::to_string(j) + " is not a permutation of 0.." +
                              std::to_string(n - 1));
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        int ij = t.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        int jk = t.table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        int left = t.table[static_cast<std::size_t>(ij)][static_cast<std::size_t>(k)];
        int right = t.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(jk)];
        if (left != right)
          throw CayleyError(Reason::NonAssociative, {i, j, k},
                            "not associative at (" + std::to_string(i) + "," + std::to_string(j) +
                                "," + std::to_string(k) + "): (ab)c = " + std::to_string(left) +
                                " but a(bc) = " + std::to_string(right));
      }
  auto is_identity = [&](int e) {
    for (int j = 0; j < n; ++j)
      if (t.table[static_cast<std::size_t>(e)][static_cast<std::size_t>(j)] != j ||
          t.table[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] != j)
        return false;
    return true;
  };
  int identity = -1;
  if (t.identity.has_value()) {
    if (*t.identity < 0 || *t.identity >= n || !is_identity(*t.identity))
      throw CayleyError(Reason::NoIdentity, {t.identity.value_or(-1), -1, -1},
                        "declared identity " + std::to_string(*t.identity) +
                            " does not satisfy the identity laws");
    identity = *t.identity;
  } else {
    for (int e = 0; e < n && identity < 0; ++e)
      if (is_identity(e)) identity = e;
    if (identity < 0)
      throw CayleyError(Reason::NoIdentity, {-1, -1, -1}, "table has no two-sided identity");
  }
  CayleyGroup g;
  g.order = n;
  g.identity = identity;
  g.table.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : t.table) g.table.insert(g.table.end(), row.begin(), row.end());
  g.inverses.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.at(i, j) == identity && g.at(j, i) == identity) {
        g.inverses[static_cast<std::size_t>(i)] = j;
        break;
      }
  return GroupBackend(std::move(g));
}

/// Exports a finite backend's full multiplication table.
inline CayleyTable export_cayley(const GroupBackend& g) {
  auto elems = g.elements();
  const int n = static_cast<int>(elems.size());
  auto index_of = [&](const Element& e) {
    for (int i = 0; i < n; ++i)
      if (elems[static_cast<std::size_t>(i)] == e) return i;
    throw InvalidInput("product fell outside the enumerated elements");
  };
  CayleyTable t;
  t.order = n;
  t.table.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      t.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = index_of(
          g.multiply(elems[static_cast<std::size_t>(i)], elems[static_cast<std::size_t>(j)]));
  t.identity = index_of(g.identity());
  return t;
}

} // namespace lefkit
