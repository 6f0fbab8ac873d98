#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lefkit/errors.hpp"

namespace lefkit {

/// A finite generator alphabet. Symbols are the indices 0..rank-1; the
/// identity is not a symbol.
struct Alphabet {
  int rank = 1;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

inline Alphabet make_alphabet(int rank) {
  if (rank < 1)
    throw InvalidInput("alphabet rank must be >= 1, got " + std::to_string(rank));
  return Alphabet{rank};
}

/// One generator occurrence: a symbol index and a sign (+1 or -1).
struct Letter {
  int symbol = 0;
  int sign = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Canonical letter order: x0 < x0^-1 < x1 < x1^-1 < ...
inline int letter_key(Letter l) { return 2 * l.symbol + (l.sign < 0 ? 1 : 0); }

inline Letter letter_from_key(int key) {
  return Letter{key / 2, (key % 2 == 0) ? 1 : -1};
}

inline Letter inverse(Letter l) { return Letter{l.symbol, -l.sign}; }

inline bool cancels(Letter a, Letter b) {
  return a.symbol == b.symbol && a.sign == -b.sign;
}

/// A freely reduced word over a fixed alphabet. The empty sequence is the
/// identity e. Equality is letter-sequence equality; the stored rank only
/// bounds the symbols and guards mixed-alphabet arithmetic.
class ReducedWord {
public:
  ReducedWord() = default;

  static ReducedWord identity(Alphabet a) { return ReducedWord(a.rank, {}); }

  /// Free reduction of an arbitrary letter sequence. Idempotent on already
  /// reduced input; symbols outside the alphabet are rejected.
  static ReducedWord reduce(std::span<const Letter> raw, Alphabet a) {
    std::vector<Letter> out;
    out.reserve(raw.size());
    for (Letter l : raw) {
      if (l.symbol < 0 || l.symbol >= a.rank)
        throw InvalidInput("letter symbol " + std::to_string(l.symbol) +
                           " out of range for alphabet of rank " + std::to_string(a.rank));
      if (l.sign != 1 && l.sign != -1)
        throw InvalidInput("letter sign must be +1 or -1");
      if (!out.empty() && cancels(out.back(), l))
        out.pop_back();
      else
        out.push_back(l);
    }
    return ReducedWord(a.rank, std::move(out));
  }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool is_identity() const { return letters_.empty(); }

  friend bool operator==(const ReducedWord& u, const ReducedWord& v) {
    return u.letters_ == v.letters_;
  }

private:
  ReducedWord(int rank, std::vector<Letter> letters)
      : rank_(rank), letters_(std::move(letters)) {}

  friend ReducedWord multiply(const ReducedWord&, const ReducedWord&);
  friend ReducedWord invert(const ReducedWord&);
  friend std::vector<ReducedWord> prefixes(const ReducedWord&);
  friend class BallEnumerator;

  int rank_ = 0;
  std::vector<Letter> letters_;
};

/// Product in the free group: concatenate and cancel at the junction.
inline ReducedWord multiply(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank() != v.rank())
    throw InvalidInput("alphabet mismatch: rank " + std::to_string(u.rank()) +
                       " vs " + std::to_string(v.rank()));
  std::vector<Letter> out = u.letters_;
  for (Letter l : v.letters_) {
    if (!out.empty() && cancels(out.back(), l))
      out.pop_back();
    else
      out.push_back(l);
  }
  return ReducedWord(u.rank(), std::move(out));
}

/// Reverse the word and flip every sign.
inline ReducedWord invert(const ReducedWord& w) {
  std::vector<Letter> out(w.letters_.rbegin(), w.letters_.rend());
  for (Letter& l : out) l.sign = -l.sign;
  return ReducedWord(w.rank(), std::move(out));
}

inline int length(const ReducedWord& w) { return w.length(); }

/// Shortlex: shorter first, then lexicographic by (symbol, sign) with +1 < -1.
inline bool shortlex_less(const ReducedWord& u, const ReducedWord& v) {
  if (u.length() != v.length()) return u.length() < v.length();
  const auto& a = u.letters();
  const auto& b = v.letters();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (letter_key(a[i]) != letter_key(b[i]))
      return letter_key(a[i]) < letter_key(b[i]);
  return false;
}

/// The partial products e = w_0, w_1, ..., w_k = w; lengths ascend 0..k.
inline std::vector<ReducedWord> prefixes(const ReducedWord& w) {
  std::vector<ReducedWord> out;
  out.reserve(w.letters_.size() + 1);
  std::vector<Letter> acc;
  out.push_back(ReducedWord(w.rank(), acc));
  for (Letter l : w.letters_) {
    acc.push_back(l);
    out.push_back(ReducedWord(w.rank(), acc));
  }
  return out;
}

inline constexpr int kDefaultBallCap = 12;

/// The closed ball B_L: every reduced word of length <= L, in shortlex order.
struct Ball {
  Alphabet alphabet;
  int radius = 0;
  std::vector<ReducedWord> members;
};

/// |B_L| = 1 + sum_{i=1..L} 2r (2r-1)^(i-1).
inline std::uint64_t ball_size(int rank, int radius) {
  std::uint64_t total = 1, layer = 1;
  for (int i = 1; i <= radius; ++i) {
    layer *= (i == 1) ? std::uint64_t(2 * rank) : std::uint64_t(2 * rank - 1);
    total += layer;
  }
  return total;
}

class BallEnumerator {
public:
  static Ball enumerate(Alphabet a, int radius, int cap) {
    if (radius < 0) throw InvalidInput("ball radius must be nonnegative");
    if (cap < 0) throw InvalidInput("ball cap must be nonnegative");
    if (radius > cap)
      throw ResourceLimit("ball radius " + std::to_string(radius) +
                          " exceeds the configured cap " + std::to_string(cap));
    Ball ball{a, radius, {}};
    ball.members.reserve(ball_size(a.rank, radius));
    ball.members.push_back(ReducedWord::identity(a));
    std::size_t level_begin = 0;
    for (int len = 1; len <= radius; ++len) {
      const std::size_t level_end = ball.members.size();
      for (std::size_t i = level_begin; i < level_end; ++i) {
        for (int key = 0; key < 2 * a.rank; ++key) {
          Letter l = letter_from_key(key);
          const auto& parent = ball.members[i].letters_;
          if (!parent.empty() && cancels(parent.back(), l)) continue;
          std::vector<Letter> child = parent;
          child.push_back(l);
          ball.members.push_back(ReducedWord(a.rank, std::move(child)));
        }
      }
      level_begin = level_end;
    }
    return ball;
  }
};

inline Ball ball(Alphabet a, int radius, int cap = kDefaultBallCap) {
  return BallEnumerator::enumerate(a, radius, cap);
}

// --- word syntax -----------------------------------------------------------
//
// Words print and parse as whitespace-separated factors `x<i>` with an
// optional `^<nonzero integer>` exponent; `e` is the empty word.
// Example: "x0 x1^-1 x0^2".

inline std::string to_string(const ReducedWord& w) {
  if (w.is_identity()) return "e";
  std::string out;
  const auto& ls = w.letters();
  std::size_t i = 0;
  while (i < ls.size()) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long long exponent = static_cast<long long>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    out += 'x';
    out += std::to_string(ls[i].symbol);
    if (exponent != 1) {
      out += '^';
      out += std::to_string(exponent);
    }
    i = j;
  }
  return out;
}

namespace detail {

inline long long parse_int(std::string_view s, const std::string& context) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidInput("bad integer '" + std::string(s) + "' in " + context);
  return value;
}

} // namespace detail

inline constexpr long long kMaxParsedWordLetters = 1'000'000;

inline ReducedWord parse_word(std::string_view text, Alphabet a) {
  std::vector<Letter> raw;
  std::size_t pos = 0;
  long long expanded = 0;
  while (pos < text.size()) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view token = text.substr(pos, end - pos);
    pos = end;
    if (token == "e") continue;
    if (token.size() < 2 || token[0] != 'x')
      throw InvalidInput("bad word factor '" + std::string(token) +
                         "' (expected x<i> or x<i>^<k> or e)");
    std::string_view rest = token.substr(1);
    std::string_view symbol_part = rest;
    long long exponent = 1;
    if (auto caret = rest.find('^'); caret != std::string_view::npos) {
      symbol_part = rest.substr(0, caret);
      exponent = detail::parse_int(rest.substr(caret + 1), "exponent of '" + std::string(token) + "'");
      if (exponent == 0)
        throw InvalidInput("zero exponent in '" + std::string(token) + "'");
    }
    long long symbol = detail::parse_int(symbol_part, "symbol of '" + std::string(token) + "'");
    if (symbol < 0 || symbol >= a.rank)
      throw InvalidInput("symbol x" + std::to_string(symbol) +
                         " out of range for alphabet of rank " + std::to_string(a.rank));
    expanded += exponent < 0 ? -exponent : exponent;
    if (expanded > kMaxParsedWordLetters)
      throw ResourceLimit("word literal expands to more than " +
                          std::to_string(kMaxParsedWordLetters) + " letters");
    int sign = exponent > 0 ? 1 : -1;
    for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k)
      raw.push_back(Letter{static_cast<int>(symbol), sign});
  }
  return ReducedWord::reduce(raw, a);
}

} // namespace lefkit
