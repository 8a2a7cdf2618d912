// Ordinals below epsilon_0 in Cantor normal form, plus the small symbolic
// cardinal type used for tails.
//
// An ordinal is stored as a list of terms w^e * c with strictly decreasing
// exponents e (themselves ordinals) and coefficients c >= 1. The empty list
// is 0. Because the form is canonical, structural equality is ordinal
// equality.
//
// Text syntax (ASCII 'w' stands for omega):
//
//   expr := term ('+' term)*
//   term := 'w' ('^' '(' expr ')' | '^' atom)? ('*' nat)? | nat
//   atom := 'w' | nat
//
// Sums are normalized with ordinal addition, so "1 + w" parses to w.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coarsekit {

struct OrdinalTerm;

class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal finite(std::uint64_t n);
  static Ordinal omega();
  static Ordinal omega_power(Ordinal exponent, std::uint64_t coefficient = 1);

  // Throws std::invalid_argument unless exponents strictly decrease and every
  // coefficient is positive.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);

  const std::vector<OrdinalTerm>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;
  std::optional<std::uint64_t> as_finite() const;
  bool is_successor() const;
  bool is_limit() const;

  // Exponent of the smallest term. Precondition: non-zero.
  const Ordinal& last_exponent() const;

 private:
  std::vector<OrdinalTerm> terms_;
};

struct OrdinalTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;
};

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
bool operator==(const Ordinal& a, const Ordinal& b);
bool operator==(const OrdinalTerm& a, const OrdinalTerm& b);

// Coefficient arithmetic is checked; std::overflow_error past 2^64.
Ordinal operator+(const Ordinal& a, const Ordinal& b);
Ordinal operator*(const Ordinal& a, const Ordinal& b);

class OrdinalParseError : public std::runtime_error {
 public:
  OrdinalParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

Ordinal parse_ordinal(std::string_view text);
std::string format_ordinal(const Ordinal& x);

// Finite n, aleph_0 or aleph_1; ordered in that sequence.
class Cardinal {
 public:
  enum class Kind { Finite, Aleph0, Aleph1 };

  static Cardinal finite(std::uint64_t n) { return Cardinal(Kind::Finite, n); }
  static Cardinal aleph0() { return Cardinal(Kind::Aleph0, 0); }
  static Cardinal aleph1() { return Cardinal(Kind::Aleph1, 0); }

  Kind kind() const { return kind_; }
  std::uint64_t value() const { return value_; }

  friend auto operator<=>(const Cardinal&, const Cardinal&) = default;
  friend bool operator==(const Cardinal&, const Cardinal&) = default;

 private:
  Cardinal(Kind kind, std::uint64_t value) : kind_(kind), value_(value) {}

  Kind kind_;
  std::uint64_t value_;
};

std::string format_cardinal(const Cardinal& c);

// min{a : gamma = b + a for some b < gamma}; always w^(last exponent).
// Throws std::domain_error for gamma = 0.
Ordinal tail(const Ordinal& gamma);

// |tail| when the tail is a cardinal (1 or w at this scale), |tail|^+
// otherwise. Throws std::domain_error for gamma = 0.
Cardinal cardinal_tail(const Ordinal& gamma);

// True iff gamma = w^d. Returns false for 0.
bool is_additively_indecomposable(const Ordinal& gamma);

enum class Cofinality { Zero, One, Omega };
Cofinality cofinality_class(const Ordinal& gamma);

enum class CardinalBalleanClass { CardinalLine, MacroCube };

// Coarse type of the interval ballean on an additively indecomposable gamma:
// the integer line when gamma = b*w for some b, the macro-cube otherwise.
// Throws std::domain_error when gamma is decomposable (not a ballean).
CardinalBalleanClass classify_cardinal_ballean(const Ordinal& gamma);

std::string to_string(Cofinality c);
std::string to_string(CardinalBalleanClass c);

}  // namespace coarsekit
