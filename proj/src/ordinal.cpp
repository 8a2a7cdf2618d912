#include "coarsekit/ordinal.hpp"

#include <cctype>
#include <limits>
#include <utility>

namespace coarsekit {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("ordinal coefficient overflow");
  }
  return a * b;
}

}  // namespace

Ordinal Ordinal::finite(std::uint64_t n) {
  Ordinal r;
  if (n > 0) r.terms_.push_back({Ordinal(), n});
  return r;
}

Ordinal Ordinal::omega() { return omega_power(finite(1)); }

Ordinal Ordinal::omega_power(Ordinal exponent, std::uint64_t coefficient) {
  if (coefficient == 0) throw std::invalid_argument("zero coefficient");
  Ordinal r;
  r.terms_.push_back({std::move(exponent), coefficient});
  return r;
}

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) {
      throw std::invalid_argument("zero coefficient in Cantor normal form");
    }
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw std::invalid_argument("exponents must strictly decrease");
    }
  }
  Ordinal r;
  r.terms_ = std::move(terms);
  return r;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<std::uint64_t> Ordinal::as_finite() const {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const {
  return !terms_.empty() && !terms_.back().exponent.is_zero();
}

const Ordinal& Ordinal::last_exponent() const {
  if (terms_.empty()) throw std::domain_error("zero has no terms");
  return terms_.back().exponent;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) {
  return a.terms() == b.terms();
}

bool operator==(const OrdinalTerm& a, const OrdinalTerm& b) {
  return a.coefficient == b.coefficient && a.exponent == b.exponent;
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& head = b.terms().front();
  std::vector<OrdinalTerm> out;
  // Terms of a below the leading exponent of b are absorbed.
  for (const auto& t : a.terms()) {
    if (head.exponent < t.exponent) {
      out.push_back(t);
    } else if (t.exponent == head.exponent) {
      out.push_back({t.exponent, checked_add(t.coefficient, head.coefficient)});
      break;
    } else {
      break;
    }
  }
  bool merged = !out.empty() && out.back().exponent == head.exponent;
  auto rest = b.terms().begin();
  if (merged) ++rest;
  out.insert(out.end(), rest, b.terms().end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal operator*(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal();
  const auto& lead = a.terms().front();
  Ordinal result;
  // Left distributivity: a * (sum of w^e*k) = sum of a * w^e*k.
  for (const auto& t : b.terms()) {
    Ordinal piece;
    if (t.exponent.is_zero()) {
      std::vector<OrdinalTerm> terms = a.terms();
      terms.front().coefficient = checked_mul(lead.coefficient, t.coefficient);
      piece = Ordinal::from_terms(std::move(terms));
    } else {
      piece = Ordinal::omega_power(lead.exponent + t.exponent, t.coefficient);
    }
    result = result + piece;
  }
  return result;
}

OrdinalParseError::OrdinalParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view text) : text_(text) {}

  Ordinal parse() {
    Ordinal r = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw OrdinalParseError(pos_, what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  bool at_digit() {
    skip_space();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  std::uint64_t nat() {
    if (!at_digit()) fail("expected a natural number");
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
        pos_ = start;
        fail("number too large");
      }
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  Ordinal expr() {
    Ordinal r = term();
    while (accept('+')) r = r + term();
    return r;
  }

  Ordinal term() {
    if (at_digit()) return Ordinal::finite(nat());
    if (!accept('w')) fail("expected 'w' or a natural number");
    Ordinal exponent = Ordinal::finite(1);
    if (accept('^')) {
      if (accept('(')) {
        exponent = expr();
        expect(')');
      } else if (accept('w')) {
        exponent = Ordinal::omega();
      } else if (at_digit()) {
        exponent = Ordinal::finite(nat());
      } else {
        fail("expected exponent");
      }
    }
    std::uint64_t coefficient = 1;
    if (accept('*')) {
      skip_space();
      std::size_t at = pos_;
      coefficient = nat();
      if (coefficient == 0) {
        pos_ = at;
        fail("coefficient must be positive");
      }
    }
    return Ordinal::omega_power(std::move(exponent), coefficient);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalParser(text).parse(); }

std::string format_ordinal(const Ordinal& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& t : x.terms()) {
    if (!out.empty()) out += " + ";
    if (t.exponent.is_zero()) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += "w";
    if (auto e = t.exponent.as_finite()) {
      if (*e != 1) out += "^" + std::to_string(*e);
    } else {
      out += "^(" + format_ordinal(t.exponent) + ")";
    }
    if (t.coefficient != 1) out += "*" + std::to_string(t.coefficient);
  }
  return out;
}

std::string format_cardinal(const Cardinal& c) {
  switch (c.kind()) {
    case Cardinal::Kind::Finite:
      return std::to_string(c.value());
    case Cardinal::Kind::Aleph0:
      return "aleph0";
    case Cardinal::Kind::Aleph1:
      return "aleph1";
  }
  return {};
}

Ordinal tail(const Ordinal& gamma) {
  if (gamma.is_zero()) throw std::domain_error("the tail of 0 is undefined");
  return Ordinal::omega_power(gamma.last_exponent());
}

Cardinal cardinal_tail(const Ordinal& gamma) {
  if (gamma.is_zero()) throw std::domain_error("the cardinal tail of 0 is undefined");
  const Ordinal& e = gamma.last_exponent();
  if (e.is_zero()) return Cardinal::finite(1);
  if (e == Ordinal::finite(1)) return Cardinal::aleph0();
  // w^e for e >= 2 is countable and not a cardinal.
  return Cardinal::aleph1();
}

bool is_additively_indecomposable(const Ordinal& gamma) {
  return gamma.terms().size() == 1 && gamma.terms()[0].coefficient == 1;
}

Cofinality cofinality_class(const Ordinal& gamma) {
  if (gamma.is_zero()) return Cofinality::Zero;
  if (gamma.is_successor()) return Cofinality::One;
  return Cofinality::Omega;
}

CardinalBalleanClass classify_cardinal_ballean(const Ordinal& gamma) {
  if (!is_additively_indecomposable(gamma)) {
    throw std::domain_error(format_ordinal(gamma) +
                            " is additively decomposable, so its interval entourages do not "
                            "form a ballean");
  }
  // b*w = w^(e+1) where w^e is the leading term of b, so gamma = w^d is of
  // this form exactly when d is a successor.
  const Ordinal& d = gamma.terms()[0].exponent;
  return d.is_successor() ? CardinalBalleanClass::CardinalLine : CardinalBalleanClass::MacroCube;
}

std::string to_string(Cofinality c) {
  switch (c) {
    case Cofinality::Zero:
      return "0";
    case Cofinality::One:
      return "1";
    case Cofinality::Omega:
      return "w";
  }
  return {};
}

std::string to_string(CardinalBalleanClass c) {
  return c == CardinalBalleanClass::CardinalLine ? "CardinalLine" : "MacroCube";
}

}  // namespace coarsekit
