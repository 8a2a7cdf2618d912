#include "coarsekit/coordinatize.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace coarsekit {

std::vector<Point> natural_order(std::size_t n) {
  std::vector<Point> order(n);
  for (Point i = 0; i < n; ++i) order[i] = i;
  return order;
}

Numbering numbering(const Tower& tower, std::span<const Point> order) {
  const std::size_t n = tower.size();
  if (order.size() != n) throw std::invalid_argument("order must list every point once");
  Numbering out;
  out.order.assign(order.begin(), order.end());
  out.rank.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || out.rank[order[i]] != n) {
      throw std::invalid_argument("order must list every point once");
    }
    out.rank[order[i]] = i;
  }

  const Level k = tower.depth();
  for (Level a = 0; a <= k; ++a) {
    std::vector<Point> least(tower.class_count(a), n);
    for (Point p : out.order) {
      auto c = tower.class_of(a, p);
      if (least[c] == n) least[c] = p;
    }
    std::vector<Point> rep(n);
    for (Point y = 0; y < n; ++y) rep[y] = least[tower.class_of(a, y)];
    out.rep.push_back(std::move(rep));
  }

  for (Level a = 0; a < k; ++a) {
    // Walking the order visits each level-a class first at its minimum, and
    // the minimum of the enclosing class B before any other point of B.
    std::vector<std::size_t> next(tower.class_count(a + 1), 0);
    std::vector<std::size_t> number(tower.class_count(a), n);
    for (Point p : out.order) {
      auto c = tower.class_of(a, p);
      if (number[c] == n) number[c] = next[tower.class_of(a + 1, p)]++;
    }
    std::vector<std::size_t> num(n);
    for (Point y = 0; y < n; ++y) num[y] = number[tower.class_of(a, y)];
    out.num.push_back(std::move(num));
  }
  return out;
}

namespace {

Code code_from(const Tower& tower, const Numbering& nb, Point x, Point y) {
  const Level d = tower.distance(x, y);
  if (d == 0) return Code(tower.depth(), 0);
  Point c = nb.rep[d - 1][y];
  Code v = code_from(tower, nb, c, y);
  v[d - 1] += nb.num[d - 1][y];
  return v;
}

}  // namespace

Tower CoordMap::target() const { return gen_product(upper); }

Point CoordMap::target_point(const Code& code) const {
  if (code.size() != upper.size()) throw std::invalid_argument("code has the wrong length");
  Point p = 0;
  std::size_t stride = 1;
  for (std::size_t a = 0; a < code.size(); ++a) {
    if (code[a] >= upper[a]) throw std::invalid_argument("code outside the target product");
    p += code[a] * stride;
    stride *= upper[a];
  }
  return p;
}

CoordMap coordinatize(const Tower& tower, Point base, std::span<const Point> order) {
  if (base >= tower.size()) throw std::invalid_argument("basepoint out of range");
  CoordMap cm;
  cm.source = tower;
  cm.base = base;
  cm.numbers = numbering(tower, order);
  Spectrum sp = spectrum(tower);
  cm.lower = sp.min;
  cm.upper = sp.max;
  for (Point y = 0; y < tower.size(); ++y) cm.codes.push_back(code_from(tower, cm.numbers, base, y));
  return cm;
}

CoordMap coordinatize(const Tower& tower, Point base) {
  auto order = natural_order(tower.size());
  return coordinatize(tower, base, order);
}

CoordMap coordinatize(const Tower& tower) { return coordinatize(tower, 0); }

bool CoordinatizationReport::pass() const {
  if (!truncation_law || !forward_coarse || !image_within_upper) return false;
  if (base_is_min) return agreement_law.value_or(false) && injective.value_or(false) &&
                          image_contains_lower.value_or(false);
  return true;
}

namespace {

// Least a with u and v agreeing at every coordinate >= a.
Level agreement_level(const Code& u, const Code& v) {
  for (std::size_t a = u.size(); a > 0; --a) {
    if (u[a - 1] != v[a - 1]) return a;
  }
  return 0;
}

}  // namespace

CoordinatizationReport verify_coordinatization(const CoordMap& cm) {
  const Tower& t = cm.source;
  const std::size_t n = t.size();
  const Level k = t.depth();
  CoordinatizationReport r;

  for (Point y = 0; y < n && r.truncation_law; ++y) {
    const Level d = t.distance(cm.base, y);
    for (Level a = 0; a < k; ++a) {
      std::size_t expected = a < d ? cm.numbers.num[a][y] : 0;
      if (cm.codes[y][a] != expected) {
        r.truncation_law = false;
        r.truncation_witness = y;
        break;
      }
    }
  }

  for (Point y = 0; y < n; ++y) {
    for (Level a = 0; a < k; ++a) {
      if (cm.codes[y][a] >= cm.upper[a]) r.image_within_upper = false;
    }
  }

  for (Point y = 0; y < n; ++y) {
    for (Point z = 0; z < n; ++z) {
      Level agree = agreement_level(cm.codes[y], cm.codes[z]);
      if (agree > t.distance(y, z) && r.forward_coarse) {
        r.forward_coarse = false;
        r.forward_witness = std::pair{y, z};
      }
      if (agree == 0) r.inverse_shift = std::max(r.inverse_shift, t.distance(y, z));
    }
  }

  r.base_is_min = !cm.numbers.order.empty() && cm.numbers.order.front() == cm.base;
  if (r.base_is_min) {
    bool law = true;
    for (Point y = 0; y < n; ++y) {
      for (Point z = 0; z < n; ++z) {
        if (agreement_level(cm.codes[y], cm.codes[z]) != t.distance(y, z)) law = false;
      }
    }
    r.agreement_law = law;
    std::set<Code> image(cm.codes.begin(), cm.codes.end());
    r.injective = image.size() == n;
    bool contains = true;
    Code v(k, 0);
    while (contains) {
      if (!image.count(v)) contains = false;
      std::size_t a = 0;
      while (a < k && ++v[a] == cm.lower[a]) v[a++] = 0;
      if (a == k) break;
    }
    r.image_contains_lower = contains;
  }
  return r;
}

std::string describe(const CoordinatizationReport& r) {
  auto verdict = [](bool ok) { return ok ? "pass" : "FAIL"; };
  std::ostringstream out;
  out << "truncation law: " << verdict(r.truncation_law);
  if (r.truncation_witness) out << " (point " << *r.truncation_witness << ")";
  out << "\nforward coarse (shift 0): " << verdict(r.forward_coarse);
  if (r.forward_witness) out << " (pair " << r.forward_witness->first << "," << r.forward_witness->second << ")";
  out << "\nimage within upper product: " << verdict(r.image_within_upper);
  if (r.base_is_min) {
    out << "\nagreement law: " << verdict(*r.agreement_law);
    out << "\ninjective: " << verdict(*r.injective);
    out << "\nimage contains lower product: " << verdict(*r.image_contains_lower);
  } else {
    out << "\nbasepoint is not the least point; agreement law, injectivity and lower product not checked";
  }
  out << "\ninverse shift: " << r.inverse_shift << "\n";
  return out.str();
}

CodeTable code_table(const CoordMap& cm) { return {cm.base, cm.numbers.order, cm.codes}; }

std::string write_coordmap(const CoordMap& cm) {
  std::ostringstream out;
  out << "coordmap v1\n";
  out << "base " << cm.base << "\n";
  out << "order";
  for (Point p : cm.numbers.order) out << " " << p;
  out << "\n";
  for (Point y = 0; y < cm.codes.size(); ++y) {
    out << "code " << y << ":";
    for (auto v : cm.codes[y]) out << " " << v;
    out << "\n";
  }
  return out.str();
}

CodeTable parse_coordmap(std::string_view text) {
  LineReader in(text);
  in.expect("coordmap v1");
  CodeTable table;
  table.base = read_keyed_count(in, "base");
  {
    auto line = in.next();
    auto words = split_words(line.text);
    if (words.empty() || words[0] != "order") throw FormatError(line.number, "expected 'order <points>'");
    for (std::size_t i = 1; i < words.size(); ++i) table.order.push_back(parse_count(words[i], line.number));
  }
  const std::size_t n = table.order.size();
  std::vector<bool> seen(n, false);
  for (Point p : table.order) {
    if (p >= n || seen[p]) throw FormatError(0, "order is not a permutation of the points");
    seen[p] = true;
  }
  if (table.base >= n) throw FormatError(0, "basepoint out of range");
  std::optional<std::size_t> width;
  while (!in.done()) {
    auto line = in.next();
    std::string_view body;
    std::string expected = "code " + std::to_string(table.codes.size()) + ":";
    if (!strip_prefix(line.text, expected, body)) throw FormatError(line.number, "expected '" + expected + "'");
    Code c;
    for (const auto& w : split_words(body)) c.push_back(parse_count(w, line.number));
    if (width && c.size() != *width) throw FormatError(line.number, "code length differs from earlier codes");
    width = c.size();
    table.codes.push_back(std::move(c));
  }
  if (table.codes.size() != n) throw FormatError(0, "expected one code per point");
  return table;
}

}  // namespace coarsekit
