#include "coarsekit/ballean_io.hpp"

#include <cctype>
#include <sstream>

namespace coarsekit {

namespace {

Relation parse_cells(std::string_view body, std::size_t n, std::size_t line) {
  Relation r(n);
  std::vector<bool> seen(n, false);
  std::size_t start = 0;
  while (start <= body.size()) {
    auto bar = body.find('|', start);
    auto cell_text = body.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    std::vector<Point> cell;
    for (const auto& w : split_words(cell_text)) {
      Point x = parse_count(w, line);
      if (x >= n) throw FormatError(line, "point " + w + " out of range");
      if (seen[x]) throw FormatError(line, "point " + w + " appears in two cells");
      seen[x] = true;
      cell.push_back(x);
    }
    if (cell.empty()) throw FormatError(line, "empty cell");
    for (Point x : cell) {
      for (Point y : cell) r.insert(x, y);
    }
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  for (Point x = 0; x < n; ++x) {
    if (!seen[x]) throw FormatError(line, "point " + std::to_string(x) + " is in no cell");
  }
  return r;
}

Relation parse_pairs(std::string_view body, std::size_t n, std::size_t line) {
  Relation r = Relation::diagonal(n);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
  };
  auto number = [&] {
    skip();
    std::size_t start = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    Point x = parse_count(body.substr(start, i - start), line);
    if (x >= n) throw FormatError(line, "point " + std::to_string(x) + " out of range");
    return x;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= body.size() || body[i] != c) {
      throw FormatError(line, std::string("expected '") + c + "' in pair list");
    }
    ++i;
  };
  skip();
  while (i < body.size()) {
    expect('(');
    Point x = number();
    expect(',');
    Point y = number();
    expect(')');
    r.insert_symmetric(x, y);
    skip();
  }
  return r;
}

}  // namespace

std::string write_ballean(const Tower& tower) {
  std::ostringstream out;
  out << "ballean v1\n";
  out << "points " << tower.size() << "\n";
  out << "levels " << tower.depth() << "\n";
  for (Level j = 1; j < tower.depth(); ++j) {
    out << "level " << j << " cells:";
    bool first = true;
    for (const auto& cell : tower.classes(j)) {
      if (!first) out << " |";
      first = false;
      for (Point x : cell) out << " " << x;
    }
    out << "\n";
  }
  return out.str();
}

std::string write_ballean(const EntourageChain& chain) {
  std::ostringstream out;
  out << "ballean v1\n";
  out << "points " << chain.size() << "\n";
  out << "levels " << chain.depth() << "\n";
  for (Level j = 1; j < chain.depth(); ++j) {
    out << "level " << j << " pairs:";
    for (Point x = 0; x < chain.size(); ++x) {
      for (Point y = x + 1; y < chain.size(); ++y) {
        if (chain.level(j).contains(x, y)) out << " (" << x << "," << y << ")";
      }
    }
    out << "\n";
  }
  return out.str();
}

EntourageChain read_chain(LineReader& in) {
  in.expect("ballean v1");
  const std::size_t header_line = in.current_line();
  const std::size_t n = read_keyed_count(in, "points");
  if (n == 0) throw FormatError(header_line, "a ballean needs at least one point");
  const std::size_t depth_line = in.current_line();
  const Level k = read_keyed_count(in, "levels");
  if (k == 0 && n != 1) throw FormatError(depth_line, "levels 0 requires a single point");

  std::vector<Relation> levels{Relation::diagonal(n)};
  for (Level j = 1; j < k; ++j) {
    if (in.done()) in.fail("missing level " + std::to_string(j));
    auto line = in.next();
    std::string prefix = "level " + std::to_string(j) + " ";
    std::string_view body;
    if (strip_prefix(line.text, prefix + "cells:", body)) {
      levels.push_back(parse_cells(body, n, line.number));
    } else if (strip_prefix(line.text, prefix + "pairs:", body)) {
      levels.push_back(parse_pairs(body, n, line.number));
    } else {
      throw FormatError(line.number, "expected '" + prefix + "cells:' or '" + prefix + "pairs:'");
    }
  }
  if (k > 0) levels.push_back(Relation::full(n));
  return EntourageChain(n, std::move(levels));
}

EntourageChain parse_chain(std::string_view text) {
  LineReader in(text);
  EntourageChain chain = read_chain(in);
  if (!in.done()) in.fail("trailing content after ballean block");
  return chain;
}

namespace {

Tower as_tower(const EntourageChain& chain, std::size_t line) {
  if (auto t = Tower::from_chain(chain)) return *t;
  auto report = validate(chain);
  if (!report.valid) throw FormatError(line, "not a valid ballean: " + describe(report.violations[0]));
  for (Level j = 0; j <= chain.depth(); ++j) {
    if (!chain.level(j).is_transitive()) {
      throw FormatError(line, "not a tower: level " + std::to_string(j) + " is not transitive");
    }
  }
  throw FormatError(line, "not a tower");
}

}  // namespace

Tower read_tower(LineReader& in) {
  std::size_t line = in.done() ? 0 : in.current_line();
  return as_tower(read_chain(in), line);
}

Tower parse_tower(std::string_view text) {
  LineReader in(text);
  Tower t = read_tower(in);
  if (!in.done()) in.fail("trailing content after ballean block");
  return t;
}

}  // namespace coarsekit
