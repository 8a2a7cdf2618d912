// Ball coordinatization of a tower into a product tower.
//
// Fix a well-order on the points (a permutation listing them from least to
// greatest). For a level-(a+1) class B, the level-a classes inside B are
// numbered: the class of min B gets 0, the rest follow by ascending minimum.
// n_a(y) is the number of y's level-a class. The code of y relative to a
// basepoint x is defined by recursion on D = d(x, y):
//
//   f_x(y) = 0                                  if D = 0
//   f_x(y) = f_c(y) + n_{D-1}(y) * e_{D-1}      otherwise, c = min of y's level-(D-1) class
//
// Codes live in the product of the upper branching counts.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coarsekit/ballean.hpp"
#include "coarsekit/text_format.hpp"

namespace coarsekit {

using Code = std::vector<std::size_t>;

std::vector<Point> natural_order(std::size_t n);

struct Numbering {
  std::vector<Point> order;  // order[i] is the i-th point
  std::vector<std::size_t> rank;  // inverse of order
  // rep[a][y]: least point of y's level-a class, a = 0..depth.
  std::vector<std::vector<Point>> rep;
  // num[a][y]: n_a(y), a = 0..depth-1.
  std::vector<std::vector<std::size_t>> num;
};

// Throws std::invalid_argument unless order is a permutation of the points.
Numbering numbering(const Tower& tower, std::span<const Point> order);

struct CoordMap {
  Tower source;
  Point base = 0;
  Numbering numbers;
  std::vector<std::size_t> lower;  // min branching per level
  std::vector<std::size_t> upper;  // max branching per level
  std::vector<Code> codes;         // codes[y] = f_base(y)

  Tower target() const;
  // Point of target() with the given code.
  Point target_point(const Code& code) const;
};

CoordMap coordinatize(const Tower& tower, Point base, std::span<const Point> order);
CoordMap coordinatize(const Tower& tower, Point base);
// Basepoint = least point of the order.
CoordMap coordinatize(const Tower& tower);

struct CoordinatizationReport {
  bool truncation_law = true;
  std::optional<Point> truncation_witness;
  bool forward_coarse = true;
  std::optional<std::pair<Point, Point>> forward_witness;
  bool base_is_min = false;
  // Checked only when base_is_min.
  std::optional<bool> agreement_law;
  std::optional<bool> injective;
  std::optional<bool> image_contains_lower;
  bool image_within_upper = true;
  // Largest level-diameter of a set of points sharing a code.
  Level inverse_shift = 0;

  bool pass() const;
};

CoordinatizationReport verify_coordinatization(const CoordMap& cm);
std::string describe(const CoordinatizationReport& report);

// coordmap v1 / base x / order ... / code y: v0 v1 ...
struct CodeTable {
  Point base = 0;
  std::vector<Point> order;
  std::vector<Code> codes;

  friend bool operator==(const CodeTable&, const CodeTable&) = default;
};

CodeTable code_table(const CoordMap& cm);
std::string write_coordmap(const CoordMap& cm);
CodeTable parse_coordmap(std::string_view text);

}  // namespace coarsekit
