// Finite balleans.
//
// An EntourageChain is a point set {0, ..., n-1} with a nested sequence of
// reflexive symmetric relations eps_0 = diagonal, ..., eps_k = full. The
// chain is the base of the coarse structure; level indices play the role of
// radii.
//
// A Tower is the cellular case: every level is an equivalence relation, so
// the chain is stored as a sequence of partitions, each coarsening the one
// below. Towers keep repeated levels (gen_product({4, 1}) has level 1 equal
// to level 2) because level indices carry meaning in shift bookkeeping.
//
// Index convention for products: a point of gen_product(sizes) is the tuple
// (x_0, ..., x_{k-1}) packed little-endian, and level j identifies tuples
// that agree on every coordinate >= j.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coarsekit/relation.hpp"

namespace coarsekit {

class EntourageChain {
 public:
  EntourageChain() = default;
  // Throws std::invalid_argument if no levels are given or a level has the
  // wrong size. Ballean axioms are not checked here; see validate().
  EntourageChain(std::size_t points, std::vector<Relation> levels);

  std::size_t size() const { return points_; }
  Level depth() const { return levels_.size() - 1; }
  const Relation& level(Level i) const { return levels_.at(i); }
  const std::vector<Relation>& levels() const { return levels_; }

  friend bool operator==(const EntourageChain&, const EntourageChain&) = default;

 private:
  std::size_t points_ = 0;
  std::vector<Relation> levels_;
};

class Tower {
 public:
  Tower() = default;
  // labels[j][x] names the level-j class of x. Labels are renumbered so that
  // classes are indexed in order of their least point. Throws
  // std::invalid_argument unless level 0 is discrete, the top level is a
  // single class and each level coarsens the previous one.
  Tower(std::size_t points, std::vector<std::vector<std::size_t>> labels);

  // Intermediate levels 1..depth-1 given as lists of cells.
  static Tower from_cells(std::size_t points, Level depth,
                          const std::vector<std::vector<std::vector<Point>>>& cells);
  // Succeeds iff every level of the chain is an equivalence relation, the
  // levels are nested, level 0 is the diagonal and the top level is full.
  static std::optional<Tower> from_chain(const EntourageChain& chain);

  std::size_t size() const { return points_; }
  Level depth() const { return labels_.size() - 1; }

  std::size_t class_of(Level level, Point x) const { return labels_.at(level).at(x); }
  std::size_t class_count(Level level) const { return counts_.at(level); }
  bool same_class(Level level, Point x, Point y) const {
    return labels_.at(level).at(x) == labels_.at(level).at(y);
  }
  // Classes of one level, each ascending, ordered by least point.
  std::vector<std::vector<Point>> classes(Level level) const;
  const std::vector<std::vector<std::size_t>>& labels() const { return labels_; }

  // Least level at which x and y share a class; an ultrametric.
  Level distance(Point x, Point y) const;

  EntourageChain to_chain() const;

  friend bool operator==(const Tower&, const Tower&) = default;

 private:
  std::size_t points_ = 0;
  std::vector<std::vector<std::size_t>> labels_;
  std::vector<std::size_t> counts_;
};

enum class ViolationKind {
  NotReflexive,
  NotSymmetric,
  NotNested,
  BottomNotDiagonal,
  TopNotFull,
  NoCompositionBound,
};

struct Violation {
  ViolationKind kind;
  Level level;
  Point x;
  Point y;
};

std::string describe(const Violation& v);

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
  // composition_level[i] is the least j with eps_i o eps_i contained in
  // eps_j, when such a level exists.
  std::vector<std::optional<Level>> composition_level;
};

ValidationReport validate(const EntourageChain& chain);

std::vector<Point> ball(const EntourageChain& chain, Point x, Level level);
std::vector<Point> ball(const Tower& tower, Point x, Level level);

struct CoverResult {
  std::size_t count = 0;
  // False when the count is a greedy upper bound (non-transitive level on
  // more than kExactCoverLimit points).
  bool exact = true;
};

inline constexpr std::size_t kExactCoverLimit = 24;

// Least number of eps_level balls (centres anywhere) whose union contains A.
// Throws std::invalid_argument for empty A or out-of-range input.
CoverResult cover_number(const EntourageChain& chain, std::span<const Point> a, Level level);
std::size_t cover_number(const Tower& tower, std::span<const Point> a, Level level);

Level level_distance(const Tower& tower, Point x, Point y);

// dist[x][y] = least level of the chain containing (x, y).
std::vector<std::vector<Level>> distance_table(const EntourageChain& chain);
std::vector<std::vector<Level>> distance_table(const Tower& tower);

// Branching counts kappa_a(x) = number of level-a classes inside the
// level-(a+1) class of x, for a < depth.
struct Spectrum {
  std::vector<std::vector<std::size_t>> per_point;  // [a][x]
  std::vector<std::size_t> min;
  std::vector<std::size_t> max;
  bool uniform = true;
};

Spectrum spectrum(const Tower& tower);

Tower gen_product(std::span<const std::size_t> sizes);
Tower gen_cube(std::size_t depth);
// eps_i = {(x, y) : |x - y| <= radii[i-1]} below eps_0 = diagonal.
EntourageChain gen_interval(std::size_t points, std::span<const std::size_t> radii);

bool is_cellular(const EntourageChain& chain);
// Transitive closure of each level, then normalize().
Tower cellular_hull(const EntourageChain& chain);
// Drops levels equal to their predecessor.
EntourageChain normalize(const EntourageChain& chain);

struct Subspace {
  EntourageChain chain;
  // Subspace point i is original point points[i].
  std::vector<Point> points;
  // Original level j restricts to subspace level level_map[j].
  std::vector<Level> level_map;
};

// Restriction of every level to A x A, normalized. Throws for empty A.
Subspace subspace(const EntourageChain& chain, std::span<const Point> a);

// Least level a with B(L, eps_a) = X.
std::optional<Level> large_level(const EntourageChain& chain, std::span<const Point> l);

}  // namespace coarsekit
