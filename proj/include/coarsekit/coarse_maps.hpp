// Multi-maps between finite balleans.
//
// A multi-map is a relation Phi between the point sets of a source and a
// target chain. Coarseness is quantified per level by a ShiftFn: Phi is
// shift-coarse when the oscillation of every source level a lies inside
// target level shift(a). The constant family shift(a) = min(a + s, top) is
// what "shift s" means throughout.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coarsekit/ballean.hpp"
#include "coarsekit/text_format.hpp"

namespace coarsekit {

class MultiMap {
 public:
  MultiMap() = default;
  MultiMap(std::size_t source_size, std::size_t target_size);

  static MultiMap identity(std::size_t n);
  // values[x] is the single image of x.
  static MultiMap from_function(std::size_t target_size, const std::vector<Point>& values);

  std::size_t source_size() const { return images_.size(); }
  std::size_t target_size() const { return target_size_; }

  void add(Point x, Point y);
  bool contains(Point x, Point y) const;
  // Ascending.
  const std::vector<Point>& image(Point x) const { return images_.at(x); }
  std::vector<std::pair<Point, Point>> pairs() const;
  std::size_t pair_count() const;

  friend bool operator==(const MultiMap&, const MultiMap&) = default;

 private:
  std::size_t target_size_ = 0;
  std::vector<std::vector<Point>> images_;
};

MultiMap inverse(const MultiMap& phi);
// psi o phi. Throws std::invalid_argument if phi's target is not psi's source.
MultiMap compose(const MultiMap& psi, const MultiMap& phi);

struct ShiftFn {
  std::vector<Level> table;

  static ShiftFn constant(Level source_depth, Level target_depth, std::size_t shift);
  static ShiftFn identity(Level depth);

  Level operator()(Level a) const { return table.at(a); }
  friend bool operator==(const ShiftFn&, const ShiftFn&) = default;
};

// Monotone, one entry per source level, values within the target levels.
bool is_valid_shift(const ShiftFn& shift, Level source_depth, Level target_depth);

// Union of Phi(x) x Phi(x') over (x, x') in source level a.
Relation oscillation(const EntourageChain& source, const EntourageChain& target,
                     const MultiMap& phi, Level a);

struct CoarseReport {
  bool pass = true;
  std::optional<Level> failing_level;
  std::pair<Point, Point> source_witness{0, 0};
  std::pair<Point, Point> target_witness{0, 0};
  std::optional<Level> allowed_level;
  // Least target level containing the oscillation of each source level;
  // empty optional if no level does.
  std::vector<std::optional<Level>> required;
  // Least s for which the constant shift s works.
  std::optional<std::size_t> min_constant_shift;
  // Source points with empty image; they contribute nothing.
  std::vector<Point> empty_images;
};

// Throws std::invalid_argument if the shift function is not valid.
CoarseReport check_coarse(const EntourageChain& source, const EntourageChain& target,
                          const MultiMap& phi, const ShiftFn& shift);

struct EquivalenceReport {
  bool pass = false;
  bool total = true;
  std::optional<Point> unmapped_source;
  bool surjective = true;
  std::optional<Point> unreached_target;
  CoarseReport forward;
  CoarseReport backward;
  // Least constant shifts making Phi and its inverse coarse.
  std::optional<std::size_t> shift_fwd;
  std::optional<std::size_t> shift_bwd;

  // Empty when the check passed.
  std::string first_failure() const;
};

EquivalenceReport check_equivalence(const EntourageChain& source, const EntourageChain& target,
                                    const MultiMap& phi, const ShiftFn& forward,
                                    const ShiftFn& backward);
EquivalenceReport check_equivalence(const EntourageChain& source, const EntourageChain& target,
                                    const MultiMap& phi, std::size_t shift_fwd,
                                    std::size_t shift_bwd);

class SearchCapExceeded : public std::runtime_error {
 public:
  explicit SearchCapExceeded(std::uint64_t cap);
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t cap_;
};

inline constexpr std::uint64_t kDefaultSearchCap = 10'000'000;
// kDefaultSearchCap, or COARSEKIT_SEARCH_CAP when set to a positive integer.
std::uint64_t default_search_cap();

struct SearchOptions {
  std::size_t max_shift = 0;
  // Only equivalences containing this pair are accepted.
  std::optional<std::pair<Point, Point>> required_pair;
  std::uint64_t node_cap = default_search_cap();
};

// Exhaustive search for a multi-map that is total, surjective and coarse in
// both directions with constant shift max_shift. Returns nullopt when none
// exists. Throws SearchCapExceeded past node_cap search nodes and
// std::invalid_argument on invalid chains.
std::optional<MultiMap> search_equivalence(const EntourageChain& source,
                                           const EntourageChain& target,
                                           const SearchOptions& options);

// Least s <= max_shift for which search_equivalence succeeds.
std::optional<std::size_t> min_shift(const EntourageChain& source, const EntourageChain& target,
                                     std::size_t max_shift,
                                     std::uint64_t node_cap = default_search_cap());

// A bijection between large subsets carved out of an equivalence Phi by
// greedy matching over its pairs in lexicographic order.
struct LargeSubsetBijection {
  std::vector<Point> source_points;
  std::vector<Point> target_points;  // image of source_points[i]
  std::optional<Level> source_level;  // largeness level of source_points
  std::optional<Level> target_level;
};

LargeSubsetBijection large_subset_bijection(const EntourageChain& source,
                                            const EntourageChain& target, const MultiMap& phi);

// multimap v1 / source N / target M / pair x y ...
std::string write_multimap(const MultiMap& phi);
MultiMap read_multimap(LineReader& in);
MultiMap parse_multimap(std::string_view text);

// "0 1 2 3"
std::string format_shift(const ShiftFn& shift);
ShiftFn parse_shift(std::string_view text, std::size_t line);

}  // namespace coarsekit
