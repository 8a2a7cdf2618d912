#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace coarsekit {

using Point = std::size_t;
using Level = std::size_t;

// Dense binary relation on {0, ..., n-1}.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  static Relation diagonal(std::size_t n);
  static Relation full(std::size_t n);

  std::size_t size() const { return n_; }
  bool contains(Point x, Point y) const { return bits_[x * n_ + y] != 0; }
  void insert(Point x, Point y) { bits_[x * n_ + y] = 1; }
  void insert_symmetric(Point x, Point y) {
    insert(x, y);
    insert(y, x);
  }

  // {y : (x, y) in this}, ascending.
  std::vector<Point> row(Point x) const;
  std::size_t pair_count() const;

  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool is_subset_of(const Relation& other) const;

  Relation compose(const Relation& other) const;
  Relation inverse() const;
  Relation transitive_closure() const;

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

}  // namespace coarsekit
