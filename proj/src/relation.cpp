#include "coarsekit/relation.hpp"

#include <stdexcept>

namespace coarsekit {

Relation Relation::diagonal(std::size_t n) {
  Relation r(n);
  for (Point x = 0; x < n; ++x) r.insert(x, x);
  return r;
}

Relation Relation::full(std::size_t n) {
  Relation r(n);
  r.bits_.assign(n * n, 1);
  return r;
}

std::vector<Point> Relation::row(Point x) const {
  std::vector<Point> out;
  for (Point y = 0; y < n_; ++y) {
    if (contains(x, y)) out.push_back(y);
  }
  return out;
}

std::size_t Relation::pair_count() const {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

bool Relation::is_reflexive() const {
  for (Point x = 0; x < n_; ++x) {
    if (!contains(x, x)) return false;
  }
  return true;
}

bool Relation::is_symmetric() const {
  for (Point x = 0; x < n_; ++x) {
    for (Point y = x + 1; y < n_; ++y) {
      if (contains(x, y) != contains(y, x)) return false;
    }
  }
  return true;
}

bool Relation::is_transitive() const { return compose(*this).is_subset_of(*this); }

bool Relation::is_subset_of(const Relation& other) const {
  if (other.n_ != n_) throw std::invalid_argument("relations on different sets");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && !other.bits_[i]) return false;
  }
  return true;
}

Relation Relation::compose(const Relation& other) const {
  if (other.n_ != n_) throw std::invalid_argument("relations on different sets");
  Relation r(n_);
  for (Point x = 0; x < n_; ++x) {
    for (Point y = 0; y < n_; ++y) {
      if (!contains(x, y)) continue;
      for (Point z = 0; z < n_; ++z) {
        if (other.contains(y, z)) r.insert(x, z);
      }
    }
  }
  return r;
}

Relation Relation::inverse() const {
  Relation r(n_);
  for (Point x = 0; x < n_; ++x) {
    for (Point y = 0; y < n_; ++y) {
      if (contains(x, y)) r.insert(y, x);
    }
  }
  return r;
}

Relation Relation::transitive_closure() const {
  // Warshall.
  Relation r = *this;
  for (Point k = 0; k < n_; ++k) {
    for (Point i = 0; i < n_; ++i) {
      if (!r.contains(i, k)) continue;
      for (Point j = 0; j < n_; ++j) {
        if (r.contains(k, j)) r.insert(i, j);
      }
    }
  }
  return r;
}

}  // namespace coarsekit
