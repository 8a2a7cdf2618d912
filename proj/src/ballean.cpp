#include "coarsekit/ballean.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>

namespace coarsekit {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_point(std::size_t n, Point x) {
  if (x >= n) throw std::invalid_argument("point " + std::to_string(x) + " out of range");
}

std::vector<Point> sorted_unique(std::span<const Point> a) {
  std::vector<Point> v(a.begin(), a.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Tower tower_from_relations(std::size_t n, const std::vector<Relation>& levels) {
  std::vector<std::vector<std::size_t>> labels;
  for (const auto& r : levels) {
    std::vector<std::size_t> lab(n, kNone);
    std::size_t next = 0;
    for (Point x = 0; x < n; ++x) {
      if (lab[x] != kNone) continue;
      for (Point y = x; y < n; ++y) {
        if (r.contains(x, y)) lab[y] = next;
      }
      ++next;
    }
    labels.push_back(std::move(lab));
  }
  return Tower(n, std::move(labels));
}

}  // namespace

EntourageChain::EntourageChain(std::size_t points, std::vector<Relation> levels)
    : points_(points), levels_(std::move(levels)) {
  if (levels_.empty()) throw std::invalid_argument("a chain needs at least one level");
  for (const auto& r : levels_) {
    if (r.size() != points_) throw std::invalid_argument("level size does not match point count");
  }
}

Tower::Tower(std::size_t points, std::vector<std::vector<std::size_t>> labels) : points_(points) {
  if (points == 0) throw std::invalid_argument("a tower needs at least one point");
  if (labels.empty()) throw std::invalid_argument("a tower needs at least one level");
  for (auto& lab : labels) {
    if (lab.size() != points) throw std::invalid_argument("label row has wrong length");
    // Renumber by first appearance.
    std::map<std::size_t, std::size_t> rename;
    for (auto& v : lab) {
      auto [it, inserted] = rename.try_emplace(v, rename.size());
      v = it->second;
    }
    counts_.push_back(rename.size());
  }
  labels_ = std::move(labels);
  if (counts_.front() != points) throw std::invalid_argument("level 0 must be discrete");
  if (counts_.back() != 1) throw std::invalid_argument("top level must be a single class");
  for (Level j = 0; j + 1 < labels_.size(); ++j) {
    std::vector<std::size_t> parent(counts_[j], kNone);
    for (Point x = 0; x < points; ++x) {
      std::size_t& p = parent[labels_[j][x]];
      if (p == kNone) {
        p = labels_[j + 1][x];
      } else if (p != labels_[j + 1][x]) {
        throw std::invalid_argument("level " + std::to_string(j + 1) + " does not coarsen level " +
                                    std::to_string(j));
      }
    }
  }
}

Tower Tower::from_cells(std::size_t points, Level depth,
                        const std::vector<std::vector<std::vector<Point>>>& cells) {
  if (points == 0) throw std::invalid_argument("a tower needs at least one point");
  if (depth == 0 && points != 1) throw std::invalid_argument("depth 0 requires a single point");
  if (depth > 0 && cells.size() != depth - 1) {
    throw std::invalid_argument("expected cells for levels 1.." + std::to_string(depth - 1));
  }
  std::vector<std::vector<std::size_t>> labels;
  std::vector<std::size_t> discrete(points);
  for (Point x = 0; x < points; ++x) discrete[x] = x;
  labels.push_back(discrete);
  for (const auto& level : cells) {
    std::vector<std::size_t> lab(points, kNone);
    for (std::size_t c = 0; c < level.size(); ++c) {
      for (Point x : level[c]) {
        check_point(points, x);
        if (lab[x] != kNone) throw std::invalid_argument("point " + std::to_string(x) + " in two cells");
        lab[x] = c;
      }
    }
    for (Point x = 0; x < points; ++x) {
      if (lab[x] == kNone) throw std::invalid_argument("point " + std::to_string(x) + " in no cell");
    }
    labels.push_back(std::move(lab));
  }
  if (depth > 0) labels.push_back(std::vector<std::size_t>(points, 0));
  return Tower(points, std::move(labels));
}

std::optional<Tower> Tower::from_chain(const EntourageChain& chain) {
  const std::size_t n = chain.size();
  if (n == 0) return std::nullopt;
  if (!(chain.level(0) == Relation::diagonal(n))) return std::nullopt;
  if (!(chain.levels().back() == Relation::full(n))) return std::nullopt;
  for (Level j = 0; j <= chain.depth(); ++j) {
    const Relation& r = chain.level(j);
    if (!r.is_reflexive() || !r.is_symmetric() || !r.is_transitive()) return std::nullopt;
    if (j > 0 && !chain.level(j - 1).is_subset_of(r)) return std::nullopt;
  }
  return tower_from_relations(n, chain.levels());
}

std::vector<std::vector<Point>> Tower::classes(Level level) const {
  std::vector<std::vector<Point>> out(class_count(level));
  for (Point x = 0; x < points_; ++x) out[labels_.at(level)[x]].push_back(x);
  return out;
}

Level Tower::distance(Point x, Point y) const {
  check_point(points_, x);
  check_point(points_, y);
  for (Level j = 0; j < labels_.size(); ++j) {
    if (labels_[j][x] == labels_[j][y]) return j;
  }
  return depth();
}

EntourageChain Tower::to_chain() const {
  std::vector<Relation> levels;
  for (Level j = 0; j <= depth(); ++j) {
    Relation r(points_);
    for (Point x = 0; x < points_; ++x) {
      for (Point y = 0; y < points_; ++y) {
        if (labels_[j][x] == labels_[j][y]) r.insert(x, y);
      }
    }
    levels.push_back(std::move(r));
  }
  return EntourageChain(points_, std::move(levels));
}

std::string describe(const Violation& v) {
  auto pair = "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
  auto at = " at level " + std::to_string(v.level);
  switch (v.kind) {
    case ViolationKind::NotReflexive:
      return "not reflexive" + at + ": missing " + pair;
    case ViolationKind::NotSymmetric:
      return "not symmetric" + at + ": " + pair + " present, reverse missing";
    case ViolationKind::NotNested:
      return "not nested" + at + ": " + pair + " missing from level " + std::to_string(v.level + 1);
    case ViolationKind::BottomNotDiagonal:
      return "level 0 is not the diagonal: contains " + pair;
    case ViolationKind::TopNotFull:
      return "top level is not full: missing " + pair;
    case ViolationKind::NoCompositionBound:
      return "composition of level " + std::to_string(v.level) + " with itself fits no level: " +
             pair;
  }
  return {};
}

ValidationReport validate(const EntourageChain& chain) {
  ValidationReport report;
  const std::size_t n = chain.size();
  const Level k = chain.depth();
  auto add = [&](ViolationKind kind, Level level, Point x, Point y) {
    report.valid = false;
    report.violations.push_back({kind, level, x, y});
  };
  for (Level j = 0; j <= k; ++j) {
    const Relation& r = chain.level(j);
    for (Point x = 0; x < n; ++x) {
      if (!r.contains(x, x)) add(ViolationKind::NotReflexive, j, x, x);
      for (Point y = 0; y < n; ++y) {
        if (r.contains(x, y) && !r.contains(y, x)) add(ViolationKind::NotSymmetric, j, x, y);
        if (j < k && r.contains(x, y) && !chain.level(j + 1).contains(x, y)) {
          add(ViolationKind::NotNested, j, x, y);
        }
      }
    }
  }
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      if (x != y && chain.level(0).contains(x, y)) add(ViolationKind::BottomNotDiagonal, 0, x, y);
      if (!chain.level(k).contains(x, y)) add(ViolationKind::TopNotFull, k, x, y);
    }
  }
  for (Level j = 0; j <= k; ++j) {
    Relation sq = chain.level(j).compose(chain.level(j));
    std::optional<Level> bound;
    for (Level i = 0; i <= k; ++i) {
      if (sq.is_subset_of(chain.level(i))) {
        bound = i;
        break;
      }
    }
    report.composition_level.push_back(bound);
    if (!bound) {
      for (Point x = 0; x < n; ++x) {
        for (Point y = 0; y < n; ++y) {
          if (sq.contains(x, y) && !chain.level(k).contains(x, y)) {
            add(ViolationKind::NoCompositionBound, j, x, y);
            x = n;
            break;
          }
        }
      }
    }
  }
  return report;
}

std::vector<Point> ball(const EntourageChain& chain, Point x, Level level) {
  check_point(chain.size(), x);
  if (level > chain.depth()) throw std::invalid_argument("level out of range");
  return chain.level(level).row(x);
}

std::vector<Point> ball(const Tower& tower, Point x, Level level) {
  check_point(tower.size(), x);
  if (level > tower.depth()) throw std::invalid_argument("level out of range");
  std::vector<Point> out;
  for (Point y = 0; y < tower.size(); ++y) {
    if (tower.same_class(level, x, y)) out.push_back(y);
  }
  return out;
}

namespace {

using Mask = std::uint32_t;

void exact_cover(Mask uncovered, const std::vector<Mask>& balls, std::size_t used,
                 std::size_t& best) {
  if (uncovered == 0) {
    best = std::min(best, used);
    return;
  }
  if (used + 1 >= best) return;
  const int e = std::countr_zero(uncovered);
  for (Mask b : balls) {
    if (b & (Mask{1} << e)) exact_cover(uncovered & ~b, balls, used + 1, best);
  }
}

}  // namespace

CoverResult cover_number(const EntourageChain& chain, std::span<const Point> a, Level level) {
  if (a.empty()) throw std::invalid_argument("cannot cover an empty set");
  if (level > chain.depth()) throw std::invalid_argument("level out of range");
  const std::size_t n = chain.size();
  for (Point x : a) check_point(n, x);
  const std::vector<Point> target = sorted_unique(a);
  const Relation& r = chain.level(level);

  if (r.is_transitive()) {
    std::vector<bool> seen(n, false);
    std::size_t count = 0;
    for (Point x : target) {
      if (seen[x]) continue;
      ++count;
      for (Point y : r.row(x)) seen[y] = true;
    }
    return {count, true};
  }

  // Greedy bound.
  std::vector<bool> covered(n, true);
  for (Point x : target) covered[x] = false;
  std::size_t remaining = target.size();
  std::size_t greedy = 0;
  while (remaining > 0) {
    Point best_centre = 0;
    std::size_t best_gain = 0;
    for (Point c = 0; c < n; ++c) {
      std::size_t gain = 0;
      for (Point y : r.row(c)) gain += covered[y] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best_centre = c;
      }
    }
    if (best_gain == 0) throw std::invalid_argument("level is not reflexive");
    for (Point y : r.row(best_centre)) {
      if (!covered[y]) {
        covered[y] = true;
        --remaining;
      }
    }
    ++greedy;
  }
  if (n > kExactCoverLimit) return {greedy, false};

  std::vector<Mask> balls;
  for (Point c = 0; c < n; ++c) {
    Mask m = 0;
    for (Point y : r.row(c)) m |= Mask{1} << y;
    balls.push_back(m);
  }
  Mask goal = 0;
  for (Point x : target) goal |= Mask{1} << x;
  std::size_t best = greedy;
  exact_cover(goal, balls, 0, best);
  return {best, true};
}

std::size_t cover_number(const Tower& tower, std::span<const Point> a, Level level) {
  if (a.empty()) throw std::invalid_argument("cannot cover an empty set");
  if (level > tower.depth()) throw std::invalid_argument("level out of range");
  std::vector<bool> hit(tower.class_count(level), false);
  std::size_t count = 0;
  for (Point x : a) {
    check_point(tower.size(), x);
    std::size_t c = tower.class_of(level, x);
    if (!hit[c]) {
      hit[c] = true;
      ++count;
    }
  }
  return count;
}

Level level_distance(const Tower& tower, Point x, Point y) { return tower.distance(x, y); }

std::vector<std::vector<Level>> distance_table(const EntourageChain& chain) {
  const std::size_t n = chain.size();
  std::vector<std::vector<Level>> d(n, std::vector<Level>(n, chain.depth()));
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) {
      for (Level j = 0; j <= chain.depth(); ++j) {
        if (chain.level(j).contains(x, y)) {
          d[x][y] = j;
          break;
        }
      }
    }
  }
  return d;
}

std::vector<std::vector<Level>> distance_table(const Tower& tower) {
  const std::size_t n = tower.size();
  std::vector<std::vector<Level>> d(n, std::vector<Level>(n, 0));
  for (Point x = 0; x < n; ++x) {
    for (Point y = 0; y < n; ++y) d[x][y] = tower.distance(x, y);
  }
  return d;
}

Spectrum spectrum(const Tower& tower) {
  Spectrum s;
  const std::size_t n = tower.size();
  for (Level a = 0; a < tower.depth(); ++a) {
    // Distinct level-a classes per level-(a+1) class.
    std::vector<std::vector<bool>> seen(tower.class_count(a + 1),
                                        std::vector<bool>(tower.class_count(a), false));
    std::vector<std::size_t> count(tower.class_count(a + 1), 0);
    for (Point x = 0; x < n; ++x) {
      auto up = tower.class_of(a + 1, x);
      auto down = tower.class_of(a, x);
      if (!seen[up][down]) {
        seen[up][down] = true;
        ++count[up];
      }
    }
    std::vector<std::size_t> row(n);
    for (Point x = 0; x < n; ++x) row[x] = count[tower.class_of(a + 1, x)];
    s.min.push_back(*std::min_element(row.begin(), row.end()));
    s.max.push_back(*std::max_element(row.begin(), row.end()));
    if (s.min.back() != s.max.back()) s.uniform = false;
    s.per_point.push_back(std::move(row));
  }
  return s;
}

Tower gen_product(std::span<const std::size_t> sizes) {
  std::size_t n = 1;
  for (auto s : sizes) {
    if (s == 0) throw std::invalid_argument("product factor must be positive");
    if (n > std::numeric_limits<std::size_t>::max() / s) throw std::overflow_error("product too large");
    n *= s;
  }
  std::vector<std::vector<std::size_t>> labels;
  std::size_t block = 1;
  for (Level j = 0; j <= sizes.size(); ++j) {
    std::vector<std::size_t> lab(n);
    for (Point x = 0; x < n; ++x) lab[x] = x / block;
    labels.push_back(std::move(lab));
    if (j < sizes.size()) block *= sizes[j];
  }
  return Tower(n, std::move(labels));
}

Tower gen_cube(std::size_t depth) {
  std::vector<std::size_t> sizes(depth, 2);
  return gen_product(sizes);
}

EntourageChain gen_interval(std::size_t points, std::span<const std::size_t> radii) {
  if (points == 0) throw std::invalid_argument("an interval chain needs at least one point");
  if (radii.empty()) throw std::invalid_argument("at least one radius is required");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] == 0) throw std::invalid_argument("radii must be positive");
    if (i > 0 && radii[i] <= radii[i - 1]) throw std::invalid_argument("radii must strictly increase");
  }
  if (radii.back() + 1 < points) throw std::invalid_argument("largest radius must be at least points - 1");
  std::vector<Relation> levels{Relation::diagonal(points)};
  for (auto r : radii) {
    Relation rel(points);
    for (Point x = 0; x < points; ++x) {
      for (Point y = 0; y < points; ++y) {
        if ((x > y ? x - y : y - x) <= r) rel.insert(x, y);
      }
    }
    levels.push_back(std::move(rel));
  }
  return EntourageChain(points, std::move(levels));
}

bool is_cellular(const EntourageChain& chain) {
  for (const auto& r : chain.levels()) {
    if (!r.is_transitive()) return false;
  }
  return true;
}

EntourageChain normalize(const EntourageChain& chain) {
  std::vector<Relation> levels;
  for (const auto& r : chain.levels()) {
    if (levels.empty() || !(levels.back() == r)) levels.push_back(r);
  }
  return EntourageChain(chain.size(), std::move(levels));
}

Tower cellular_hull(const EntourageChain& chain) {
  std::vector<Relation> closed;
  for (const auto& r : chain.levels()) closed.push_back(r.transitive_closure());
  auto hull = Tower::from_chain(normalize(EntourageChain(chain.size(), std::move(closed))));
  if (!hull) throw std::invalid_argument("cellular hull of an invalid chain");
  return *hull;
}

Subspace subspace(const EntourageChain& chain, std::span<const Point> a) {
  if (a.empty()) throw std::invalid_argument("subspace of an empty set");
  for (Point x : a) check_point(chain.size(), x);
  Subspace sub;
  sub.points = sorted_unique(a);
  const std::size_t m = sub.points.size();
  std::vector<Relation> levels;
  for (const auto& r : chain.levels()) {
    Relation restricted(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (r.contains(sub.points[i], sub.points[j])) restricted.insert(i, j);
      }
    }
    if (levels.empty() || !(levels.back() == restricted)) levels.push_back(restricted);
    sub.level_map.push_back(levels.size() - 1);
  }
  sub.chain = EntourageChain(m, std::move(levels));
  return sub;
}

std::optional<Level> large_level(const EntourageChain& chain, std::span<const Point> l) {
  if (l.empty()) throw std::invalid_argument("largeness of an empty set");
  for (Point x : l) check_point(chain.size(), x);
  for (Level j = 0; j <= chain.depth(); ++j) {
    std::vector<bool> covered(chain.size(), false);
    for (Point c : l) {
      for (Point y : chain.level(j).row(c)) covered[y] = true;
    }
    if (std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) return j;
  }
  return std::nullopt;
}

}  // namespace coarsekit
