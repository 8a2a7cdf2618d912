#include "families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace coarsekit::testing {

namespace {

void grow(std::vector<std::size_t>& rgs, std::size_t blocks, std::size_t n,
          std::vector<std::vector<std::size_t>>& out) {
  if (rgs.size() == n) {
    out.push_back(rgs);
    return;
  }
  for (std::size_t b = 0; b <= blocks; ++b) {
    rgs.push_back(b);
    grow(rgs, std::max(blocks, b + 1), n, out);
    rgs.pop_back();
  }
}

bool finer(const std::vector<std::size_t>& p, const std::vector<std::size_t>& q) {
  for (std::size_t x = 0; x < p.size(); ++x) {
    for (std::size_t y = x + 1; y < p.size(); ++y) {
      if (p[x] == p[y] && q[x] != q[y]) return false;
    }
  }
  return true;
}

void chains(const std::vector<std::vector<std::size_t>>& parts,
            const std::vector<std::vector<bool>>& below, std::size_t remaining,
            std::vector<std::size_t>& chosen, std::vector<std::vector<std::size_t>>& out) {
  if (remaining == 0) {
    out.push_back(chosen);
    return;
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!chosen.empty() && !below[chosen.back()][i]) continue;
    chosen.push_back(i);
    chains(parts, below, remaining - 1, chosen, out);
    chosen.pop_back();
  }
}

std::string encode(const Tower& t, Level level, std::size_t cls) {
  if (level == 0) return "()";
  std::set<std::size_t> children;
  for (Point x = 0; x < t.size(); ++x) {
    if (t.class_of(level, x) == cls) children.insert(t.class_of(level - 1, x));
  }
  std::vector<std::string> parts;
  for (auto c : children) parts.push_back(encode(t, level - 1, c));
  std::sort(parts.begin(), parts.end());
  std::string s = "(";
  for (const auto& p : parts) s += p;
  return s + ")";
}

}  // namespace

std::vector<std::vector<std::size_t>> set_partitions(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> rgs;
  if (n == 0) return out;
  grow(rgs, 0, n, out);
  return out;
}

std::vector<Tower> all_towers(std::size_t n, Level depth) {
  std::vector<Tower> out;
  if (depth == 0) {
    if (n == 1) out.emplace_back(1, std::vector<std::vector<std::size_t>>{{0}});
    return out;
  }
  auto parts = set_partitions(n);
  std::vector<std::vector<bool>> below(parts.size(), std::vector<bool>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size(); ++j) below[i][j] = finer(parts[i], parts[j]);
  }
  std::vector<std::vector<std::size_t>> picks;
  std::vector<std::size_t> chosen;
  chains(parts, below, depth - 1, chosen, picks);
  std::vector<std::size_t> discrete(n), full(n, 0);
  std::iota(discrete.begin(), discrete.end(), 0);
  for (const auto& pick : picks) {
    std::vector<std::vector<std::size_t>> labels{discrete};
    for (auto i : pick) labels.push_back(parts[i]);
    labels.push_back(full);
    out.emplace_back(n, std::move(labels));
  }
  return out;
}

std::string canonical_form(const Tower& tower) {
  return std::to_string(tower.depth()) + ":" + encode(tower, tower.depth(), 0);
}

std::vector<Tower> towers_up_to_iso(std::size_t max_points, Level max_depth) {
  std::vector<Tower> out;
  std::set<std::string> seen;
  for (std::size_t n = 1; n <= max_points; ++n) {
    for (Level k = (n == 1 ? 0 : 1); k <= max_depth; ++k) {
      for (auto& t : all_towers(n, k)) {
        if (seen.insert(canonical_form(t)).second) out.push_back(std::move(t));
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> factor_sequences(std::size_t max_points, Level max_depth) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::vector<std::size_t>> layer{{}};
  for (Level k = 1; k <= max_depth; ++k) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& seq : layer) {
      std::size_t prod = 1;
      for (auto f : seq) prod *= f;
      for (std::size_t f = 1; prod * f <= max_points; ++f) {
        auto s = seq;
        s.push_back(f);
        next.push_back(s);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

Tower random_tower(std::mt19937_64& rng, std::size_t points, Level depth) {
  std::vector<std::size_t> discrete(points);
  std::iota(discrete.begin(), discrete.end(), 0);
  std::vector<std::vector<std::size_t>> labels{discrete};
  std::vector<std::size_t> cur = discrete;
  for (Level j = 1; j < depth; ++j) {
    std::set<std::size_t> names(cur.begin(), cur.end());
    std::vector<std::size_t> classes(names.begin(), names.end());
    std::uniform_int_distribution<std::size_t> merges(0, classes.size() - 1);
    std::size_t m = merges(rng);
    std::map<std::size_t, std::size_t> parent;
    for (auto c : classes) parent[c] = c;
    auto find = [&](std::size_t c) {
      while (parent[c] != c) c = parent[c];
      return c;
    };
    std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
    for (std::size_t i = 0; i < m; ++i) {
      auto a = find(classes[pick(rng)]);
      auto b = find(classes[pick(rng)]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    for (auto& l : cur) l = find(l);
    labels.push_back(cur);
  }
  if (depth > 0) labels.push_back(std::vector<std::size_t>(points, 0));
  return Tower(points, std::move(labels));
}

Tower relabel(const Tower& tower, const std::vector<Point>& perm) {
  std::vector<std::vector<std::size_t>> labels;
  for (const auto& level : tower.labels()) {
    std::vector<std::size_t> l(tower.size());
    for (Point p = 0; p < tower.size(); ++p) l[p] = level[perm[p]];
    labels.push_back(std::move(l));
  }
  return Tower(tower.size(), std::move(labels));
}

std::vector<Point> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<Point> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace coarsekit::testing
