#include "coarsekit/coarse_maps.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace coarsekit {

MultiMap::MultiMap(std::size_t source_size, std::size_t target_size)
    : target_size_(target_size), images_(source_size) {}

MultiMap MultiMap::identity(std::size_t n) {
  MultiMap m(n, n);
  for (Point x = 0; x < n; ++x) m.images_[x] = {x};
  return m;
}

MultiMap MultiMap::from_function(std::size_t target_size, const std::vector<Point>& values) {
  MultiMap m(values.size(), target_size);
  for (Point x = 0; x < values.size(); ++x) m.add(x, values[x]);
  return m;
}

void MultiMap::add(Point x, Point y) {
  if (x >= images_.size() || y >= target_size_) {
    throw std::out_of_range("multimap pair (" + std::to_string(x) + "," + std::to_string(y) +
                            ") out of range");
  }
  auto& img = images_[x];
  auto it = std::lower_bound(img.begin(), img.end(), y);
  if (it == img.end() || *it != y) img.insert(it, y);
}

bool MultiMap::contains(Point x, Point y) const {
  const auto& img = images_.at(x);
  return std::binary_search(img.begin(), img.end(), y);
}

std::vector<std::pair<Point, Point>> MultiMap::pairs() const {
  std::vector<std::pair<Point, Point>> out;
  for (Point x = 0; x < images_.size(); ++x) {
    for (Point y : images_[x]) out.emplace_back(x, y);
  }
  return out;
}

std::size_t MultiMap::pair_count() const {
  std::size_t c = 0;
  for (const auto& img : images_) c += img.size();
  return c;
}

MultiMap inverse(const MultiMap& phi) {
  MultiMap inv(phi.target_size(), phi.source_size());
  for (auto [x, y] : phi.pairs()) inv.add(y, x);
  return inv;
}

MultiMap compose(const MultiMap& psi, const MultiMap& phi) {
  if (phi.target_size() != psi.source_size()) {
    throw std::invalid_argument("compose: target of the first map is not the source of the second");
  }
  MultiMap out(phi.source_size(), psi.target_size());
  for (auto [x, y] : phi.pairs()) {
    for (Point z : psi.image(y)) out.add(x, z);
  }
  return out;
}

ShiftFn ShiftFn::constant(Level source_depth, Level target_depth, std::size_t shift) {
  ShiftFn f;
  for (Level a = 0; a <= source_depth; ++a) f.table.push_back(std::min<Level>(a + shift, target_depth));
  return f;
}

ShiftFn ShiftFn::identity(Level depth) { return constant(depth, depth, 0); }

bool is_valid_shift(const ShiftFn& shift, Level source_depth, Level target_depth) {
  if (shift.table.size() != source_depth + 1) return false;
  for (Level a = 0; a <= source_depth; ++a) {
    if (shift.table[a] > target_depth) return false;
    if (a > 0 && shift.table[a] < shift.table[a - 1]) return false;
  }
  return true;
}

namespace {

void check_sizes(const EntourageChain& source, const EntourageChain& target, const MultiMap& phi) {
  if (phi.source_size() != source.size() || phi.target_size() != target.size()) {
    throw std::invalid_argument("multimap sizes do not match the balleans");
  }
}

}  // namespace

Relation oscillation(const EntourageChain& source, const EntourageChain& target,
                     const MultiMap& phi, Level a) {
  check_sizes(source, target, phi);
  Relation osc(target.size());
  const Relation& eps = source.level(a);
  for (Point x = 0; x < source.size(); ++x) {
    for (Point x2 = 0; x2 < source.size(); ++x2) {
      if (!eps.contains(x, x2)) continue;
      for (Point y : phi.image(x)) {
        for (Point y2 : phi.image(x2)) osc.insert(y, y2);
      }
    }
  }
  return osc;
}

CoarseReport check_coarse(const EntourageChain& source, const EntourageChain& target,
                          const MultiMap& phi, const ShiftFn& shift) {
  check_sizes(source, target, phi);
  if (!is_valid_shift(shift, source.depth(), target.depth())) {
    throw std::invalid_argument("shift function does not fit the balleans");
  }
  CoarseReport report;
  for (Point x = 0; x < source.size(); ++x) {
    if (phi.image(x).empty()) report.empty_images.push_back(x);
  }
  for (Level a = 0; a <= source.depth(); ++a) {
    const Relation& eps = source.level(a);
    const Relation& allowed = target.level(shift(a));
    Relation osc(target.size());
    for (Point x = 0; x < source.size(); ++x) {
      for (Point x2 = 0; x2 < source.size(); ++x2) {
        if (!eps.contains(x, x2)) continue;
        for (Point y : phi.image(x)) {
          for (Point y2 : phi.image(x2)) {
            osc.insert(y, y2);
            if (report.pass && !allowed.contains(y, y2)) {
              report.pass = false;
              report.failing_level = a;
              report.source_witness = {x, x2};
              report.target_witness = {y, y2};
              report.allowed_level = shift(a);
            }
          }
        }
      }
    }
    std::optional<Level> need;
    for (Level j = 0; j <= target.depth(); ++j) {
      if (osc.is_subset_of(target.level(j))) {
        need = j;
        break;
      }
    }
    report.required.push_back(need);
  }
  std::optional<std::size_t> s = 0;
  for (Level a = 0; a < report.required.size(); ++a) {
    if (!report.required[a]) {
      s.reset();
      break;
    }
    if (*report.required[a] > a) s = std::max(*s, *report.required[a] - a);
  }
  report.min_constant_shift = s;
  return report;
}

namespace {

std::string pair_text(std::pair<Point, Point> p) {
  return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")";
}

std::string describe_failure(const CoarseReport& r) {
  return "level " + std::to_string(*r.failing_level) + " pair " + pair_text(r.source_witness) +
         " maps to " + pair_text(r.target_witness) + ", outside level " +
         std::to_string(*r.allowed_level);
}

}  // namespace

std::string EquivalenceReport::first_failure() const {
  if (!total) return "totality: source point " + std::to_string(*unmapped_source) + " has no image";
  if (!surjective) {
    return "surjectivity: target point " + std::to_string(*unreached_target) + " is not reached";
  }
  if (!forward.pass) return "forward: " + describe_failure(forward);
  if (!backward.pass) return "backward: " + describe_failure(backward);
  return {};
}

EquivalenceReport check_equivalence(const EntourageChain& source, const EntourageChain& target,
                                    const MultiMap& phi, const ShiftFn& forward,
                                    const ShiftFn& backward) {
  check_sizes(source, target, phi);
  EquivalenceReport r;
  for (Point x = 0; x < source.size(); ++x) {
    if (phi.image(x).empty()) {
      r.total = false;
      r.unmapped_source = x;
      break;
    }
  }
  MultiMap inv = inverse(phi);
  for (Point y = 0; y < target.size(); ++y) {
    if (inv.image(y).empty()) {
      r.surjective = false;
      r.unreached_target = y;
      break;
    }
  }
  r.forward = check_coarse(source, target, phi, forward);
  r.backward = check_coarse(target, source, inv, backward);
  r.shift_fwd = r.forward.min_constant_shift;
  r.shift_bwd = r.backward.min_constant_shift;
  r.pass = r.total && r.surjective && r.forward.pass && r.backward.pass;
  return r;
}

EquivalenceReport check_equivalence(const EntourageChain& source, const EntourageChain& target,
                                    const MultiMap& phi, std::size_t shift_fwd,
                                    std::size_t shift_bwd) {
  return check_equivalence(source, target, phi,
                           ShiftFn::constant(source.depth(), target.depth(), shift_fwd),
                           ShiftFn::constant(target.depth(), source.depth(), shift_bwd));
}

SearchCapExceeded::SearchCapExceeded(std::uint64_t cap)
    : std::runtime_error("search exceeded " + std::to_string(cap) + " nodes"), cap_(cap) {}

std::uint64_t default_search_cap() {
  if (const char* env = std::getenv("COARSEKIT_SEARCH_CAP")) {
    std::string_view s(env);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc() && ptr == s.data() + s.size() && v > 0) return v;
  }
  return kDefaultSearchCap;
}

namespace {

using Bits = std::vector<std::uint64_t>;

// Vertices are candidate pairs (x, y), numbered x * ny + y. Two vertices are
// compatible when adding both keeps the distortion within the shift in both
// directions, so an equivalence is exactly a clique that covers every source
// and every target point.
class CliqueSearch {
 public:
  CliqueSearch(const EntourageChain& source, const EntourageChain& target,
               const SearchOptions& options)
      : nx_(source.size()), ny_(target.size()), words_((nx_ * ny_ + 63) / 64), cap_(options.node_cap) {
    auto dx = distance_table(source);
    auto dy = distance_table(target);
    const std::size_t s = options.max_shift;
    const std::size_t nv = nx_ * ny_;
    compat_.assign(nv, Bits(words_, 0));
    for (std::size_t v = 0; v < nv; ++v) {
      Point x = v / ny_, y = v % ny_;
      for (std::size_t w = 0; w < nv; ++w) {
        Point x2 = w / ny_, y2 = w % ny_;
        if (dy[y][y2] <= dx[x][x2] + s && dx[x][x2] <= dy[y][y2] + s) set(compat_[v], w);
      }
    }
    row_mask_.assign(nx_, Bits(words_, 0));
    col_mask_.assign(ny_, Bits(words_, 0));
    for (std::size_t v = 0; v < nv; ++v) {
      set(row_mask_[v / ny_], v);
      set(col_mask_[v % ny_], v);
    }
    covered_x_.assign(nx_, 0);
    covered_y_.assign(ny_, 0);
    stack_.assign(nx_ + ny_ + 2, Bits(words_, 0));
  }

  std::optional<MultiMap> run(std::optional<std::pair<Point, Point>> required) {
    Bits& all = stack_[0];
    for (std::size_t v = 0; v < nx_ * ny_; ++v) set(all, v);
    if (required) {
      std::size_t v = required->first * ny_ + required->second;
      chosen_.push_back(v);
      cover(v);
      for (std::size_t i = 0; i < words_; ++i) all[i] &= compat_[v][i];
    }
    if (!dfs(0)) return std::nullopt;
    MultiMap m(nx_, ny_);
    for (std::size_t v : chosen_) m.add(v / ny_, v % ny_);
    return m;
  }

 private:
  static void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

  std::size_t count_and(const Bits& a, const Bits& b) const {
    std::size_t c = 0;
    for (std::size_t i = 0; i < words_; ++i) c += std::popcount(a[i] & b[i]);
    return c;
  }

  void cover(std::size_t v) {
    ++covered_x_[v / ny_];
    ++covered_y_[v % ny_];
  }
  void uncover(std::size_t v) {
    --covered_x_[v / ny_];
    --covered_y_[v % ny_];
  }

  bool dfs(std::size_t depth) {
    if (++nodes_ > cap_) throw SearchCapExceeded(cap_);
    const Bits& cand = stack_[depth];
    const Bits* branch = nullptr;
    std::size_t best = SIZE_MAX;
    for (Point x = 0; x < nx_; ++x) {
      if (covered_x_[x]) continue;
      std::size_t c = count_and(cand, row_mask_[x]);
      if (c < best) best = c, branch = &row_mask_[x];
    }
    for (Point y = 0; y < ny_; ++y) {
      if (covered_y_[y]) continue;
      std::size_t c = count_and(cand, col_mask_[y]);
      if (c < best) best = c, branch = &col_mask_[y];
    }
    if (!branch) return true;
    if (best == 0) return false;
    Bits& next = stack_[depth + 1];
    for (std::size_t i = 0; i < words_; ++i) {
      std::uint64_t word = cand[i] & (*branch)[i];
      while (word) {
        std::size_t v = i * 64 + std::countr_zero(word);
        word &= word - 1;
        for (std::size_t j = 0; j < words_; ++j) next[j] = stack_[depth][j] & compat_[v][j];
        chosen_.push_back(v);
        cover(v);
        if (dfs(depth + 1)) return true;
        uncover(v);
        chosen_.pop_back();
      }
    }
    return false;
  }

  std::size_t nx_, ny_, words_;
  std::uint64_t cap_;
  std::uint64_t nodes_ = 0;
  std::vector<Bits> compat_, row_mask_, col_mask_, stack_;
  std::vector<std::size_t> covered_x_, covered_y_;
  std::vector<std::size_t> chosen_;
};

void require_valid(const EntourageChain& chain, const char* which) {
  auto report = validate(chain);
  if (!report.valid) {
    throw std::invalid_argument(std::string(which) + " is not a valid ballean: " +
                                describe(report.violations.front()));
  }
}

}  // namespace

std::optional<MultiMap> search_equivalence(const EntourageChain& source,
                                           const EntourageChain& target,
                                           const SearchOptions& options) {
  require_valid(source, "source");
  require_valid(target, "target");
  if (options.required_pair &&
      (options.required_pair->first >= source.size() || options.required_pair->second >= target.size())) {
    throw std::invalid_argument("required pair out of range");
  }
  CliqueSearch search(source, target, options);
  return search.run(options.required_pair);
}

std::optional<std::size_t> min_shift(const EntourageChain& source, const EntourageChain& target,
                                     std::size_t max_shift, std::uint64_t node_cap) {
  for (std::size_t s = 0; s <= max_shift; ++s) {
    SearchOptions opt;
    opt.max_shift = s;
    opt.node_cap = node_cap;
    if (search_equivalence(source, target, opt)) return s;
  }
  return std::nullopt;
}

LargeSubsetBijection large_subset_bijection(const EntourageChain& source,
                                            const EntourageChain& target, const MultiMap& phi) {
  check_sizes(source, target, phi);
  LargeSubsetBijection out;
  std::vector<bool> used_y(target.size(), false);
  for (Point x = 0; x < source.size(); ++x) {
    for (Point y : phi.image(x)) {
      if (used_y[y]) continue;
      used_y[y] = true;
      out.source_points.push_back(x);
      out.target_points.push_back(y);
      break;
    }
  }
  if (!out.source_points.empty()) {
    out.source_level = large_level(source, out.source_points);
    out.target_level = large_level(target, out.target_points);
  }
  return out;
}

std::string write_multimap(const MultiMap& phi) {
  std::ostringstream out;
  out << "multimap v1\n";
  out << "source " << phi.source_size() << "\n";
  out << "target " << phi.target_size() << "\n";
  for (auto [x, y] : phi.pairs()) out << "pair " << x << " " << y << "\n";
  return out.str();
}

MultiMap read_multimap(LineReader& in) {
  in.expect("multimap v1");
  const std::size_t n = read_keyed_count(in, "source");
  const std::size_t m = read_keyed_count(in, "target");
  MultiMap phi(n, m);
  while (!in.done() && in.peek().text.starts_with("pair")) {
    auto line = in.next();
    auto words = split_words(line.text);
    if (words.size() != 3 || words[0] != "pair") throw FormatError(line.number, "expected 'pair <x> <y>'");
    Point x = parse_count(words[1], line.number);
    Point y = parse_count(words[2], line.number);
    if (x >= n) throw FormatError(line.number, "source point " + words[1] + " out of range");
    if (y >= m) throw FormatError(line.number, "target point " + words[2] + " out of range");
    phi.add(x, y);
  }
  return phi;
}

MultiMap parse_multimap(std::string_view text) {
  LineReader in(text);
  MultiMap phi = read_multimap(in);
  if (!in.done()) in.fail("trailing content after multimap block");
  return phi;
}

std::string format_shift(const ShiftFn& shift) {
  std::string out;
  for (std::size_t i = 0; i < shift.table.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(shift.table[i]);
  }
  return out;
}

ShiftFn parse_shift(std::string_view text, std::size_t line) {
  ShiftFn f;
  for (const auto& w : split_words(text)) f.table.push_back(parse_count(w, line));
  if (f.table.empty()) throw FormatError(line, "empty shift table");
  return f;
}

}  // namespace coarsekit
