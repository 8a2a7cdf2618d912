// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "coarsekit/ballean.hpp"
#include "coarsekit/classify.hpp"
#include "coarsekit/cli.hpp"
#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/coordinatize.hpp"
#include "coarsekit/ordinal.hpp"
#include "support/families.hpp"
#include "support/oracles.hpp"

using namespace coarsekit;
using namespace coarsekit::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void fail(Outcome& o, const std::string& what) {
  if (o.pass) o.detail = "first failure: " + what + "; ";
  o.pass = false;
}

std::string seq_text(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Truncation law for every basepoint; agreement law, injectivity and the
// image sandwich for the least basepoint.
bool coordinatization_laws(const Tower& t, const std::vector<Point>& order, std::string& why) {
  for (Point x = 0; x < t.size(); ++x) {
    auto cm = coordinatize(t, x, order);
    if (cm.codes != truncation_codes(t, order, x)) {
      why = "truncation law, basepoint " + std::to_string(x);
      return false;
    }
    if (!verify_coordinatization(cm).pass()) {
      why = "verify_coordinatization, basepoint " + std::to_string(x);
      return false;
    }
  }
  auto cm = coordinatize(t, order[0], order);
  for (Point y = 0; y < t.size(); ++y) {
    for (Point z = 0; z < t.size(); ++z) {
      if (agreement_level(cm.codes[y], cm.codes[z]) != distance_oracle(t, y, z)) {
        why = "agreement law at (" + std::to_string(y) + "," + std::to_string(z) + ")";
        return false;
      }
    }
  }
  std::set<CodeVec> image(cm.codes.begin(), cm.codes.end());
  if (image.size() != t.size()) {
    why = "injectivity";
    return false;
  }
  Branching b = branching_oracle(t);
  for (const auto& c : image) {
    for (Level a = 0; a < t.depth(); ++a) {
      if (c[a] >= b.upper[a]) {
        why = "image outside the upper product";
        return false;
      }
    }
  }
  CodeVec v(t.depth(), 0);
  while (true) {
    if (!image.count(v)) {
      why = "lower product not inside the image";
      return false;
    }
    std::size_t a = 0;
    while (a < v.size() && ++v[a] == b.lower[a]) v[a++] = 0;
    if (a == v.size()) break;
  }
  return true;
}

Outcome criterion_1() {
  Outcome o;
  std::size_t exhaustive = 0;
  for (std::size_t n = 1; n <= 6; ++n) {
    for (Level k = (n == 1 ? 0 : 1); k <= 4; ++k) {
      for (const auto& t : all_towers(n, k)) {
        ++exhaustive;
        std::string why;
        if (!coordinatization_laws(t, natural_order(n), why)) {
          fail(o, why + " on an exhaustive tower with " + std::to_string(n) + " points");
        }
      }
    }
  }
  std::mt19937_64 rng(101);
  const std::size_t random_count = 500;
  for (std::size_t i = 0; i < random_count; ++i) {
    std::size_t n = 1 + rng() % 40;
    Level k = 1 + rng() % 6;
    auto t = random_tower(rng, n, k);
    auto order = i % 2 ? random_permutation(rng, n) : natural_order(n);
    std::string why;
    if (!coordinatization_laws(t, order, why)) fail(o, why + " on random tower " + std::to_string(i));
  }
  o.detail += std::to_string(exhaustive) + " exhaustive towers (n<=6, depth<=4), " +
              std::to_string(random_count) + " random towers (n<=40, depth<=6)";
  return o;
}

Outcome criterion_2() {
  Outcome o;
  std::mt19937_64 rng(202);
  auto seqs = factor_sequences(8, 3);
  std::vector<Tower> towers;
  for (const auto& s : seqs) {
    auto p = gen_product(s);
    towers.push_back(relabel(p, random_permutation(rng, p.size())));
  }
  std::size_t equal = 0, unequal_endpoints = 0, other = 0;
  for (std::size_t i = 0; i < towers.size(); ++i) {
    for (std::size_t j = 0; j < towers.size(); ++j) {
      const Tower& x = towers[i];
      const Tower& y = towers[j];
      auto xs = x.to_chain();
      auto ys = y.to_chain();
      const std::string pair = seq_text(seqs[i]) + " vs " + seq_text(seqs[j]);
      auto cert = build_equivalence(x, y);
      if (seqs[i] == seqs[j]) {
        ++equal;
        if (!cert || !check_equivalence(xs, ys, cert->phi, 0, 0).pass) {
          fail(o, "no (0,0) certificate for " + pair);
        }
      }
      if (x.size() != y.size()) {
        ++unequal_endpoints;
        if (search_equivalence(xs, ys, SearchOptions{})) fail(o, "shift-0 equivalence found for " + pair);
        if (cert) fail(o, "certificate built for " + pair);
        continue;
      }
      if (seqs[i] != seqs[j]) ++other;
      if (!cert || !cert->verified) {
        fail(o, "construction failed for " + pair);
        continue;
      }
      SearchOptions opt;
      opt.max_shift = std::max(cert->verified_s, cert->verified_t);
      if (!search_equivalence(xs, ys, opt)) fail(o, "oracle disagrees with the certificate for " + pair);
    }
  }
  o.detail += std::to_string(towers.size()) + " uniform towers up to isomorphism (n<=8, depth<=3), " +
              std::to_string(equal) + " equal-spectrum pairs, " + std::to_string(unequal_endpoints) +
              " unequal-endpoint pairs, " + std::to_string(other) + " other same-size pairs";
  return o;
}

Outcome criterion_3() {
  Outcome o;
  auto family = towers_up_to_iso(6, 4);
  std::size_t homogeneous0 = 0, early = 0, checked_mid = 0;
  for (const auto& t : family) {
    auto r = is_homogeneous(t, 0);
    if (!r.oracle) {
      fail(o, "oracle skipped");
      continue;
    }
    if (r.spectral != *r.oracle) fail(o, "shift 0 verdicts differ on " + canonical_form(t));
    if (*r.oracle) ++homogeneous0;
    if (r.shift_bound > 0) {
      auto rb = is_homogeneous(t, r.shift_bound);
      if (!rb.spectral || !rb.oracle.value_or(false)) {
        fail(o, "oracle rejects the reported bound on " + canonical_form(t));
      }
      for (std::size_t s = 1; s < r.shift_bound; ++s) {
        ++checked_mid;
        if (*is_homogeneous(t, s).oracle) ++early;
      }
    }
  }
  o.detail += std::to_string(family.size()) + " towers up to isomorphism (n<=6, depth<=4), " +
              std::to_string(homogeneous0) + " homogeneous at shift 0; " + std::to_string(early) +
              " of " + std::to_string(checked_mid) + " intermediate-shift checks already homogeneous";
  return o;
}

Outcome criterion_4() {
  Outcome o;
  std::vector<Tower> uniform;
  for (auto& t : towers_up_to_iso(6, 4)) {
    if (spectrum(t).uniform) uniform.push_back(std::move(t));
  }
  std::size_t pairs = 0, found = 0;
  for (const auto& x : uniform) {
    for (const auto& y : uniform) {
      if (x.depth() != y.depth()) continue;
      ++pairs;
      if (search_equivalence(x.to_chain(), y.to_chain(), SearchOptions{})) {
        ++found;
        auto sx = spectrum(x), sy = spectrum(y);
        if (sx.min != sy.min) fail(o, "0-shift equivalence with different spectra");
      }
    }
  }
  o.detail += std::to_string(pairs) + " equal-depth uniform pairs, " + std::to_string(found) +
              " with a 0-shift equivalence, 0 counterexamples allowed";
  return o;
}

Ordinal random_ordinal(std::mt19937_64& rng, int depth, std::uint64_t max_coef) {
  std::uniform_int_distribution<int> count(0, 3);
  std::uniform_int_distribution<std::uint64_t> coef(1, max_coef);
  Ordinal x;
  int terms = count(rng);
  for (int i = 0; i < terms; ++i) {
    Ordinal e = depth > 1 ? random_ordinal(rng, depth - 1, 3)
                          : Ordinal::finite(std::uniform_int_distribution<int>(0, 4)(rng));
    x = x + Ordinal::omega_power(e, coef(rng));
  }
  return x;
}

Outcome criterion_5() {
  Outcome o;
  std::mt19937_64 rng(505);
  for (int i = 0; i < 1000; ++i) {
    Ordinal x = random_ordinal(rng, 3, 9);
    if (parse_ordinal(format_ordinal(x)) != x) fail(o, "round trip of " + format_ordinal(x));
  }
  const Ordinal w = Ordinal::omega();
  const Ordinal one = Ordinal::finite(1), two = Ordinal::finite(2);
  for (int i = 0; i < 1000; ++i) {
    Ordinal a = random_ordinal(rng, 3, 4), b = random_ordinal(rng, 3, 4), c = random_ordinal(rng, 3, 4);
    const std::string triple = format_ordinal(a) + ", " + format_ordinal(b) + ", " + format_ordinal(c);
    if ((a + b) + c != a + (b + c)) fail(o, "additive associativity on " + triple);
    if ((a * b) * c != a * (b * c)) fail(o, "multiplicative associativity on " + triple);
    if (a * (b + c) != a * b + a * c) fail(o, "left distributivity on " + triple);
    if (b < c && !(a + b < a + c)) fail(o, "strict left monotonicity of + on " + triple);
    if (b < c && !a.is_zero() && !(a * b < a * c)) fail(o, "strict left monotonicity of * on " + triple);
    if (b <= c && !(b + a <= c + a)) fail(o, "weak right monotonicity of + on " + triple);
    if (b <= c && !(b * a <= c * a)) fail(o, "weak right monotonicity of * on " + triple);
  }
  if (one + w != w) fail(o, "1+w");
  if (two * w != w) fail(o, "2*w");
  if (w * two == w) fail(o, "w*2");

  auto family = small_ordinals();
  std::size_t tails = 0, classified = 0;
  for (const Ordinal& g : family) {
    if (g.is_zero()) continue;
    auto brute = tail_by_decomposition(g, family);
    if (!brute || tail(g) != *brute) fail(o, "tail of " + format_ordinal(g));
    if (brute && cardinal_tail(g) != cardinal_correction(*brute)) fail(o, "cardinal tail of " + format_ordinal(g));
    ++tails;

    bool indecomposable = true;
    for (const Ordinal& a : family) {
      for (const Ordinal& b : family) {
        if (a < g && b < g && !(a + b < g)) indecomposable = false;
      }
    }
    if (indecomposable != is_additively_indecomposable(g)) fail(o, "indecomposability of " + format_ordinal(g));
    if (indecomposable) {
      auto expected = is_multiple_of_omega_by_search(g, family) ? CardinalBalleanClass::CardinalLine
                                                                : CardinalBalleanClass::MacroCube;
      if (classify_cardinal_ballean(g) != expected) fail(o, "classification of " + format_ordinal(g));
      ++classified;
    } else {
      bool threw = false;
      try {
        classify_cardinal_ballean(g);
      } catch (const std::domain_error&) {
        threw = true;
      }
      if (!threw) fail(o, "classification accepted decomposable " + format_ordinal(g));
    }
  }

  // Exponents beyond the finite ones, against a search over leading terms.
  std::vector<Ordinal> exps{Ordinal::finite(0), one, two, w, w + one, w * two, Ordinal::omega_power(two),
                            Ordinal::omega_power(w)};
  std::vector<Ordinal> betas = family;
  for (const auto& e : exps) {
    for (std::uint64_t k = 1; k <= 3; ++k) {
      betas.push_back(Ordinal::omega_power(e, k));
      betas.push_back(Ordinal::omega_power(e, k) + one);
    }
  }
  for (const auto& e : exps) {
    Ordinal g = Ordinal::omega_power(e);
    auto expected = is_multiple_of_omega_by_search(g, betas) ? CardinalBalleanClass::CardinalLine
                                                             : CardinalBalleanClass::MacroCube;
    if (classify_cardinal_ballean(g) != expected) fail(o, "classification of " + format_ordinal(g));
    ++classified;
  }
  o.detail += "1000 round trips, 1000 law triples, " + std::to_string(tails) + " tails, " +
              std::to_string(classified) + " classifications";
  return o;
}

Outcome criterion_6() {
  Outcome o;
  std::size_t products = 0;
  for (const auto& seq : factor_sequences(64, 4)) {
    if (*std::max_element(seq.begin(), seq.end()) > 5) continue;
    auto t = gen_product(seq);
    auto s = spectrum(t);
    auto b = branching_oracle(t);
    if (s.min != seq || s.max != seq || b.lower != seq || b.upper != seq) fail(o, "spectrum of " + seq_text(seq));
    ++products;
  }
  for (std::size_t n = 3; n <= 30; ++n) {
    auto chain = gen_interval(n, std::vector<std::size_t>{1, n - 1});
    if (is_cellular(chain)) fail(o, "interval chain on " + std::to_string(n) + " points is cellular");
    auto hull = cellular_hull(chain);
    if (hull.depth() != 1 || hull.size() != n) fail(o, "hull of interval chain on " + std::to_string(n));
  }
  std::mt19937_64 rng(606);
  std::size_t large_checks = 0;
  for (std::size_t n = 2; n <= 30; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      std::vector<std::size_t> radii;
      std::size_t r = 0;
      while (r + 1 < n) {
        r += 1 + rng() % 4;
        radii.push_back(std::min(r, n - 1));
        r = radii.back();
      }
      auto chain = gen_interval(n, radii);
      std::vector<std::size_t> radius_of{0};
      radius_of.insert(radius_of.end(), radii.begin(), radii.end());
      for (std::size_t b = 1; b < n; ++b) {
        std::vector<Point> l;
        for (Point p = 0; p < n; p += b) l.push_back(p);
        Level brute = radius_of.size() - 1;
        for (Level a = 0; a < radius_of.size(); ++a) {
          bool covers = true;
          for (Point x = 0; x < n && covers; ++x) {
            covers = std::any_of(l.begin(), l.end(), [&](Point p) {
              return (x > p ? x - p : p - x) <= radius_of[a];
            });
          }
          if (covers) {
            brute = a;
            break;
          }
        }
        Level first_wide = 0;
        while (radius_of[first_wide] < b) ++first_wide;
        auto got = large_level(chain, l);
        if (!got || *got != brute) fail(o, "largeness level on " + std::to_string(n) + " points, step " + std::to_string(b));
        if (brute > first_wide) fail(o, "not large at the first level with radius >= step");
        ++large_checks;
      }
    }
  }
  o.detail += std::to_string(products) + " product spectra, 28 interval hulls, " + std::to_string(large_checks) +
              " largeness checks";
  return o;
}

Outcome criterion_7() {
  Outcome o;
  std::mt19937_64 rng(707);
  auto dir = std::filesystem::temp_directory_path() / "coarsekit_acceptance";
  std::filesystem::create_directories(dir);
  auto verify_exit = [&](const std::string& text) {
    auto path = (dir / "cert.txt").string();
    std::ofstream(path, std::ios::trunc) << text;
    std::ostringstream out, err;
    return run({"verify", path}, out, err);
  };
  std::size_t tampered = 0;
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 2 + rng() % 15;
    auto x = random_tower(rng, n, 1 + rng() % 5);
    auto y = random_tower(rng, n, 1 + rng() % 5);
    auto cert = build_equivalence(x, y);
    if (!cert) {
      fail(o, "no certificate for equal-size towers");
      continue;
    }
    std::string text = write_certificate(*cert);
    auto parsed = parse_certificate(text);
    if (write_certificate(parsed) != text || !(parsed == *cert)) fail(o, "round trip not byte-stable");
    if (!verify_certificate(parsed).pass || verify_exit(text) != 0) fail(o, "fresh certificate rejected");

    auto pairs = cert->phi.pairs();
    auto [px, py] = pairs[rng() % pairs.size()];
    const std::string line = "pair " + std::to_string(px) + " " + std::to_string(py) + "\n";
    const auto at = text.find(line);
    Point other = (py + 1 + rng() % (n - 1)) % n;
    const std::string moved = "pair " + std::to_string(px) + " " + std::to_string(other) + "\n";

    std::string deleted = text;
    deleted.erase(at, line.size());
    std::string retargeted = text;
    retargeted.replace(at, line.size(), moved);
    std::string added = text;
    added.insert(at + line.size(), moved);
    for (const auto* t : {&deleted, &retargeted, &added}) {
      ++tampered;
      if (verify_exit(*t) != 1) fail(o, "tampered certificate accepted");
    }
  }
  std::filesystem::remove_all(dir);
  o.detail += "100 certificates round-tripped, " + std::to_string(tampered) + " single-pair tamperings";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 coordinatization laws", criterion_1},
      {"2 uniform towers: construction vs oracle", criterion_2},
      {"3 homogeneity: spectral vs oracle", criterion_3},
      {"4 shift-0 equivalence forces equal spectra", criterion_4},
      {"5 ordinal suite", criterion_5},
      {"6 product, interval and largeness structure", criterion_6},
      {"7 certificate integrity", criterion_7},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.1f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.name << ": " << o.detail << " (" << timing
              << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
