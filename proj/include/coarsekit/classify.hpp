// Spectra interleaving, certificates and homogeneity for towers.
//
// Two towers on the same number of points are compared through their
// equal-size levels, the levels whose classes all have one common size.
// Regrouping both towers at the levels of a common size sequence yields
// uniform towers with identical spectra, and composing their min-basepoint
// codes gives a bijective coarse equivalence.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coarsekit/ballean.hpp"
#include "coarsekit/coarse_maps.hpp"

namespace coarsekit {

// Keeps the levels listed in boundaries. Throws std::invalid_argument unless
// boundaries strictly increase from 0 to the depth.
Tower regroup(const Tower& tower, const std::vector<Level>& boundaries);

// Boundaries making the regrouped spectra of two uniform towers equal, or
// nullopt when the total products differ. Throws std::invalid_argument on
// non-uniform input.
std::optional<std::pair<std::vector<Level>, std::vector<Level>>> interleave(const Tower& x,
                                                                             const Tower& y);

// Levels whose classes all have the same size, ascending. Always contains 0
// and the depth.
std::vector<Level> equal_size_levels(const Tower& tower);

struct CoveringInvariants {
  Spectrum spectrum;
  bool uniform = true;
  // Products of the lower and upper branching counts below each level.
  std::vector<std::size_t> cumulative_lower;
  std::vector<std::size_t> cumulative_upper;
  // Distinct class sizes of the equal-size levels, ascending.
  std::vector<std::size_t> normalized;
};

CoveringInvariants covering_invariants(const Tower& tower);

struct Certificate {
  Tower source;
  Tower target;
  MultiMap phi;
  ShiftFn shift_fwd;
  ShiftFn shift_bwd;
  std::vector<std::string> transcript;
  bool verified = false;
  std::size_t verified_s = 0;
  std::size_t verified_t = 0;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

// nullopt when the point counts differ.
std::optional<Certificate> build_equivalence(const Tower& x, const Tower& y);

struct CertificateCheck {
  bool pass = false;
  std::string failure;  // first failing check; empty on pass
  EquivalenceReport report;
};

// Re-derives the verdict from the certificate body; the recorded verdict
// must agree with it.
CertificateCheck verify_certificate(const Certificate& cert);

std::string write_certificate(const Certificate& cert);
Certificate parse_certificate(std::string_view text);

// The self-bijection of a uniform tower that applies, at every coordinate of
// the min-basepoint code, the transposition exchanging the coordinates of x
// and y. Throws std::invalid_argument on non-uniform towers.
MultiMap point_transitive_map(const Tower& tower, Point x, Point y);

inline constexpr std::size_t kHomogeneityOracleLimit = 8;

struct HomogeneityReport {
  Spectrum spectrum;
  std::vector<Level> equal_size_levels;
  // Largest gap between consecutive equal-size levels, minus one.
  std::size_t shift_bound = 0;
  // shift_bound <= max_shift. Regrouping at the equal-size levels gives a
  // uniform tower, whose symmetries move any point to any other within
  // shift_bound.
  bool spectral = false;
  // For every pair (x, y), some self-equivalence at max_shift contains it.
  // nullopt when the tower exceeds kHomogeneityOracleLimit points.
  std::optional<bool> oracle;
  std::optional<std::pair<Point, Point>> oracle_failure;
  // witnesses[y] contains (0, y), shift shift_bound.
  std::vector<MultiMap> witnesses;
};

HomogeneityReport is_homogeneous(const Tower& tower, std::size_t max_shift,
                                 std::uint64_t node_cap = default_search_cap());

std::string describe(const CoveringInvariants& inv);
std::string describe(const HomogeneityReport& report, std::size_t max_shift);

}  // namespace coarsekit
