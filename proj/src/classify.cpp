#include "coarsekit/classify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coarsekit/ballean_io.hpp"
#include "coarsekit/coordinatize.hpp"

namespace coarsekit {

namespace {

Tower select_levels(const Tower& tower, const std::vector<Level>& levels) {
  std::vector<std::vector<std::size_t>> labels;
  for (Level j : levels) labels.push_back(tower.labels().at(j));
  return Tower(tower.size(), std::move(labels));
}

// Original index of the first occurrence of each distinct level.
std::vector<Level> distinct_levels(const Tower& tower) {
  std::vector<Level> firsts{0};
  for (Level j = 1; j <= tower.depth(); ++j) {
    if (tower.class_count(j) != tower.class_count(j - 1)) firsts.push_back(j);
  }
  return firsts;
}

// Class size of a level, or nullopt when the sizes differ.
std::optional<std::size_t> common_class_size(const Tower& tower, Level j) {
  std::vector<std::size_t> sizes(tower.class_count(j), 0);
  for (Point x = 0; x < tower.size(); ++x) ++sizes[tower.class_of(j, x)];
  for (auto s : sizes) {
    if (s != sizes.front()) return std::nullopt;
  }
  return sizes.front();
}

std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

Tower regroup(const Tower& tower, const std::vector<Level>& boundaries) {
  if (boundaries.empty() || boundaries.front() != 0 || boundaries.back() != tower.depth()) {
    throw std::invalid_argument("boundaries must start at 0 and end at the depth");
  }
  for (std::size_t i = 1; i < boundaries.size(); ++i) {
    if (boundaries[i] <= boundaries[i - 1]) throw std::invalid_argument("boundaries must strictly increase");
  }
  return select_levels(tower, boundaries);
}

std::optional<std::pair<std::vector<Level>, std::vector<Level>>> interleave(const Tower& x,
                                                                             const Tower& y) {
  auto cumulative = [](const Tower& t) {
    Spectrum sp = spectrum(t);
    if (!sp.uniform) throw std::invalid_argument("interleave needs towers with uniform spectra");
    std::vector<std::size_t> c{1};
    for (auto k : sp.min) c.push_back(c.back() * k);
    return c;
  };
  auto cx = cumulative(x);
  auto cy = cumulative(y);
  if (cx.back() != cy.back()) return std::nullopt;
  // The last index carrying each common value, with 0 for the value 1.
  auto last_index = [](const std::vector<std::size_t>& c, std::size_t v) {
    if (v == 1) return Level{0};
    Level j = c.size() - 1;
    while (c[j] != v) --j;
    return j;
  };
  std::vector<Level> bx, by;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    if (i > 0 && cx[i] == cx[i - 1]) continue;
    if (!std::binary_search(cy.begin(), cy.end(), cx[i])) continue;
    bx.push_back(last_index(cx, cx[i]));
    by.push_back(last_index(cy, cx[i]));
  }
  return std::pair{std::move(bx), std::move(by)};
}

std::vector<Level> equal_size_levels(const Tower& tower) {
  std::vector<Level> out;
  for (Level j = 0; j <= tower.depth(); ++j) {
    if (common_class_size(tower, j)) out.push_back(j);
  }
  return out;
}

CoveringInvariants covering_invariants(const Tower& tower) {
  CoveringInvariants inv;
  inv.spectrum = spectrum(tower);
  inv.uniform = inv.spectrum.uniform;
  inv.cumulative_lower = {1};
  inv.cumulative_upper = {1};
  for (Level a = 0; a < tower.depth(); ++a) {
    inv.cumulative_lower.push_back(inv.cumulative_lower.back() * inv.spectrum.min[a]);
    inv.cumulative_upper.push_back(inv.cumulative_upper.back() * inv.spectrum.max[a]);
  }
  for (Level j : equal_size_levels(tower)) {
    std::size_t s = *common_class_size(tower, j);
    if (inv.normalized.empty() || inv.normalized.back() != s) inv.normalized.push_back(s);
  }
  return inv;
}

std::optional<Certificate> build_equivalence(const Tower& x, const Tower& y) {
  if (x.size() != y.size()) return std::nullopt;

  const auto fx = distinct_levels(x);
  const auto fy = distinct_levels(y);
  const Tower dx = select_levels(x, fx);
  const Tower dy = select_levels(y, fy);

  // Distinct levels have strictly growing class sizes, so the common sizes
  // pick out one level on each side.
  std::map<std::size_t, Level> sizes_y;
  for (Level l : equal_size_levels(dy)) sizes_y[*common_class_size(dy, l)] = l;
  std::vector<Level> bx, by;
  for (Level i : equal_size_levels(dx)) {
    auto it = sizes_y.find(*common_class_size(dx, i));
    if (it == sizes_y.end()) continue;
    bx.push_back(i);
    by.push_back(it->second);
  }

  const Tower rx = regroup(dx, bx);
  const Tower ry = regroup(dy, by);
  const CoordMap cx = coordinatize(rx);
  const CoordMap cy = coordinatize(ry);
  std::map<Code, Point> decode;
  for (Point q = 0; q < y.size(); ++q) decode[cy.codes[q]] = q;

  Certificate cert;
  cert.source = x;
  cert.target = y;
  cert.phi = MultiMap(x.size(), y.size());
  for (Point p = 0; p < x.size(); ++p) cert.phi.add(p, decode.at(cx.codes[p]));

  // Original level i sits in distinct level d; its block ends at the first
  // boundary >= d, and the matching boundary on the other side is read back
  // in original indices.
  auto table = [](const std::vector<Level>& from_firsts, Level from_depth,
                  const std::vector<Level>& from_bounds, const std::vector<Level>& to_firsts,
                  const std::vector<Level>& to_bounds) {
    ShiftFn f;
    std::size_t d = 0;
    for (Level i = 0; i <= from_depth; ++i) {
      while (d + 1 < from_firsts.size() && from_firsts[d + 1] <= i) ++d;
      std::size_t j = std::lower_bound(from_bounds.begin(), from_bounds.end(), d) - from_bounds.begin();
      f.table.push_back(to_firsts[to_bounds[j]]);
    }
    return f;
  };
  cert.shift_fwd = table(fx, x.depth(), bx, fy, by);
  cert.shift_bwd = table(fy, y.depth(), by, fx, bx);

  std::vector<std::size_t> ox, oy;
  for (Level b : bx) ox.push_back(fx[b]);
  for (Level b : by) oy.push_back(fy[b]);
  cert.transcript.push_back("source spectrum: " + join(spectrum(x).min) +
                            (spectrum(x).uniform ? "" : " / " + join(spectrum(x).max)));
  cert.transcript.push_back("target spectrum: " + join(spectrum(y).min) +
                            (spectrum(y).uniform ? "" : " / " + join(spectrum(y).max)));
  cert.transcript.push_back("source levels kept: " + join(ox));
  cert.transcript.push_back("target levels kept: " + join(oy));
  cert.transcript.push_back("common spectrum: " + join(spectrum(rx).min));

  auto report = check_equivalence(x.to_chain(), y.to_chain(), cert.phi, cert.shift_fwd, cert.shift_bwd);
  cert.verified = report.pass;
  cert.verified_s = report.shift_fwd.value_or(0);
  cert.verified_t = report.shift_bwd.value_or(0);
  return cert;
}

CertificateCheck verify_certificate(const Certificate& cert) {
  CertificateCheck out;
  const EntourageChain xs = cert.source.to_chain();
  const EntourageChain ys = cert.target.to_chain();
  if (cert.phi.source_size() != xs.size() || cert.phi.target_size() != ys.size()) {
    out.failure = "multimap sizes do not match the towers";
    return out;
  }
  if (!is_valid_shift(cert.shift_fwd, xs.depth(), ys.depth())) {
    out.failure = "shift-fwd table does not fit the towers";
    return out;
  }
  if (!is_valid_shift(cert.shift_bwd, ys.depth(), xs.depth())) {
    out.failure = "shift-bwd table does not fit the towers";
    return out;
  }
  out.report = check_equivalence(xs, ys, cert.phi, cert.shift_fwd, cert.shift_bwd);
  if (!out.report.pass) {
    out.failure = out.report.first_failure();
  } else if (!cert.verified) {
    out.failure = "recorded verdict is fail but the check passes";
  } else if (out.report.shift_fwd != cert.verified_s || out.report.shift_bwd != cert.verified_t) {
    out.failure = "recorded shifts s=" + std::to_string(cert.verified_s) + " t=" +
                  std::to_string(cert.verified_t) + " differ from measured s=" +
                  std::to_string(*out.report.shift_fwd) + " t=" + std::to_string(*out.report.shift_bwd);
  }
  out.pass = out.failure.empty();
  return out;
}

std::string write_certificate(const Certificate& cert) {
  std::ostringstream out;
  out << "certificate v1\n";
  out << "begin source\n" << write_ballean(cert.source) << "end source\n";
  out << "begin target\n" << write_ballean(cert.target) << "end target\n";
  out << "begin multimap\n" << write_multimap(cert.phi) << "end multimap\n";
  out << "shift-fwd: " << format_shift(cert.shift_fwd) << "\n";
  out << "shift-bwd: " << format_shift(cert.shift_bwd) << "\n";
  for (const auto& line : cert.transcript) out << "transcript: " << line << "\n";
  if (cert.verified) {
    out << "verified: pass s=" << cert.verified_s << " t=" << cert.verified_t << "\n";
  } else {
    out << "verified: fail\n";
  }
  return out.str();
}

namespace {

std::string keyed_line(LineReader& in, std::string_view key, std::size_t& number) {
  if (in.done()) throw FormatError(0, "unexpected end of input, expected '" + std::string(key) + "'");
  auto line = in.next();
  std::string_view rest;
  if (!strip_prefix(line.text, key, rest)) throw FormatError(line.number, "expected '" + std::string(key) + "'");
  number = line.number;
  return std::string(rest);
}

std::size_t parse_tagged(std::string_view word, std::string_view tag, std::size_t line) {
  if (word.substr(0, tag.size()) != tag) throw FormatError(line, "expected '" + std::string(tag) + "<count>'");
  return parse_count(word.substr(tag.size()), line);
}

}  // namespace

Certificate parse_certificate(std::string_view text) {
  LineReader in(text);
  in.expect("certificate v1");
  Certificate cert;
  in.expect("begin source");
  cert.source = read_tower(in);
  in.expect("end source");
  in.expect("begin target");
  cert.target = read_tower(in);
  in.expect("end target");
  in.expect("begin multimap");
  cert.phi = read_multimap(in);
  in.expect("end multimap");
  std::size_t number = 0;
  auto fwd = keyed_line(in, "shift-fwd:", number);
  cert.shift_fwd = parse_shift(fwd, number);
  auto bwd = keyed_line(in, "shift-bwd:", number);
  cert.shift_bwd = parse_shift(bwd, number);
  while (!in.done() && in.peek().text.starts_with("transcript:")) {
    std::string_view rest;
    auto line = in.next();
    strip_prefix(line.text, "transcript:", rest);
    cert.transcript.emplace_back(rest);
  }
  auto verdict = split_words(keyed_line(in, "verified:", number));
  if (verdict.size() == 1 && verdict[0] == "fail") {
    cert.verified = false;
  } else if (verdict.size() == 3 && verdict[0] == "pass") {
    cert.verified = true;
    cert.verified_s = parse_tagged(verdict[1], "s=", number);
    cert.verified_t = parse_tagged(verdict[2], "t=", number);
  } else {
    throw FormatError(number, "expected 'verified: pass s=<count> t=<count>' or 'verified: fail'");
  }
  if (!in.done()) in.fail("trailing content after certificate");
  return cert;
}

MultiMap point_transitive_map(const Tower& tower, Point x, Point y) {
  if (!spectrum(tower).uniform) throw std::invalid_argument("point_transitive_map needs a uniform tower");
  if (x >= tower.size() || y >= tower.size()) throw std::invalid_argument("point out of range");
  const CoordMap cm = coordinatize(tower);
  std::map<Code, Point> decode;
  for (Point p = 0; p < tower.size(); ++p) decode[cm.codes[p]] = p;
  const Code& cx = cm.codes[x];
  const Code& cy = cm.codes[y];
  std::vector<Point> values(tower.size());
  for (Point p = 0; p < tower.size(); ++p) {
    Code c = cm.codes[p];
    for (std::size_t a = 0; a < c.size(); ++a) {
      if (c[a] == cx[a]) {
        c[a] = cy[a];
      } else if (c[a] == cy[a]) {
        c[a] = cx[a];
      }
    }
    values[p] = decode.at(c);
  }
  return MultiMap::from_function(tower.size(), values);
}

HomogeneityReport is_homogeneous(const Tower& tower, std::size_t max_shift, std::uint64_t node_cap) {
  HomogeneityReport r;
  r.spectrum = spectrum(tower);
  r.equal_size_levels = equal_size_levels(tower);
  for (std::size_t i = 1; i < r.equal_size_levels.size(); ++i) {
    r.shift_bound = std::max(r.shift_bound, r.equal_size_levels[i] - r.equal_size_levels[i - 1] - 1);
  }
  r.spectral = r.shift_bound <= max_shift;

  const Tower uniform = regroup(tower, r.equal_size_levels);
  for (Point y = 0; y < tower.size(); ++y) r.witnesses.push_back(point_transitive_map(uniform, 0, y));

  if (tower.size() <= kHomogeneityOracleLimit) {
    const EntourageChain chain = tower.to_chain();
    r.oracle = true;
    for (Point x = 0; x < tower.size() && *r.oracle; ++x) {
      for (Point y = x + 1; y < tower.size(); ++y) {
        SearchOptions opt;
        opt.max_shift = max_shift;
        opt.required_pair = std::pair{x, y};
        opt.node_cap = node_cap;
        if (!search_equivalence(chain, chain, opt)) {
          r.oracle = false;
          r.oracle_failure = std::pair{x, y};
          break;
        }
      }
    }
  }
  return r;
}

std::string describe(const CoveringInvariants& inv) {
  std::ostringstream out;
  out << "lower spectrum: " << join(inv.spectrum.min) << "\n";
  out << "upper spectrum: " << join(inv.spectrum.max) << "\n";
  out << "uniform: " << (inv.uniform ? "yes" : "no") << "\n";
  out << "cumulative lower: " << join(inv.cumulative_lower) << "\n";
  out << "cumulative upper: " << join(inv.cumulative_upper) << "\n";
  out << "normalized: " << join(inv.normalized) << "\n";
  return out.str();
}

std::string describe(const HomogeneityReport& r, std::size_t max_shift) {
  std::ostringstream out;
  out << "lower spectrum: " << join(r.spectrum.min) << "\n";
  out << "upper spectrum: " << join(r.spectrum.max) << "\n";
  out << "equal-size levels: " << join(r.equal_size_levels) << "\n";
  out << "shift bound: " << r.shift_bound << "\n";
  out << "spectral verdict at shift " << max_shift << ": "
      << (r.spectral ? "homogeneous" : "not homogeneous") << "\n";
  if (r.oracle) {
    out << "oracle verdict at shift " << max_shift << ": " << (*r.oracle ? "homogeneous" : "not homogeneous");
    if (r.oracle_failure) {
      out << " (no self-equivalence sends " << r.oracle_failure->first << " to " << r.oracle_failure->second << ")";
    }
    out << "\n";
  } else {
    out << "oracle verdict: skipped (more than " << kHomogeneityOracleLimit << " points)\n";
  }
  out << "witnesses: " << r.witnesses.size() << " maps moving 0 to every point, shift " << r.shift_bound << "\n";
  return out.str();
}

}  // namespace coarsekit
