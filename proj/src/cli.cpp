#include "coarsekit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "coarsekit/ballean_io.hpp"
#include "coarsekit/classify.hpp"
#include "coarsekit/coarse_maps.hpp"
#include "coarsekit/coordinatize.hpp"
#include "coarsekit/ordinal.hpp"

namespace coarsekit {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class F>
auto parse_file(const std::string& path, F parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<std::size_t> count_list(const std::string& text) {
  try {
    return parse_count_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::size_t single_count(const std::string& text) {
  auto v = count_list(text);
  if (v.size() != 1) throw UsageError("expected a single count, found '" + text + "'");
  return v[0];
}

int cmd_ordinal(const std::string& op, const std::string& expr, std::ostream& out) {
  Ordinal g;
  try {
    g = parse_ordinal(expr);
  } catch (const OrdinalParseError& e) {
    throw UsageError(std::string("ordinal: ") + e.what());
  }
  if (op == "eval") {
    out << format_ordinal(g) << "\n";
  } else if (op == "tail") {
    out << format_ordinal(tail(g)) << "\n";
  } else if (op == "ctail") {
    out << format_cardinal(cardinal_tail(g)) << "\n";
  } else if (op == "indec") {
    out << (is_additively_indecomposable(g) ? "true" : "false") << "\n";
  } else if (op == "cf") {
    out << to_string(cofinality_class(g)) << "\n";
  } else {
    out << to_string(classify_cardinal_ballean(g)) << "\n";
  }
  return 0;
}

int cmd_gen(const std::vector<std::string>& params, std::ostream& out) {
  const std::string& kind = params[0];
  if (kind == "product") {
    if (params.size() != 2) throw UsageError("usage: gen product S1,S2,...");
    auto sizes = count_list(params[1]);
    try {
      out << write_ballean(gen_product(sizes));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else if (kind == "cube") {
    if (params.size() != 2) throw UsageError("usage: gen cube K");
    out << write_ballean(gen_cube(single_count(params[1])));
  } else if (kind == "interval") {
    if (params.size() != 3) throw UsageError("usage: gen interval N R1,R2,...");
    auto radii = count_list(params[2]);
    try {
      out << write_ballean(gen_interval(single_count(params[1]), radii));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else {
    throw UsageError("unknown generator '" + kind + "' (expected product, cube or interval)");
  }
  return 0;
}

int cmd_inspect(const std::string& path, std::ostream& out) {
  EntourageChain chain = parse_file(path, parse_chain);
  ValidationReport report = validate(chain);
  out << "points: " << chain.size() << "\n";
  out << "levels: " << chain.depth() << "\n";
  out << "valid: " << (report.valid ? "yes" : "no") << "\n";
  for (const auto& v : report.violations) out << "violation: " << describe(v) << "\n";
  for (Level i = 0; i < report.composition_level.size(); ++i) {
    out << "composition bound " << i << ": ";
    if (report.composition_level[i]) {
      out << *report.composition_level[i] << "\n";
    } else {
      out << "none\n";
    }
  }
  out << "cellular: " << (is_cellular(chain) ? "yes" : "no") << "\n";
  if (auto tower = Tower::from_chain(chain)) {
    out << describe(covering_invariants(*tower));
  }
  return report.valid ? 0 : 1;
}

int cmd_coordinatize(const std::string& path, std::optional<std::size_t> base, std::ostream& out) {
  Tower tower = parse_file(path, parse_tower);
  if (base && *base >= tower.size()) throw UsageError("basepoint out of range");
  CoordMap cm = coordinatize(tower, base.value_or(0));
  auto report = verify_coordinatization(cm);
  out << write_coordmap(cm);
  std::istringstream lines(describe(report));
  for (std::string line; std::getline(lines, line);) out << "# " << line << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_equiv(const std::string& xpath, const std::string& ypath, std::optional<std::size_t> max_shift,
              bool oracle, std::ostream& out) {
  if (oracle) {
    EntourageChain x = parse_file(xpath, parse_chain);
    EntourageChain y = parse_file(ypath, parse_chain);
    for (const auto* c : {&x, &y}) {
      auto report = validate(*c);
      if (!report.valid) throw UsageError("not a valid ballean: " + describe(report.violations.front()));
    }
    const std::size_t limit = max_shift.value_or(0);
    for (std::size_t s = 0; s <= limit; ++s) {
      SearchOptions opt;
      opt.max_shift = s;
      if (auto phi = search_equivalence(x, y, opt)) {
        out << "# oracle: equivalent with shift " << s << "\n";
        out << write_multimap(*phi);
        return 0;
      }
    }
    out << "oracle: no coarse equivalence with shift <= " << limit << "\n";
    return 1;
  }
  Tower x = parse_file(xpath, parse_tower);
  Tower y = parse_file(ypath, parse_tower);
  auto cert = build_equivalence(x, y);
  if (!cert) {
    out << "not equivalent: point counts differ (" << x.size() << " vs " << y.size() << ")\n";
    return 1;
  }
  if (max_shift && std::max(cert->verified_s, cert->verified_t) > *max_shift) {
    out << "no certificate within shift " << *max_shift << ": construction needs s=" << cert->verified_s
        << " t=" << cert->verified_t << "\n";
    return 1;
  }
  out << write_certificate(*cert);
  return cert->verified ? 0 : 1;
}

int cmd_verify(const std::string& path, std::ostream& out) {
  Certificate cert = parse_file(path, parse_certificate);
  auto check = verify_certificate(cert);
  if (check.pass) {
    out << "pass s=" << *check.report.shift_fwd << " t=" << *check.report.shift_bwd << "\n";
    return 0;
  }
  out << "FAIL " << check.failure << "\n";
  return 1;
}

int cmd_homogeneous(const std::string& path, std::size_t max_shift, std::ostream& out) {
  Tower tower = parse_file(path, parse_tower);
  auto report = is_homogeneous(tower, max_shift);
  out << describe(report, max_shift);
  return report.spectral ? 0 : 1;
}

int cmd_large(const std::string& path, const std::string& set, std::ostream& out) {
  EntourageChain chain = parse_file(path, parse_chain);
  auto points = count_list(set);
  if (points.empty()) throw UsageError("--set needs at least one point");
  for (Point p : points) {
    if (p >= chain.size()) throw UsageError("point " + std::to_string(p) + " out of range");
  }
  if (auto level = large_level(chain, points)) {
    out << "large at level " << *level << "\n";
    return 0;
  }
  out << "not large\n";
  return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite cellular balleans, coarse equivalences and ordinal tails", "coarsekit"};
  app.require_subcommand(1);

  std::string op, expr;
  auto* ordinal = app.add_subcommand("ordinal", "Ordinal arithmetic in Cantor normal form");
  ordinal->add_option("op", op, "eval, tail, ctail, indec, cf or classify")
      ->required()
      ->check(CLI::IsMember({"eval", "tail", "ctail", "indec", "cf", "classify"}));
  ordinal->add_option("expr", expr, "Ordinal expression, e.g. \"w^2*3 + w + 1\"")->required();

  std::vector<std::string> gen_params;
  auto* gen = app.add_subcommand("gen", "Generate a ballean: product S1,S2,.. | cube K | interval N R1,R2,..");
  gen->add_option("params", gen_params)->required()->expected(1, 3);

  std::string file, file2, set;
  auto* inspect = app.add_subcommand("inspect", "Validate a ballean and print its spectrum");
  inspect->add_option("file", file)->required();

  std::optional<std::size_t> base;
  std::string order = "natural";
  auto* coord = app.add_subcommand("coordinatize", "Ball coordinates of a tower");
  coord->add_option("file", file)->required();
  coord->add_option("--base", base, "Basepoint (default: least point)");
  coord->add_option("--order", order, "Well-order of the points")->check(CLI::IsMember({"natural"}));

  std::optional<std::size_t> max_shift;
  bool oracle = false;
  auto* equiv = app.add_subcommand("equiv", "Certificate of coarse equivalence between two towers");
  equiv->add_option("x", file)->required();
  equiv->add_option("y", file2)->required();
  equiv->add_option("--max-shift", max_shift, "Largest admissible constant shift");
  equiv->add_flag("--oracle", oracle, "Exhaustive search instead of construction");

  auto* verify = app.add_subcommand("verify", "Re-check a certificate");
  verify->add_option("file", file)->required();

  std::size_t homogeneous_shift = 0;
  auto* homogeneous = app.add_subcommand("homogeneous", "Decide homogeneity of a tower");
  homogeneous->add_option("file", file)->required();
  homogeneous->add_option("--max-shift", homogeneous_shift, "Shift allowed for self-equivalences");

  auto* large = app.add_subcommand("large", "Least level at which a subset is large");
  large->add_option("file", file)->required();
  large->add_option("--set", set, "Comma-separated points")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (ordinal->parsed()) return cmd_ordinal(op, expr, out);
    if (gen->parsed()) return cmd_gen(gen_params, out);
    if (inspect->parsed()) return cmd_inspect(file, out);
    if (coord->parsed()) return cmd_coordinatize(file, base, out);
    if (equiv->parsed()) return cmd_equiv(file, file2, max_shift, oracle, out);
    if (verify->parsed()) return cmd_verify(file, out);
    if (homogeneous->parsed()) return cmd_homogeneous(file, homogeneous_shift, out);
    if (large->parsed()) return cmd_large(file, set, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SearchCapExceeded& e) {
    err << "error: search cap of " << e.cap() << " nodes exceeded (raise COARSEKIT_SEARCH_CAP)\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace coarsekit
