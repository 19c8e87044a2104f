// Command-line front end: builds cover certificates, re-verifies them,
// fuzzes the tangency-set covering procedure, and prints the bounds table.
//
// Exit codes: 0 verified/ok, 1 claim false, 2 malformed input or bad flags,
// 3 construction failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boxcover/boxcover.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitClaimFalse = 1;
constexpr int kExitMalformed = 2;
constexpr int kExitConstruction = 3;

int default_threads() {
  if (const char* env = std::getenv("BOXCOVER_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

boxcover::Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> den_dist(1, 1 << 16);
  const std::int64_t den = den_dist(rng);
  std::uniform_int_distribution<std::int64_t> num_dist(0, den);
  return boxcover::Rational(num_dist(rng), den);
}

boxcover::TangencySet random_tangency_set(std::mt19937_64& rng) {
  std::vector<boxcover::Point> bases;
  for (int i = 0; i < 4; ++i) {
    std::vector<boxcover::Rational> coords(4);
    for (int a = 0; a < 4; ++a)
      coords[static_cast<std::size_t>(a)] = a == i ? boxcover::Rational(0) : random_rational(rng);
    bases.emplace_back(std::move(coords));
  }
  return boxcover::TangencySet(4, std::move(bases));
}

boxcover::TangencySet parse_tangency_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw boxcover::ParseError("cannot open tangency file " + path);
  std::vector<boxcover::Point> bases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::vector<boxcover::Rational> coords;
    std::string tok;
    while (ss >> tok) {
      const auto r = boxcover::Rational::parse(tok);
      if (!r) throw boxcover::ParseError("bad rational '" + tok + "' in " + path);
      coords.push_back(*r);
    }
    if (!coords.empty()) bases.emplace_back(std::move(coords));
  }
  if (bases.size() != 4) throw boxcover::ParseError("tangency file must contain four points");
  boxcover::TangencySet t(4, std::move(bases));
  if (!boxcover::validate_tangency_set(t))
    throw boxcover::ParseError("tangency file does not describe a valid tangency set");
  return t;
}

void write_tangency_file(const std::string& path, const boxcover::TangencySet& t) {
  std::ofstream out(path);
  for (const auto& p : t.base_points) {
    for (int a = 0; a < p.dim(); ++a) out << (a ? " " : "") << p[a].str();
    out << "\n";
  }
}

void emit(const boxcover::Certificate& cert, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    boxcover::write_certificate(std::cout, cert);
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw std::runtime_error("cannot open output file " + out_path);
  boxcover::write_certificate(out, cert);
}

std::string tangency_meta(const boxcover::TangencySet& t) {
  std::string s;
  for (const auto& p : t.base_points) {
    if (!s.empty()) s += ";";
    s += boxcover::certio::point_str(p);
  }
  return s;
}

int cmd_generate(const std::string& family, int n, const std::string& eps_text,
                 std::uint64_t seed, bool have_seed, const std::string& tangency_path,
                 const std::string& out, bool long_run, int threads) {
  using namespace boxcover;
  EpsilonSchedule sched;
  if (!eps_text.empty()) {
    const auto e = Rational::parse(eps_text);
    if (!e || !(*e > Rational(0)) || !(*e < Rational(1))) {
      std::cerr << "error: --epsilon must be a rational in (0,1)\n";
      return kExitMalformed;
    }
    sched.initial = *e;
  }

  Certificate cert;
  cert.dimension = n;
  cert.family = family;

  try {
    if (family == "prop1") {
      if (n < 4) {
        std::cerr << "error: prop1 requires --n >= 4\n";
        return kExitMalformed;
      }
      if (n >= 6 && !long_run) {
        std::cerr << "error: prop1 with n >= 6 is compute-heavy; pass --long-run\n";
        return kExitMalformed;
      }
      if (long_run) std::cerr << "constructing " << 2 * n * (n - 1) << " faces...\n";
      Cover cover = prop1_cover(n, sched);
      cert.declared_class = BoxClass::Strict;
      cert.target = skeleton_target(n, n - 2);
      cert.boxes = cover.boxes;
      cert.meta["epsilon"] = sched.initial.str();
      if (n == 4) cert.meta["note"] = "diagnostic; the dedicated dim-4 family is smaller";
    } else if (family == "cover88") {
      if (n != 4) {
        std::cerr << "error: cover88 requires --n 4\n";
        return kExitMalformed;
      }
      Cover cover = cover88();
      cert.declared_class = BoxClass::NonStrict;
      cert.target = skeleton_target(4, 2);
      cert.boxes = cover.boxes;
    } else if (family == "assemble96" || family == "tangency") {
      if (n != 4) {
        std::cerr << "error: " << family << " requires --n 4\n";
        return kExitMalformed;
      }
      TangencySet t;
      if (!tangency_path.empty()) {
        t = parse_tangency_file(tangency_path);
      } else if (have_seed) {
        std::mt19937_64 rng(seed);
        t = random_tangency_set(rng);
      } else {
        std::cerr << "error: " << family << " needs --tangency FILE or --seed N\n";
        return kExitMalformed;
      }
      if (family == "tangency") {
        Cover cover = tangency_cover(t);
        cert.declared_class = BoxClass::Strict;
        cert.target.dim = 4;
        cert.target.add_tangency_points(t);
        cert.boxes = cover.boxes;
        cert.meta["tangency"] = tangency_meta(t);
      } else {
        Assemble96Result res = assemble96(t, sched);
        cert.declared_class = BoxClass::Strict;
        cert.target = skeleton_target(4, 2);
        cert.target.add_tangency_points(t);
        cert.boxes = res.cover.boxes;
        cert.meta["epsilon"] = res.epsilon.str();
        cert.meta["case"] = res.case_tag;
        cert.meta["symmetry"] = res.work_symmetry.str();
        cert.meta["segment"] = certio::point_str(res.segment.a) + ";" +
                               certio::point_str(res.segment.b) + ";" +
                               to_string(*classify_segment(res.segment));
        cert.meta["tangency"] = tangency_meta(t);
      }
    } else {
      std::cerr << "error: unknown family '" << family << "'\n";
      return kExitMalformed;
    }
  } catch (const ConstructionError& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kExitConstruction;
  }

  const auto check = verify_certificate(cert, threads);
  if (!check.ok()) {
    std::cerr << "internal verification failed";
    if (check.witness) std::cerr << "; witness " << check.witness->str();
    std::cerr << "\n";
    return kExitConstruction;
  }
  emit(cert, out);
  std::cerr << "generated " << cert.boxes.size() << " boxes (" << family << ", n=" << n
            << "), verified\n";
  return kExitOk;
}

int cmd_verify(const std::string& path, int threads, bool recheck_class, bool emit_witness,
               bool long_run) {
  using namespace boxcover;
  Certificate cert;
  try {
    std::ifstream in(path);
    if (!in) {
      std::cerr << "error: cannot open " << path << "\n";
      return kExitMalformed;
    }
    cert = read_certificate(in);
  } catch (const ParseError& e) {
    std::cerr << "malformed certificate: " << e.what() << "\n";
    return kExitMalformed;
  }
  if (cert.dimension >= 6 && !long_run)
    std::cerr << "note: large certificate; verification may take a while"
              << " (progress on stderr with --long-run)\n";
  if (long_run) std::cerr << "verifying " << cert.target.faces.size() << " faces...\n";

  const auto res = verify_certificate(cert, threads, recheck_class);
  std::cout << "family " << cert.family << "\n";
  std::cout << "boxes " << cert.boxes.size() << "\n";
  std::cout << "class " << (res.class_ok ? "ok" : "VIOLATED") << "\n";
  std::cout << "covered " << (res.covered ? "yes" : "NO") << "\n";
  std::cout << "cells-checked " << res.cells_checked << "\n";
  if (!res.covered && emit_witness && res.witness)
    std::cout << "witness " << certio::point_str(*res.witness) << "\n";
  return res.ok() ? kExitOk : kExitClaimFalse;
}

int cmd_fuzz_a4(int count, std::uint64_t seed, bool boundary, const std::string& repro_dir,
                int threads) {
  using namespace boxcover;
  (void)threads;
  std::vector<TangencySet> inputs;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) inputs.push_back(random_tangency_set(rng));

  if (boundary) {
    // Grid probe: the first three base points sit at 3/8 on every non-trivial
    // coordinate, the fourth sweeps the full grid over the case thresholds.
    const std::vector<Rational> grid = {
        Rational(0),     Rational(1, 8), Rational(1, 4), Rational(5, 16), Rational(3, 8),
        Rational(1, 2), Rational(5, 8), Rational(3, 4), Rational(7, 8),  Rational(1)};
    std::vector<Point> fixed_bases;
    for (int i = 0; i < 3; ++i) {
      std::vector<Rational> coords(4, Rational(3, 8));
      coords[static_cast<std::size_t>(i)] = Rational(0);
      fixed_bases.emplace_back(std::move(coords));
    }
    for (const auto& a : grid)
      for (const auto& b : grid)
        for (const auto& c : grid) {
          auto bases = fixed_bases;
          bases.emplace_back(std::vector<Rational>{a, b, c, Rational(0)});
          inputs.emplace_back(4, std::move(bases));
        }
  }

  std::map<std::string, int> histogram;
  int failures = 0;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto& t = inputs[i];
    std::string stage = "a4_cover";
    try {
      A4CoverResult a4 = a4_cover(t);
      ++histogram[a4.case_tag];
      stage = "assemble96";
      Assemble96Result res = assemble96(t);
      if (res.cover.boxes.size() != 96) throw ConstructionError("box count != 96");
      Target target = skeleton_target(4, 2);
      target.add_tangency_points(t);
      if (!verify_class(res.cover) || !covers_target(res.cover, target).covered)
        throw ConstructionError("final verification failed");
    } catch (const std::exception& e) {
      ++failures;
      std::cerr << "FAIL input " << i << " at " << stage << ": " << e.what() << "\n";
      if (!repro_dir.empty()) {
        const std::string path = repro_dir + "/a4-fail-" + std::to_string(i) + ".tangency";
        write_tangency_file(path, t);
        std::cerr << "  reproducer written to " << path << "\n";
      }
    }
  }

  std::cout << "inputs " << inputs.size() << "\n";
  for (const auto& [tag, n] : histogram) std::cout << "case " << tag << " " << n << "\n";
  std::cout << "failures " << failures << "\n";
  return failures == 0 ? kExitOk : kExitClaimFalse;
}

int cmd_bounds(int from, int to, bool as_json) {
  using namespace boxcover;
  if (from < 4 || to < from) {
    std::cerr << "error: need 4 <= from <= to\n";
    return kExitMalformed;
  }
  const auto rows = bounds_table(from, to);
  if (as_json) {
    std::cout << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      std::cout << (i ? "," : "") << "\n  {\"n\": " << r.n << ", \"this_work\": " << r.this_work
                << ", \"lassak\": " << r.lassak << ", \"rogers\": " << r.rogers
                << ", \"certified\": " << (r.certified ? "true" : "false") << "}";
    }
    std::cout << "\n]\n";
    return kExitOk;
  }
  std::cout << "  n  this-work      lassak      rogers  status\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line.width(3);
    line << r.n;
    line.width(11);
    line << r.this_work.str();
    line.width(12);
    line << r.lassak.str();
    line.width(12);
    line << r.rogers.str();
    line << "  " << (r.certified ? "certified" : "formula only, no certificate");
    std::cout << line.str() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact box covers of cube skeletons, with machine-checked certificates"};
  app.require_subcommand(1);
  int threads = default_threads();
  app.add_option("--threads", threads, "verification thread cap")->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("generate", "construct a cover and write its certificate");
  std::string family = "assemble96";
  int n = 4;
  std::string eps_text, tangency_path, out_path;
  std::uint64_t seed = 0;
  bool long_run = false;
  gen->add_option("--family", family, "prop1 | cover88 | assemble96 | tangency")->required();
  gen->add_option("--n", n, "ambient dimension");
  gen->add_option("--epsilon", eps_text, "initial epsilon as p/q");
  auto* seed_opt = gen->add_option("--seed", seed, "seed for a random tangency set");
  gen->add_option("--tangency", tangency_path, "tangency set file (one base point per line)");
  gen->add_option("--out", out_path, "output file (default stdout)");
  gen->add_flag("--long-run", long_run, "allow n >= 6 constructions");

  auto* ver = app.add_subcommand("verify", "re-check a certificate from scratch");
  std::string cert_path;
  bool recheck_class = true, emit_witness = true;
  ver->add_option("file", cert_path, "certificate file")->required();
  ver->add_flag("--recheck-class,!--no-recheck-class", recheck_class,
                "re-check the class constraint (default on)");
  ver->add_flag("--emit-witness,!--no-emit-witness", emit_witness,
                "print a witness point on failure (default on)");
  ver->add_flag("--long-run", long_run, "progress output for large certificates");

  auto* fuzz = app.add_subcommand("fuzz-a4", "randomized check of the tangency-set procedure");
  int count = 100;
  bool boundary = false;
  std::string repro_dir;
  fuzz->add_option("--count", count, "number of random tangency sets")
      ->check(CLI::NonNegativeNumber);
  fuzz->add_option("--seed", seed, "random seed");
  fuzz->add_flag("--boundary", boundary, "also sweep the case-threshold grid");
  fuzz->add_option("--repro-dir", repro_dir, "directory for failure reproducers");

  auto* bounds = app.add_subcommand("bounds", "print the upper-bound comparison table");
  int from = 4, to = 6;
  bool as_json = false;
  bounds->add_option("--from", from, "first dimension");
  bounds->add_option("--to", to, "last dimension");
  bounds->add_flag("--json", as_json, "structured output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(family, n, eps_text, seed, seed_opt->count() > 0, tangency_path,
                          out_path, long_run, threads);
    if (ver->parsed()) return cmd_verify(cert_path, threads, recheck_class, emit_witness, long_run);
    if (fuzz->parsed()) return cmd_fuzz_a4(count, seed, boundary, repro_dir, threads);
    if (bounds->parsed()) return cmd_bounds(from, to, as_json);
  } catch (const boxcover::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstruction;
  }
  return kExitMalformed;
}
