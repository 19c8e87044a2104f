#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "boxcover/geometry.hpp"
#include "boxcover/skeleton.hpp"
#include "boxcover/verifier.hpp"

namespace boxcover {

/// A self-contained covering claim: boxes, declared class and target, plus
/// construction metadata. Serialization is line-based, human-diffable and
/// deterministic: fixed field order, metadata keys sorted, rationals in
/// lowest terms.
struct Certificate {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  int dimension = 0;
  std::string family;
  BoxClass declared_class = BoxClass::Strict;
  Target target;
  std::map<std::string, std::string> meta;
  std::vector<Box> boxes;

  Cover cover() const { return Cover(dimension, boxes, declared_class); }
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace certio {

inline std::string point_str(const Point& p) {
  std::string s;
  for (int i = 0; i < p.dim(); ++i) {
    if (i) s += ",";
    s += p[i].str();
  }
  return s;
}

inline Point parse_point(const std::string& text, int dim) {
  std::vector<Rational> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto r = Rational::parse(item);
    if (!r) throw ParseError("bad rational '" + item + "'");
    coords.push_back(*r);
  }
  if (dim > 0 && static_cast<int>(coords.size()) != dim)
    throw ParseError("point has wrong dimension: " + text);
  return Point(std::move(coords));
}

}  // namespace certio

inline void write_certificate(std::ostream& os, const Certificate& c) {
  os << "boxcover-certificate " << c.format_version << "\n";
  os << "dimension " << c.dimension << "\n";
  os << "family " << c.family << "\n";
  os << "class " << to_string(c.declared_class) << "\n";

  // Target: compress a full skeleton into one line when it matches.
  bool skeleton_line = false;
  if (!c.target.faces.empty()) {
    const int k = c.target.faces.front().dim();
    if (c.target.faces == enumerate_faces(c.dimension, k)) {
      os << "target skeleton " << c.dimension << " " << k << "\n";
      skeleton_line = true;
    }
  }
  if (!skeleton_line) {
    for (const auto& f : c.target.faces) {
      os << "target face";
      for (const auto& [axis, value] : f.fixed) os << " " << axis << "=" << value;
      os << "\n";
    }
  }
  for (const auto& s : c.target.segments)
    os << "target segment " << certio::point_str(s.a) << " " << certio::point_str(s.b) << "\n";
  for (const auto& p : c.target.points) os << "target point " << certio::point_str(p) << "\n";

  for (const auto& [key, value] : c.meta) os << "meta " << key << " " << value << "\n";

  os << "boxes " << c.boxes.size() << "\n";
  for (const auto& b : c.boxes) {
    os << "box";
    for (int i = 0; i < b.dim(); ++i) {
      const auto a = static_cast<std::size_t>(i);
      os << " " << b.lo[a].str() << " " << b.hi[a].str();
    }
    os << "\n";
  }
  os << "end\n";
}

inline std::string certificate_to_string(const Certificate& c) {
  std::ostringstream os;
  write_certificate(os, c);
  return os.str();
}

inline Certificate read_certificate(std::istream& is) {
  Certificate c;
  std::string line;
  bool saw_header = false, saw_dim = false, saw_end = false;
  long declared_boxes = -1;

  const auto next_token = [](std::stringstream& ss, const char* what) {
    std::string t;
    if (!(ss >> t)) throw ParseError(std::string("missing ") + what);
    return t;
  };

  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    const std::string tag = next_token(ss, "tag");

    if (!saw_header) {
      if (tag != "boxcover-certificate") throw ParseError("missing certificate header");
      c.format_version = std::stoi(next_token(ss, "format version"));
      if (c.format_version != Certificate::kFormatVersion)
        throw ParseError("unsupported format version");
      saw_header = true;
      continue;
    }
    if (tag == "dimension") {
      c.dimension = std::stoi(next_token(ss, "dimension"));
      if (c.dimension < 1 || c.dimension > 64) throw ParseError("dimension out of range");
      c.target.dim = c.dimension;
      saw_dim = true;
    } else if (tag == "family") {
      c.family = next_token(ss, "family");
    } else if (tag == "class") {
      const std::string v = next_token(ss, "class");
      if (v == "strict")
        c.declared_class = BoxClass::Strict;
      else if (v == "nonstrict")
        c.declared_class = BoxClass::NonStrict;
      else
        throw ParseError("unknown class '" + v + "'");
    } else if (tag == "target") {
      if (!saw_dim) throw ParseError("target before dimension");
      const std::string what = next_token(ss, "target kind");
      if (what == "skeleton") {
        const int n = std::stoi(next_token(ss, "skeleton n"));
        const int k = std::stoi(next_token(ss, "skeleton k"));
        if (n != c.dimension || k < 0 || k > n) throw ParseError("bad skeleton target");
        for (auto& f : enumerate_faces(n, k)) c.target.faces.push_back(std::move(f));
      } else if (what == "face") {
        std::map<int, int> fixed;
        std::string part;
        while (ss >> part) {
          const auto eq = part.find('=');
          if (eq == std::string::npos) throw ParseError("bad face spec");
          fixed[std::stoi(part.substr(0, eq))] = std::stoi(part.substr(eq + 1));
        }
        c.target.faces.emplace_back(c.dimension, std::move(fixed));
      } else if (what == "segment") {
        const Point a = certio::parse_point(next_token(ss, "segment start"), c.dimension);
        const Point b = certio::parse_point(next_token(ss, "segment end"), c.dimension);
        c.target.segments.emplace_back(a, b);
      } else if (what == "point") {
        c.target.points.push_back(
            certio::parse_point(next_token(ss, "point coords"), c.dimension));
      } else {
        throw ParseError("unknown target kind '" + what + "'");
      }
    } else if (tag == "meta") {
      const std::string key = next_token(ss, "meta key");
      std::string value, word;
      while (ss >> word) {
        if (!value.empty()) value += " ";
        value += word;
      }
      c.meta[key] = value;
    } else if (tag == "boxes") {
      declared_boxes = std::stol(next_token(ss, "box count"));
      if (declared_boxes < 0) throw ParseError("negative box count");
    } else if (tag == "box") {
      if (!saw_dim) throw ParseError("box before dimension");
      std::vector<Rational> lo, hi;
      for (int i = 0; i < c.dimension; ++i) {
        const auto l = Rational::parse(next_token(ss, "box lo"));
        const auto h = Rational::parse(next_token(ss, "box hi"));
        if (!l || !h) throw ParseError("bad box coordinate");
        lo.push_back(*l);
        hi.push_back(*h);
      }
      std::string extra;
      if (ss >> extra) throw ParseError("trailing data on box line");
      try {
        c.boxes.emplace_back(std::move(lo), std::move(hi));
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
    } else if (tag == "end") {
      saw_end = true;
      break;
    } else {
      throw ParseError("unknown line tag '" + tag + "'");
    }
  }

  if (!saw_header) throw ParseError("empty certificate");
  if (!saw_dim) throw ParseError("missing dimension");
  if (!saw_end) throw ParseError("missing end marker");
  if (declared_boxes < 0) throw ParseError("missing box count");
  if (static_cast<long>(c.boxes.size()) != declared_boxes)
    throw ParseError("box count mismatch");
  if (c.target.empty()) throw ParseError("missing target");
  return c;
}

inline Certificate certificate_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_certificate(is);
}

struct VerificationResult {
  bool class_ok = true;
  bool covered = true;
  std::optional<Point> witness;
  std::uint64_t cells_checked = 0;

  bool ok() const { return class_ok && covered; }
};

/// Re-checks a certificate's claim from scratch: class membership of every
/// box and exact coverage of the declared target.
inline VerificationResult verify_certificate(const Certificate& c, int threads = 1,
                                             bool recheck_class = true) {
  VerificationResult r;
  const Cover cover = c.cover();
  if (recheck_class) r.class_ok = verify_class(cover);
  CoverageReport rep = covers_target(cover, c.target, threads);
  r.covered = rep.covered;
  r.witness = rep.witness;
  r.cells_checked = rep.cells_checked;
  return r;
}

}  // namespace boxcover
