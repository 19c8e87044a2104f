#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "boxcover/geometry.hpp"
#include "test_support.hpp"

using namespace boxcover;

TEST_CASE("box side sums") {
  Box all_quarter({Rational(0), Rational(0), Rational(0), Rational(0)},
                  {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  CHECK(box_class_sum(all_quarter) == Rational(1));

  Box pt = Box::point(Point({Rational(1, 3), Rational(0), Rational(1), Rational(2, 5)}));
  CHECK(box_class_sum(pt) == Rational(0));

  // The edge-cover box shape: [1/4,3/4] x [0,1/4]^2 x {0}.
  Box edge({Rational(1, 4), Rational(0), Rational(0), Rational(0)},
           {Rational(3, 4), Rational(1, 4), Rational(1, 4), Rational(0)});
  CHECK(box_class_sum(edge) == Rational(1));

  CHECK_FALSE(box_in_class(all_quarter, BoxClass::Strict));
  CHECK(box_in_class(all_quarter, BoxClass::NonStrict));
  CHECK(box_in_class(pt, BoxClass::Strict));
}

TEST_CASE("closed box point membership") {
  const Box cube = Box::unit_cube(4);
  CHECK(box_contains_point(cube, Point({Rational(1, 2), Rational(1, 2), Rational(1, 2),
                                        Rational(1, 2)})));
  Box q({Rational(0), Rational(0), Rational(0), Rational(0)},
        {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  CHECK(box_contains_point(q, Point({Rational(1, 4), Rational(0), Rational(0), Rational(0)})));
  CHECK_FALSE(box_contains_point(
      q, Point({Rational(1, 4) + Rational(1, 1000), Rational(0), Rational(0), Rational(0)})));
  CHECK_THROWS_AS(box_contains_point(q, Point({Rational(0)})), std::invalid_argument);
}

TEST_CASE("face enumeration counts and canonical order") {
  CHECK(enumerate_faces(4, 2).size() == 24);
  CHECK(enumerate_faces(4, 0).size() == 16);
  CHECK(enumerate_faces(5, 3).size() == 40);
  CHECK(enumerate_faces(3, 1).size() == 12);
  for (int n : {3, 4, 5, 6})
    CHECK(enumerate_faces(n, n - 2).size() == static_cast<std::size_t>(2 * n * (n - 1)));

  // Deterministic order: fixed-axis sets lexicographic, then values counting
  // with the first axis most significant.
  const auto faces = enumerate_faces(3, 1);
  CHECK(faces[0] == CubeFace(3, {{0, 0}, {1, 0}}));
  CHECK(faces[1] == CubeFace(3, {{0, 0}, {1, 1}}));
  CHECK(faces[2] == CubeFace(3, {{0, 1}, {1, 0}}));
  CHECK(faces[3] == CubeFace(3, {{0, 1}, {1, 1}}));
  CHECK(faces[4] == CubeFace(3, {{0, 0}, {2, 0}}));
  CHECK(faces[11] == CubeFace(3, {{1, 1}, {2, 1}}));

  // All distinct.
  std::set<CubeFace> unique(faces.begin(), faces.end());
  CHECK(unique.size() == faces.size());
}

TEST_CASE("symmetries act on points, boxes and faces") {
  const int n = 4;
  const auto id = CubeSymmetry::identity(n);
  Box edge({Rational(1, 4), Rational(0), Rational(0), Rational(0)},
           {Rational(3, 4), Rational(1, 4), Rational(1, 4), Rational(0)});
  CHECK(apply_symmetry(id, edge) == edge);

  SECTION("flip of a symmetric interval is itself") {
    CubeSymmetry flip0 = id;
    flip0.flip[0] = true;
    CHECK(apply_symmetry(flip0, edge) == edge);
  }

  SECTION("swapping axes moves an edge") {
    CubeSymmetry swap02({2, 1, 0, 3}, {false, false, false, false});
    // Edge from (0,0,0,0) to (1,0,0,0) maps to the edge along axis 2.
    CubeFace e1(4, {{1, 0}, {2, 0}, {3, 0}});
    CubeFace image = apply_symmetry(swap02, e1);
    CHECK(image == CubeFace(4, {{0, 0}, {1, 0}, {3, 0}}));
  }

  SECTION("inverse composes to the identity") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
      const auto s = testsupport::random_symmetry(rng, n);
      const auto b = testsupport::random_strict_box(rng, n);
      CHECK(apply_symmetry(s.inverse(), apply_symmetry(s, b)) == b);
      CHECK(s.then(s.inverse()) == CubeSymmetry::identity(n));
    }
  }

  SECTION("side sums are preserved") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 200; ++i) {
      const auto s = testsupport::random_symmetry(rng, n);
      const auto b = testsupport::random_strict_box(rng, n);
      CHECK(box_class_sum(apply_symmetry(s, b)) == box_class_sum(b));
    }
  }

  SECTION("composition associates with application") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
      const auto s = testsupport::random_symmetry(rng, n);
      const auto t = testsupport::random_symmetry(rng, n);
      const auto b = testsupport::random_strict_box(rng, n);
      CHECK(apply_symmetry(s.then(t), b) == apply_symmetry(t, apply_symmetry(s, b)));
    }
  }
}

TEST_CASE("all_symmetries enumerates the full hyperoctahedral group") {
  const auto syms = all_symmetries(3);
  CHECK(syms.size() == 48);
  std::set<std::string> unique;
  for (const auto& s : syms) unique.insert(s.str());
  CHECK(unique.size() == 48);
  // Sorted lexicographically by (perm, flip); identity first.
  CHECK(syms.front() == CubeSymmetry::identity(3));
}
