#include <doctest.h>

#include <random>

#include "hlsplit/subspace.hpp"

using namespace hls;

namespace {

Mat random_mat(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound = 4) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, 3);
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rat(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("Rat parsing and canonical form") {
  CHECK(Rat::parse("6/4") == Rat(3, 2));
  CHECK(Rat::parse("-7/3").str() == "-7/3");
  CHECK(Rat::parse("0/17").str() == "0");
  CHECK(Rat::parse("42").str() == "42");
  CHECK(Rat(6, -4) == Rat(-3, 2));
  CHECK_THROWS_AS(Rat::parse("1/0"), error);
  CHECK_THROWS_AS(Rat::parse("1/-2"), error);
  CHECK_THROWS_AS(Rat::parse(" 1"), error);
  CHECK_THROWS_AS(Rat::parse("1 "), error);
  CHECK_THROWS_AS(Rat::parse("a"), error);
  CHECK_THROWS_AS(Rat::parse(""), error);
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK_THROWS_AS(Rat(1) / Rat(0), error);
}

TEST_CASE("rref examples") {
  SUBCASE("dependent rows") {
    RrefResult r = rref(Mat{{1, 2}, {2, 4}});
    CHECK(r.rank == 1);
    CHECK(r.pivots == std::vector<std::size_t>{0});
    CHECK(r.reduced == Mat{{1, 2}, {0, 0}});
  }
  SUBCASE("identity is fixed") {
    Mat id = Mat::identity(3);
    RrefResult r = rref(id);
    CHECK(r.reduced == id);
    CHECK(r.rank == 3);
  }
  SUBCASE("hand row-reduction") {
    RrefResult r = rref(Mat{{0, 1}, {1, 1}});
    CHECK(r.reduced == Mat::identity(2));
    CHECK(r.rank == 2);
  }
}

TEST_CASE("kernel examples") {
  CHECK(kernel(Mat(2, 2)).dim() == 2);
  CHECK(kernel(Mat::identity(2)).dim() == 0);
  Subspace k = kernel(Mat{{1, 1}});
  CHECK(k.dim() == 1);
  Mat v(2, 1);
  v(0, 0) = Rat(1);
  v(1, 0) = Rat(-1);
  CHECK(k.contains(v));
}

TEST_CASE("solve examples") {
  SUBCASE("identity system") {
    Mat b{{3}, {4}};
    SolveResult s = solve(Mat::identity(2), b);
    CHECK(s.kind == SolveResult::Kind::unique);
    CHECK(s.solution == b);
  }
  SUBCASE("no solution") {
    Mat a{{1, 0}, {0, 0}};
    Mat b{{0}, {1}};
    CHECK(solve(a, b).kind == SolveResult::Kind::none);
  }
  SUBCASE("underdetermined") {
    Mat a{{1, 1}};
    Mat b{{1}};
    SolveResult s = solve(a, b);
    CHECK(s.kind == SolveResult::Kind::many);
    CHECK(a * s.solution == b);
    Subspace k = Subspace::span(s.kernel_cols);
    Mat v(2, 1);
    v(0, 0) = Rat(1);
    v(1, 0) = Rat(-1);
    CHECK(k.dim() == 1);
    CHECK(k.contains(v));
  }
}

TEST_CASE("solve result is exact on random systems") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 25; ++t) {
    Mat a = random_mat(rng, 4, 3);
    Mat x = random_mat(rng, 3, 2);
    Mat b = a * x;
    SolveResult s = solve(a, b);
    REQUIRE(s.kind != SolveResult::Kind::none);
    CHECK(a * s.solution == b);
  }
}

TEST_CASE("intersect examples") {
  SUBCASE("self intersection") {
    std::mt19937_64 rng(5);
    Subspace u = Subspace::span(random_mat(rng, 4, 2));
    CHECK(intersect(u, u) == u);
  }
  SUBCASE("complementary lines") {
    Mat a(2, 1), b(2, 1);
    a(0, 0) = Rat(1);
    b(1, 0) = Rat(1);
    CHECK(intersect(Subspace::span(a), Subspace::span(b)).dim() == 0);
  }
  SUBCASE("plane intersection") {
    Mat u(3, 2), w(3, 2);
    u(0, 0) = Rat(1);
    u(1, 1) = Rat(1);
    w(1, 0) = Rat(1);
    w(2, 1) = Rat(1);
    Subspace x = intersect(Subspace::span(u), Subspace::span(w));
    CHECK(x.dim() == 1);
    Mat e2(3, 1);
    e2(1, 0) = Rat(1);
    CHECK(x == Subspace::span(e2));
  }
  CHECK_THROWS_AS(intersect(Subspace::zero(2), Subspace::zero(3)), error);
}

TEST_CASE("complement_in examples") {
  std::mt19937_64 rng(7);
  Subspace outer = Subspace::full(3);
  SUBCASE("zero inner") {
    CHECK(complement_in(Subspace::zero(3), outer) == outer);
  }
  SUBCASE("full inner") { CHECK(complement_in(outer, outer).dim() == 0); }
  SUBCASE("pivot rule") {
    Mat a(3, 1), b(3, 2);
    a(0, 0) = Rat(1);
    b(0, 0) = Rat(1);
    b(1, 1) = Rat(1);
    Subspace c = complement_in(Subspace::span(a), Subspace::span(b));
    Mat e2(3, 1);
    e2(1, 0) = Rat(1);
    CHECK(c == Subspace::span(e2));
  }
  SUBCASE("not contained") {
    Mat a(3, 1), b(3, 1);
    a(2, 0) = Rat(1);
    b(0, 0) = Rat(1);
    CHECK_THROWS_AS(complement_in(Subspace::span(a), Subspace::span(b)), error);
  }
  (void)rng;
}

TEST_CASE("subspace lattice properties on random instances") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 30; ++t) {
    Subspace u = Subspace::span(random_mat(rng, 5, 1 + t % 4));
    Subspace w = Subspace::span(random_mat(rng, 5, 1 + (t / 4) % 4));
    // Dimension formula.
    CHECK(sum(u, w).dim() + intersect(u, w).dim() == u.dim() + w.dim());
    // Canonical-form idempotence.
    CHECK(Subspace::span(u.basis()) == u);
    // Complements split the ambient space.
    Subspace total = sum(u, w);
    Subspace c = complement_in(u, total);
    CHECK(c.dim() + u.dim() == total.dim());
    CHECK(intersect(c, u).dim() == 0);
    // Double annihilator.
    CHECK(annihilator(annihilator(u)) == u);
  }
}
