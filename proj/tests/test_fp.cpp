#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gmalg/linalg.hpp"

using namespace gmalg;

namespace {

Mat random_mat(std::size_t r, std::size_t c, std::uint32_t p, std::mt19937& rng) {
  Mat m(r, c, p);
  std::uniform_int_distribution<std::uint32_t> dist(0, p - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("modular arithmetic") {
  CHECK(mod_add(3, 4, 5) == 2);
  CHECK(mod_sub(1, 4, 5) == 2);
  CHECK(mod_mul(3, 4, 5) == 2);
  CHECK(mod_inv(2, 5) == 3);
  CHECK(mod_half(3, 5) == 4);  // 4*2 = 8 = 3 mod 5
  CHECK(mod_pow(2, 10, 1009) == 1024 % 1009);
  CHECK(is_odd_prime(3));
  CHECK(is_odd_prime(65521));
  CHECK_FALSE(is_odd_prime(2));
  CHECK_FALSE(is_odd_prime(9));
  CHECK_FALSE(is_odd_prime(1));
}

TEST_CASE("Fp value type") {
  Fp a(7, 5), b(-1, 5);
  CHECK(a.v == 2);
  CHECK(b.v == 4);
  CHECK((a * b).v == 3);
  CHECK((a + b).v == 1);
  CHECK((a / b).v == mod_mul(2, mod_inv(4, 5), 5));
  CHECK((-a).v == 3);
  CHECK(a.pow(4).v == 1);
}

TEST_CASE("Barrett matches plain remainder") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {3u, 5u, 65521u, 2147483629u}) {
    Barrett b(p);
    std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t(1) << 62));
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t a = dist(rng);
      CHECK(b.reduce(a) == a % p);
    }
  }
}

TEST_CASE("rref on fixed inputs") {
  SUBCASE("identity is already reduced") {
    Mat m = Mat::identity(2, 5);
    Echelon e = rref(m);
    CHECK(e.reduced == m);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  }
  SUBCASE("dependent second row is eliminated") {
    Mat m(2, 2, 5);
    m(0, 0) = 2;
    m(0, 1) = 4;
    m(1, 0) = 1;
    m(1, 1) = 2;
    Echelon e = rref(m);
    CHECK(e.rank() == 1);
    CHECK(e.pivots == std::vector<std::size_t>{0});
    CHECK(e.reduced.row_vec(0) == Vec{1, 2});
  }
  SUBCASE("zero matrix") {
    Echelon e = rref(Mat(3, 3, 7));
    CHECK(e.rank() == 0);
    CHECK(e.pivots.empty());
  }
}

TEST_CASE("rref is idempotent and kernel dimensions add up") {
  std::mt19937 rng(11);
  for (std::uint32_t p : {3u, 5u, 17u}) {
    for (int trial = 0; trial < 20; ++trial) {
      Mat m = random_mat(8, 11, p, rng);
      Echelon e = rref(m);
      Echelon e2 = rref(e.reduced);
      CHECK(e2.reduced == e.reduced);
      CHECK(e2.pivots == e.pivots);
      const auto ker = kernel_basis(m);
      CHECK(e.rank() + ker.size() == m.cols());
      for (const auto& k : ker) CHECK(vec_is_zero(mat_apply(m, k)));
    }
  }
}

TEST_CASE("serial and OpenMP kernels produce identical rref") {
  std::mt19937 rng(13);
  // 2147483629 is prime and close to 2^31, forcing the streaming kernel
  // to reduce its 64-bit workspace on every step
  for (std::uint32_t p : {3u, 5u, 65521u, 2147483629u}) {
    for (int trial = 0; trial < 10; ++trial) {
      Mat m = random_mat(37, 53, p, rng);
      Echelon a = rref_serial(m);
      Echelon b = rref_openmp(m);
      CHECK(a.reduced == b.reduced);
      CHECK(a.pivots == b.pivots);
    }
  }
}

TEST_CASE("solve_affine fixed cases") {
  SUBCASE("1x1 over F_5") {
    Mat a(1, 1, 5);
    a(0, 0) = 2;
    auto sol = solve_affine(a, Vec{3});
    REQUIRE(sol);
    CHECK(sol->particular == Vec{4});
    CHECK(sol->kernel.empty());
  }
  SUBCASE("underdetermined over F_3") {
    Mat a(1, 2, 3);
    a(0, 0) = 1;
    a(0, 1) = 1;
    auto sol = solve_affine(a, Vec{0});
    REQUIRE(sol);
    CHECK(sol->particular == Vec{0, 0});
    REQUIRE(sol->kernel.size() == 1);
    CHECK(sol->kernel[0] == Vec{2, 1});
  }
  SUBCASE("inconsistent") {
    Mat a(1, 1, 5);
    auto sol = solve_affine(a, Vec{1});
    CHECK_FALSE(sol);
  }
}

TEST_CASE("solve_affine residuals on random systems") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::uint32_t> dist(0, 4);
  for (int trial = 0; trial < 30; ++trial) {
    Mat a = random_mat(6, 9, 5, rng);
    Vec x(9);
    for (auto& c : x) c = dist(rng);
    const Vec b = mat_apply(a, x);
    auto sol = solve_affine(a, b);
    REQUIRE(sol);
    CHECK(mat_apply(a, sol->particular) == b);
    for (const auto& k : sol->kernel) CHECK(vec_is_zero(mat_apply(a, k)));
  }
}

TEST_CASE("subspace_contains") {
  CHECK(subspace_contains({Vec{1, 0}}, Vec{3, 0}, 5));
  CHECK_FALSE(subspace_contains({Vec{1, 0}}, Vec{0, 1}, 5));
  CHECK(subspace_contains({}, Vec{0, 0}, 5));
}

TEST_CASE("RowSpace streaming agrees with batch rref") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Mat m = random_mat(25, 14, 5, rng);
    RowSpace rs(14, 5);
    for (std::size_t i = 0; i < m.rows(); ++i) rs.add_row(m.row(i));
    Echelon e = rref_serial(m);
    CHECK(Mat::from_rows(rs.canonical_rows(), 14, 5) == e.reduced);
    CHECK(rs.pivots() == e.pivots);
  }
}

TEST_CASE("degenerate shapes") {
  Echelon e = rref(Mat(0, 4, 5));
  CHECK(e.rank() == 0);
  CHECK(kernel_basis(Mat(0, 3, 5)).size() == 3);  // no constraints at all
  auto sol = solve_affine(Mat(0, 2, 5), Vec{});
  REQUIRE(sol);
  CHECK(sol->particular == Vec{0, 0});
  CHECK(sol->kernel.size() == 2);
  CHECK(rref(Mat(3, 0, 5)).rank() == 0);
}

TEST_CASE("matrix inverse round trip") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    Mat m = random_mat(6, 6, 5, rng);
    auto inv = mat_inverse(m);
    if (!inv) continue;
    CHECK(mat_mul(m, *inv) == Mat::identity(6, 5));
    CHECK(mat_mul(*inv, m) == Mat::identity(6, 5));
  }
  CHECK_FALSE(mat_inverse(Mat(3, 3, 5)));
}
