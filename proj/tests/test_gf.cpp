#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "blockcenter/gf.hpp"

using namespace bc;

namespace {

Poly random_poly(const Field& F, std::mt19937_64& rng, int max_deg) {
  std::uniform_int_distribution<int> dd(1, max_deg);
  std::uniform_int_distribution<std::uint64_t> dc(0, F.order() - 1);
  int d = dd(rng);
  Poly f(d + 1, 0);
  for (int i = 0; i <= d; ++i) f[i] = dc(rng);
  if (f[d] == 0) f[d] = F.one();
  return f;
}

// exhaustive search oracle: smallest irreducible quadratic over F_p,
// coefficients compared constant term first
std::vector<std::uint32_t> smallest_irreducible_quadratic(std::uint32_t p) {
  Field Fp = make_field(p, 1);
  for (std::uint32_t c0 = 0; c0 < p; ++c0)
    for (std::uint32_t c1 = 0; c1 < p; ++c1) {
      Poly f{c0, c1, 1};
      bool has_root = false;
      for (std::uint32_t x = 0; x < p && !has_root; ++x)
        has_root = poly_eval(Fp, f, x) == 0;
      if (!has_root) return {c0, c1, 1};
    }
  return {};
}

}  // namespace

TEST_CASE("make_field moduli") {
  Field F2 = make_field(2, 1);
  CHECK(F2.modulus == std::vector<std::uint32_t>{0, 1});  // x
  Field F4 = make_field(2, 2);
  CHECK(F4.modulus == std::vector<std::uint32_t>{1, 1, 1});  // x^2+x+1
  Field F9 = make_field(3, 2);
  CHECK(F9.modulus == smallest_irreducible_quadratic(3));
  CHECK(F9.modulus == std::vector<std::uint32_t>{1, 0, 1});  // x^2+1
  CHECK_THROWS_AS(make_field(4, 1), Error);
  CHECK_THROWS_AS(make_field(2, 17), Error);
}

TEST_CASE("field arithmetic laws") {
  for (auto [p, m] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u},
                      {3u, 2u}, {2u, 4u}, {7u, 2u}}) {
    Field F = make_field(p, m);
    std::uint64_t q = F.order();
    std::mt19937_64 rng(q);
    std::uniform_int_distribution<std::uint64_t> dc(0, q - 1);
    for (int t = 0; t < 200; ++t) {
      Fq a = dc(rng), b = dc(rng), c = dc(rng);
      CHECK(F.add(a, b) == F.add(b, a));
      CHECK(F.mul(a, b) == F.mul(b, a));
      CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
      // Frobenius additivity
      CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
    // x^q = x for every element when q small
    if (q <= 81)
      for (Fq a = 0; a < q; ++a) CHECK(F.pow(a, q) == a);
  }
}

TEST_CASE("kernel rank solve") {
  Field F2 = make_field(2, 1);
  Mat I(2, 2);
  I.at(0, 0) = I.at(1, 1) = 1;
  CHECK(kernel(F2, I).rows == 0);

  Mat Z(3, 3);
  CHECK(kernel(F2, Z).rows == 3);

  // hand row-reduction oracle: [[1,1],[1,1]] over F_2
  Mat M(2, 2);
  M.at(0, 0) = M.at(0, 1) = M.at(1, 0) = M.at(1, 1) = 1;
  CHECK(rank(F2, M) == 1);
  Mat K = kernel(F2, M);
  REQUIRE(K.rows == 1);
  CHECK(K.at(0, 0) == 1);
  CHECK(K.at(0, 1) == 1);

  // kernel vectors satisfy M k = 0; rank + nullity = columns
  Field F9 = make_field(3, 2);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> dc(0, 8);
  for (int t = 0; t < 30; ++t) {
    Mat A(4, 6);
    for (auto& x : A.a) x = dc(rng);
    Mat K2 = kernel(F9, A);
    CHECK(rank(F9, A) + K2.rows == A.cols);
    for (std::size_t r = 0; r < K2.rows; ++r) {
      std::vector<Fq> v(A.cols);
      for (std::size_t j = 0; j < A.cols; ++j) v[j] = K2.at(r, j);
      for (Fq y : matvec(F9, A, v)) CHECK(y == 0);
    }
    std::vector<Fq> x0(A.cols);
    for (auto& c : x0) c = dc(rng);
    auto b = matvec(F9, A, x0);
    auto sol = solve(F9, A, b);
    REQUIRE(sol.has_value());
    CHECK(matvec(F9, A, *sol) == b);
  }
}

TEST_CASE("rowspace canonical") {
  Field F3 = make_field(3, 1);
  RowSpace U(F3, 4), V(F3, 4);
  U.insert({1, 2, 0, 1});
  U.insert({0, 1, 1, 0});
  V.insert({0, 1, 1, 0});
  V.insert({2, 4 % 3, 0, 2});  // scalar multiple of first
  V.insert({1, 0, 1, 1});      // combination
  CHECK(U == V);
  CHECK(U.dim() == 2);
  RowSpace W = intersect(U, V);
  CHECK(W == U);
}

TEST_CASE("factor_poly pinned") {
  Field F2 = make_field(2, 1);
  // x^3 + 1 = (x+1)(x^2+x+1)
  auto f1 = factor_poly(F2, Poly{1, 0, 0, 1});
  REQUIRE(f1.size() == 2);
  CHECK(f1[0].first == Poly{1, 1});
  CHECK(f1[0].second == 1);
  CHECK(f1[1].first == Poly{1, 1, 1});
  CHECK(f1[1].second == 1);

  // x^4 + x = x (x+1) (x^2+x+1)   [exhaustive-root + trial-division oracle]
  auto f2 = factor_poly(F2, Poly{0, 1, 0, 0, 1});
  REQUIRE(f2.size() == 3);
  CHECK(f2[0].first == Poly{0, 1});
  CHECK(f2[1].first == Poly{1, 1});
  CHECK(f2[2].first == Poly{1, 1, 1});

  // x^p - 1 = (x-1)^p over F_p
  for (std::uint32_t p : {2u, 3u, 5u}) {
    Field Fp = make_field(p, 1);
    Poly f(p + 1, 0);
    f[0] = Fp.neg(1);
    f[p] = 1;
    auto fs = factor_poly(Fp, f);
    REQUIRE(fs.size() == 1);
    CHECK(fs[0].second == (int)p);
    CHECK(fs[0].first == Poly{Fp.neg(1), 1});
  }
}

TEST_CASE("factor_poly round trips") {
  for (auto [p, m] : {std::pair{2u, 1u}, {3u, 1u}, {5u, 1u}, {2u, 2u}, {3u, 2u}}) {
    Field F = make_field(p, m);
    std::mt19937_64 rng(1000 * p + m);
    for (int t = 0; t < 100; ++t) {
      Poly f = random_poly(F, rng, 12);
      auto fs = factor_poly(F, f);
      Poly prod{f[deg(f)]};
      for (auto& [g, mult] : fs) {
        CHECK(g[deg(g)] == F.one());
        for (int i = 0; i < mult; ++i) prod = poly_mul(F, prod, g);
      }
      CHECK(trim(prod) == trim(f));
    }
  }
}
