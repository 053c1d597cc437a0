#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blockcenter/error.hpp"

namespace bc {

// A field element is a canonical uint64: the base-p packing of its
// coordinate vector over F_p (degree < m).  For prime fields (m = 1) the
// value is just the residue, which keeps the hot linear algebra cheap.
using Fq = std::uint64_t;

bool is_prime(std::uint64_t n);

struct Field {
  std::uint32_t p = 2;
  std::uint32_t m = 1;
  std::vector<std::uint32_t> modulus;  // monic, coeffs low->high, size m+1

  bool operator==(const Field&) const = default;

  std::uint64_t order() const;  // p^m
  Fq zero() const { return 0; }
  Fq one() const { return m == 0 ? 0 : 1; }
  Fq from_int(long long n) const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq pow(Fq a, std::uint64_t e) const;
  Fq frobenius(Fq a) const { return pow(a, p); }

  std::vector<std::uint32_t> unpack(Fq a) const;
  Fq pack(const std::vector<std::uint32_t>& c) const;
  std::string to_string(Fq a) const;
};

// Smallest (coefficients compared low-degree first) monic irreducible of
// degree m picks the modulus, so fields are reproducible across runs.
Field make_field(std::uint32_t p, std::uint32_t m, std::uint32_t degree_guard = 16);

// ---------------------------------------------------------------------------
// Dense matrices, row-major.

struct Mat {
  std::size_t rows = 0, cols = 0;
  std::vector<Fq> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}
  Fq& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  Fq at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool operator==(const Mat&) const = default;
};

Mat matmul(const Field& F, const Mat& A, const Mat& B);
std::vector<Fq> matvec(const Field& F, const Mat& A, const std::vector<Fq>& v);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<std::size_t> rref(const Field& F, Mat& M);
std::size_t rank(const Field& F, Mat M);
// Rows of the result form a canonical basis of the right null space.
Mat kernel(const Field& F, const Mat& M);
std::optional<std::vector<Fq>> solve(const Field& F, const Mat& M,
                                     const std::vector<Fq>& b);

// Canonical (reduced-echelon) row space with incremental insertion. Equality
// of spans is literal equality of the stored rows.
struct RowSpace {
  const Field* F = nullptr;
  std::size_t n = 0;
  std::vector<std::vector<Fq>> rows;  // sorted by pivot, lead 1, fully reduced
  std::vector<std::size_t> piv;

  RowSpace() = default;
  RowSpace(const Field& f, std::size_t dim) : F(&f), n(dim) {}

  std::size_t dim() const { return rows.size(); }
  std::vector<Fq> reduce(std::vector<Fq> v) const;
  bool contains(const std::vector<Fq>& v) const;
  bool insert(std::vector<Fq> v);  // true if the span grew
  bool insert_all(const std::vector<std::vector<Fq>>& vs);
  bool operator==(const RowSpace& o) const {
    return n == o.n && rows == o.rows;
  }
  Mat as_mat() const;
};

RowSpace intersect(const RowSpace& U, const RowSpace& V);

// ---------------------------------------------------------------------------
// Univariate polynomials, coefficients low -> high, trimmed.

using Poly = std::vector<Fq>;

int deg(const Poly& f);
Poly trim(Poly f);
Poly poly_add(const Field& F, const Poly& f, const Poly& g);
Poly poly_sub(const Field& F, const Poly& f, const Poly& g);
Poly poly_mul(const Field& F, const Poly& f, const Poly& g);
// quotient/remainder, divisor must be nonzero
std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& f, const Poly& g);
Poly poly_mod(const Field& F, const Poly& f, const Poly& g);
Poly poly_gcd(const Field& F, Poly f, Poly g);  // monic
Poly poly_derivative(const Field& F, const Poly& f);
Poly poly_monic(const Field& F, Poly f);
Fq poly_eval(const Field& F, const Poly& f, Fq x);
Poly poly_pow_mod(const Field& F, Poly base, std::uint64_t e, const Poly& mod);
bool poly_is_irreducible(const Field& F, const Poly& f);

// Deterministic factorization: squarefree decomposition, distinct-degree
// splitting, then equal-degree splitting by sweeping field elements (no
// randomness). Factors come back sorted, multiplied out they give f back.
std::vector<std::pair<Poly, int>> factor_poly(const Field& F, const Poly& f);

}  // namespace bc
