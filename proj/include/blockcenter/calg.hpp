#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "blockcenter/gf.hpp"

namespace bc {

using ordered_json = nlohmann::ordered_json;

// Finite-dimensional commutative associative unital algebra over F_q given by
// its structure-constant tensor. The tensor is stored as bytes when the field
// is a small prime field (the large-dimension cases), uint64 otherwise.
struct CommAlgebra {
  Field F;
  std::size_t dim = 0;
  std::vector<std::string> labels;
  std::vector<Fq> one;

  bool use8 = false;
  std::vector<std::uint8_t> sc8;
  std::vector<Fq> sc64;

  Fq sc(std::size_t i, std::size_t j, std::size_t l) const {
    std::size_t idx = (i * dim + j) * dim + l;
    return use8 ? (Fq)sc8[idx] : sc64[idx];
  }

  // Construction validates commutativity, the unit, and associativity
  // (exhaustive for dim <= 64, 500 seeded random triples otherwise).
  static CommAlgebra build(Field F, std::vector<std::string> labels,
                           std::vector<Fq> tensor, std::vector<Fq> one);

  std::vector<Fq> basis_vec(std::size_t i) const;
  std::vector<Fq> mult_basis(std::size_t i, const std::vector<Fq>& v) const;
  std::vector<Fq> multiply(const std::vector<Fq>& u,
                           const std::vector<Fq>& v) const;
  Mat mult_matrix(const std::vector<Fq>& v) const;  // M_v : x -> v*x
  std::vector<Fq> power(std::vector<Fq> v, std::uint64_t e) const;

  ordered_json to_json() const;
  static CommAlgebra from_json(const ordered_json& j);
};

struct IdealBasis {
  const CommAlgebra* parent = nullptr;
  RowSpace space;

  std::size_t dim() const { return space.dim(); }
  bool operator==(const IdealBasis& o) const { return space == o.space; }
};

IdealBasis zero_ideal(const CommAlgebra& A);
// span of the given vectors closed under multiplication by A (A*S)
IdealBasis ideal_generated_by(const CommAlgebra& A,
                              const std::vector<std::vector<Fq>>& gens);

// Exactly the nilpotent elements: kernel of the t-fold p-power map with
// p^t >= dim, linearized by untwisting Frobenius on coordinates.
IdealBasis nilradical(const CommAlgebra& A);

IdealBasis ideal_product(const IdealBasis& I, const IdealBasis& J);
IdealBasis ideal_power(const IdealBasis& I, std::size_t n);
IdealBasis ideal_sum(const IdealBasis& I, const IdealBasis& J);

// Radical power chain J^1 > J^2 > ... > J^LL = 0 (small ideal generating set
// of J found greedily, then one matrix-vector pass per power).
std::vector<IdealBasis> radical_series(const CommAlgebra& A);
int loewy_length(const CommAlgebra& A);

// Quotient A/N by a (nil)ideal, with projection/lift data.
struct QuotientAlgebra {
  CommAlgebra alg;
  std::vector<std::size_t> coset_coords;  // non-pivot coordinates of N
  const CommAlgebra* parent = nullptr;
  RowSpace modded;  // the ideal divided out

  std::vector<Fq> project(const std::vector<Fq>& v) const;
  std::vector<Fq> lift(const std::vector<Fq>& v) const;
};
QuotientAlgebra quotient(const CommAlgebra& A, const IdealBasis& N);

// Pairwise orthogonal primitive idempotents summing to 1, deterministic
// order. Splits the Frobenius-fixed subalgebra of A/J (all of whose minimal
// polynomials factor into distinct linear factors), then lifts through the
// radical with e <- 3e^2 - 2e^3.
std::vector<std::vector<Fq>> primitive_idempotents(const CommAlgebra& A);

// number of simple components of A/J (= number of primitive idempotents)
std::size_t component_count(const CommAlgebra& A);
bool is_local(const CommAlgebra& A);

// e*A as an algebra in its own right; rows of `basis` express the new basis
// in A-coordinates.
struct SubAlgebra {
  CommAlgebra alg;
  RowSpace basis;
  std::vector<Fq> express(const std::vector<Fq>& v_in_parent) const;
};
SubAlgebra component_algebra(const CommAlgebra& A, const std::vector<Fq>& e);

bool is_uniserial(const CommAlgebra& A);
bool is_klein_four_group_algebra(const CommAlgebra& A);

// group algebra of an explicitly listed finite group (used for F[Z(P)])
struct FiniteGroup;
CommAlgebra group_algebra(const FiniteGroup& G, const Field& F);

}  // namespace bc
