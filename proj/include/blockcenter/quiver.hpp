#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockcenter/calg.hpp"

namespace bc {

struct Arrow {
  std::string name;
  std::size_t src = 0, dst = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::size_t vertex_index(const std::string& name) const;
  std::size_t arrow_index(const std::string& name) const;
};

// A path: source vertex plus arrow indices, composable left to right
// (w = (a, b) means "a then b").
struct PathMonomial {
  std::uint32_t vtx = 0;            // source vertex (the path itself if w empty)
  std::vector<std::uint8_t> w;

  bool operator==(const PathMonomial&) const = default;
};

struct PathTerm {
  Fq coeff = 1;
  PathMonomial mono;
};

// lhs = rhs between parallel path combinations
struct Relation {
  std::vector<PathTerm> lhs, rhs;
};

struct PathAlgebraQuotient {
  Quiver q;
  Field F;
  std::vector<PathMonomial> basis;  // vertex paths first, then by degree
  std::size_t dim = 0;
  // sparse multiplication table: product of basis i and basis j
  std::vector<std::vector<std::pair<std::uint32_t, Fq>>> table;
  int arrow_ideal_nilpotency = 1;  // smallest L with J^L = 0

  std::size_t basis_index(const PathMonomial& m) const;
  std::vector<Fq> vec_of(const PathMonomial& m) const;
  std::vector<Fq> multiply(const std::vector<Fq>& u,
                           const std::vector<Fq>& v) const;
  std::vector<Fq> eval_word(std::size_t vtx,
                            const std::vector<std::uint8_t>& w) const;
  std::vector<Fq> unit() const;
};

// Degree-truncated two-sided ideal closure with overlap resolution; the
// returned basis carries a finite-dimension certificate (no irreducible path
// beyond the stabilized length, arrow ideal nilpotent).
PathAlgebraQuotient build_quotient(const Quiver& q,
                                   const std::vector<Relation>& rels,
                                   std::size_t max_len, const Field& F);

// Solves z g = g z over the vertex idempotents and arrows, re-verifies
// against every basis path, and returns the center with its embedding.
CommAlgebra center(const PathAlgebraQuotient& A, RowSpace* embedding = nullptr);

// ---------------------------------------------------------------------------
// Commutative presentations (monomial rewriting with Buchberger completion).

struct CommTerm {
  long long coeff = 1;
  std::map<std::string, long long> powers;
};

CommAlgebra presented_commutative(const std::vector<std::string>& gens,
                                  const std::vector<std::vector<CommTerm>>& rels,
                                  std::uint32_t p, std::uint32_t m);

// ---------------------------------------------------------------------------
// The built-in d = e+1 case library (presentations shipped as data files).

struct IdentityCheck {
  std::string text;
  bool pass = false;
};

struct CaseReport {
  std::string case_id;
  int d = 0;
  std::size_t algebra_dim = 0;
  std::size_t dim_ZB = 0;
  int LL = 0;
  long long LL_expected = 0;
  bool span_in_center = false;
  bool span_spans_center = false;
  std::optional<long long> kB_expected;
  bool kB_match = true;
  bool jzb2_match = false;
  std::optional<bool> jzb3_match;
  std::vector<IdentityCheck> identities;
  bool pass = false;

  ordered_json to_json() const;
};

std::string default_data_dir();
CaseReport coexp_case(const std::string& case_id, int d,
                      const std::string& data_dir = default_data_dir());

}  // namespace bc
