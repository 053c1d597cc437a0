#include "blockcenter/calg.hpp"

#include <algorithm>
#include <random>

#include "blockcenter/groups.hpp"

namespace bc {

namespace {

std::size_t log2_ceil(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t(1) << k) < n) ++k;
  return k;
}

}  // namespace

std::vector<Fq> CommAlgebra::basis_vec(std::size_t i) const {
  std::vector<Fq> v(dim, 0);
  v[i] = F.one();
  return v;
}

std::vector<Fq> CommAlgebra::mult_basis(std::size_t i,
                                        const std::vector<Fq>& v) const {
  std::vector<Fq> out(dim, 0);
  if (use8) {
    std::vector<std::uint64_t> acc(dim, 0);
    const std::uint8_t* base = sc8.data() + i * dim * dim;
    for (std::size_t j = 0; j < dim; ++j) {
      std::uint64_t c = v[j];
      if (!c) continue;
      const std::uint8_t* row = base + j * dim;
      for (std::size_t l = 0; l < dim; ++l) acc[l] += c * row[l];
    }
    for (std::size_t l = 0; l < dim; ++l) out[l] = acc[l] % F.p;
    return out;
  }
  for (std::size_t j = 0; j < dim; ++j) {
    Fq c = v[j];
    if (!c) continue;
    const Fq* row = sc64.data() + (i * dim + j) * dim;
    for (std::size_t l = 0; l < dim; ++l)
      if (row[l]) out[l] = F.add(out[l], F.mul(c, row[l]));
  }
  return out;
}

std::vector<Fq> CommAlgebra::multiply(const std::vector<Fq>& u,
                                      const std::vector<Fq>& v) const {
  require(u.size() == dim && v.size() == dim, ErrorKind::DimensionMismatch,
          "multiply operand size");
  std::vector<Fq> out(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!u[i]) continue;
    auto w = mult_basis(i, v);
    Fq c = u[i];
    for (std::size_t l = 0; l < dim; ++l)
      if (w[l]) out[l] = F.add(out[l], F.mul(c, w[l]));
  }
  return out;
}

Mat CommAlgebra::mult_matrix(const std::vector<Fq>& v) const {
  Mat M(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    auto col = mult_basis(j, v);
    for (std::size_t l = 0; l < dim; ++l) M.at(l, j) = col[l];
  }
  return M;
}

std::vector<Fq> CommAlgebra::power(std::vector<Fq> v, std::uint64_t e) const {
  std::vector<Fq> r = one;
  while (e) {
    if (e & 1) r = multiply(r, v);
    v = multiply(v, v);
    e >>= 1;
  }
  return r;
}

CommAlgebra CommAlgebra::build(Field F, std::vector<std::string> labels,
                               std::vector<Fq> tensor, std::vector<Fq> one) {
  CommAlgebra A;
  A.F = F;
  A.dim = one.size();
  require(labels.size() == A.dim, ErrorKind::DimensionMismatch, "labels size");
  require(tensor.size() == A.dim * A.dim * A.dim, ErrorKind::DimensionMismatch,
          "tensor size");
  A.labels = std::move(labels);
  A.one = std::move(one);
  A.use8 = F.m == 1 && F.p < 256;
  if (A.use8) {
    A.sc8.resize(tensor.size());
    for (std::size_t i = 0; i < tensor.size(); ++i)
      A.sc8[i] = (std::uint8_t)tensor[i];
    std::vector<Fq>().swap(tensor);
  } else {
    A.sc64 = std::move(tensor);
  }

  // commutativity
  for (std::size_t i = 0; i < A.dim; ++i)
    for (std::size_t j = i + 1; j < A.dim; ++j)
      for (std::size_t l = 0; l < A.dim; ++l)
        require(A.sc(i, j, l) == A.sc(j, i, l), ErrorKind::NotCommutative,
                "structure constants are not commutative");
  // unit
  for (std::size_t i = 0; i < A.dim; ++i) {
    auto v = A.multiply(A.one, A.basis_vec(i));
    require(v == A.basis_vec(i), ErrorKind::DimensionMismatch,
            "unit vector is not a two-sided unit");
  }
  // associativity: (b_i b_j) b_k = b_i (b_j b_k)
  auto check_triple = [&](std::size_t i, std::size_t j, std::size_t k) {
    std::vector<Fq> ij(A.dim), jk(A.dim);
    for (std::size_t l = 0; l < A.dim; ++l) {
      ij[l] = A.sc(i, j, l);
      jk[l] = A.sc(j, k, l);
    }
    require(A.mult_basis(k, ij) == A.mult_basis(i, jk),
            ErrorKind::DimensionMismatch, "structure constants not associative");
  };
  if (A.dim <= 64) {
    for (std::size_t i = 0; i < A.dim; ++i)
      for (std::size_t j = 0; j < A.dim; ++j)
        for (std::size_t k = 0; k < A.dim; ++k) check_triple(i, j, k);
  } else {
    std::mt19937_64 rng(A.dim * 1000003ull);
    std::uniform_int_distribution<std::size_t> d(0, A.dim - 1);
    for (int t = 0; t < 500; ++t) check_triple(d(rng), d(rng), d(rng));
  }
  return A;
}

ordered_json CommAlgebra::to_json() const {
  ordered_json j;
  j["dim"] = dim;
  j["labels"] = labels;
  j["field"] = {{"p", F.p}, {"m", F.m}, {"modulus", F.modulus}};
  ordered_json sc_arr = ordered_json::array();
  for (std::size_t i = 0; i < dim; ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t k = 0; k < dim; ++k) {
      ordered_json cell = ordered_json::array();
      for (std::size_t l = 0; l < dim; ++l) cell.push_back(sc(i, k, l));
      row.push_back(std::move(cell));
    }
    sc_arr.push_back(std::move(row));
  }
  j["sc"] = std::move(sc_arr);
  j["one"] = one;
  return j;
}

CommAlgebra CommAlgebra::from_json(const ordered_json& j) {
  Field F = make_field(j.at("field").at("p").get<std::uint32_t>(),
                       j.at("field").at("m").get<std::uint32_t>());
  require(F.modulus == j.at("field").at("modulus").get<std::vector<std::uint32_t>>(),
          ErrorKind::BadParameters, "field modulus mismatch in JSON");
  std::size_t dim = j.at("dim").get<std::size_t>();
  std::vector<Fq> tensor(dim * dim * dim);
  const auto& sc_arr = j.at("sc");
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t l = 0; l < dim; ++l)
        tensor[(i * dim + k) * dim + l] = sc_arr.at(i).at(k).at(l).get<Fq>();
  return build(F, j.at("labels").get<std::vector<std::string>>(),
               std::move(tensor), j.at("one").get<std::vector<Fq>>());
}

// ---------------------------------------------------------------------------

IdealBasis zero_ideal(const CommAlgebra& A) {
  IdealBasis I;
  I.parent = &A;
  I.space = RowSpace(A.F, A.dim);
  return I;
}

IdealBasis ideal_generated_by(const CommAlgebra& A,
                              const std::vector<std::vector<Fq>>& gens) {
  IdealBasis I = zero_ideal(A);
  for (const auto& g : gens) {
    if (I.space.contains(g)) continue;
    for (std::size_t j = 0; j < A.dim; ++j)
      I.space.insert(A.mult_basis(j, g));
  }
  return I;
}

namespace {

// matrix of the p-power map (columns b_i^p); sigma-semilinear over F_q
Mat p_power_matrix(const CommAlgebra& A) {
  const Field& F = A.F;
  Mat Phi(A.dim, A.dim);
  for (std::size_t i = 0; i < A.dim; ++i) {
    std::vector<Fq> v;
    if (F.p <= 257) {
      v = A.basis_vec(i);
      for (std::uint32_t k = 1; k < F.p; ++k) v = A.mult_basis(i, v);
    } else {
      v = A.power(A.basis_vec(i), F.p);
    }
    for (std::size_t l = 0; l < A.dim; ++l) Phi.at(l, i) = v[l];
  }
  return Phi;
}

// kernel of x -> x^(p^t), untwisted back to plain coordinates
RowSpace semilinear_power_kernel(const CommAlgebra& A, std::size_t t) {
  const Field& F = A.F;
  Mat Phi = p_power_matrix(A);
  Mat Psi(A.dim, A.dim);
  for (std::size_t i = 0; i < A.dim; ++i) {
    std::vector<Fq> w = A.basis_vec(i);
    for (std::size_t k = 0; k < t; ++k) {
      for (auto& c : w) c = F.frobenius(c);
      w = matvec(F, Phi, w);
    }
    for (std::size_t l = 0; l < A.dim; ++l) Psi.at(l, i) = w[l];
  }
  // x in ker  <=>  Psi . sigma^t(x) = 0
  Mat K = kernel(F, Psi);
  std::size_t untwist = (F.m - t % F.m) % F.m;
  RowSpace N(F, A.dim);
  for (std::size_t r = 0; r < K.rows; ++r) {
    std::vector<Fq> x(A.dim);
    for (std::size_t j = 0; j < A.dim; ++j) {
      Fq y = K.at(r, j);
      for (std::size_t k = 0; k < untwist; ++k) y = F.frobenius(y);
      x[j] = y;
    }
    N.insert(std::move(x));
  }
  return N;
}

std::size_t power_steps(const CommAlgebra& A) {
  std::size_t t = 1;
  std::uint64_t pt = A.F.p;
  while (pt < A.dim) {
    pt *= A.F.p;
    ++t;
  }
  return t;
}

}  // namespace

IdealBasis nilradical(const CommAlgebra& A) {
  IdealBasis N = zero_ideal(A);
  N.space = semilinear_power_kernel(A, power_steps(A));
  // the quotient must carry no nonzero nilpotents
  QuotientAlgebra Q = quotient(A, N);
  require(semilinear_power_kernel(Q.alg, power_steps(Q.alg)).dim() == 0,
          ErrorKind::Internal, "nilradical quotient has nilpotents");
  return N;
}

IdealBasis ideal_sum(const IdealBasis& I, const IdealBasis& J) {
  require(I.parent == J.parent, ErrorKind::ParentMismatch, "ideal_sum parents");
  IdealBasis S = I;
  for (const auto& r : J.space.rows) S.space.insert(r);
  return S;
}

IdealBasis ideal_product(const IdealBasis& I, const IdealBasis& J) {
  require(I.parent == J.parent, ErrorKind::ParentMismatch,
          "ideal_product parents");
  const CommAlgebra& A = *I.parent;
  IdealBasis P = zero_ideal(A);
  const RowSpace& small = I.dim() <= J.dim() ? I.space : J.space;
  const RowSpace& large = I.dim() <= J.dim() ? J.space : I.space;
  for (const auto& g : small.rows) {
    Mat Mg = A.mult_matrix(g);
    for (const auto& w : large.rows) P.space.insert(matvec(A.F, Mg, w));
  }
  return P;
}

IdealBasis ideal_power(const IdealBasis& I, std::size_t n) {
  const CommAlgebra& A = *I.parent;
  if (n == 0) {
    IdealBasis W = zero_ideal(A);
    for (std::size_t i = 0; i < A.dim; ++i) W.space.insert(A.basis_vec(i));
    return W;
  }
  IdealBasis P = I;
  for (std::size_t k = 1; k < n && P.dim() > 0; ++k) P = ideal_product(P, I);
  return P;
}

std::vector<IdealBasis> radical_series(const CommAlgebra& A) {
  IdealBasis N = nilradical(A);
  std::vector<IdealBasis> series;
  if (N.dim() == 0) return series;
  // small ideal generating set of J, greedily
  std::vector<std::vector<Fq>> gens;
  std::vector<Mat> gen_mats;
  {
    RowSpace I(A.F, A.dim);
    for (const auto& v : N.space.rows) {
      if (I.contains(v)) continue;
      gens.push_back(v);
      gen_mats.push_back(A.mult_matrix(v));
      const Mat& M = gen_mats.back();
      for (std::size_t j = 0; j < A.dim; ++j) {
        std::vector<Fq> col(A.dim);
        for (std::size_t l = 0; l < A.dim; ++l) col[l] = M.at(l, j);
        I.insert(std::move(col));
      }
    }
    require(I == N.space, ErrorKind::Internal, "radical generators incomplete");
  }
  series.push_back(N);
  while (series.back().dim() > 0) {
    const RowSpace& prev = series.back().space;
    IdealBasis nxt = zero_ideal(A);
    for (const auto& M : gen_mats)
      for (const auto& w : prev.rows) nxt.space.insert(matvec(A.F, M, w));
    require(nxt.dim() < prev.dim(), ErrorKind::Internal,
            "radical chain failed to decrease");
    if (nxt.dim() == 0) break;
    series.push_back(std::move(nxt));
  }
  return series;
}

int loewy_length(const CommAlgebra& A) {
  return (int)radical_series(A).size() + 1;
}

// ---------------------------------------------------------------------------

std::vector<Fq> QuotientAlgebra::project(const std::vector<Fq>& v) const {
  auto w = modded.reduce(v);
  std::vector<Fq> out(coset_coords.size());
  for (std::size_t i = 0; i < coset_coords.size(); ++i)
    out[i] = w[coset_coords[i]];
  return out;
}

std::vector<Fq> QuotientAlgebra::lift(const std::vector<Fq>& v) const {
  std::vector<Fq> out(parent->dim, 0);
  for (std::size_t i = 0; i < coset_coords.size(); ++i)
    out[coset_coords[i]] = v[i];
  return out;
}

QuotientAlgebra quotient(const CommAlgebra& A, const IdealBasis& N) {
  QuotientAlgebra Q;
  Q.parent = &A;
  Q.modded = N.space;
  std::vector<bool> is_piv(A.dim, false);
  for (auto c : N.space.piv) is_piv[c] = true;
  for (std::size_t c = 0; c < A.dim; ++c)
    if (!is_piv[c]) Q.coset_coords.push_back(c);
  std::size_t qd = Q.coset_coords.size();
  std::vector<Fq> tensor(qd * qd * qd, 0);
  std::vector<std::string> labels(qd);
  for (std::size_t i = 0; i < qd; ++i) {
    labels[i] = A.labels[Q.coset_coords[i]];
    for (std::size_t j = i; j < qd; ++j) {
      auto prod = Q.project(A.mult_basis(Q.coset_coords[i],
                                         A.basis_vec(Q.coset_coords[j])));
      for (std::size_t l = 0; l < qd; ++l) {
        tensor[(i * qd + j) * qd + l] = prod[l];
        tensor[(j * qd + i) * qd + l] = prod[l];
      }
    }
  }
  Q.alg = CommAlgebra::build(A.F, std::move(labels), std::move(tensor),
                             Q.project(A.one));
  return Q;
}

namespace {

// minimal polynomial of y over F inside the unital subalgebra spanned by the
// component rows (unit u); coordinates taken in the component basis
Poly component_min_poly(const CommAlgebra& Q, const RowSpace& comp,
                        const std::vector<Fq>& u, const std::vector<Fq>& y) {
  const Field& F = Q.F;
  std::size_t r = comp.dim();
  auto express = [&](const std::vector<Fq>& v) {
    std::vector<Fq> c(r);
    for (std::size_t i = 0; i < r; ++i) c[i] = v[comp.piv[i]];
    return c;
  };
  std::vector<std::vector<Fq>> pow_coords;
  std::vector<Fq> cur = u;
  RowSpace seen(F, r);
  for (std::size_t k = 0;; ++k) {
    auto coords = express(cur);
    if (!seen.insert(coords)) {
      // solve sum c_i y^i = y^k
      Mat M(r, k);
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 0; i < r; ++i) M.at(i, j) = pow_coords[j][i];
      auto sol = solve(F, M, coords);
      require(sol.has_value(), ErrorKind::Internal, "min poly solve failed");
      Poly f(k + 1, 0);
      f[k] = F.one();
      for (std::size_t j = 0; j < k; ++j) f[j] = F.neg((*sol)[j]);
      return f;
    }
    pow_coords.push_back(coords);
    cur = Q.multiply(cur, y);
    require(k <= r + 1, ErrorKind::Internal, "min poly loop overran");
  }
}

struct Component {
  std::vector<Fq> unit;  // in quotient coordinates
  RowSpace basis;
};

}  // namespace

std::vector<std::vector<Fq>> primitive_idempotents(const CommAlgebra& A) {
  const Field& F = A.F;
  IdealBasis N = nilradical(A);
  QuotientAlgebra Qa = quotient(A, N);
  const CommAlgebra& Q = Qa.alg;

  // Frobenius-fixed subalgebra of the (semisimple) quotient: kernel of
  // x -> x^q - x, an F_q-linear map. It is split (a product of copies of
  // F_q), so sweeping its basis splits off every primitive idempotent.
  Mat Psi(Q.dim, Q.dim);
  {
    Mat Phi = p_power_matrix(Q);
    for (std::size_t i = 0; i < Q.dim; ++i) {
      std::vector<Fq> w = Q.basis_vec(i);
      for (std::uint32_t k = 0; k < F.m; ++k) {
        for (auto& c : w) c = F.frobenius(c);
        w = matvec(F, Phi, w);
      }
      for (std::size_t l = 0; l < Q.dim; ++l)
        Psi.at(l, i) = F.sub(w[l], i == l ? F.one() : 0);
    }
  }
  Mat K = kernel(F, Psi);
  RowSpace fixed(F, Q.dim);
  for (std::size_t r = 0; r < K.rows; ++r) {
    std::vector<Fq> v(Q.dim);
    for (std::size_t j = 0; j < Q.dim; ++j) v[j] = K.at(r, j);
    fixed.insert(std::move(v));
  }

  std::vector<Component> work, done;
  work.push_back({Q.one, fixed});
  while (!work.empty()) {
    Component C = std::move(work.back());
    work.pop_back();
    if (C.basis.dim() <= 1) {
      done.push_back(std::move(C));
      continue;
    }
    bool split_found = false;
    for (const auto& y : C.basis.rows) {
      Poly f = component_min_poly(Q, C.basis, C.unit, y);
      if (deg(f) < 2) continue;
      auto factors = factor_poly(F, f);
      require(factors.size() >= 2, ErrorKind::Internal,
              "fixed-subalgebra element with irreducible non-linear min poly");
      std::vector<Fq> roots;
      for (auto& [g, mult] : factors) {
        require(deg(g) == 1 && mult == 1, ErrorKind::Internal,
                "fixed-subalgebra min poly not split/squarefree");
        roots.push_back(F.neg(g[0]));
      }
      for (Fq c : roots) {
        // Lagrange idempotent for eigenvalue c
        std::vector<Fq> e = C.unit;
        for (Fq c2 : roots) {
          if (c2 == c) continue;
          std::vector<Fq> factor_vec(Q.dim);
          for (std::size_t l = 0; l < Q.dim; ++l)
            factor_vec[l] = F.sub(y[l], F.mul(c2, C.unit[l]));
          e = Q.multiply(e, factor_vec);
          Fq scale = F.inv(F.sub(c, c2));
          for (auto& x : e) x = F.mul(x, scale);
        }
        Component sub;
        sub.unit = e;
        sub.basis = RowSpace(F, Q.dim);
        for (const auto& w : C.basis.rows)
          sub.basis.insert(Q.multiply(e, w));
        work.push_back(std::move(sub));
      }
      split_found = true;
      break;
    }
    require(split_found, ErrorKind::Internal,
            "component of dim >= 2 with no splitting basis element");
  }

  // lift through the radical: e <- 3e^2 - 2e^3 until exactly idempotent
  std::vector<std::vector<Fq>> out;
  std::size_t iters = log2_ceil(std::max<std::size_t>(A.dim, 2)) + 2;
  for (const auto& C : done) {
    std::vector<Fq> e = Qa.lift(C.unit);
    for (std::size_t k = 0; k < iters; ++k) {
      auto e2 = A.multiply(e, e);
      auto e3 = A.multiply(e2, e);
      for (std::size_t l = 0; l < A.dim; ++l)
        e[l] = A.F.sub(A.F.mul(A.F.from_int(3), e2[l]),
                       A.F.mul(A.F.from_int(2), e3[l]));
    }
    require(A.multiply(e, e) == e, ErrorKind::Internal,
            "idempotent lift did not converge");
    bool nonzero = false;
    for (auto x : e) nonzero |= x != 0;
    require(nonzero, ErrorKind::Internal, "zero idempotent");
    out.push_back(std::move(e));
  }

  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    std::size_t sa = 0, sb = 0;
    while (sa < a.size() && a[sa] == 0) ++sa;
    while (sb < b.size() && b[sb] == 0) ++sb;
    if (sa != sb) return sa < sb;
    return a < b;
  });

  // orthogonality and completeness
  std::vector<Fq> total(A.dim, 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t l = 0; l < A.dim; ++l)
      total[l] = F.add(total[l], out[i][l]);
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      auto z = A.multiply(out[i], out[j]);
      for (auto x : z)
        require(x == 0, ErrorKind::Internal, "idempotents not orthogonal");
    }
  }
  require(total == A.one, ErrorKind::Internal, "idempotents do not sum to 1");
  return out;
}

std::size_t component_count(const CommAlgebra& A) {
  IdealBasis N = nilradical(A);
  if (N.dim() + 1 == A.dim) return 1;
  QuotientAlgebra Qa = quotient(A, N);
  const CommAlgebra& Q = Qa.alg;
  const Field& F = A.F;
  // dim of the Frobenius-fixed subalgebra of A/J = number of simple components
  Mat Phi = p_power_matrix(Q);
  Mat Psi(Q.dim, Q.dim);
  for (std::size_t i = 0; i < Q.dim; ++i) {
    std::vector<Fq> w = Q.basis_vec(i);
    for (std::uint32_t k = 0; k < F.m; ++k) {
      for (auto& c : w) c = F.frobenius(c);
      w = matvec(F, Phi, w);
    }
    for (std::size_t l = 0; l < Q.dim; ++l)
      Psi.at(l, i) = F.sub(w[l], i == l ? F.one() : 0);
  }
  return kernel(F, Psi).rows;
}

bool is_local(const CommAlgebra& A) { return component_count(A) == 1; }

SubAlgebra component_algebra(const CommAlgebra& A, const std::vector<Fq>& e) {
  SubAlgebra S;
  if (e == A.one) {
    S.alg = A;
    S.basis = RowSpace(A.F, A.dim);
    for (std::size_t i = 0; i < A.dim; ++i) S.basis.insert(A.basis_vec(i));
    return S;
  }
  S.basis = RowSpace(A.F, A.dim);
  Mat Me = A.mult_matrix(e);
  for (std::size_t j = 0; j < A.dim; ++j) {
    std::vector<Fq> col(A.dim);
    for (std::size_t l = 0; l < A.dim; ++l) col[l] = Me.at(l, j);
    S.basis.insert(std::move(col));
  }
  std::size_t r = S.basis.dim();
  std::vector<Fq> tensor(r * r * r, 0);
  std::vector<std::string> labels(r);
  for (std::size_t i = 0; i < r; ++i) {
    labels[i] = "b" + std::to_string(i);
    for (std::size_t j = i; j < r; ++j) {
      auto prod = A.multiply(S.basis.rows[i], S.basis.rows[j]);
      auto c = S.express(prod);
      for (std::size_t l = 0; l < r; ++l) {
        tensor[(i * r + j) * r + l] = c[l];
        tensor[(j * r + i) * r + l] = c[l];
      }
    }
  }
  S.alg = CommAlgebra::build(A.F, std::move(labels), std::move(tensor),
                             S.express(e));
  return S;
}

std::vector<Fq> SubAlgebra::express(const std::vector<Fq>& v) const {
  std::vector<Fq> c(basis.dim());
  for (std::size_t i = 0; i < basis.dim(); ++i) c[i] = v[basis.piv[i]];
  require(basis.contains(v), ErrorKind::DimensionMismatch,
          "vector not in subalgebra span");
  return c;
}

bool is_uniserial(const CommAlgebra& A) {
  require(is_local(A), ErrorKind::NotLocal, "is_uniserial needs a local algebra");
  auto series = radical_series(A);
  if (series.empty()) return true;  // a field
  std::size_t j2 = series.size() > 1 ? series[1].dim() : 0;
  return series[0].dim() - j2 <= 1;
}

bool is_klein_four_group_algebra(const CommAlgebra& A) {
  require(A.F.p == 2, ErrorKind::WrongCharacteristic,
          "Klein four group algebra test needs characteristic 2");
  if (A.dim != 4) return false;
  if (!is_local(A)) return false;
  auto series = radical_series(A);
  if (series.size() != 2) return false;  // J^3 = 0, J^2 != 0
  if (series[0].dim() != 3 || series[1].dim() != 1) return false;
  for (const auto& v : series[0].space.rows) {
    auto sq = A.multiply(v, v);
    if (std::any_of(sq.begin(), sq.end(), [](Fq x) { return x != 0; }))
      return false;
  }
  return true;
}

CommAlgebra group_algebra(const FiniteGroup& G, const Field& F) {
  std::size_t n = G.order();
  std::vector<Fq> tensor(n * n * n, 0);
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = "g" + std::to_string(i);
    for (std::size_t j = 0; j < n; ++j)
      tensor[(i * n + j) * n + G.mult(i, j)] = F.one();
  }
  std::vector<Fq> one(n, 0);
  one[G.id_index()] = F.one();
  return CommAlgebra::build(F, std::move(labels), std::move(tensor),
                            std::move(one));
}

}  // namespace bc
