#include "blockcenter/gf.hpp"

#include <algorithm>
#include <array>
#include <cstring>

namespace bc {

namespace {

constexpr std::uint32_t kMaxDeg = 32;

// Extended Euclid for residues mod p.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  long long t = 0, newt = 1;
  long long r = (long long)p, newr = (long long)(a % p);
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) fail(ErrorKind::Internal, "inversion of non-unit residue");
  if (t < 0) t += (long long)p;
  return (std::uint64_t)t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t Field::order() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    if (q > (std::uint64_t(1) << 62) / p)
      fail(ErrorKind::DegreeGuardExceeded, "field order exceeds 2^62");
    q *= p;
  }
  return q;
}

Fq Field::from_int(long long n) const {
  long long r = n % (long long)p;
  if (r < 0) r += p;
  return (Fq)r;
}

std::vector<std::uint32_t> Field::unpack(Fq a) const {
  std::vector<std::uint32_t> c(m, 0);
  for (std::uint32_t i = 0; i < m; ++i) {
    c[i] = (std::uint32_t)(a % p);
    a /= p;
  }
  return c;
}

Fq Field::pack(const std::vector<std::uint32_t>& c) const {
  Fq a = 0;
  for (std::size_t i = c.size(); i-- > 0;) a = a * p + (c[i] % p);
  return a;
}

Fq Field::add(Fq a, Fq b) const {
  if (m == 1) {
    Fq s = a + b;
    return s >= p ? s - p : s;
  }
  Fq out = 0, mul = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    Fq s = a % p + b % p;
    if (s >= p) s -= p;
    out += s * mul;
    mul *= p;
    a /= p;
    b /= p;
  }
  return out;
}

Fq Field::sub(Fq a, Fq b) const { return add(a, neg(b)); }

Fq Field::neg(Fq a) const {
  if (m == 1) return a == 0 ? 0 : p - a;
  Fq out = 0, mul = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    Fq d = a % p;
    out += (d == 0 ? 0 : p - d) * mul;
    mul *= p;
    a /= p;
  }
  return out;
}

Fq Field::mul(Fq a, Fq b) const {
  if (m == 1) return (a * b) % p;
  std::array<std::uint64_t, 2 * kMaxDeg> acc{};
  std::array<std::uint32_t, kMaxDeg> ca{}, cb{};
  for (std::uint32_t i = 0; i < m; ++i) {
    ca[i] = (std::uint32_t)(a % p);
    a /= p;
    cb[i] = (std::uint32_t)(b % p);
    b /= p;
  }
  for (std::uint32_t i = 0; i < m; ++i) {
    if (!ca[i]) continue;
    for (std::uint32_t j = 0; j < m; ++j)
      acc[i + j] = (acc[i + j] + (std::uint64_t)ca[i] * cb[j]) % p;
  }
  // reduce by the monic modulus: x^m = -sum modulus[j] x^j
  for (std::uint32_t i = 2 * m - 2; i >= m && i < 2 * kMaxDeg; --i) {
    std::uint64_t c = acc[i];
    if (c) {
      acc[i] = 0;
      for (std::uint32_t j = 0; j < m; ++j)
        acc[i - m + j] = (acc[i - m + j] + c * (p - modulus[j])) % p;
    }
    if (i == m) break;
  }
  Fq out = 0;
  for (std::uint32_t i = m; i-- > 0;) out = out * p + acc[i];
  return out;
}

Fq Field::pow(Fq a, std::uint64_t e) const {
  Fq r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Fq Field::inv(Fq a) const {
  require(a != 0, ErrorKind::DimensionMismatch, "inverse of zero");
  if (m == 1) return inv_mod(a, p);
  // extended Euclid on coefficient vectors against the modulus
  std::vector<std::uint32_t> r0(modulus.begin(), modulus.end());
  std::vector<std::uint32_t> r1 = unpack(a);
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<std::uint32_t> t0{0}, t1{1};
  auto degree = [](const std::vector<std::uint32_t>& f) {
    int d = (int)f.size() - 1;
    while (d >= 0 && f[d] == 0) --d;
    return d;
  };
  while (degree(r1) > 0) {
    int d0 = degree(r0), d1 = degree(r1);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(t0, t1);
      continue;
    }
    std::uint64_t c = (std::uint64_t)r0[d0] * inv_mod(r1[d1], p) % p;
    int shift = d0 - d1;
    auto submul = [&](std::vector<std::uint32_t>& x,
                      const std::vector<std::uint32_t>& y) {
      if (x.size() < y.size() + shift) x.resize(y.size() + shift, 0);
      for (std::size_t i = 0; i < y.size(); ++i)
        x[i + shift] = (std::uint32_t)((x[i + shift] + c * (p - y[i] % p)) % p);
    };
    submul(r0, r1);
    submul(t0, t1);
    if (degree(r0) < degree(r1)) {
      std::swap(r0, r1);
      std::swap(t0, t1);
    }
  }
  int d1 = degree(r1);
  require(d1 == 0 && r1[0] != 0, ErrorKind::Internal, "gcd with modulus not 1");
  std::uint64_t c = inv_mod(r1[0], p);
  std::vector<std::uint32_t> out(m, 0);
  for (std::size_t i = 0; i < t1.size() && i < m; ++i)
    out[i] = (std::uint32_t)((std::uint64_t)t1[i] * c % p);
  return pack(out);
}

std::string Field::to_string(Fq a) const {
  if (m == 1) return std::to_string(a);
  auto c = unpack(a);
  std::string s = "[";
  for (std::uint32_t i = 0; i < m; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + "]";
}

namespace {

// Plain mod-p polynomial arithmetic for the modulus search.
int pdeg(const std::vector<std::uint32_t>& f) {
  int d = (int)f.size() - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

std::vector<std::uint32_t> pmod(std::vector<std::uint32_t> f,
                                const std::vector<std::uint32_t>& g,
                                std::uint32_t p) {
  int dg = pdeg(g);
  std::uint64_t lead_inv = inv_mod(g[dg], p);
  for (int i = pdeg(f); i >= dg; i = pdeg(f)) {
    std::uint64_t c = f[i] * lead_inv % p;
    for (int j = 0; j <= dg; ++j)
      f[i - dg + j] =
          (std::uint32_t)((f[i - dg + j] + c * (p - g[j])) % p);
  }
  return f;
}

bool divides(const std::vector<std::uint32_t>& g,
             const std::vector<std::uint32_t>& f, std::uint32_t p) {
  return pdeg(pmod(f, g, p)) < 0;
}

bool irreducible_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  int d = pdeg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  // trial division by every monic polynomial of degree <= d/2
  for (int e = 1; e <= d / 2; ++e) {
    std::vector<std::uint32_t> g(e + 1, 0);
    g[e] = 1;
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t t = idx;
      for (int i = 0; i < e; ++i) {
        g[i] = (std::uint32_t)(t % p);
        t /= p;
      }
      if (divides(g, f, p)) return false;
    }
  }
  return true;
}

}  // namespace

Field make_field(std::uint32_t p, std::uint32_t m, std::uint32_t degree_guard) {
  require(is_prime(p), ErrorKind::BadParameters, "field characteristic must be prime");
  require(m >= 1 && m <= degree_guard && m <= 16, ErrorKind::DegreeGuardExceeded,
          "extension degree " + std::to_string(m) + " exceeds guard");
  Field F;
  F.p = p;
  F.m = m;
  F.order();  // overflow guard
  if (m == 1) {
    F.modulus = {0, 1};  // x
    return F;
  }
  // enumerate constant coefficient slowest: low-degree-first comparison
  std::vector<std::uint32_t> f(m + 1, 0);
  f[m] = 1;
  std::vector<std::uint32_t> c(m, 0);
  while (true) {
    for (std::uint32_t i = 0; i < m; ++i) f[i] = c[i];
    if (irreducible_mod_p(f, p)) {
      F.modulus.assign(f.begin(), f.end());
      return F;
    }
    std::uint32_t i = m;
    while (i-- > 0) {
      if (++c[i] < p) break;
      c[i] = 0;
      if (i == 0) fail(ErrorKind::Internal, "no irreducible polynomial found");
    }
  }
}

// ---------------------------------------------------------------------------

Mat matmul(const Field& F, const Mat& A, const Mat& B) {
  require(A.cols == B.rows, ErrorKind::DimensionMismatch, "matmul shape");
  Mat C(A.rows, B.cols);
  for (std::size_t i = 0; i < A.rows; ++i)
    for (std::size_t k = 0; k < A.cols; ++k) {
      Fq a = A.at(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < B.cols; ++j)
        C.at(i, j) = F.add(C.at(i, j), F.mul(a, B.at(k, j)));
    }
  return C;
}

std::vector<Fq> matvec(const Field& F, const Mat& A, const std::vector<Fq>& v) {
  require(A.cols == v.size(), ErrorKind::DimensionMismatch, "matvec shape");
  std::vector<Fq> out(A.rows, 0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    Fq s = 0;
    const Fq* row = &A.a[i * A.cols];
    for (std::size_t j = 0; j < A.cols; ++j)
      if (row[j] && v[j]) s = F.add(s, F.mul(row[j], v[j]));
    out[i] = s;
  }
  return out;
}

std::vector<std::size_t> rref(const Field& F, Mat& M) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < M.cols && r < M.rows; ++c) {
    std::size_t sel = r;
    while (sel < M.rows && M.at(sel, c) == 0) ++sel;
    if (sel == M.rows) continue;
    if (sel != r)
      for (std::size_t j = 0; j < M.cols; ++j)
        std::swap(M.at(sel, j), M.at(r, j));
    Fq piv_inv = F.inv(M.at(r, c));
    for (std::size_t j = c; j < M.cols; ++j)
      M.at(r, j) = F.mul(M.at(r, j), piv_inv);
    for (std::size_t i = 0; i < M.rows; ++i) {
      if (i == r) continue;
      Fq f = M.at(i, c);
      if (!f) continue;
      for (std::size_t j = c; j < M.cols; ++j)
        M.at(i, j) = F.sub(M.at(i, j), F.mul(f, M.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const Field& F, Mat M) { return rref(F, M).size(); }

Mat kernel(const Field& F, const Mat& M) {
  Mat R = M;
  std::vector<std::size_t> piv = rref(F, R);
  std::vector<bool> is_piv(M.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < M.cols; ++c)
    if (!is_piv[c]) free.push_back(c);
  Mat K(free.size(), M.cols);
  for (std::size_t k = 0; k < free.size(); ++k) {
    K.at(k, free[k]) = F.one();
    for (std::size_t r = 0; r < piv.size(); ++r)
      K.at(k, piv[r]) = F.neg(R.at(r, free[k]));
  }
  return K;
}

std::optional<std::vector<Fq>> solve(const Field& F, const Mat& M,
                                     const std::vector<Fq>& b) {
  require(b.size() == M.rows, ErrorKind::DimensionMismatch, "solve shape");
  Mat A(M.rows, M.cols + 1);
  for (std::size_t i = 0; i < M.rows; ++i) {
    for (std::size_t j = 0; j < M.cols; ++j) A.at(i, j) = M.at(i, j);
    A.at(i, M.cols) = b[i];
  }
  std::vector<std::size_t> piv = rref(F, A);
  if (!piv.empty() && piv.back() == M.cols) return std::nullopt;
  std::vector<Fq> x(M.cols, 0);
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = A.at(r, M.cols);
  return x;
}

// ---------------------------------------------------------------------------

std::vector<Fq> RowSpace::reduce(std::vector<Fq> v) const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Fq c = v[piv[r]];
    if (!c) continue;
    for (std::size_t j = piv[r]; j < n; ++j)
      v[j] = F->sub(v[j], F->mul(c, rows[r][j]));
  }
  return v;
}

bool RowSpace::contains(const std::vector<Fq>& v) const {
  auto w = reduce(v);
  return std::all_of(w.begin(), w.end(), [](Fq x) { return x == 0; });
}

bool RowSpace::insert(std::vector<Fq> v) {
  require(v.size() == n, ErrorKind::DimensionMismatch, "RowSpace insert");
  v = reduce(std::move(v));
  std::size_t lead = 0;
  while (lead < n && v[lead] == 0) ++lead;
  if (lead == n) return false;
  Fq li = F->inv(v[lead]);
  for (std::size_t j = lead; j < n; ++j) v[j] = F->mul(v[j], li);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Fq c = rows[r][lead];
    if (!c) continue;
    for (std::size_t j = lead; j < n; ++j)
      rows[r][j] = F->sub(rows[r][j], F->mul(c, v[j]));
  }
  std::size_t pos = 0;
  while (pos < piv.size() && piv[pos] < lead) ++pos;
  rows.insert(rows.begin() + pos, std::move(v));
  piv.insert(piv.begin() + pos, lead);
  return true;
}

bool RowSpace::insert_all(const std::vector<std::vector<Fq>>& vs) {
  bool grew = false;
  for (const auto& v : vs) grew |= insert(v);
  return grew;
}

Mat RowSpace::as_mat() const {
  Mat M(rows.size(), n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) M.at(i, j) = rows[i][j];
  return M;
}

RowSpace intersect(const RowSpace& U, const RowSpace& V) {
  require(U.n == V.n, ErrorKind::DimensionMismatch, "intersect ambient");
  RowSpace out(*U.F, U.n);
  if (U.dim() == 0 || V.dim() == 0) return out;
  // x = a*U = b*V  <=>  (a, b) in kernel of [U^T | -V^T]
  Mat M(U.n, U.dim() + V.dim());
  for (std::size_t j = 0; j < U.dim(); ++j)
    for (std::size_t i = 0; i < U.n; ++i) M.at(i, j) = U.rows[j][i];
  for (std::size_t j = 0; j < V.dim(); ++j)
    for (std::size_t i = 0; i < U.n; ++i)
      M.at(i, U.dim() + j) = U.F->neg(V.rows[j][i]);
  Mat K = kernel(*U.F, M);
  for (std::size_t k = 0; k < K.rows; ++k) {
    std::vector<Fq> x(U.n, 0);
    for (std::size_t j = 0; j < U.dim(); ++j) {
      Fq c = K.at(k, j);
      if (!c) continue;
      for (std::size_t i = 0; i < U.n; ++i)
        x[i] = U.F->add(x[i], U.F->mul(c, U.rows[j][i]));
    }
    out.insert(std::move(x));
  }
  return out;
}

// ---------------------------------------------------------------------------

int deg(const Poly& f) {
  int d = (int)f.size() - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

Poly trim(Poly f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
  return f;
}

Poly poly_add(const Field& F, const Poly& f, const Poly& g) {
  Poly h(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    Fq a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
    h[i] = F.add(a, b);
  }
  return trim(std::move(h));
}

Poly poly_sub(const Field& F, const Poly& f, const Poly& g) {
  Poly h(std::max(f.size(), g.size()), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    Fq a = i < f.size() ? f[i] : 0, b = i < g.size() ? g[i] : 0;
    h[i] = F.sub(a, b);
  }
  return trim(std::move(h));
}

Poly poly_mul(const Field& F, const Poly& f, const Poly& g) {
  if (deg(f) < 0 || deg(g) < 0) return {};
  Poly h(f.size() + g.size() - 1, 0);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!f[i]) continue;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (g[j]) h[i + j] = F.add(h[i + j], F.mul(f[i], g[j]));
  }
  return trim(std::move(h));
}

std::pair<Poly, Poly> poly_divmod(const Field& F, const Poly& f, const Poly& g) {
  int dg = deg(g);
  require(dg >= 0, ErrorKind::DimensionMismatch, "division by zero polynomial");
  Poly r = trim(f), q;
  int dr = deg(r);
  if (dr < dg) return {q, r};
  q.assign(dr - dg + 1, 0);
  Fq lead_inv = F.inv(g[dg]);
  while ((dr = deg(r)) >= dg) {
    Fq c = F.mul(r[dr], lead_inv);
    q[dr - dg] = c;
    for (int j = 0; j <= dg; ++j)
      r[dr - dg + j] = F.sub(r[dr - dg + j], F.mul(c, g[j]));
  }
  return {trim(std::move(q)), trim(std::move(r))};
}

Poly poly_mod(const Field& F, const Poly& f, const Poly& g) {
  return poly_divmod(F, f, g).second;
}

Poly poly_monic(const Field& F, Poly f) {
  f = trim(std::move(f));
  int d = deg(f);
  if (d < 0) return f;
  Fq li = F.inv(f[d]);
  for (auto& c : f) c = F.mul(c, li);
  return f;
}

Poly poly_gcd(const Field& F, Poly f, Poly g) {
  f = trim(std::move(f));
  g = trim(std::move(g));
  while (deg(g) >= 0) {
    Poly r = poly_mod(F, f, g);
    f = std::move(g);
    g = std::move(r);
  }
  return poly_monic(F, std::move(f));
}

Poly poly_derivative(const Field& F, const Poly& f) {
  Poly h;
  for (std::size_t i = 1; i < f.size(); ++i)
    h.push_back(F.mul(f[i], F.from_int((long long)i)));
  return trim(std::move(h));
}

Fq poly_eval(const Field& F, const Poly& f, Fq x) {
  Fq r = 0;
  for (std::size_t i = f.size(); i-- > 0;) r = F.add(F.mul(r, x), f[i]);
  return r;
}

Poly poly_pow_mod(const Field& F, Poly base, std::uint64_t e, const Poly& mod) {
  Poly r{F.one()};
  base = poly_mod(F, base, mod);
  while (e) {
    if (e & 1) r = poly_mod(F, poly_mul(F, r, base), mod);
    base = poly_mod(F, poly_mul(F, base, base), mod);
    e >>= 1;
  }
  return r;
}

bool poly_is_irreducible(const Field& F, const Poly& f) {
  int d = deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  std::uint64_t q = F.order();
  // enumerate monic divisors of degree <= d/2 (desk degrees only)
  for (int e = 1; e <= d / 2; ++e) {
    std::uint64_t count = 1;
    for (int i = 0; i < e; ++i) {
      if (count > 2'000'000) fail(ErrorKind::DegreeGuardExceeded,
                                  "irreducibility trial division too large");
      count *= q;
    }
    Poly g(e + 1, 0);
    g[e] = F.one();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t t = idx;
      for (int i = 0; i < e; ++i) {
        g[i] = t % q;
        t /= q;
      }
      if (deg(poly_mod(F, f, g)) < 0) return false;
    }
  }
  return true;
}

namespace {

// Squarefree decomposition in characteristic p, returning (g_i, mult_i).
void squarefree(const Field& F, Poly f, int mult,
                std::vector<std::pair<Poly, int>>& out) {
  f = poly_monic(F, std::move(f));
  if (deg(f) <= 0) return;
  Poly fp = poly_derivative(F, f);
  if (deg(fp) < 0) {
    // f = g(x^p): take p-th root coefficientwise (c -> c^(q/p))
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i + 1 < F.m; ++i) e *= F.p;  // q/p = p^(m-1)
    Poly g;
    for (std::size_t i = 0; i < f.size(); i += F.p)
      g.push_back(F.pow(f[i], e));
    squarefree(F, g, mult * (int)F.p, out);
    return;
  }
  Poly c = poly_gcd(F, f, fp);
  Poly w = poly_divmod(F, f, c).first;
  int k = 1;
  while (deg(w) > 0) {
    Poly y = poly_gcd(F, w, c);
    Poly fac = poly_divmod(F, w, y).first;
    if (deg(fac) > 0) out.push_back({poly_monic(F, fac), mult * k});
    w = std::move(y);
    c = poly_divmod(F, c, w).first;
    ++k;
  }
  if (deg(c) > 0) squarefree(F, c, mult, out);
}

// Deterministic equal-degree splitting of a squarefree product of
// irreducibles of common degree d.
void edf(const Field& F, Poly g, int d, std::vector<Poly>& out) {
  int dg = deg(g);
  if (dg == d) {
    out.push_back(poly_monic(F, g));
    return;
  }
  std::uint64_t q = F.order();
  std::uint64_t qd = 1;
  for (int i = 0; i < d; ++i) {
    if (qd > (std::uint64_t(1) << 62) / q)
      fail(ErrorKind::DegreeGuardExceeded, "equal-degree splitting overflow");
    qd *= q;
  }
  // deterministic sweep of test polynomials u: all coefficient vectors by
  // increasing degree, a complete separating family at desk scale
  std::uint64_t attempts = 0;
  for (int du = 1;; ++du) {
    require(du <= dg + 1 && attempts < 400'000, ErrorKind::Internal,
            "equal-degree splitting stalled");
    std::uint64_t count = 1;
    for (int i = 0; i <= du; ++i) count = count > 500'000 ? count : count * q;
    for (std::uint64_t idx = 0; idx < count; ++idx, ++attempts) {
      Poly u(du + 1, 0);
      std::uint64_t tmp = idx;
      for (int i = 0; i <= du; ++i) {
        u[i] = tmp % q;
        tmp /= q;
      }
      if (deg(u) != du) continue;
      Poly t;
      if (F.p == 2) {
        // trace map u + u^2 + ... + u^(2^(dm-1))
        Poly s = poly_mod(F, u, g);
        t = s;
        std::uint64_t steps = (std::uint64_t)d * F.m;
        for (std::uint64_t i = 1; i < steps; ++i) {
          s = poly_mod(F, poly_mul(F, s, s), g);
          t = poly_add(F, t, s);
        }
      } else {
        t = poly_pow_mod(F, u, (qd - 1) / 2, g);
        t = poly_sub(F, t, Poly{F.one()});
      }
      Poly w = poly_gcd(F, t, g);
      if (deg(w) > 0 && deg(w) < dg) {
        edf(F, w, d, out);
        edf(F, poly_divmod(F, g, w).first, d, out);
        return;
      }
    }
  }
}

}  // namespace

std::vector<std::pair<Poly, int>> factor_poly(const Field& F, const Poly& fin) {
  Poly f = trim(fin);
  require(deg(f) >= 1, ErrorKind::BadParameters, "factor_poly needs degree >= 1");
  Fq lead = f[deg(f)];
  std::vector<std::pair<Poly, int>> sqf;
  squarefree(F, f, 1, sqf);
  std::vector<std::pair<Poly, int>> factors;
  std::uint64_t q = F.order();
  for (auto& [g0, mult] : sqf) {
    // distinct-degree splitting
    Poly g = g0;
    Poly h{0, F.one()};  // x
    for (int d = 1; deg(g) > 0 && d <= deg(g); ++d) {
      h = poly_pow_mod(F, h, q, g);
      Poly diff = poly_sub(F, h, Poly{0, F.one()});
      Poly gd = poly_gcd(F, diff, g);
      if (deg(gd) > 0) {
        std::vector<Poly> irr;
        edf(F, gd, d, irr);
        for (auto& u : irr) factors.push_back({u, mult});
        g = poly_divmod(F, g, gd).first;
        h = poly_mod(F, h, g);
      }
      if (2 * (d + 1) > deg(g) && deg(g) > 0) {
        factors.push_back({poly_monic(F, g), mult});
        g = {F.one()};
      }
    }
  }
  std::sort(factors.begin(), factors.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    if (a.first != b.first)
      return std::lexicographical_compare(a.first.begin(), a.first.end(),
                                          b.first.begin(), b.first.end());
    return a.second < b.second;
  });
  // round-trip check: product of factors reproduces the input
  Poly prod{lead};
  for (auto& [g, mult] : factors)
    for (int i = 0; i < mult; ++i) prod = poly_mul(F, prod, g);
  require(trim(prod) == trim(fin), ErrorKind::Internal,
          "factorization round-trip failed");
  for (auto& [g, mult] : factors) {
    (void)mult;
    std::uint64_t cost = 1;
    bool small = true;
    for (int i = 0; i < deg(g) / 2; ++i) {
      cost *= q;
      if (cost > 50'000) { small = false; break; }
    }
    if (small)
      require(poly_is_irreducible(F, g), ErrorKind::Internal,
              "reducible factor escaped splitting");
  }
  return factors;
}

}  // namespace bc
