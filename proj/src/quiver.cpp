#include "blockcenter/quiver.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

namespace bc {

std::size_t Quiver::vertex_index(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return i;
  fail(ErrorKind::BadParameters, "unknown vertex '" + name + "'");
}

std::size_t Quiver::arrow_index(const std::string& name) const {
  for (std::size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return i;
  fail(ErrorKind::BadParameters, "unknown arrow '" + name + "'");
}

namespace {

// deglex: longer first, then lexicographically larger arrow word
int mono_cmp(const PathMonomial& a, const PathMonomial& b) {
  if (a.w.size() != b.w.size()) return a.w.size() < b.w.size() ? -1 : 1;
  if (a.w != b.w) return a.w < b.w ? -1 : 1;
  if (a.w.empty() && a.vtx != b.vtx) return a.vtx < b.vtx ? -1 : 1;
  return 0;
}

struct NCPoly {
  // terms sorted descending by mono_cmp, nonzero coefficients
  std::vector<std::pair<PathMonomial, Fq>> terms;

  bool empty() const { return terms.empty(); }
  const PathMonomial& lm() const { return terms.front().first; }
  Fq lc() const { return terms.front().second; }
};

NCPoly nc_normalize(const Field& F, std::vector<std::pair<PathMonomial, Fq>> ts) {
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    return mono_cmp(a.first, b.first) > 0;
  });
  NCPoly out;
  for (auto& [m, c] : ts) {
    if (!out.terms.empty() && mono_cmp(out.terms.back().first, m) == 0)
      out.terms.back().second = F.add(out.terms.back().second, c);
    else
      out.terms.push_back({std::move(m), c});
    if (out.terms.back().second == 0) out.terms.pop_back();
  }
  return out;
}

NCPoly nc_sub(const Field& F, const NCPoly& a, const NCPoly& b) {
  std::vector<std::pair<PathMonomial, Fq>> ts = a.terms;
  for (const auto& [m, c] : b.terms) ts.push_back({m, F.neg(c)});
  return nc_normalize(F, std::move(ts));
}

NCPoly nc_scale(const Field& F, NCPoly a, Fq c) {
  for (auto& [m, x] : a.terms) x = F.mul(x, c);
  return a;
}

struct GBEngine {
  const Quiver& q;
  const Field& F;
  std::size_t cap;  // max word length processed
  std::vector<NCPoly> gb;
  std::vector<bool> alive;
  std::deque<NCPoly> pending;
  std::deque<std::pair<std::size_t, std::size_t>> overlaps;
  bool truncated = false;  // an overlap beyond the cap was skipped
  std::size_t insertions = 0;

  std::size_t word_src(const PathMonomial& m) const {
    return m.w.empty() ? m.vtx : q.arrows[m.w[0]].src;
  }
  std::size_t word_dst(const PathMonomial& m) const {
    return m.w.empty() ? m.vtx : q.arrows[m.w.back()].dst;
  }

  NCPoly mul_left(const std::vector<std::uint8_t>& u, const NCPoly& g) const {
    NCPoly out;
    out.terms.reserve(g.terms.size());
    for (const auto& [m, c] : g.terms) {
      PathMonomial nm;
      nm.w = u;
      nm.w.insert(nm.w.end(), m.w.begin(), m.w.end());
      nm.vtx = nm.w.empty() ? m.vtx : q.arrows[nm.w[0]].src;
      out.terms.push_back({std::move(nm), c});
    }
    return out;  // order preserved: left multiplication is order-compatible
  }

  NCPoly mul_right(const NCPoly& g, const std::vector<std::uint8_t>& v) const {
    NCPoly out;
    out.terms.reserve(g.terms.size());
    for (const auto& [m, c] : g.terms) {
      PathMonomial nm;
      nm.w = m.w;
      nm.w.insert(nm.w.end(), v.begin(), v.end());
      nm.vtx = nm.w.empty() ? m.vtx : q.arrows[nm.w[0]].src;
      out.terms.push_back({std::move(nm), c});
    }
    return out;
  }

  // first occurrence of some alive leading word inside w
  bool find_divisor(const PathMonomial& m, std::size_t& gi,
                    std::size_t& pos) const {
    for (std::size_t g = 0; g < gb.size(); ++g) {
      if (!alive[g]) continue;
      const auto& lw = gb[g].lm().w;
      if (lw.empty() || lw.size() > m.w.size()) continue;
      auto it = std::search(m.w.begin(), m.w.end(), lw.begin(), lw.end());
      if (it != m.w.end()) {
        gi = g;
        pos = (std::size_t)(it - m.w.begin());
        return true;
      }
    }
    return false;
  }

  NCPoly reduce(NCPoly f) const {
    std::vector<std::pair<PathMonomial, Fq>> out;
    while (!f.empty()) {
      auto [m, c] = f.terms.front();
      std::size_t gi = 0, pos = 0;
      if (!find_divisor(m, gi, pos)) {
        out.push_back({m, c});
        f.terms.erase(f.terms.begin());
        continue;
      }
      const NCPoly& g = gb[gi];
      std::vector<std::uint8_t> u(m.w.begin(), m.w.begin() + pos);
      std::vector<std::uint8_t> v(m.w.begin() + pos + g.lm().w.size(),
                                  m.w.end());
      NCPoly repl = mul_left(u, mul_right(g, v));
      f = nc_sub(F, f, nc_scale(F, repl, F.mul(c, F.inv(g.lc()))));
    }
    NCPoly r;
    r.terms = std::move(out);
    return r;
  }

  void add(NCPoly h) {
    h = reduce(std::move(h));
    if (h.empty()) return;
    require(!h.lm().w.empty(), ErrorKind::InconsistentRelations,
            "a vertex idempotent reduces to lower terms (1 reduces to 0)");
    h = nc_scale(F, h, F.inv(h.lc()));
    require(++insertions < 20000, ErrorKind::NotFiniteDimensional,
            "relation completion did not stabilize");
    const auto& hw = h.lm().w;
    for (std::size_t g = 0; g < gb.size(); ++g) {
      if (!alive[g]) continue;
      bool affected = false;
      for (const auto& [m, c] : gb[g].terms) {
        (void)c;
        if (m.w.size() >= hw.size() &&
            std::search(m.w.begin(), m.w.end(), hw.begin(), hw.end()) !=
                m.w.end()) {
          affected = true;
          break;
        }
      }
      if (affected) {
        alive[g] = false;
        pending.push_back(gb[g]);
      }
    }
    gb.push_back(std::move(h));
    alive.push_back(true);
    std::size_t hi = gb.size() - 1;
    for (std::size_t g = 0; g < gb.size(); ++g) {
      if (!alive[g]) continue;
      overlaps.push_back({hi, g});
      if (g != hi) overlaps.push_back({g, hi});
    }
  }

  void process_overlap(std::size_t i, std::size_t j) {
    if (!alive[i] || !alive[j]) return;
    const auto& w1 = gb[i].lm().w;
    const auto& w2 = gb[j].lm().w;
    std::size_t kmax = std::min(w1.size(), w2.size()) - 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
      if (!std::equal(w1.end() - k, w1.end(), w2.begin())) continue;
      if (w1.size() + w2.size() - k > cap) {
        truncated = true;
        continue;
      }
      std::vector<std::uint8_t> u(w1.begin(), w1.end() - k);
      std::vector<std::uint8_t> v(w2.begin() + k, w2.end());
      NCPoly s = nc_sub(F, mul_right(gb[i], v), mul_left(u, gb[j]));
      s = reduce(std::move(s));
      if (!s.empty()) pending.push_back(std::move(s));
    }
  }

  void run() {
    while (!pending.empty() || !overlaps.empty()) {
      if (!pending.empty()) {
        NCPoly h = std::move(pending.front());
        pending.pop_front();
        add(std::move(h));
      } else {
        auto [i, j] = overlaps.front();
        overlaps.pop_front();
        process_overlap(i, j);
      }
    }
  }
};

NCPoly relation_poly(const Field& F, const Relation& r) {
  std::vector<std::pair<PathMonomial, Fq>> ts;
  for (const auto& t : r.lhs) ts.push_back({t.mono, t.coeff});
  for (const auto& t : r.rhs) ts.push_back({t.mono, F.neg(t.coeff)});
  return nc_normalize(F, std::move(ts));
}

}  // namespace

std::size_t PathAlgebraQuotient::basis_index(const PathMonomial& m) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (mono_cmp(basis[i], m) == 0) return i;
  fail(ErrorKind::Internal, "monomial not in basis");
}

std::vector<Fq> PathAlgebraQuotient::vec_of(const PathMonomial& m) const {
  std::vector<Fq> v(dim, 0);
  v[basis_index(m)] = F.one();
  return v;
}

std::vector<Fq> PathAlgebraQuotient::multiply(const std::vector<Fq>& u,
                                              const std::vector<Fq>& v) const {
  require(u.size() == dim && v.size() == dim, ErrorKind::DimensionMismatch,
          "quotient multiply size");
  std::vector<Fq> out(dim, 0);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!u[i]) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (!v[j]) continue;
      Fq c = F.mul(u[i], v[j]);
      for (const auto& [l, x] : table[i * dim + j])
        out[l] = F.add(out[l], F.mul(c, x));
    }
  }
  return out;
}

std::vector<Fq> PathAlgebraQuotient::eval_word(
    std::size_t vtx, const std::vector<std::uint8_t>& w) const {
  PathMonomial e;
  e.vtx = (std::uint32_t)vtx;
  std::vector<Fq> acc = vec_of(e);
  for (auto a : w) {
    PathMonomial am;
    am.vtx = (std::uint32_t)q.arrows[a].src;
    am.w = {a};
    acc = multiply(acc, vec_of(am));
  }
  return acc;
}

std::vector<Fq> PathAlgebraQuotient::unit() const {
  std::vector<Fq> u(dim, 0);
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    PathMonomial e;
    e.vtx = (std::uint32_t)i;
    u[basis_index(e)] = F.one();
  }
  return u;
}

PathAlgebraQuotient build_quotient(const Quiver& q,
                                   const std::vector<Relation>& rels,
                                   std::size_t max_len, const Field& F) {
  require(max_len >= 1, ErrorKind::BadParameters, "max_len must be >= 1");
  require(q.arrows.size() <= 255, ErrorKind::BadParameters, "too many arrows");
  for (const auto& r : rels)
    for (const auto* side : {&r.lhs, &r.rhs})
      for (const auto& t : *side)
        for (std::size_t i = 0; i + 1 < t.mono.w.size(); ++i)
          require(q.arrows[t.mono.w[i]].dst == q.arrows[t.mono.w[i + 1]].src,
                  ErrorKind::BadParameters, "relation path not composable");

  std::size_t cap = 1;
  for (const auto& r : rels)
    for (const auto* side : {&r.lhs, &r.rhs})
      for (const auto& t : *side)
        cap = std::max(cap, t.mono.w.size());
  cap = std::min(max_len, 2 * cap + 4);

  while (true) {
    GBEngine eng{q, F, cap, {}, {}, {}, {}, false, 0};
    for (const auto& r : rels) eng.pending.push_back(relation_poly(F, r));
    eng.run();

    // irreducible-path basis: every subword of an irreducible path is
    // irreducible, so extensions only need a suffix test
    std::vector<PathMonomial> basis;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      PathMonomial e;
      e.vtx = (std::uint32_t)v;
      basis.push_back(e);
    }
    bool overflow = false;
    std::size_t max_irr = 0;
    for (std::size_t head = 0; head < basis.size() && !overflow; ++head) {
      PathMonomial m = basis[head];
      std::size_t end = eng.word_dst(m);
      for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        if (q.arrows[a].src != end) continue;
        PathMonomial nm = m;
        nm.w.push_back((std::uint8_t)a);
        if (nm.w.empty()) nm.vtx = m.vtx;
        bool reducible = false;
        for (std::size_t g = 0; g < eng.gb.size() && !reducible; ++g) {
          if (!eng.alive[g]) continue;
          const auto& lw = eng.gb[g].lm().w;
          if (lw.size() <= nm.w.size())
            reducible = std::equal(lw.begin(), lw.end(), nm.w.end() - lw.size());
        }
        if (reducible) continue;
        if (nm.w.size() * 2 + 2 > cap) {
          overflow = true;  // cannot certify products at this truncation
          break;
        }
        max_irr = std::max(max_irr, nm.w.size());
        basis.push_back(std::move(nm));
        require(basis.size() <= 4096, ErrorKind::NotFiniteDimensional,
                "irreducible path basis did not stabilize");
      }
    }
    if (overflow) {
      require(cap < max_len, ErrorKind::NotFiniteDimensional,
              "dimension did not stabilize below the length guard");
      cap = std::min(max_len, cap * 2);
      continue;
    }

    PathAlgebraQuotient A;
    A.q = q;
    A.F = F;
    A.basis = std::move(basis);
    A.dim = A.basis.size();
    std::sort(A.basis.begin(), A.basis.end(),
              [](const PathMonomial& a, const PathMonomial& b) {
                return mono_cmp(a, b) < 0;
              });
    A.table.assign(A.dim * A.dim, {});
    for (std::size_t i = 0; i < A.dim; ++i)
      for (std::size_t j = 0; j < A.dim; ++j) {
        const PathMonomial &mi = A.basis[i], &mj = A.basis[j];
        if (eng.word_dst(mi) != eng.word_src(mj)) continue;
        PathMonomial prod;
        prod.vtx = mi.w.empty() ? mj.vtx : mi.vtx;
        prod.w = mi.w;
        prod.w.insert(prod.w.end(), mj.w.begin(), mj.w.end());
        NCPoly nf;
        nf.terms.push_back({std::move(prod), F.one()});
        nf = eng.reduce(std::move(nf));
        for (const auto& [m, c] : nf.terms)
          A.table[i * A.dim + j].push_back({(std::uint32_t)A.basis_index(m), c});
      }

    // certificates: the original relations evaluate to zero through the
    // multiplication table, the vertex paths decompose 1, and the arrow
    // ideal is nilpotent
    for (const auto& r : rels) {
      std::vector<Fq> val(A.dim, 0);
      auto acc_side = [&](const std::vector<PathTerm>& side, bool neg) {
        for (const auto& t : side) {
          auto v = A.eval_word(eng.word_src(t.mono), t.mono.w);
          Fq c = neg ? F.neg(t.coeff) : t.coeff;
          for (std::size_t l = 0; l < A.dim; ++l)
            val[l] = F.add(val[l], F.mul(c, v[l]));
        }
      };
      acc_side(r.lhs, false);
      acc_side(r.rhs, true);
      require(std::all_of(val.begin(), val.end(), [](Fq x) { return x == 0; }),
              ErrorKind::Internal, "relation does not vanish in the quotient");
    }
    std::vector<Fq> one = A.unit();
    for (std::size_t i = 0; i < A.dim; ++i) {
      auto bi = A.vec_of(A.basis[i]);
      require(A.multiply(one, bi) == bi && A.multiply(bi, one) == bi,
              ErrorKind::Internal, "vertex idempotents do not decompose 1");
    }
    {
      std::mt19937_64 rng(A.dim * 31 + 7);
      std::uniform_int_distribution<std::size_t> d(0, A.dim - 1);
      std::size_t checks = A.dim <= 64 ? A.dim * A.dim * A.dim : 500;
      for (std::size_t t = 0; t < checks; ++t) {
        std::size_t i, j, k;
        if (A.dim <= 64) {
          i = t / (A.dim * A.dim);
          j = t / A.dim % A.dim;
          k = t % A.dim;
        } else {
          i = d(rng);
          j = d(rng);
          k = d(rng);
        }
        auto bi = A.vec_of(A.basis[i]), bj = A.vec_of(A.basis[j]),
             bk = A.vec_of(A.basis[k]);
        require(A.multiply(A.multiply(bi, bj), bk) ==
                    A.multiply(bi, A.multiply(bj, bk)),
                ErrorKind::Internal, "quotient multiplication not associative");
      }
    }
    {
      RowSpace J(F, A.dim);
      for (std::size_t i = 0; i < A.dim; ++i)
        if (!A.basis[i].w.empty()) J.insert(A.vec_of(A.basis[i]));
      RowSpace cur = J;
      int L = 1;
      while (cur.dim() > 0) {
        RowSpace nxt(F, A.dim);
        for (const auto& x : cur.rows)
          for (const auto& y : J.rows) nxt.insert(A.multiply(x, y));
        require(nxt.dim() < cur.dim(), ErrorKind::NotFiniteDimensional,
                "arrow ideal is not nilpotent");
        cur = std::move(nxt);
        ++L;
      }
      A.arrow_ideal_nilpotency = L;
      (void)max_irr;
    }
    return A;
  }
}

CommAlgebra center(const PathAlgebraQuotient& A, RowSpace* embedding) {
  const Field& F = A.F;
  // generators: vertex paths and arrows
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < A.dim; ++i)
    if (A.basis[i].w.size() <= 1) gens.push_back(i);
  Mat M(gens.size() * A.dim, A.dim);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::size_t g = gens[gi];
    for (std::size_t j = 0; j < A.dim; ++j) {
      for (const auto& [l, c] : A.table[j * A.dim + g])
        M.at(gi * A.dim + l, j) = F.add(M.at(gi * A.dim + l, j), c);
      for (const auto& [l, c] : A.table[g * A.dim + j])
        M.at(gi * A.dim + l, j) = F.sub(M.at(gi * A.dim + l, j), c);
    }
  }
  Mat K = kernel(F, M);
  RowSpace Zrows(F, A.dim);
  for (std::size_t r = 0; r < K.rows; ++r) {
    std::vector<Fq> v(A.dim);
    for (std::size_t j = 0; j < A.dim; ++j) v[j] = K.at(r, j);
    Zrows.insert(std::move(v));
  }
  // full re-verification: center elements commute with every basis path
  for (const auto& z : Zrows.rows)
    for (std::size_t i = 0; i < A.dim; ++i) {
      auto bi = A.vec_of(A.basis[i]);
      require(A.multiply(z, bi) == A.multiply(bi, z), ErrorKind::Internal,
              "center solution does not commute with a basis path");
    }
  std::size_t zd = Zrows.dim();
  std::vector<Fq> tensor(zd * zd * zd, 0);
  auto express = [&](const std::vector<Fq>& v) {
    require(Zrows.contains(v), ErrorKind::Internal, "product left the center");
    std::vector<Fq> c(zd);
    for (std::size_t i = 0; i < zd; ++i) c[i] = v[Zrows.piv[i]];
    return c;
  };
  std::vector<std::string> labels(zd);
  for (std::size_t i = 0; i < zd; ++i) {
    labels[i] = "z" + std::to_string(i);
    for (std::size_t j = i; j < zd; ++j) {
      auto c = express(A.multiply(Zrows.rows[i], Zrows.rows[j]));
      for (std::size_t l = 0; l < zd; ++l) {
        tensor[(i * zd + j) * zd + l] = c[l];
        tensor[(j * zd + i) * zd + l] = c[l];
      }
    }
  }
  auto one = express(A.unit());
  if (embedding) *embedding = Zrows;
  return CommAlgebra::build(F, std::move(labels), std::move(tensor),
                            std::move(one));
}

// ---------------------------------------------------------------------------
// Commutative rewriting engine.

namespace {

using Expo = std::vector<long long>;

int cm_cmp(const Expo& a, const Expo& b) {
  long long da = 0, db = 0;
  for (auto x : a) da += x;
  for (auto x : b) db += x;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

struct CPoly {
  std::vector<std::pair<Expo, Fq>> terms;  // descending
  bool empty() const { return terms.empty(); }
};

CPoly c_normalize(const Field& F, std::vector<std::pair<Expo, Fq>> ts) {
  std::sort(ts.begin(), ts.end(),
            [](const auto& a, const auto& b) { return cm_cmp(a.first, b.first) > 0; });
  CPoly out;
  for (auto& [m, c] : ts) {
    if (!out.terms.empty() && cm_cmp(out.terms.back().first, m) == 0)
      out.terms.back().second = F.add(out.terms.back().second, c);
    else
      out.terms.push_back({std::move(m), c});
    if (out.terms.back().second == 0) out.terms.pop_back();
  }
  return out;
}

bool divides_expo(const Expo& a, const Expo& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

struct CommEngine {
  const Field& F;
  std::size_t nvars;
  std::vector<CPoly> gb;

  CPoly reduce(CPoly f) const {
    std::vector<std::pair<Expo, Fq>> out;
    while (!f.empty()) {
      auto [m, c] = f.terms.front();
      const CPoly* div = nullptr;
      for (const auto& g : gb)
        if (divides_expo(g.terms.front().first, m)) {
          div = &g;
          break;
        }
      if (!div) {
        out.push_back({m, c});
        f.terms.erase(f.terms.begin());
        continue;
      }
      Expo shift(nvars);
      for (std::size_t i = 0; i < nvars; ++i)
        shift[i] = m[i] - div->terms.front().first[i];
      std::vector<std::pair<Expo, Fq>> sub;
      Fq scale = F.mul(c, F.inv(div->terms.front().second));
      for (const auto& [gm, gc] : div->terms) {
        Expo nm(nvars);
        for (std::size_t i = 0; i < nvars; ++i) nm[i] = gm[i] + shift[i];
        sub.push_back({std::move(nm), F.neg(F.mul(gc, scale))});
      }
      for (auto& t : f.terms) sub.push_back(std::move(t));
      f = c_normalize(F, std::move(sub));
    }
    CPoly r;
    r.terms = std::move(out);
    return r;
  }

  void complete(std::deque<CPoly> work) {
    std::size_t rounds = 0;
    while (!work.empty()) {
      require(++rounds < 50000, ErrorKind::NotFiniteDimensional,
              "commutative completion did not stabilize");
      CPoly h = reduce(std::move(work.front()));
      work.pop_front();
      if (h.empty()) continue;
      require(!(cm_cmp(h.terms.front().first, Expo(nvars, 0)) == 0),
              ErrorKind::InconsistentRelations, "1 reduces to 0");
      // re-reduce anything the new leading term now divides
      std::vector<CPoly> keep;
      for (auto& g : gb) {
        bool affected = false;
        for (const auto& [m, c] : g.terms) {
          (void)c;
          if (divides_expo(h.terms.front().first, m)) {
            affected = true;
            break;
          }
        }
        if (affected)
          work.push_back(std::move(g));
        else
          keep.push_back(std::move(g));
      }
      gb = std::move(keep);
      // S-polynomials against the surviving basis
      for (const auto& g : gb) {
        const Expo &m1 = h.terms.front().first, &m2 = g.terms.front().first;
        Expo l(nvars), s1(nvars), s2(nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
          l[i] = std::max(m1[i], m2[i]);
          s1[i] = l[i] - m1[i];
          s2[i] = l[i] - m2[i];
        }
        std::vector<std::pair<Expo, Fq>> ts;
        Fq c1 = F.inv(h.terms.front().second), c2 = F.inv(g.terms.front().second);
        for (const auto& [m, c] : h.terms) {
          Expo nm(nvars);
          for (std::size_t i = 0; i < nvars; ++i) nm[i] = m[i] + s1[i];
          ts.push_back({std::move(nm), F.mul(c, c1)});
        }
        for (const auto& [m, c] : g.terms) {
          Expo nm(nvars);
          for (std::size_t i = 0; i < nvars; ++i) nm[i] = m[i] + s2[i];
          ts.push_back({std::move(nm), F.neg(F.mul(c, c2))});
        }
        CPoly s = c_normalize(F, std::move(ts));
        if (!s.empty()) work.push_back(std::move(s));
      }
      gb.push_back(std::move(h));
    }
  }
};

}  // namespace

CommAlgebra presented_commutative(const std::vector<std::string>& gens,
                                  const std::vector<std::vector<CommTerm>>& rels,
                                  std::uint32_t p, std::uint32_t m) {
  Field F = make_field(p, m);
  std::size_t n = gens.size();
  CommEngine eng{F, n, {}};
  std::deque<CPoly> work;
  for (const auto& r : rels) {
    std::vector<std::pair<Expo, Fq>> ts;
    for (const auto& t : r) {
      Expo e(n, 0);
      for (const auto& [name, pow] : t.powers) {
        auto it = std::find(gens.begin(), gens.end(), name);
        require(it != gens.end(), ErrorKind::BadParameters,
                "unknown generator '" + name + "'");
        e[(std::size_t)(it - gens.begin())] += pow;
      }
      ts.push_back({std::move(e), F.from_int(t.coeff)});
    }
    work.push_back(c_normalize(F, std::move(ts)));
  }
  eng.complete(std::move(work));

  // finite dimension certificate: each variable has a pure-power leading term
  std::vector<long long> bound(n, -1);
  for (const auto& g : eng.gb) {
    const Expo& lm = g.terms.front().first;
    std::size_t nz = 0, var = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (lm[i] > 0) {
        ++nz;
        var = i;
      }
    if (nz == 1 && (bound[var] < 0 || lm[var] < bound[var])) bound[var] = lm[var];
  }
  for (std::size_t i = 0; i < n; ++i)
    require(bound[i] > 0, ErrorKind::NotFiniteDimensional,
            "no pure power of '" + gens[i] + "' in the relation ideal");

  // standard monomials under the staircase
  std::vector<Expo> basis;
  Expo cur(n, 0);
  while (true) {
    bool reducible = false;
    for (const auto& g : eng.gb)
      if (divides_expo(g.terms.front().first, cur)) {
        reducible = true;
        break;
      }
    if (!reducible) basis.push_back(cur);
    require(basis.size() <= 4096, ErrorKind::NotFiniteDimensional,
            "monomial basis did not stabilize");
    std::size_t i = 0;
    while (i < n && ++cur[i] >= bound[i]) cur[i++] = 0;
    if (i == n) break;
  }
  std::sort(basis.begin(), basis.end(),
            [](const Expo& a, const Expo& b) { return cm_cmp(a, b) < 0; });

  std::size_t dim = basis.size();
  auto index_of = [&](const Expo& e) {
    for (std::size_t i = 0; i < dim; ++i)
      if (basis[i] == e) return i;
    fail(ErrorKind::Internal, "monomial escaped the basis");
  };
  std::vector<Fq> tensor(dim * dim * dim, 0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      Expo prod(n);
      for (std::size_t v = 0; v < n; ++v) prod[v] = basis[i][v] + basis[j][v];
      CPoly f;
      f.terms.push_back({prod, F.one()});
      f = eng.reduce(std::move(f));
      for (const auto& [mn, c] : f.terms) {
        std::size_t l = index_of(mn);
        tensor[(i * dim + j) * dim + l] = c;
        tensor[(j * dim + i) * dim + l] = c;
      }
    }
  std::vector<std::string> labels(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    std::string s;
    for (std::size_t v = 0; v < n; ++v)
      for (long long k = 0; k < basis[i][v]; ++k) s += gens[v];
    labels[i] = s.empty() ? "1" : s;
  }
  std::vector<Fq> one(dim, 0);
  one[index_of(Expo(n, 0))] = F.one();
  return CommAlgebra::build(F, std::move(labels), std::move(tensor),
                            std::move(one));
}

// ---------------------------------------------------------------------------
// d = e+1 case library: data-file loading and verification.

namespace {

// tiny expression grammar: expr := atom (('+'|'-') atom)*,
// atom := number ['^' '(' expr ')'] | ident
struct ExprParser {
  const std::string& s;
  std::size_t pos = 0;
  const std::map<std::string, long long>& vars;

  long long parse() {
    long long v = atom();
    while (pos < s.size()) {
      if (s[pos] == '+') {
        ++pos;
        v += atom();
      } else if (s[pos] == '-') {
        ++pos;
        v -= atom();
      } else {
        break;
      }
    }
    return v;
  }

  long long atom() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
    require(pos < s.size(), ErrorKind::ParseError, "bad expression: " + s);
    if (std::isdigit((unsigned char)s[pos])) {
      long long n = 0;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos]))
        n = n * 10 + (s[pos++] - '0');
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        require(pos < s.size() && s[pos] == '(', ErrorKind::ParseError,
                "expected ( after ^ in: " + s);
        ++pos;
        long long e = parse();
        require(pos < s.size() && s[pos] == ')', ErrorKind::ParseError,
                "expected ) in: " + s);
        ++pos;
        long long r = 1;
        while (e-- > 0) r *= n;
        return r;
      }
      return n;
    }
    std::size_t start = pos;
    while (pos < s.size() && (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
      ++pos;
    std::string id = s.substr(start, pos - start);
    auto it = vars.find(id);
    require(it != vars.end(), ErrorKind::ParseError,
            "unknown variable '" + id + "' in expression: " + s);
    return it->second;
  }
};

long long eval_expr(const ordered_json& j,
                    const std::map<std::string, long long>& vars) {
  if (j.is_number_integer()) return j.get<long long>();
  std::string s = j.get<std::string>();
  ExprParser p{s, 0, vars};
  long long v = p.parse();
  return v;
}

// a word item is an arrow name or {"w": [...], "pow": expr}
void expand_word(const ordered_json& word, const Quiver& q,
                 const std::map<std::string, long long>& vars,
                 std::vector<std::uint8_t>& out) {
  for (const auto& item : word) {
    if (item.is_string()) {
      out.push_back((std::uint8_t)q.arrow_index(item.get<std::string>()));
    } else {
      long long pow = eval_expr(item.at("pow"), vars);
      require(pow >= 0, ErrorKind::ParseError, "negative power in word");
      std::vector<std::uint8_t> inner;
      expand_word(item.at("w"), q, vars, inner);
      for (long long k = 0; k < pow; ++k)
        out.insert(out.end(), inner.begin(), inner.end());
    }
  }
}

std::vector<Fq> eval_terms_quiver(const ordered_json& terms,
                                  const PathAlgebraQuotient& A,
                                  const std::map<std::string, long long>& vars) {
  std::vector<Fq> acc(A.dim, 0);
  for (const auto& t : terms) {
    long long coeff = t.at(0).get<long long>();
    std::vector<std::uint8_t> w;
    expand_word(t.at(1), A.q, vars, w);
    std::vector<Fq> v;
    if (w.empty()) {
      v = A.unit();
    } else {
      require(!w.empty(), ErrorKind::ParseError, "empty path term");
      v = A.eval_word(A.q.arrows[w[0]].src, w);
    }
    Fq c = A.F.from_int(coeff);
    for (std::size_t l = 0; l < A.dim; ++l)
      acc[l] = A.F.add(acc[l], A.F.mul(c, v[l]));
  }
  return acc;
}

// elements: "1", {"terms": [...]} or {"family": {var, from, to, terms}}
void eval_elements_quiver(const ordered_json& elems, const PathAlgebraQuotient& A,
                          std::map<std::string, long long> vars,
                          std::vector<std::vector<Fq>>& out) {
  for (const auto& e : elems) {
    if (e.is_string()) {
      require(e.get<std::string>() == "1", ErrorKind::ParseError,
              "unknown element literal");
      out.push_back(A.unit());
    } else if (e.contains("family")) {
      const auto& fam = e.at("family");
      std::string var = fam.at("var").get<std::string>();
      long long from = eval_expr(fam.at("from"), vars);
      long long to = eval_expr(fam.at("to"), vars);
      for (long long i = from; i <= to; ++i) {
        vars[var] = i;
        out.push_back(eval_terms_quiver(fam.at("terms"), A, vars));
      }
      vars.erase(var);
    } else {
      out.push_back(eval_terms_quiver(e.at("terms"), A, vars));
    }
  }
}

// commutative variant: words are generator-power maps
std::vector<Fq> eval_terms_comm(const ordered_json& terms, const CommAlgebra& A,
                                const std::map<std::string, std::vector<Fq>>& gens,
                                const std::map<std::string, long long>& vars) {
  std::vector<Fq> acc(A.dim, 0);
  for (const auto& t : terms) {
    long long coeff = t.at(0).get<long long>();
    std::vector<Fq> v = A.one;
    for (const auto& [name, pw] : t.at(1).items()) {
      long long pow = eval_expr(pw, vars);
      for (long long k = 0; k < pow; ++k) v = A.multiply(v, gens.at(name));
    }
    Fq c = A.F.from_int(coeff);
    for (std::size_t l = 0; l < A.dim; ++l)
      acc[l] = A.F.add(acc[l], A.F.mul(c, v[l]));
  }
  return acc;
}

void eval_elements_comm(const ordered_json& elems, const CommAlgebra& A,
                        const std::map<std::string, std::vector<Fq>>& gens,
                        std::map<std::string, long long> vars,
                        std::vector<std::vector<Fq>>& out) {
  for (const auto& e : elems) {
    if (e.is_string()) {
      require(e.get<std::string>() == "1", ErrorKind::ParseError,
              "unknown element literal");
      out.push_back(A.one);
    } else if (e.contains("family")) {
      const auto& fam = e.at("family");
      std::string var = fam.at("var").get<std::string>();
      long long from = eval_expr(fam.at("from"), vars);
      long long to = eval_expr(fam.at("to"), vars);
      for (long long i = from; i <= to; ++i) {
        vars[var] = i;
        out.push_back(eval_terms_comm(fam.at("terms"), A, gens, vars));
      }
      vars.erase(var);
    } else {
      out.push_back(eval_terms_comm(e.at("terms"), A, gens, vars));
    }
  }
}

}  // namespace

std::string default_data_dir() {
  if (const char* env = std::getenv("BLOCKCENTER_DATA")) return env;
#ifdef BLOCKCENTER_DATA_DIR
  return BLOCKCENTER_DATA_DIR;
#else
  return "data";
#endif
}

ordered_json CaseReport::to_json() const {
  ordered_json j;
  j["case"] = case_id;
  j["d"] = d;
  j["algebra_dim"] = algebra_dim;
  j["dim_ZB"] = dim_ZB;
  j["LL"] = LL;
  j["LL_expected"] = LL_expected;
  j["span_in_center"] = span_in_center;
  j["span_spans_center"] = span_spans_center;
  if (kB_expected) j["kB_expected"] = *kB_expected;
  j["kB_match"] = kB_match;
  j["jzb2_match"] = jzb2_match;
  if (jzb3_match) j["jzb3_match"] = *jzb3_match;
  ordered_json ids = ordered_json::array();
  for (const auto& ic : identities)
    ids.push_back({{"identity", ic.text}, {"pass", ic.pass}});
  j["identities"] = std::move(ids);
  j["pass"] = pass;
  return j;
}

CaseReport coexp_case(const std::string& case_id, int d,
                      const std::string& data_dir) {
  require(d >= 4, ErrorKind::UnsupportedCase, "coexp cases need d >= 4");
  std::string path = data_dir + "/coexp/case_" + case_id + ".json";
  std::ifstream in(path);
  require(in.good(), ErrorKind::UnsupportedCase,
          "no such case presentation: " + path);
  ordered_json spec = ordered_json::parse(in);

  std::map<std::string, long long> vars{{"d", d}};
  vars["q"] = 1ll << (d - 2);

  CaseReport rep;
  rep.case_id = case_id;
  rep.d = d;
  rep.LL_expected = (1ll << (d - 2)) + 1;
  if (spec.contains("kB")) rep.kB_expected = eval_expr(spec.at("kB"), vars);

  CommAlgebra ZB;
  std::vector<std::vector<Fq>> span, jzb2_gens, jzb3_gens;
  std::vector<std::pair<std::vector<std::vector<Fq>>, std::vector<Fq>>> idents;
  std::vector<std::string> ident_texts;

  if (spec.at("kind") == "commutative") {
    std::vector<std::string> gens =
        spec.at("generators").get<std::vector<std::string>>();
    std::vector<std::vector<CommTerm>> rels;
    for (const auto& r : spec.at("relations")) {
      std::vector<CommTerm> poly;
      for (const auto& t : r) {
        CommTerm ct;
        ct.coeff = t.at(0).get<long long>();
        for (const auto& [name, pw] : t.at(1).items())
          ct.powers[name] = eval_expr(pw, vars);
        poly.push_back(std::move(ct));
      }
      rels.push_back(std::move(poly));
    }
    ZB = presented_commutative(gens, rels, 2, 1);
    rep.algebra_dim = ZB.dim;
    rep.dim_ZB = ZB.dim;
    std::map<std::string, std::vector<Fq>> gen_vecs;
    for (const auto& g : gens) {
      // each generator is itself a degree-1 basis monomial
      std::vector<Fq> v(ZB.dim, 0);
      bool found = false;
      for (std::size_t i = 0; i < ZB.dim; ++i)
        if (ZB.labels[i] == g) {
          v[i] = ZB.F.one();
          found = true;
        }
      require(found, ErrorKind::Internal, "generator not a basis monomial");
      gen_vecs[g] = v;
    }
    eval_elements_comm(spec.at("center_span"), ZB, gen_vecs, vars, span);
    eval_elements_comm(spec.at("jzb2"), ZB, gen_vecs, vars, jzb2_gens);
    rep.span_in_center = true;
    RowSpace spanspace(ZB.F, ZB.dim);
    for (const auto& v : span) spanspace.insert(v);
    rep.span_spans_center = spanspace.dim() == ZB.dim;
  } else {
    Quiver q;
    q.vertices = spec.at("vertices").get<std::vector<std::string>>();
    for (const auto& a : spec.at("arrows"))
      q.arrows.push_back({a.at("name").get<std::string>(),
                          q.vertex_index(a.at("src").get<std::string>()),
                          q.vertex_index(a.at("dst").get<std::string>())});
    std::vector<Relation> rels;
    for (const auto& r : spec.at("relations")) {
      Relation rel;
      for (const char* side : {"lhs", "rhs"}) {
        auto& dst = side == std::string("lhs") ? rel.lhs : rel.rhs;
        for (const auto& t : r.at(side)) {
          PathTerm pt;
          pt.coeff = 1;
          std::vector<std::uint8_t> w;
          expand_word(t.at(1), q, vars, w);
          pt.coeff = (Fq)((t.at(0).get<long long>() % 2 + 2) % 2);
          require(!w.empty(), ErrorKind::ParseError, "empty relation path");
          pt.mono.vtx = (std::uint32_t)q.arrows[w[0]].src;
          pt.mono.w = std::move(w);
          dst.push_back(std::move(pt));
        }
      }
      rels.push_back(std::move(rel));
    }
    Field F2 = make_field(2, 1);
    std::size_t guard = std::size_t(1) << (d + 2);
    PathAlgebraQuotient A = build_quotient(q, rels, guard, F2);
    rep.algebra_dim = A.dim;

    RowSpace emb;
    ZB = center(A, &emb);
    rep.dim_ZB = ZB.dim;

    eval_elements_quiver(spec.at("center_span"), A, vars, span);
    rep.span_in_center = true;
    RowSpace spanspace(F2, A.dim);
    for (const auto& v : span) {
      rep.span_in_center &= emb.contains(v);
      spanspace.insert(v);
    }
    rep.span_spans_center = spanspace.dim() == ZB.dim && rep.span_in_center;

    // express stated radical-power generators in center coordinates
    auto to_center = [&](const std::vector<std::vector<Fq>>& vecs) {
      std::vector<std::vector<Fq>> out;
      for (const auto& v : vecs) {
        require(emb.contains(v), ErrorKind::Internal,
                "stated element outside the center");
        std::vector<Fq> c(ZB.dim);
        for (std::size_t i = 0; i < ZB.dim; ++i) c[i] = v[emb.piv[i]];
        out.push_back(std::move(c));
      }
      return out;
    };
    std::vector<std::vector<Fq>> tmp;
    eval_elements_quiver(spec.at("jzb2"), A, vars, tmp);
    jzb2_gens = to_center(tmp);
    if (spec.contains("jzb3")) {
      tmp.clear();
      eval_elements_quiver(spec.at("jzb3"), A, vars, tmp);
      jzb3_gens = to_center(tmp);
    }
    if (spec.contains("identities")) {
      for (const auto& id : spec.at("identities")) {
        std::vector<std::vector<Fq>> factors;
        eval_elements_quiver(id.at("product"), A, vars, factors);
        std::vector<std::vector<Fq>> rhs;
        if (id.contains("equals"))
          eval_elements_quiver(ordered_json::array({id.at("equals")}), A, vars,
                               rhs);
        else
          rhs.push_back(std::vector<Fq>(A.dim, 0));
        idents.push_back({std::move(factors), std::move(rhs[0])});
        ident_texts.push_back(id.value("text", ""));
        // product in A
        auto& [fs, expect] = idents.back();
        std::vector<Fq> prod = fs[0];
        for (std::size_t i = 1; i < fs.size(); ++i) prod = A.multiply(prod, fs[i]);
        rep.identities.push_back({ident_texts.back(), prod == expect});
      }
    }
  }

  rep.LL = loewy_length(ZB);
  rep.kB_match = !rep.kB_expected || (long long)rep.dim_ZB == *rep.kB_expected;

  auto series = radical_series(ZB);
  auto match_power = [&](std::size_t k, const std::vector<std::vector<Fq>>& gens) {
    IdealBasis expect = ideal_generated_by(ZB, gens);
    if (series.size() < k) return expect.dim() == 0;
    return expect == series[k - 1];
  };
  rep.jzb2_match = match_power(2, jzb2_gens);
  if (!jzb3_gens.empty()) rep.jzb3_match = match_power(3, jzb3_gens);

  rep.pass = rep.LL == rep.LL_expected && rep.span_in_center &&
             rep.span_spans_center && rep.kB_match && rep.jzb2_match &&
             (!rep.jzb3_match || *rep.jzb3_match);
  for (const auto& ic : rep.identities) rep.pass &= ic.pass;
  return rep;
}

}  // namespace bc
