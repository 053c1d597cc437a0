#include "blockcenter/groups.hpp"

#include "blockcenter/gf.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>

namespace bc {

Perm perm_identity(std::size_t degree) {
  Perm p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = (std::uint16_t)i;
  return p;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

Perm perm_inverse(const Perm& a) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = (std::uint16_t)i;
  return c;
}

std::uint64_t perm_order(const Perm& a) {
  std::vector<bool> seen(a.size(), false);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (seen[i]) continue;
    std::uint64_t len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = a[j];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::size_t PermHash::operator()(const Perm& p) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : p) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

void FiniteGroup::finalize() {
  index_.clear();
  index_.reserve(elements.size() * 2);
  for (std::size_t i = 0; i < elements.size(); ++i) index_[elements[i]] = i;
  inv_.resize(elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    inv_[i] = index_.at(perm_inverse(elements[i]));
  table_.clear();
  if (order() <= 2048) {
    table_.resize(order() * order());
    for (std::size_t i = 0; i < order(); ++i)
      for (std::size_t j = 0; j < order(); ++j)
        table_[i * order() + j] =
            (std::uint16_t)index_.at(perm_compose(elements[i], elements[j]));
  }
}

std::size_t FiniteGroup::index_of(const Perm& p) const { return index_.at(p); }

std::size_t FiniteGroup::mult(std::size_t a, std::size_t b) const {
  if (!table_.empty()) return table_[a * order() + b];
  return index_.at(perm_compose(elements[a], elements[b]));
}

std::size_t FiniteGroup::inverse(std::size_t a) const { return inv_[a]; }

std::size_t FiniteGroup::conj(std::size_t x, std::size_t g) const {
  return mult(mult(inverse(g), x), g);
}

std::uint64_t FiniteGroup::element_order(std::size_t a) const {
  return perm_order(elements[a]);
}

bool FiniteGroup::is_abelian() const {
  for (auto g : generators)
    for (auto h : generators)
      if (mult(g, h) != mult(h, g)) return false;
  return true;
}

std::uint64_t p_part(std::uint64_t n, std::uint32_t p) {
  std::uint64_t q = 1;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

int p_valuation(std::uint64_t n, std::uint32_t p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

namespace {

// Deterministic closure enumeration: BFS from the identity, extending by
// generators in order.
FiniteGroup from_generators(std::string name, std::size_t degree,
                            std::vector<Perm> gens, FamilyInfo family,
                            const GroupGuards& guards) {
  FiniteGroup G;
  G.name = std::move(name);
  G.degree = degree;
  G.family = std::move(family);
  std::unordered_map<Perm, std::size_t, PermHash> seen;
  G.elements.push_back(perm_identity(degree));
  seen[G.elements[0]] = 0;
  for (std::size_t i = 0; i < G.elements.size(); ++i) {
    for (const auto& g : gens) {
      Perm f = perm_compose(G.elements[i], g);
      if (seen.emplace(f, G.elements.size()).second) {
        require(G.elements.size() < guards.order_guard,
                ErrorKind::OrderGuardExceeded,
                "group order exceeds guard " + std::to_string(guards.order_guard));
        G.elements.push_back(std::move(f));
      }
    }
  }
  for (const auto& g : gens) G.generators.push_back(seen.at(g));
  G.finalize();
  return G;
}

// Regular representation of an explicitly modelled group: states 0..n-1 with
// a multiplication rule and identity 0.
FiniteGroup from_model(std::string name, std::size_t n,
                       const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                       const std::vector<std::size_t>& gen_states,
                       FamilyInfo family, const GroupGuards& guards) {
  require(n < guards.order_guard, ErrorKind::OrderGuardExceeded,
          "group order exceeds guard");
  FiniteGroup G;
  G.name = std::move(name);
  G.degree = n;
  G.family = std::move(family);
  G.elements.resize(n);
  std::vector<bool> hit(n);
  for (std::size_t g = 0; g < n; ++g) {
    Perm pi(n);
    hit.assign(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t y = mul(g, i);
      require(y < n && !hit[y], ErrorKind::Internal, "model row not a bijection");
      hit[y] = true;
      pi[i] = (std::uint16_t)y;
    }
    G.elements[g] = std::move(pi);
  }
  require(G.elements[0] == perm_identity(n), ErrorKind::Internal,
          "model state 0 is not the identity");
  for (auto s : gen_states) G.generators.push_back(s);
  G.finalize();
  return G;
}

long long ipow(long long b, long long e) {
  long long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

FiniteGroup build_cyclic(long long n, const GroupGuards& guards) {
  require(n >= 1, ErrorKind::BadParameters, "C(n) needs n >= 1");
  require((std::size_t)n < guards.order_guard, ErrorKind::OrderGuardExceeded,
          "order guard");
  Perm r(n);
  for (long long i = 0; i < n; ++i) r[i] = (std::uint16_t)((i + 1) % n);
  return from_generators("C(" + std::to_string(n) + ")", n, {r},
                         {FamilyTag::Cyclic, {n}}, guards);
}

FiniteGroup build_abelian(std::uint32_t p, const std::vector<long long>& as,
                          const GroupGuards& guards) {
  require(is_prime(p), ErrorKind::BadParameters, "Ab(p;...) needs prime p");
  require(!as.empty(), ErrorKind::BadParameters, "Ab needs exponents");
  std::size_t degree = 0;
  long long order = 1;
  for (auto a : as) {
    require(a >= 1, ErrorKind::BadParameters, "Ab exponents must be >= 1");
    degree += (std::size_t)ipow(p, a);
    order *= ipow(p, a);
    require(order < (long long)guards.order_guard, ErrorKind::OrderGuardExceeded,
            "order guard");
  }
  std::vector<Perm> gens;
  std::size_t off = 0;
  std::string name = "Ab(" + std::to_string(p) + ";";
  for (std::size_t k = 0; k < as.size(); ++k) {
    std::size_t len = (std::size_t)ipow(p, as[k]);
    Perm g = perm_identity(degree);
    for (std::size_t i = 0; i < len; ++i)
      g[off + i] = (std::uint16_t)(off + (i + 1) % len);
    gens.push_back(std::move(g));
    off += len;
    name += (k ? "," : "") + std::to_string(as[k]);
  }
  name += ")";
  FamilyInfo fam{FamilyTag::Abelian, {p}};
  fam.params.insert(fam.params.end(), as.begin(), as.end());
  return from_generators(name, degree, gens, fam, guards);
}

FiniteGroup build_dihedral(long long order, const GroupGuards& guards) {
  require(order >= 8 && (order & (order - 1)) == 0, ErrorKind::BadParameters,
          "D(2^d) needs a 2-power order >= 8");
  long long n = order / 2;
  Perm r(n), s(n);
  for (long long i = 0; i < n; ++i) {
    r[i] = (std::uint16_t)((i + 1) % n);
    s[i] = (std::uint16_t)((n - i) % n);
  }
  return from_generators("D(" + std::to_string(order) + ")", n, {r, s},
                         {FamilyTag::Dihedral, {order}}, guards);
}

FiniteGroup build_quaternion(long long order, const GroupGuards& guards) {
  require(order >= 8 && (order & (order - 1)) == 0, ErrorKind::BadParameters,
          "Q(2^d) needs a 2-power order >= 8");
  long long n = order / 2;  // states a^i b^j, i < n, j < 2
  auto enc = [n](long long i, long long j) { return (std::size_t)(j * n + i); };
  auto mul = [n, enc](std::size_t x, std::size_t y) {
    long long i = (long long)(x % (std::size_t)n), j = (long long)(x / (std::size_t)n);
    long long k = (long long)(y % (std::size_t)n), l = (long long)(y / (std::size_t)n);
    if (j == 0) return enc((i + k) % n, l);
    // b a^k = a^-k b ; b^2 = a^(n/2)
    long long base = ((i - k) % n + n) % n;
    if (l == 0) return enc(base, 1);
    return enc((base + n / 2) % n, 0);
  };
  return from_model("Q(" + std::to_string(order) + ")", order, mul,
                    {enc(1, 0), enc(0, 1)}, {FamilyTag::Quaternion, {order}},
                    guards);
}

FiniteGroup build_semidihedral(long long order, const GroupGuards& guards) {
  require(order >= 16 && (order & (order - 1)) == 0, ErrorKind::BadParameters,
          "SD(2^d) needs a 2-power order >= 16");
  long long n = order / 2;
  long long t = n / 2 - 1;  // b a b^-1 = a^(2^(d-2)-1)
  auto enc = [n](long long i, long long j) { return (std::size_t)(j * n + i); };
  auto mul = [n, t, enc](std::size_t x, std::size_t y) {
    long long i = (long long)(x % (std::size_t)n), j = (long long)(x / (std::size_t)n);
    long long k = (long long)(y % (std::size_t)n), l = (long long)(y / (std::size_t)n);
    long long kk = j == 0 ? k : (k * t) % n;
    return enc(((i + kk) % n + n) % n, (j + l) % 2);
  };
  return from_model("SD(" + std::to_string(order) + ")", order, mul,
                    {enc(1, 0), enc(0, 1)}, {FamilyTag::Semidihedral, {order}},
                    guards);
}

FiniteGroup build_modular(std::uint32_t p, int d, const GroupGuards& guards) {
  require(d >= 3, ErrorKind::BadParameters, "M(p^d) needs d >= 3");
  long long n = ipow(p, d - 1);
  long long twist = 1 + ipow(p, d - 2);  // y x y^-1 = x^(1+p^(d-2))
  auto enc = [n](long long i, long long j) { return (std::size_t)(j * n + i); };
  auto mul = [n, p, twist, enc](std::size_t x, std::size_t y) {
    long long i = (long long)(x % (std::size_t)n), j = (long long)(x / (std::size_t)n);
    long long k = (long long)(y % (std::size_t)n), l = (long long)(y / (std::size_t)n);
    long long tw = 1;
    for (long long a = 0; a < j; ++a) tw = (tw * twist) % n;
    return enc((i + k * tw) % n, (j + l) % p);
  };
  long long order = n * p;
  require((std::size_t)order < guards.order_guard, ErrorKind::OrderGuardExceeded,
          "order guard");
  return from_model("M(" + std::to_string(ipow(p, d)) + ")", order, mul,
                    {enc(1, 0), enc(0, 1)}, {FamilyTag::Modular, {p, d}},
                    guards);
}

FiniteGroup build_extraspecial(std::uint32_t p, const GroupGuards& guards) {
  require(is_prime(p) && p % 2 == 1, ErrorKind::BadParameters,
          "X(p^3) needs odd prime p");
  // Heisenberg group: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a b')
  long long P = p;
  auto enc = [P](long long a, long long b, long long c) {
    return (std::size_t)((a * P + b) * P + c);
  };
  auto mul = [P, enc](std::size_t x, std::size_t y) {
    long long c = (long long)(x % (std::size_t)P), b = (long long)((x / (std::size_t)P) % (std::size_t)P),
              a = (long long)(x / ((std::size_t)P * P));
    long long c2 = (long long)(y % (std::size_t)P), b2 = (long long)((y / (std::size_t)P) % (std::size_t)P),
              a2 = (long long)(y / ((std::size_t)P * P));
    return enc((a + a2) % P, (b + b2) % P, (c + c2 + a * b2) % P);
  };
  return from_model("X(" + std::to_string(ipow(p, 3)) + ")", ipow(p, 3), mul,
                    {enc(1, 0, 0), enc(0, 1, 0)}, {FamilyTag::Extraspecial, {p}},
                    guards);
}

FiniteGroup build_W(std::uint32_t p, int d, const GroupGuards& guards) {
  require(is_prime(p) && p % 2 == 1, ErrorKind::BadParameters,
          "W(p^d) needs odd prime p");
  require(d >= 3, ErrorKind::BadParameters, "W(p^d) needs d >= 3");
  // x^(p^(d-2)) = y^p = z^p = [x,y] = [x,z] = 1, [y,z] = x^(p^(d-3));
  // states (a,b,c) = x^a y^b z^c with z^c y^b' = y^b' z^c x^(-c b' p^(d-3)).
  long long N = ipow(p, d - 2);
  long long t = d == 3 ? 1 : ipow(p, d - 3);
  long long P = p;
  auto enc = [N, P](long long a, long long b, long long c) {
    return (std::size_t)((a * P + b) * P + c);
  };
  auto mul = [N, P, t, enc](std::size_t x, std::size_t y) {
    long long c = (long long)(x % (std::size_t)P), b = (long long)((x / (std::size_t)P) % (std::size_t)P),
              a = (long long)(x / ((std::size_t)P * P));
    long long c2 = (long long)(y % (std::size_t)P), b2 = (long long)((y / (std::size_t)P) % (std::size_t)P),
              a2 = (long long)(y / ((std::size_t)P * P));
    long long shift = ((a + a2 - c * b2 % N * t) % N + N) % N;
    return enc(shift, (b + b2) % P, (c + c2) % P);
  };
  long long order = ipow(p, d);
  require((std::size_t)order < guards.order_guard, ErrorKind::OrderGuardExceeded,
          "order guard");
  return from_model("W(" + std::to_string(order) + ")", order, mul,
                    {enc(1, 0, 0), enc(0, 1, 0), enc(0, 0, 1)},
                    {FamilyTag::CentralProductW, {p, d}}, guards);
}

Perm cycle_perm(std::size_t degree, const std::vector<std::vector<int>>& cycles) {
  Perm g = perm_identity(degree);
  for (const auto& cyc : cycles)
    for (std::size_t i = 0; i < cyc.size(); ++i)
      g[cyc[i]] = (std::uint16_t)cyc[(i + 1) % cyc.size()];
  return g;
}

FiniteGroup build_symmetric(int n, bool alternating, const GroupGuards& guards) {
  require(n >= 1 && n <= 7, ErrorKind::BadParameters, "S(n)/A(n) need 1 <= n <= 7");
  std::vector<Perm> gens;
  if (alternating) {
    if (n <= 2) {
      gens.push_back(perm_identity(std::max(n, 1)));
    } else {
      gens.push_back(cycle_perm(n, {{0, 1, 2}}));
      std::vector<int> cyc;
      if (n % 2 == 1)
        for (int i = 0; i < n; ++i) cyc.push_back(i);
      else
        for (int i = 1; i < n; ++i) cyc.push_back(i);
      gens.push_back(cycle_perm(n, {cyc}));
    }
  } else {
    if (n == 1) {
      gens.push_back(perm_identity(1));
    } else {
      gens.push_back(cycle_perm(n, {{0, 1}}));
      std::vector<int> cyc;
      for (int i = 0; i < n; ++i) cyc.push_back(i);
      gens.push_back(cycle_perm(n, {cyc}));
    }
  }
  std::string name = (alternating ? "A(" : "S(") + std::to_string(n) + ")";
  FiniteGroup G = from_generators(
      name, std::max(n, 1), gens,
      {alternating ? FamilyTag::Alternating : FamilyTag::Symmetric, {n}}, guards);
  std::size_t expect = 1;
  for (int i = 2; i <= n; ++i) expect *= i;
  if (alternating && n >= 3) expect /= 2;
  require(G.order() == expect, ErrorKind::Internal, "wrong symmetric group order");
  return G;
}

FiniteGroup build_sl23(const GroupGuards& guards) {
  // action on the 8 nonzero vectors of F_3^2
  std::vector<std::pair<int, int>> pts;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x || y) pts.push_back({x, y});
  auto idx = [&](int x, int y) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i] == std::pair{x, y}) return i;
    fail(ErrorKind::Internal, "bad point");
  };
  auto mat_perm = [&](int a, int b, int c, int d) {
    Perm g(8);
    for (std::size_t i = 0; i < 8; ++i) {
      auto [x, y] = pts[i];
      g[i] = (std::uint16_t)idx((a * x + b * y) % 3, (c * x + d * y) % 3);
    }
    return g;
  };
  FiniteGroup G =
      from_generators("SL(2,3)", 8, {mat_perm(1, 1, 0, 1), mat_perm(0, 2, 1, 0)},
                      {FamilyTag::SL23, {}}, guards);
  require(G.order() == 24, ErrorKind::Internal, "SL(2,3) order");
  return G;
}

FiniteGroup build_product(const FiniteGroup& A, const FiniteGroup& B,
                          const GroupGuards& guards) {
  require(A.order() * B.order() < guards.order_guard,
          ErrorKind::OrderGuardExceeded, "order guard");
  std::size_t degree = A.degree + B.degree;
  std::vector<Perm> gens;
  for (auto g : A.generators) {
    Perm f = perm_identity(degree);
    for (std::size_t i = 0; i < A.degree; ++i) f[i] = A.elements[g][i];
    gens.push_back(std::move(f));
  }
  for (auto g : B.generators) {
    Perm f = perm_identity(degree);
    for (std::size_t i = 0; i < B.degree; ++i)
      f[A.degree + i] = (std::uint16_t)(A.degree + B.elements[g][i]);
    gens.push_back(std::move(f));
  }
  return from_generators(A.name + "x" + B.name, degree, gens,
                         {FamilyTag::DirectProduct, {}}, guards);
}

}  // namespace

FiniteGroup build_family(const GroupSpec& spec, const GroupGuards& guards) {
  switch (spec.tag) {
    case FamilyTag::Cyclic:
      return build_cyclic(spec.params.at(0), guards);
    case FamilyTag::Abelian: {
      std::vector<long long> as(spec.params.begin() + 1, spec.params.end());
      return build_abelian((std::uint32_t)spec.params.at(0), as, guards);
    }
    case FamilyTag::Dihedral:
      return build_dihedral(spec.params.at(0), guards);
    case FamilyTag::Quaternion:
      return build_quaternion(spec.params.at(0), guards);
    case FamilyTag::Semidihedral:
      return build_semidihedral(spec.params.at(0), guards);
    case FamilyTag::Modular:
      return build_modular((std::uint32_t)spec.params.at(0),
                           (int)spec.params.at(1), guards);
    case FamilyTag::Extraspecial:
      return build_extraspecial((std::uint32_t)spec.params.at(0), guards);
    case FamilyTag::CentralProductW:
      return build_W((std::uint32_t)spec.params.at(0), (int)spec.params.at(1),
                     guards);
    case FamilyTag::Symmetric:
      return build_symmetric((int)spec.params.at(0), false, guards);
    case FamilyTag::Alternating:
      return build_symmetric((int)spec.params.at(0), true, guards);
    case FamilyTag::SL23:
      return build_sl23(guards);
    case FamilyTag::PermGiven: {
      require(!spec.perm_generators.empty(), ErrorKind::BadParameters,
              "Perm[...] needs at least one generator");
      std::size_t degree = spec.perm_generators[0].size();
      for (const auto& g : spec.perm_generators)
        require(g.size() == degree, ErrorKind::BadParameters,
                "Perm generators must share a degree");
      return from_generators("Perm", degree, spec.perm_generators,
                             {FamilyTag::PermGiven, {}}, guards);
    }
    case FamilyTag::DirectProduct: {
      require(spec.factors.size() >= 2, ErrorKind::BadParameters,
              "product needs two factors");
      FiniteGroup G = build_family(*spec.factors[0], guards);
      for (std::size_t i = 1; i < spec.factors.size(); ++i)
        G = build_product(G, build_family(*spec.factors[i], guards), guards);
      return G;
    }
  }
  fail(ErrorKind::UnknownFamily, "unknown family");
}

namespace {

struct SpecParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit SpecParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    require(eat(c), ErrorKind::ParseError,
            std::string("expected '") + c + "' in group spec");
  }
  long long number() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    require(pos > start, ErrorKind::ParseError, "expected number in group spec");
    return std::stoll(s.substr(start, pos - start));
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && std::isalpha((unsigned char)s[pos])) ++pos;
    return s.substr(start, pos - start);
  }

  GroupSpec atom() {
    skip_ws();
    if (pos < s.size() && s[pos] == 'P' && s.compare(pos, 5, "Perm[") == 0) {
      pos += 5;
      return perm_atom();
    }
    std::string id = ident();
    GroupSpec g;
    if (id == "C") {
      expect('(');
      g.tag = FamilyTag::Cyclic;
      g.params = {number()};
      expect(')');
    } else if (id == "Ab") {
      expect('(');
      g.tag = FamilyTag::Abelian;
      g.params = {number()};
      expect(';');
      g.params.push_back(number());
      while (eat(',')) g.params.push_back(number());
      expect(')');
    } else if (id == "D" || id == "Q" || id == "SD") {
      expect('(');
      g.tag = id == "D"   ? FamilyTag::Dihedral
              : id == "Q" ? FamilyTag::Quaternion
                          : FamilyTag::Semidihedral;
      g.params = {number()};
      expect(')');
    } else if (id == "M" || id == "W" || id == "X") {
      expect('(');
      long long n = number();
      expect(')');
      // factor as a prime power
      long long p = 0, d = 0, t = n;
      for (long long q = 2; q * q <= t; ++q)
        if (t % q == 0) {
          p = q;
          break;
        }
      if (p == 0) p = t;
      while (t % p == 0) {
        t /= p;
        ++d;
      }
      require(t == 1, ErrorKind::BadParameters,
              id + "(n) needs a prime power order");
      if (id == "X")
        require(d == 3, ErrorKind::BadParameters, "X(p^3) needs order p^3");
      g.tag = id == "M"   ? FamilyTag::Modular
              : id == "W" ? FamilyTag::CentralProductW
                          : FamilyTag::Extraspecial;
      g.params = id == "X" ? std::vector<long long>{p}
                           : std::vector<long long>{p, d};
    } else if (id == "S" || id == "A") {
      expect('(');
      g.tag = id == "S" ? FamilyTag::Symmetric : FamilyTag::Alternating;
      g.params = {number()};
      expect(')');
    } else if (id == "SL") {
      expect('(');
      long long a = number();
      expect(',');
      long long b = number();
      expect(')');
      require(a == 2 && b == 3, ErrorKind::UnknownFamily, "only SL(2,3) is built in");
      g.tag = FamilyTag::SL23;
    } else {
      fail(ErrorKind::UnknownFamily, "unknown family '" + id + "'");
    }
    return g;
  }

  GroupSpec perm_atom() {
    GroupSpec g;
    g.tag = FamilyTag::PermGiven;
    std::vector<std::vector<std::vector<int>>> gens;
    int max_pt = 0;
    while (true) {
      skip_ws();
      std::vector<std::vector<int>> cycles;
      while (eat('(')) {
        std::vector<int> cyc;
        cyc.push_back((int)number());
        while (eat(',')) cyc.push_back((int)number());
        expect(')');
        for (int& x : cyc) {
          require(x >= 1, ErrorKind::ParseError, "points are 1-based");
          max_pt = std::max(max_pt, x);
          --x;
        }
        cycles.push_back(std::move(cyc));
      }
      require(!cycles.empty(), ErrorKind::ParseError, "expected cycle");
      gens.push_back(std::move(cycles));
      if (!eat(',')) break;
    }
    expect(']');
    for (const auto& cycles : gens)
      g.perm_generators.push_back(cycle_perm(max_pt, cycles));
    return g;
  }

  GroupSpec product() {
    GroupSpec first = atom();
    skip_ws();
    if (pos >= s.size() || s[pos] != 'x') return first;
    GroupSpec prod;
    prod.tag = FamilyTag::DirectProduct;
    prod.factors.push_back(std::make_unique<GroupSpec>(std::move(first)));
    while (eat('x'))
      prod.factors.push_back(std::make_unique<GroupSpec>(atom()));
    return prod;
  }
};

}  // namespace

GroupSpec parse_group_spec(const std::string& text) {
  SpecParser p(text);
  GroupSpec g = p.product();
  p.skip_ws();
  require(p.pos == text.size(), ErrorKind::ParseError,
          "trailing input in group spec: '" + text.substr(p.pos) + "'");
  return g;
}

FiniteGroup build_group(const std::string& spec_text, const GroupGuards& guards) {
  return build_family(parse_group_spec(spec_text), guards);
}

std::vector<ConjClass> conjugacy_classes(const FiniteGroup& G) {
  std::vector<ConjClass> classes;
  std::vector<bool> seen(G.order(), false);
  for (std::size_t i = 0; i < G.order(); ++i) {
    if (seen[i]) continue;
    ConjClass K;
    K.rep = i;
    std::vector<std::size_t> work{i};
    seen[i] = true;
    while (!work.empty()) {
      std::size_t x = work.back();
      work.pop_back();
      K.members.push_back(x);
      for (auto g : G.generators) {
        std::size_t y = G.conj(x, g);
        if (!seen[y]) {
          seen[y] = true;
          work.push_back(y);
        }
      }
    }
    std::sort(K.members.begin(), K.members.end());
    K.size = K.members.size();
    classes.push_back(std::move(K));
  }
  return classes;
}

SubgroupHandle whole_group(const FiniteGroup& G) {
  SubgroupHandle H;
  H.members.resize(G.order());
  std::iota(H.members.begin(), H.members.end(), 0);
  H.order = G.order();
  return H;
}

SubgroupHandle trivial_subgroup(const FiniteGroup& G) {
  return {{G.id_index()}, 1};
}

SubgroupHandle closure(const FiniteGroup& G, std::vector<std::size_t> seed,
                       std::size_t limit) {
  std::set<std::size_t> members{G.id_index()};
  std::vector<std::size_t> work{G.id_index()};
  std::sort(seed.begin(), seed.end());
  std::vector<std::size_t> gens;
  for (auto s : seed)
    if (members.insert(s).second) {
      work.push_back(s);
      gens.push_back(s);
    }
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (auto g : gens) {
      std::size_t y = G.mult(work[i], g);
      if (members.insert(y).second) {
        if (members.size() > limit) return {{}, 0};  // caller rejects
        work.push_back(y);
      }
    }
  }
  SubgroupHandle H;
  H.members.assign(members.begin(), members.end());
  H.order = H.members.size();
  return H;
}

SubgroupHandle centralizer(const FiniteGroup& G, std::size_t x) {
  SubgroupHandle H;
  for (std::size_t g = 0; g < G.order(); ++g)
    if (G.mult(g, x) == G.mult(x, g)) H.members.push_back(g);
  H.order = H.members.size();
  return H;
}

SubgroupHandle centralizer_of_set(const FiniteGroup& G,
                                  const std::vector<std::size_t>& xs) {
  SubgroupHandle H;
  for (std::size_t g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (auto x : xs)
      if (G.mult(g, x) != G.mult(x, g)) {
        ok = false;
        break;
      }
    if (ok) H.members.push_back(g);
  }
  H.order = H.members.size();
  return H;
}

SubgroupHandle sylow_p(const FiniteGroup& G, const SubgroupHandle& H,
                       std::uint32_t p) {
  std::uint64_t target = p_part(H.order, p);
  SubgroupHandle P = trivial_subgroup(G);
  if (target == 1) return P;
  // Greedy closure growth over p-elements in index order; a stalled partial
  // subgroup always extends through its normalizer, so rescanning after each
  // growth step reaches the full p-part.
  bool grew = true;
  while (P.order < target && grew) {
    grew = false;
    for (auto x : H.members) {
      if (x == G.id_index()) continue;
      std::uint64_t ord = G.element_order(x);
      if (p_part(ord, p) != ord) continue;
      if (std::binary_search(P.members.begin(), P.members.end(), x)) continue;
      std::vector<std::size_t> seed = P.members;
      seed.push_back(x);
      SubgroupHandle T = closure(G, seed, target);
      if (T.order != 0 && T.order > P.order && p_part(T.order, p) == T.order) {
        P = std::move(T);
        grew = true;
        break;
      }
    }
  }
  require(P.order == target, ErrorKind::Internal, "Sylow growth stalled");
  return P;
}

SubgroupHandle class_defect_group(const FiniteGroup& G, const ConjClass& K,
                                  std::uint32_t p) {
  auto it = K.defect_groups.find(p);
  if (it != K.defect_groups.end()) return it->second;
  SubgroupHandle D = sylow_p(G, centralizer(G, K.rep), p);
  K.defect_groups.emplace(p, D);
  return D;
}

bool is_subset(const SubgroupHandle& P, const SubgroupHandle& Q) {
  return std::includes(Q.members.begin(), Q.members.end(), P.members.begin(),
                       P.members.end());
}

bool are_conjugate(const FiniteGroup& G, const SubgroupHandle& P,
                   const SubgroupHandle& Q) {
  if (P.order != Q.order) return false;
  if (P.members == Q.members) return true;
  std::vector<std::size_t> img(P.order);
  for (std::size_t g = 0; g < G.order(); ++g) {
    for (std::size_t i = 0; i < P.order; ++i) img[i] = G.conj(P.members[i], g);
    std::sort(img.begin(), img.end());
    if (img == Q.members) return true;
  }
  return false;
}

bool conjugate_into(const FiniteGroup& G, const SubgroupHandle& P,
                    const SubgroupHandle& Q) {
  if (P.order > Q.order) return false;
  if (is_subset(P, Q)) return true;
  std::vector<std::size_t> img(P.order);
  for (std::size_t g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (std::size_t i = 0; i < P.order && ok; ++i) {
      img[i] = G.conj(P.members[i], g);
      ok = std::binary_search(Q.members.begin(), Q.members.end(), img[i]);
    }
    if (ok) return true;
  }
  return false;
}

namespace {

// Abelian invariants from element-order statistics: with q-primary type
// (a_1 >= ... >= a_r), #{x : x^(q^k) = 1} = q^(sum min(a_i, k)).
std::vector<std::uint64_t> abelian_type_of(const FiniteGroup& G,
                                           const std::vector<std::size_t>& members) {
  std::vector<std::uint64_t> type;
  std::uint64_t n = members.size();
  std::vector<std::uint64_t> orders;
  orders.reserve(members.size());
  for (auto x : members) orders.push_back(perm_order(G.elements[x]));
  std::uint64_t rest = n;
  for (std::uint64_t q = 2; q <= rest; ++q) {
    if (rest % q) continue;
    std::vector<int> s;  // s[k] = log_q #{x : x^(q^k) = 1}
    s.push_back(0);
    for (int k = 1;; ++k) {
      std::uint64_t qk = 1;
      for (int i = 0; i < k; ++i) qk *= q;
      std::uint64_t cnt = 0;
      for (auto ord : orders)
        if (ord == p_part(ord, (std::uint32_t)q) && qk % ord == 0) ++cnt;
      int lg = 0;
      while (cnt > 1) {
        cnt /= q;
        ++lg;
      }
      s.push_back(lg);
      if (s[k] == s[k - 1]) break;
    }
    // parts >= k appear s[k] - s[k-1] times
    std::vector<int> parts;
    for (std::size_t k = 1; k < s.size(); ++k) {
      int cnt_k = s[k] - s[k - 1];
      for (std::size_t j = parts.size(); j < (std::size_t)cnt_k; ++j)
        parts.push_back(0);
      for (int j = 0; j < cnt_k; ++j) parts[j] = (int)k;
    }
    for (int a : parts) {
      std::uint64_t qa = 1;
      for (int i = 0; i < a; ++i) qa *= q;
      type.push_back(qa);
    }
    while (rest % q == 0) rest /= q;
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

}  // namespace

GroupInvariants subgroup_invariants(const FiniteGroup& G, const SubgroupHandle& H) {
  GroupInvariants inv;
  // center of H
  for (auto x : H.members) {
    bool central = true;
    for (auto y : H.members)
      if (G.mult(x, y) != G.mult(y, x)) {
        central = false;
        break;
      }
    if (central) inv.center.members.push_back(x);
  }
  inv.center.order = inv.center.members.size();
  std::uint64_t e = 1;
  for (auto x : H.members) e = std::lcm(e, perm_order(G.elements[x]));
  inv.exponent = e;
  inv.is_abelian = inv.center.order == H.order;
  // derived subgroup: normal closure of commutators
  std::set<std::size_t> comms;
  for (auto x : H.members)
    for (auto y : H.members)
      comms.insert(G.mult(G.mult(G.inverse(x), G.inverse(y)), G.mult(x, y)));
  std::vector<std::size_t> seed(comms.begin(), comms.end());
  inv.derived = closure(G, seed);
  if (inv.is_abelian)
    inv.abelian_type = abelian_type_of(G, H.members);
  return inv;
}

GroupInvariants group_invariants(const FiniteGroup& G) {
  return subgroup_invariants(G, whole_group(G));
}

SubgroupHandle subgroup_center(const FiniteGroup& G, const SubgroupHandle& H) {
  SubgroupHandle Z;
  for (auto x : H.members) {
    bool central = true;
    for (auto y : H.members)
      if (G.mult(x, y) != G.mult(y, x)) {
        central = false;
        break;
      }
    if (central) Z.members.push_back(x);
  }
  Z.order = Z.members.size();
  return Z;
}

FiniteGroup subgroup_as_group(const FiniteGroup& G, const SubgroupHandle& H,
                              const std::string& name,
                              std::vector<std::size_t>* corr) {
  FiniteGroup S;
  S.name = name;
  S.degree = H.order;
  S.family = {FamilyTag::PermGiven, {}};
  std::unordered_map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < H.order; ++i) pos[H.members[i]] = i;
  require(pos.count(G.id_index()), ErrorKind::BadParameters,
          "subgroup must contain the identity");
  // regular action, reindexed so the identity lands at 0
  std::size_t id_pos = pos.at(G.id_index());
  std::vector<std::size_t> perm_order_map(H.order);
  perm_order_map[0] = id_pos;
  std::size_t w = 1;
  for (std::size_t i = 0; i < H.order; ++i)
    if (i != id_pos) perm_order_map[w++] = i;
  std::vector<std::size_t> newpos(H.order);
  for (std::size_t i = 0; i < H.order; ++i) newpos[perm_order_map[i]] = i;
  if (corr) {
    corr->resize(H.order);
    for (std::size_t i = 0; i < H.order; ++i)
      (*corr)[i] = H.members[perm_order_map[i]];
  }
  S.elements.resize(H.order);
  for (std::size_t i = 0; i < H.order; ++i) {
    std::size_t g = H.members[perm_order_map[i]];
    Perm pi(H.order);
    for (std::size_t j = 0; j < H.order; ++j) {
      std::size_t prod = G.mult(g, H.members[perm_order_map[j]]);
      auto it = pos.find(prod);
      require(it != pos.end(), ErrorKind::BadParameters,
              "member set is not closed under multiplication");
      pi[j] = (std::uint16_t)newpos[it->second];
    }
    S.elements[i] = std::move(pi);
  }
  // small generating set by greedy closure growth
  std::vector<std::size_t> gens;
  {
    FiniteGroup tmp = S;
    tmp.generators.clear();
    tmp.finalize();
    SubgroupHandle cur = trivial_subgroup(tmp);
    for (std::size_t i = 1; i < tmp.order(); ++i) {
      if (std::binary_search(cur.members.begin(), cur.members.end(), i)) continue;
      gens.push_back(i);
      auto seed = cur.members;
      seed.push_back(i);
      cur = closure(tmp, seed);
      if (cur.order == tmp.order()) break;
    }
  }
  if (gens.empty()) gens.push_back(0);
  S.generators = gens;
  S.finalize();
  return S;
}

}  // namespace bc
