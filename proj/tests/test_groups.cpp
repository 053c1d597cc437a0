#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "blockcenter/groups.hpp"

using namespace bc;

namespace {

// brute-force oracle: conjugate by every group element
std::vector<std::set<std::size_t>> classes_oracle(const FiniteGroup& G) {
  std::vector<std::set<std::size_t>> out;
  std::vector<bool> seen(G.order(), false);
  for (std::size_t x = 0; x < G.order(); ++x) {
    if (seen[x]) continue;
    std::set<std::size_t> cls;
    for (std::size_t g = 0; g < G.order(); ++g) cls.insert(G.conj(x, g));
    for (auto y : cls) seen[y] = true;
    out.push_back(std::move(cls));
  }
  return out;
}

std::multiset<std::size_t> class_sizes(const FiniteGroup& G) {
  std::multiset<std::size_t> s;
  for (const auto& K : conjugacy_classes(G)) s.insert(K.size);
  return s;
}

std::size_t count_involutions(const FiniteGroup& G) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < G.order(); ++i)
    if (i != G.id_index() && G.element_order(i) == 2) ++n;
  return n;
}

}  // namespace

TEST_CASE("family constructions") {
  FiniteGroup Q8 = build_group("Q(8)");
  CHECK(Q8.order() == 8);
  CHECK(count_involutions(Q8) == 1);  // defining property of generalized quaternion
  FiniteGroup Q16 = build_group("Q(16)");
  CHECK(Q16.order() == 16);
  CHECK(count_involutions(Q16) == 1);

  FiniteGroup W = build_group("W(81)");
  CHECK(W.order() == 81);
  auto inv = group_invariants(W);
  CHECK(inv.exponent == 9);
  CHECK(!inv.is_abelian);
  CHECK(inv.center.order == 9);
  // relations: x^(p^(d-2)) = y^p = z^p = [x,y] = [x,z] = 1, [y,z] = x^(p^(d-3))
  std::size_t x = W.generators[0], y = W.generators[1], z = W.generators[2];
  CHECK(W.element_order(x) == 9);
  CHECK(W.element_order(y) == 3);
  CHECK(W.element_order(z) == 3);
  auto comm = [&](std::size_t a, std::size_t b) {
    return W.mult(W.mult(W.inverse(a), W.inverse(b)), W.mult(a, b));
  };
  CHECK(comm(x, y) == W.id_index());
  CHECK(comm(x, z) == W.id_index());
  std::size_t x3 = W.mult(W.mult(x, x), x);
  CHECK(comm(y, z) == x3);
  // derived subgroup has order p and sits inside the center
  CHECK(inv.derived.order == 3);
  CHECK(is_subset(inv.derived, inv.center));

  FiniteGroup Ab = build_group("Ab(3;2,1)");
  CHECK(Ab.order() == 27);
  auto ainv = group_invariants(Ab);
  CHECK(ainv.is_abelian);
  CHECK(ainv.exponent == 9);
  CHECK(*ainv.abelian_type == std::vector<std::uint64_t>{9, 3});

  CHECK(build_group("C(9)xC(3)").order() == 27);
  CHECK(build_group("SL(2,3)").order() == 24);
  CHECK(build_group("X(27)").order() == 27);
  CHECK(build_group("M(27)").order() == 27);
  CHECK(build_group("SD(16)").order() == 16);
  CHECK(build_group("A(4)").order() == 12);
  CHECK(build_group("Perm[(1,2)(3,4), (1,3)]").order() == 8);

  CHECK_THROWS_AS(build_group("SD(8)"), Error);       // BadParameters
  CHECK_THROWS_AS(build_group("Foo(3)"), Error);      // UnknownFamily
  CHECK_THROWS_AS(build_group("C(20000)"), Error);    // OrderGuardExceeded
  CHECK_THROWS_AS(build_group("C(3)y"), Error);       // trailing garbage
}

TEST_CASE("group laws sampled") {
  for (const char* spec : {"S(4)", "Q(16)", "W(81)", "M(27)", "SL(2,3)"}) {
    FiniteGroup G = build_group(spec);
    std::mt19937_64 rng(G.order());
    std::uniform_int_distribution<std::size_t> d(0, G.order() - 1);
    for (int t = 0; t < 1000; ++t) {
      std::size_t a = d(rng), b = d(rng), c = d(rng);
      CHECK(G.mult(G.mult(a, b), c) == G.mult(a, G.mult(b, c)));
    }
    for (std::size_t a = 0; a < G.order(); ++a) {
      CHECK(G.mult(a, G.id_index()) == a);
      CHECK(G.mult(a, G.inverse(a)) == G.id_index());
    }
  }
}

TEST_CASE("conjugacy classes") {
  FiniteGroup S4 = build_group("S(4)");
  auto cls = conjugacy_classes(S4);
  CHECK(cls.size() == 5);
  CHECK(class_sizes(S4) == std::multiset<std::size_t>{1, 3, 6, 6, 8});
  // against the all-elements oracle
  auto oracle = classes_oracle(S4);
  REQUIRE(oracle.size() == cls.size());
  for (std::size_t i = 0; i < cls.size(); ++i) {
    std::set<std::size_t> got(cls[i].members.begin(), cls[i].members.end());
    CHECK(got == oracle[i]);
    CHECK(cls[i].rep == *oracle[i].begin());
  }
  // class equation
  std::size_t total = 0;
  for (const auto& K : cls) {
    total += K.size;
    CHECK(S4.order() % K.size == 0);
    CHECK(S4.order() / centralizer(S4, K.rep).order == K.size);
  }
  CHECK(total == S4.order());

  CHECK(class_sizes(build_group("C(5)")) == std::multiset<std::size_t>{1, 1, 1, 1, 1});
  CHECK(class_sizes(build_group("Q(8)")) == std::multiset<std::size_t>{1, 1, 2, 2, 2});
}

TEST_CASE("centralizers") {
  FiniteGroup S3 = build_group("S(3)");
  CHECK(centralizer(S3, S3.id_index()).order == 6);
  // a transposition: order-2 element
  for (std::size_t x = 0; x < S3.order(); ++x)
    if (S3.element_order(x) == 2) CHECK(centralizer(S3, x).order == 2);
  FiniteGroup A = build_group("Ab(3;1,1)");
  for (std::size_t x = 0; x < A.order(); ++x)
    CHECK(centralizer(A, x).order == A.order());
}

TEST_CASE("sylow subgroups") {
  FiniteGroup S4 = build_group("S(4)");
  SubgroupHandle P = sylow_p(S4, whole_group(S4), 2);
  CHECK(P.order == 8);
  auto pinv = subgroup_invariants(S4, P);
  CHECK(!pinv.is_abelian);         // D_8
  CHECK(pinv.exponent == 4);
  CHECK(sylow_p(S4, whole_group(S4), 3).order == 3);
  CHECK(sylow_p(S4, whole_group(S4), 5).order == 1);

  FiniteGroup C12 = build_group("C(12)");
  CHECK(sylow_p(C12, whole_group(C12), 3).order == 3);
  CHECK(sylow_p(C12, whole_group(C12), 2).order == 4);

  // Sylow order equals the exact p-part, a few more groups
  for (const char* spec : {"SL(2,3)", "S(5)", "A(5)", "D(32)"}) {
    FiniteGroup G = build_group(spec);
    for (std::uint32_t p : {2u, 3u, 5u}) {
      SubgroupHandle S = sylow_p(G, whole_group(G), p);
      CHECK(S.order == p_part(G.order(), p));
    }
  }
}

TEST_CASE("class defect groups") {
  FiniteGroup S4 = build_group("S(4)");
  auto cls = conjugacy_classes(S4);
  // identity class: full Sylow
  CHECK(class_defect_group(S4, cls[0], 2).order == 8);
  for (const auto& K : cls) {
    std::size_t ord = S4.element_order(K.rep);
    if (K.size == 3) CHECK(class_defect_group(S4, K, 2).order == 8);  // (12)(34)
    if (ord == 3) CHECK(class_defect_group(S4, K, 2).order == 1);     // 3-cycles
  }
  // rep-independence: same order and conjugate for random members
  std::mt19937_64 rng(7);
  for (const auto& K : cls) {
    SubgroupHandle D0 = class_defect_group(S4, K, 2);
    for (int t = 0; t < 3; ++t) {
      std::size_t x = K.members[rng() % K.members.size()];
      SubgroupHandle Dx = sylow_p(S4, centralizer(S4, x), 2);
      CHECK(Dx.order == D0.order);
      CHECK(are_conjugate(S4, D0, Dx));
    }
  }
}

TEST_CASE("subgroup conjugacy") {
  FiniteGroup S4 = build_group("S(4)");
  SubgroupHandle P = sylow_p(S4, whole_group(S4), 2);
  CHECK(are_conjugate(S4, P, P));
  CHECK(!are_conjugate(S4, P, trivial_subgroup(S4)));

  // the normal Klein four group vs a non-normal one
  std::vector<std::size_t> dts, t12;
  for (std::size_t x = 0; x < S4.order(); ++x) {
    const Perm& p = S4.elements[x];
    bool moves_all = true;
    for (std::size_t i = 0; i < 4; ++i) moves_all &= p[i] != i;
    if (S4.element_order(x) == 2 && moves_all) dts.push_back(x);
    bool fix23 = p[2] == 2 && p[3] == 3;      // supported on {0,1}
    bool fix01 = p[0] == 0 && p[1] == 1;      // supported on {2,3}
    if (S4.element_order(x) == 2 && (fix23 || fix01)) t12.push_back(x);
  }
  REQUIRE(dts.size() == 3);
  SubgroupHandle V = closure(S4, dts);
  REQUIRE(t12.size() == 2);
  std::vector<std::size_t> seed = t12;
  SubgroupHandle V2 = closure(S4, seed);
  REQUIRE(V.order == 4);
  REQUIRE(V2.order == 4);
  CHECK(!are_conjugate(S4, V, V2));
  CHECK(conjugate_into(S4, V2, sylow_p(S4, whole_group(S4), 2)));
}

TEST_CASE("group invariants") {
  auto d16 = group_invariants(build_group("D(16)"));
  CHECK(d16.exponent == 8);
  CHECK(d16.center.order == 2);
  CHECK(d16.derived.order == 4);

  auto ab2 = group_invariants(build_group("Ab(2;1,1)"));
  CHECK(*ab2.abelian_type == std::vector<std::uint64_t>{2, 2});

  auto c8 = group_invariants(build_group("C(8)"));
  CHECK(c8.abelian_type == std::vector<std::uint64_t>{8});

  // mixed-prime abelian type, prime powers in decreasing order
  auto c12 = group_invariants(build_group("C(12)"));
  CHECK(*c12.abelian_type == std::vector<std::uint64_t>{4, 3});
}

TEST_CASE("subgroup as group") {
  FiniteGroup S4 = build_group("S(4)");
  SubgroupHandle P = sylow_p(S4, whole_group(S4), 2);
  FiniteGroup D8 = subgroup_as_group(S4, P, "D8");
  CHECK(D8.order() == 8);
  auto inv = group_invariants(D8);
  CHECK(!inv.is_abelian);
  CHECK(inv.exponent == 4);
  CHECK(inv.center.order == 2);
  CHECK(class_sizes(D8) == std::multiset<std::size_t>{1, 1, 2, 2, 2});
}
