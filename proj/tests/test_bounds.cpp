#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "blockcenter/bounds.hpp"

using namespace bc;

namespace {

BlockProfile prof(std::uint32_t p, int d, int e) {
  BlockProfile pr;
  pr.p = p;
  pr.d = d;
  pr.e = e;
  pr.abelian = false;
  pr.cyclic = false;
  return pr;
}

BlockProfile abelian_prof(std::uint32_t p, std::vector<int> type) {
  BlockProfile pr;
  pr.p = p;
  pr.d = 0;
  for (int a : type) pr.d += a;
  pr.e = type.empty() ? 0 : type.front();
  pr.abelian = true;
  pr.abelian_type = type;
  pr.cyclic = type.size() <= 1;
  return pr;
}

}  // namespace

TEST_CASE("otokita") {
  CHECK(otokita_bound(prof(2, 3, 2)) == 7);
  CHECK(otokita_bound(prof(3, 1, 1)) == 3);
  CHECK(otokita_bound(prof(2, 3, 3)) == 8);
  CHECK(otokita_bound(prof(5, 0, 0)) == 1);
}

TEST_CASE("abelian LLFD") {
  CHECK(abelian_LLFD(abelian_prof(3, {2, 1})) == 11);   // type (9,3)
  CHECK(abelian_LLFD(abelian_prof(5, {1})) == 5);       // type (p)
  CHECK(abelian_LLFD(abelian_prof(2, {1, 1, 1})) == 4); // C_2 x C_2 x C_2
  CHECK_THROWS_AS(abelian_LLFD(prof(2, 3, 2)), Error);
}

TEST_CASE("nonabelian bound") {
  auto b23 = nonabelian_bound(prof(2, 3, 2));
  CHECK(b23.min_bound == Rational(4));
  CHECK(*b23.sub_3p == 6);
  CHECK(nonabelian_bound(prof(3, 4, 2)).min_bound == Rational(27));
  CHECK(nonabelian_bound(prof(5, 3, 2)).min_bound == Rational(20));
  // the W flag suppresses the 3p^(d-2) refinement
  BlockProfile w = prof(5, 3, 2);
  w.w_flag = WFlag::constructed;
  CHECK(!nonabelian_bound(w).sub_3p.has_value());
  CHECK_THROWS_AS(nonabelian_bound(abelian_prof(2, {1, 1})), Error);
}

TEST_CASE("noncyclic bound") {
  CHECK(noncyclic_bound(prof(3, 2, 1)) == 5);
  CHECK(noncyclic_bound(abelian_prof(2, {1, 1})) == 3);
  CHECK(noncyclic_bound(prof(2, 3, 2)) == 5);
  BlockProfile cyc = abelian_prof(3, {2});
  CHECK_THROWS_AS(noncyclic_bound(cyc), Error);
}

TEST_CASE("exponent bounds") {
  CHECK(exp_bound(prof(2, 3, 2)) == Rational(75, 4));  // 18.75
  CHECK(exp_bound_simple(prof(2, 3, 2)) == 36);
  // (p,1,1): the bound simplifies to p + 1 >= p = LL
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u}) {
    BlockProfile pr = abelian_prof(p, {1});
    CHECK(exp_bound(pr) == Rational(p + 1));
    CHECK(exp_bound(pr) >= Rational(p));
  }
  BlockProfile d0 = abelian_prof(2, {});
  CHECK_THROWS_AS(exp_bound(d0), Error);
  CHECK_THROWS_AS(exp_bound_simple(d0), Error);
}

TEST_CASE("refined bound") {
  CHECK(refined_bound(prof(2, 4, 2)) == 16);  // alpha=1, beta=1
  CHECK(refined_bound(prof(3, 3, 1)) == 12);  // alpha=2, beta=1
  CHECK(refined_bound(prof(2, 4, 3)) == 19);  // alpha=1, beta=0
  CHECK_THROWS_AS(refined_bound(abelian_prof(2, {2, 1})), Error);
}

TEST_CASE("cyclic equality") {
  BlockProfile s3 = abelian_prof(3, {1});
  s3.lB = 2;
  CHECK(cyclic_equality(s3) == 2);
  BlockProfile c8 = abelian_prof(2, {3});
  c8.lB = 1;
  CHECK(cyclic_equality(c8) == 8);
  BlockProfile c9 = abelian_prof(3, {2});
  c9.lB = 1;
  CHECK(cyclic_equality(c9) == 9);
  BlockProfile missing = abelian_prof(3, {1});
  CHECK_THROWS_AS(cyclic_equality(missing), Error);
  BlockProfile bad = abelian_prof(3, {1});
  bad.lB = 4;  // does not divide p - 1
  CHECK_THROWS_AS(cyclic_equality(bad), Error);
}

TEST_CASE("coexp bound") {
  CHECK(coexp_bound(prof(2, 4, 3)) == 5);
  CHECK(coexp_bound(prof(3, 3, 2)) == 3);
  CHECK(coexp_bound(prof(2, 3, 2)) == 3);
  CHECK_THROWS_AS(coexp_bound(prof(2, 4, 2)), Error);  // e != d-1
}

TEST_CASE("classification") {
  // nilpotent block with D = C_9 x C_3: LL = 11 >= min(9,12) -> case (ii)
  BlockProfile a = abelian_prof(3, {2, 1});
  a.LL = 11;
  a.nilpotent = true;
  CHECK(classify(a) == ClassifyCase::CpTimesCp);

  BlockProfile c8 = abelian_prof(2, {3});
  c8.LL = 8;
  c8.nilpotent = true;
  CHECK(classify(c8) == ClassifyCase::Cyclic);  // 8 >= min(4,8)

  BlockProfile d8 = prof(2, 3, 2);
  d8.LL = 2;
  CHECK(classify(d8) == ClassifyCase::BelowThreshold);  // 2 < 4

  BlockProfile v8 = abelian_prof(2, {1, 1, 1});
  v8.LL = 4;
  v8.nilpotent = true;
  CHECK(classify(v8) == ClassifyCase::KleinCube);

  // a profile violating the classification aborts loudly
  BlockProfile bad = abelian_prof(3, {1, 1, 1});
  bad.LL = 100;
  CHECK_THROWS_AS(classify(bad), Error);
}

TEST_CASE("bound report") {
  BlockProfile pr = prof(2, 3, 2);  // a D_8-shaped block
  pr.LL = 2;
  BoundReport rep = evaluate_bounds(pr);
  CHECK(rep.all_satisfied);
  CHECK(!rep.extremal);
  CHECK(rep.classify_case == "below threshold");
  for (const auto& ev : rep.bounds) {
    if (ev.name == "exp" && ev.applicable) CHECK(ev.value == "75/4");
    if (ev.name == "nonabelian_min") CHECK(ev.applicable);
    if (ev.name == "abelian_LLFD") CHECK(!ev.applicable);
  }
  // rational value printed exactly, never floating point
  BlockProfile odd = prof(3, 4, 1);
  odd.LL = 5;
  for (const auto& ev : evaluate_bounds(odd).bounds)
    if (ev.applicable) CHECK(ev.value.find('.') == std::string::npos);
}
