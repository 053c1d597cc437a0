#include "blockcenter/bounds.hpp"

#include <algorithm>

namespace bc {

long long int_pow(long long b, long long e) {
  long long r = 1;
  while (e-- > 0) {
    require(r < (1ll << 56) / std::max(b, 1ll), ErrorKind::BadParameters,
            "power overflow in bound arithmetic");
    r *= b;
  }
  return r;
}

long long BlockProfile::d_order() const { return int_pow(p, d); }

std::string rational_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

long long otokita_bound(const BlockProfile& pr) {
  if (pr.d == 0) return 1;
  return int_pow(pr.p, pr.d) - int_pow(pr.p, pr.d - pr.e) + 1;
}

long long abelian_LLFD(const BlockProfile& pr) {
  require(pr.abelian && pr.abelian_type.has_value(), ErrorKind::NotApplicable,
          "abelian_LLFD needs an abelian profile");
  long long s = 0;
  for (int a : *pr.abelian_type) s += int_pow(pr.p, a) - 1;
  return s + 1;
}

NonabelianBound nonabelian_bound(const BlockProfile& pr) {
  require(!pr.abelian, ErrorKind::NotApplicable,
          "nonabelian_bound needs a non-abelian profile");
  NonabelianBound out;
  Rational pd1(int_pow(pr.p, pr.d), pr.p);           // p^(d-1)
  Rational pd2(4 * int_pow(pr.p, pr.d), (long long)pr.p * pr.p);  // 4 p^(d-2)
  out.min_bound = std::min(pd1, pd2);
  out.case_tag = pd1 <= pd2 ? "p^(d-1)" : "4p^(d-2)";
  if (pr.w_flag == WFlag::absent) out.sub_3p = 3 * int_pow(pr.p, pr.d - 2);
  return out;
}

long long noncyclic_bound(const BlockProfile& pr) {
  require(!pr.cyclic, ErrorKind::NotApplicable,
          "noncyclic_bound needs a non-cyclic profile");
  return int_pow(pr.p, pr.d - 1) + pr.p - 1;
}

Rational exp_bound(const BlockProfile& pr) {
  require(pr.d >= 1, ErrorKind::ZeroDefect, "exp_bound needs d >= 1");
  Rational de((long long)pr.d, pr.e);
  Rational half((long long)pr.d, 2);
  Rational inv(1, (long long)pr.p - 1);
  return (de + 1) * (half + inv) * Rational(int_pow(pr.p, pr.e) - 1);
}

long long exp_bound_simple(const BlockProfile& pr) {
  require(pr.d >= 1, ErrorKind::ZeroDefect, "exp_bound needs d >= 1");
  return (long long)pr.d * pr.d * int_pow(pr.p, pr.e);
}

long long refined_bound(const BlockProfile& pr) {
  require(!pr.abelian && pr.d >= 2, ErrorKind::NotApplicable,
          "refined_bound needs a non-abelian profile with d >= 2");
  long long alpha = (pr.d - 1) / pr.e;
  long long beta = (pr.d - 2) / pr.e;
  long long pe1 = int_pow(pr.p, pr.e) - 1;
  Rational inner = Rational((long long)pr.e * (alpha - 1), 2) +
                   Rational(1, (long long)pr.p - 1) +
                   Rational(pr.d - alpha * pr.e);
  Rational total = Rational(alpha * pe1) * inner + Rational(beta * pe1) +
                   Rational(int_pow(pr.p, pr.d - alpha * pr.e) - 1,
                            (long long)pr.p - 1) +
                   Rational(int_pow(pr.p, pr.d - 2 - beta * pr.e));
  require(total.denominator() == 1, ErrorKind::Internal,
          "refined bound must be an integer");
  return total.numerator();
}

long long cyclic_equality(const BlockProfile& pr) {
  require(pr.cyclic, ErrorKind::NotApplicable, "cyclic_equality needs cyclic D");
  require(pr.lB.has_value(), ErrorKind::MissingAnnotation,
          "cyclic_equality needs the l(B) annotation");
  long long l = *pr.lB;
  require(l >= 1 && ((long long)pr.p - 1) % l == 0, ErrorKind::DivisibilityViolated,
          "l(B) must divide p - 1");
  long long pd = int_pow(pr.p, pr.d);
  require((pd - 1) % l == 0, ErrorKind::DivisibilityViolated,
          "l(B) must divide p^d - 1");
  long long v = (pd - 1) / l + 1;
  require(v > int_pow(pr.p, pr.d - 1) || pr.d == 0, ErrorKind::Internal,
          "cyclic equality value not above p^(d-1)");
  return v;
}

long long coexp_bound(const BlockProfile& pr) {
  require(!pr.abelian && pr.e == pr.d - 1, ErrorKind::NotApplicable,
          "coexp_bound needs a non-abelian profile with e = d - 1");
  return pr.p == 2 ? int_pow(2, pr.d - 2) + 1 : int_pow(pr.p, pr.d - 2);
}

ClassifyCase classify(const BlockProfile& pr) {
  Rational pd1(int_pow(pr.p, pr.d), pr.p);
  Rational pd2(4 * int_pow(pr.p, pr.d), (long long)pr.p * pr.p);
  if (Rational(pr.LL) < std::min(pd1, pd2)) return ClassifyCase::BelowThreshold;
  if (pr.cyclic) return ClassifyCase::Cyclic;
  if (pr.abelian && pr.abelian_type &&
      *pr.abelian_type == std::vector<int>{pr.d - 1, 1})
    return ClassifyCase::CpTimesCp;
  if (pr.p == 2 && pr.abelian && pr.abelian_type &&
      *pr.abelian_type == std::vector<int>{1, 1, 1} && pr.nilpotent &&
      *pr.nilpotent)
    return ClassifyCase::KleinCube;
  fail(ErrorKind::ClassificationViolated,
       "block with LL above threshold outside the classification");
}

std::string classify_name(ClassifyCase c) {
  switch (c) {
    case ClassifyCase::BelowThreshold: return "below threshold";
    case ClassifyCase::Cyclic: return "cyclic";
    case ClassifyCase::CpTimesCp: return "C_{p^{d-1}} x C_p";
    case ClassifyCase::KleinCube: return "C_2 x C_2 x C_2, nilpotent";
  }
  return "?";
}

BoundReport evaluate_bounds(const BlockProfile& pr) {
  BoundReport rep;
  auto push = [&](std::string name, bool applicable, Rational value, bool strict,
                  bool equality = false) {
    BoundEval ev;
    ev.name = std::move(name);
    ev.applicable = applicable;
    ev.strict = strict;
    ev.equality = equality;
    if (applicable) {
      ev.value = rational_str(value);
      Rational ll(pr.LL);
      ev.satisfied = equality ? ll == value : (strict ? ll < value : ll <= value);
    }
    rep.all_satisfied &= ev.satisfied;
    rep.bounds.push_back(std::move(ev));
  };

  push("otokita", true, Rational(otokita_bound(pr)), false);
  push("abelian_LLFD", pr.abelian, pr.abelian ? Rational(abelian_LLFD(pr)) : 0,
       false);
  if (!pr.abelian) {
    NonabelianBound nb = nonabelian_bound(pr);
    push("nonabelian_min", true, nb.min_bound, true);
    push("nonabelian_3p", nb.sub_3p.has_value(),
         nb.sub_3p ? Rational(*nb.sub_3p) : 0, true);
  } else {
    push("nonabelian_min", false, 0, true);
    push("nonabelian_3p", false, 0, true);
  }
  push("noncyclic", !pr.cyclic, !pr.cyclic ? Rational(noncyclic_bound(pr)) : 0,
       false);
  push("exp", pr.d >= 1, pr.d >= 1 ? exp_bound(pr) : 0, false);
  push("exp_simple", pr.d >= 1, pr.d >= 1 ? Rational(exp_bound_simple(pr)) : 0,
       false);
  push("refined", !pr.abelian && pr.d >= 2,
       (!pr.abelian && pr.d >= 2) ? Rational(refined_bound(pr)) : 0, false);
  push("coexp", !pr.abelian && pr.e == pr.d - 1,
       (!pr.abelian && pr.e == pr.d - 1) ? Rational(coexp_bound(pr)) : 0, false);
  push("cyclic_equality", pr.cyclic && pr.lB.has_value(),
       (pr.cyclic && pr.lB.has_value()) ? Rational(cyclic_equality(pr)) : 0,
       false, true);

  rep.extremal =
      !pr.abelian && pr.p > 2 && pr.LL > int_pow(pr.p, pr.d - 2);
  rep.classify_case = classify_name(classify(pr));
  return rep;
}

}  // namespace bc
