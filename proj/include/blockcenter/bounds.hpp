#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "blockcenter/error.hpp"

namespace bc {

using Rational = boost::rational<long long>;

std::string rational_str(const Rational& r);

enum class WFlag { absent, presumed, constructed };

// Everything the inequalities consume, decoupled from how a block was found.
struct BlockProfile {
  std::uint32_t p = 2;
  int d = 0;  // |D| = p^d
  int e = 0;  // exp(D) = p^e
  bool abelian = true;
  std::optional<std::vector<int>> abelian_type;  // exponents a_1 >= ... >= a_s
  bool cyclic = true;
  int LL = 1;
  std::optional<long long> lB;
  std::optional<bool> nilpotent;
  WFlag w_flag = WFlag::absent;

  long long d_order() const;
};

long long int_pow(long long b, long long e);

// LL(ZB) <= |D| - |D|/exp(D) + 1
long long otokita_bound(const BlockProfile& pr);
// LL(FD) = sum p^(a_i) - s + 1 for abelian D
long long abelian_LLFD(const BlockProfile& pr);

struct NonabelianBound {
  Rational min_bound;                 // min{p^(d-1), 4 p^(d-2)}, strict
  std::optional<long long> sub_3p;    // 3 p^(d-2), strict, when the W flag is absent
  std::string case_tag;
};
NonabelianBound nonabelian_bound(const BlockProfile& pr);

// LL(ZB) <= p^(d-1) + p - 1 for non-cyclic D
long long noncyclic_bound(const BlockProfile& pr);

// (d/e + 1)(d/2 + 1/(p-1))(p^e - 1), and the simple form d^2 p^e
Rational exp_bound(const BlockProfile& pr);
long long exp_bound_simple(const BlockProfile& pr);

// alpha/beta refinement for non-abelian defect groups, exact integer
long long refined_bound(const BlockProfile& pr);

// (p^d - 1)/l(B) + 1, compared as an equality with the measured LL
long long cyclic_equality(const BlockProfile& pr);

// 2^(d-2)+1 for p = 2, p^(d-2) for p > 2, when exp(D) = p^(d-1), non-abelian
long long coexp_bound(const BlockProfile& pr);

enum class ClassifyCase { BelowThreshold, Cyclic, CpTimesCp, KleinCube };
// blocks with LL >= min{p^(d-1), 4 p^(d-2)} must be one of the three listed
// shapes; anything else aborts loudly (ClassificationViolated)
ClassifyCase classify(const BlockProfile& pr);
std::string classify_name(ClassifyCase c);

struct BoundEval {
  std::string name;
  bool applicable = false;
  std::string value;     // exact integer or rational, as text
  bool strict = false;   // strict inequality vs non-strict
  bool equality = false; // compared as equality
  bool satisfied = true; // vacuously true when not applicable
};

struct BoundReport {
  std::vector<BoundEval> bounds;
  bool all_satisfied = true;
  bool extremal = false;  // non-abelian, p > 2, LL > p^(d-2)
  std::string classify_case;
};

BoundReport evaluate_bounds(const BlockProfile& pr);

}  // namespace bc
