#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "blockcenter/error.hpp"

namespace bc {

// Permutation on 0..degree-1; composition is compose(a,b)(x) = a[b[x]]
// ("apply b, then a") throughout.
using Perm = std::vector<std::uint16_t>;

Perm perm_identity(std::size_t degree);
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
std::uint64_t perm_order(const Perm& a);

struct PermHash {
  std::size_t operator()(const Perm& p) const;
};

enum class FamilyTag {
  Cyclic, Abelian, Dihedral, Quaternion, Semidihedral, Modular,
  Extraspecial, CentralProductW, Symmetric, Alternating, SL23,
  DirectProduct, PermGiven,
};

struct FamilyInfo {
  FamilyTag tag = FamilyTag::PermGiven;
  std::vector<long long> params;  // family-specific (e.g. {p, d})
};

struct GroupGuards {
  std::size_t order_guard = 10'000;
};

// Explicit small group: every element stored as a permutation, identity at
// index 0, all derived data computed by enumeration.
struct FiniteGroup {
  std::string name;
  std::size_t degree = 0;
  std::vector<Perm> elements;
  std::vector<std::size_t> generators;  // element indices
  FamilyInfo family;

  std::size_t order() const { return elements.size(); }
  std::size_t id_index() const { return 0; }
  std::size_t index_of(const Perm& p) const;
  std::size_t mult(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const;
  std::size_t conj(std::size_t x, std::size_t g) const;  // g^-1 x g
  std::uint64_t element_order(std::size_t a) const;
  bool is_abelian() const;

  // internal caches; built on demand
  void finalize();
  std::unordered_map<Perm, std::size_t, PermHash> index_;
  std::vector<std::uint16_t> table_;  // full mult table if order small
  std::vector<std::size_t> inv_;
};

struct SubgroupHandle {
  std::vector<std::size_t> members;  // sorted element indices
  std::size_t order = 0;
  bool operator==(const SubgroupHandle&) const = default;
};

struct ConjClass {
  std::size_t rep = 0;
  std::vector<std::size_t> members;  // sorted
  std::size_t size = 0;
  mutable std::map<std::uint32_t, SubgroupHandle> defect_groups;  // per-prime cache
};

struct GroupInvariants {
  SubgroupHandle center;
  std::uint64_t exponent = 1;
  SubgroupHandle derived;
  bool is_abelian = false;
  std::optional<std::vector<std::uint64_t>> abelian_type;  // prime powers, decreasing
};

// ---------------------------------------------------------------------------
// Family descriptors and the group-spec DSL:
//   C(n), Ab(p;a1,...), D(2^d), Q(2^d), SD(2^d), M(p^d), X(p^3), W(p^d),
//   S(n), A(n), SL(2,3), Perm[(1,2)(3,4),...], products with `x`.
struct GroupSpec {
  FamilyTag tag;
  std::vector<long long> params;
  std::vector<Perm> perm_generators;           // PermGiven
  std::vector<std::unique_ptr<GroupSpec>> factors;  // DirectProduct
};

GroupSpec parse_group_spec(const std::string& text);
FiniteGroup build_family(const GroupSpec& spec, const GroupGuards& guards = {});
FiniteGroup build_group(const std::string& spec_text, const GroupGuards& guards = {});

std::vector<ConjClass> conjugacy_classes(const FiniteGroup& G);

SubgroupHandle whole_group(const FiniteGroup& G);
SubgroupHandle trivial_subgroup(const FiniteGroup& G);
SubgroupHandle closure(const FiniteGroup& G, std::vector<std::size_t> seed,
                       std::size_t limit = SIZE_MAX);
SubgroupHandle centralizer(const FiniteGroup& G, std::size_t x);
SubgroupHandle centralizer_of_set(const FiniteGroup& G,
                                  const std::vector<std::size_t>& xs);

// Sylow p-subgroup of the subgroup H: greedy p-element closure growth,
// deterministic in element index order.
SubgroupHandle sylow_p(const FiniteGroup& G, const SubgroupHandle& H,
                       std::uint32_t p);
SubgroupHandle class_defect_group(const FiniteGroup& G, const ConjClass& K,
                                  std::uint32_t p);
bool are_conjugate(const FiniteGroup& G, const SubgroupHandle& P,
                   const SubgroupHandle& Q);
// some conjugate of P is a subgroup of Q
bool conjugate_into(const FiniteGroup& G, const SubgroupHandle& P,
                    const SubgroupHandle& Q);
bool is_subset(const SubgroupHandle& P, const SubgroupHandle& Q);

GroupInvariants group_invariants(const FiniteGroup& G);
GroupInvariants subgroup_invariants(const FiniteGroup& G, const SubgroupHandle& H);

// Regular-representation copy of a subgroup as a group in its own right.
// If corr is given, corr[i] = parent element index of the copy's element i.
FiniteGroup subgroup_as_group(const FiniteGroup& G, const SubgroupHandle& H,
                              const std::string& name,
                              std::vector<std::size_t>* corr = nullptr);
SubgroupHandle subgroup_center(const FiniteGroup& G, const SubgroupHandle& H);

std::uint64_t p_part(std::uint64_t n, std::uint32_t p);
int p_valuation(std::uint64_t n, std::uint32_t p);

}  // namespace bc
