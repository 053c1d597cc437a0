#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blockcenter/calg.hpp"
#include "blockcenter/groups.hpp"

namespace bc {

struct ClassMeta {
  std::size_t size = 0;
  int defect = 0;  // |defect group| = p^defect
  SubgroupHandle defect_group;
};

// Z(FG) over a splitting field, with the class sums as basis in deterministic
// class order (sorted by minimal member index; the identity class is first).
struct CenterAlgebra {
  std::shared_ptr<const FiniteGroup> group;
  std::uint32_t p = 2;
  Field field;
  CommAlgebra alg;
  std::vector<ConjClass> classes;
  std::vector<ClassMeta> meta;

  std::size_t num_classes() const { return classes.size(); }
};

// m = multiplicative order of p modulo the p'-part of exp(G)
std::uint32_t splitting_degree(const FiniteGroup& G, std::uint32_t p,
                               std::uint32_t degree_guard = 16);

CenterAlgebra center_of_group_algebra(
    const FiniteGroup& G, std::uint32_t p,
    std::optional<Field> field_override = std::nullopt,
    std::uint32_t degree_guard = 16);

struct BlockAnnotations {
  std::optional<long long> lB;
  std::optional<bool> nilpotent;
  std::string source;
};

struct Block {
  std::vector<Fq> idempotent;
  std::vector<std::size_t> support;  // class indices with nonzero coefficient
  int defect = 0;
  SubgroupHandle defect_group;
  std::size_t kB = 0;  // dim ZB
  int LL = 1;
  BlockAnnotations annotations;
};

// Primitive idempotent decomposition of the center; blocks sorted by
// (defect desc, kB desc, min support class, idempotent). Each ZB = e*Z is
// checked local over the splitting field.
std::vector<Block> block_decomposition(const CenterAlgebra& Z);

SubgroupHandle block_defect_group(const CenterAlgebra& Z, const Block& B);

enum class IPFlavor { exact, le, lt };

struct IdealIP {
  SubgroupHandle subgroup;
  IPFlavor flavor = IPFlavor::exact;
  IdealBasis basis;
};

IdealIP ideal_IP(const CenterAlgebra& Z, const SubgroupHandle& P, IPFlavor fl);

// Brauer homomorphism Br_P : Z(FG) -> Z(F C_G(P)), support truncation to the
// centralizer; construction verifies multiplicativity on all basis pairs.
struct BrauerMap {
  SubgroupHandle P;
  CenterAlgebra target;  // center of F C_G(P)
  Mat matrix;            // target dim x source dim
  std::vector<Fq> apply(const std::vector<Fq>& v) const;
};

BrauerMap brauer_hom(const CenterAlgebra& Z, const SubgroupHandle& P);

// all class defect groups Q (up to conjugacy) with
// dim(I_{<=Q} e_B) > dim(I_{<Q} e_B); always contains the defect group of B
std::vector<SubgroupHandle> lower_defect_groups(const CenterAlgebra& Z,
                                                const Block& B);

// best chain Q_1 < ... < Q_n = D of lower defect groups, maximizing
// sum LL(F Z(Q_i)); returns that maximum (0 if none reach D)
long long lower_defect_chain_value(const CenterAlgebra& Z, const Block& B,
                                   const std::vector<SubgroupHandle>& ldgs);

struct CheckResult {
  std::string name;
  bool pass = false;
  ordered_json details;
};

// Passman's identity I_{<=P} * JZFG = I_{<=P} * JFP for central p-subgroups
CheckResult verify_passman(const CenterAlgebra& Z, const SubgroupHandle& P);

// For every class defect group P of order p^n, up to conjugacy:
//   (i)  I_{<=P} * JZFG^(LL(F Z(P))) contained in I_{<P}
//   (ii) I_{<=P} * JZFG^((p^(n+1)-1)/(p-1)) = 0
//   Ker(Br_P) cap I_{<=P} = I_{<P},  and  I_1 * JZFG = 0
std::vector<CheckResult> verify_lemma2(const CenterAlgebra& Z);

// class defect groups de-duplicated up to conjugacy, in class order
std::vector<SubgroupHandle> class_defect_groups_up_to_conjugacy(
    const CenterAlgebra& Z);

// the radical power chain of the center (cached use by callers)
std::vector<IdealBasis> center_radical_series(const CenterAlgebra& Z);

}  // namespace bc
