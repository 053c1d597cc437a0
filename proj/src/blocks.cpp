#include "blockcenter/blocks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace bc {

std::uint32_t splitting_degree(const FiniteGroup& G, std::uint32_t p,
                               std::uint32_t degree_guard) {
  require(is_prime(p), ErrorKind::BadParameters, "p must be prime");
  std::uint64_t e = 1;
  for (std::size_t i = 0; i < G.order(); ++i)
    e = std::lcm(e, G.element_order(i));
  std::uint64_t n = e / p_part(e, p);  // p'-part of exp(G)
  std::uint32_t m = 1;
  std::uint64_t pw = p % n == 0 ? 0 : p % n;
  if (n == 1) return 1;
  std::uint64_t acc = pw;
  while (acc != 1) {
    acc = acc * (p % n) % n;
    ++m;
    require(m <= degree_guard, ErrorKind::DegreeGuardExceeded,
            "splitting degree exceeds guard");
  }
  return m;
}

CenterAlgebra center_of_group_algebra(const FiniteGroup& G, std::uint32_t p,
                                      std::optional<Field> field_override,
                                      std::uint32_t degree_guard) {
  CenterAlgebra Z;
  Z.group = std::make_shared<FiniteGroup>(G);
  Z.p = p;
  Z.field = field_override ? *field_override
                           : make_field(p, splitting_degree(G, p, degree_guard),
                                        degree_guard);
  Z.classes = conjugacy_classes(G);
  std::size_t k = Z.classes.size();
  std::vector<std::size_t> class_of(G.order());
  for (std::size_t i = 0; i < k; ++i)
    for (auto x : Z.classes[i].members) class_of[x] = i;

  // a_{K L M} = #{(x,y) in K x L : x y = z} for a fixed z in M, realized as
  // #{x : class(x) = K, class(x^-1 z) = L}; independence of z is spot-checked.
  auto count_for = [&](std::size_t z) {
    std::vector<std::uint32_t> cnt(k * k, 0);
    for (std::size_t x = 0; x < G.order(); ++x)
      ++cnt[class_of[x] * k + class_of[G.mult(G.inverse(x), z)]];
    return cnt;
  };
  std::vector<Fq> tensor(k * k * k, 0);
  std::mt19937_64 rng(G.order() * 97 + p);
  for (std::size_t Mi = 0; Mi < k; ++Mi) {
    auto cnt = count_for(Z.classes[Mi].rep);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        tensor[(i * k + j) * k + Mi] = Z.field.from_int(cnt[i * k + j]);
    for (int t = 0; t < 3; ++t) {
      std::size_t z = Z.classes[Mi].members[rng() % Z.classes[Mi].size];
      require(count_for(z) == cnt, ErrorKind::Internal,
              "class-sum structure constants depend on the chosen member");
    }
  }
  std::vector<std::string> labels(k);
  std::vector<Fq> one(k, 0);
  one[0] = Z.field.one();
  for (std::size_t i = 0; i < k; ++i)
    labels[i] = "K" + std::to_string(Z.classes[i].rep);
  Z.alg = CommAlgebra::build(Z.field, std::move(labels), std::move(tensor),
                             std::move(one));

  Z.meta.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    Z.meta[i].size = Z.classes[i].size;
    Z.meta[i].defect_group = class_defect_group(G, Z.classes[i], p);
    Z.meta[i].defect = p_valuation(Z.meta[i].defect_group.order, p);
  }
  return Z;
}

std::vector<IdealBasis> center_radical_series(const CenterAlgebra& Z) {
  return radical_series(Z.alg);
}

SubgroupHandle block_defect_group(const CenterAlgebra& Z, const Block& B) {
  int best = -1;
  std::size_t attain = 0;
  for (auto c : B.support)
    if (Z.meta[c].defect > best) {
      best = Z.meta[c].defect;
      attain = c;
    }
  require(best >= 0, ErrorKind::Internal, "block with empty support");
  return Z.meta[attain].defect_group;
}

std::vector<Block> block_decomposition(const CenterAlgebra& Z) {
  std::vector<Block> blocks;
  for (auto& e : primitive_idempotents(Z.alg)) {
    Block B;
    B.idempotent = e;
    for (std::size_t c = 0; c < Z.num_classes(); ++c)
      if (e[c] != 0) B.support.push_back(c);
    B.defect_group = block_defect_group(Z, B);
    B.defect = p_valuation(B.defect_group.order, Z.p);
    SubAlgebra ZB = component_algebra(Z.alg, e);
    B.kB = ZB.alg.dim;
    require(is_local(ZB.alg), ErrorKind::Internal,
            "block center not local over the splitting field");
    B.LL = loewy_length(ZB.alg);
    blocks.push_back(std::move(B));
  }
  std::size_t total = 0;
  for (const auto& B : blocks) total += B.kB;
  require(total == Z.num_classes(), ErrorKind::Internal,
          "block dimensions do not sum to dim Z");
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.defect != b.defect) return a.defect > b.defect;
    if (a.kB != b.kB) return a.kB > b.kB;
    if (a.support.front() != b.support.front())
      return a.support.front() < b.support.front();
    return a.idempotent < b.idempotent;
  });
  return blocks;
}

IdealIP ideal_IP(const CenterAlgebra& Z, const SubgroupHandle& P, IPFlavor fl) {
  const FiniteGroup& G = *Z.group;
  IdealIP I;
  I.subgroup = P;
  I.flavor = fl;
  I.basis = zero_ideal(Z.alg);
  for (std::size_t c = 0; c < Z.num_classes(); ++c) {
    const SubgroupHandle& D = Z.meta[c].defect_group;
    bool in = false;
    switch (fl) {
      case IPFlavor::exact:
        in = D.order == P.order && are_conjugate(G, D, P);
        break;
      case IPFlavor::le:
        in = conjugate_into(G, D, P);
        break;
      case IPFlavor::lt:
        in = D.order < P.order && conjugate_into(G, D, P);
        break;
    }
    if (in) I.basis.space.insert(Z.alg.basis_vec(c));
  }
  return I;
}

BrauerMap brauer_hom(const CenterAlgebra& Z, const SubgroupHandle& P) {
  const FiniteGroup& G = *Z.group;
  BrauerMap br;
  br.P = P;
  SubgroupHandle C = centralizer_of_set(G, P.members);
  std::vector<std::size_t> corr;
  FiniteGroup Cg = subgroup_as_group(G, C, "C_G(P)", &corr);
  br.target = center_of_group_algebra(Cg, Z.p, Z.field);
  std::size_t kc = br.target.num_classes(), kg = Z.num_classes();
  // G-class index of every element, for support truncation
  std::vector<std::size_t> class_of(G.order());
  for (std::size_t i = 0; i < kg; ++i)
    for (auto x : Z.classes[i].members) class_of[x] = i;
  br.matrix = Mat(kc, kg);
  for (std::size_t c = 0; c < kc; ++c) {
    std::size_t g_class = class_of[corr[br.target.classes[c].rep]];
    br.matrix.at(c, g_class) = Z.field.one();
  }
  // algebra homomorphism on all basis pairs
  for (std::size_t i = 0; i < kg; ++i)
    for (std::size_t j = 0; j < kg; ++j) {
      std::vector<Fq> prod(kg);
      for (std::size_t l = 0; l < kg; ++l) prod[l] = Z.alg.sc(i, j, l);
      auto lhs = br.apply(prod);
      auto rhs = br.target.alg.multiply(br.apply(Z.alg.basis_vec(i)),
                                        br.apply(Z.alg.basis_vec(j)));
      require(lhs == rhs, ErrorKind::Internal,
              "Brauer homomorphism not multiplicative");
    }
  return br;
}

std::vector<Fq> BrauerMap::apply(const std::vector<Fq>& v) const {
  return matvec(target.field, matrix, v);
}

std::vector<SubgroupHandle> class_defect_groups_up_to_conjugacy(
    const CenterAlgebra& Z) {
  const FiniteGroup& G = *Z.group;
  std::vector<SubgroupHandle> reps;
  for (std::size_t c = 0; c < Z.num_classes(); ++c) {
    const SubgroupHandle& D = Z.meta[c].defect_group;
    bool found = false;
    for (const auto& R : reps)
      if (R.order == D.order && are_conjugate(G, R, D)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(D);
  }
  return reps;
}

std::vector<SubgroupHandle> lower_defect_groups(const CenterAlgebra& Z,
                                                const Block& B) {
  std::vector<SubgroupHandle> out;
  for (const auto& Q : class_defect_groups_up_to_conjugacy(Z)) {
    IdealIP le = ideal_IP(Z, Q, IPFlavor::le);
    IdealIP lt = ideal_IP(Z, Q, IPFlavor::lt);
    auto cut = [&](const IdealIP& I) {
      RowSpace S(Z.field, Z.num_classes());
      for (const auto& v : I.basis.space.rows)
        S.insert(Z.alg.multiply(v, B.idempotent));
      return S.dim();
    };
    if (cut(le) > cut(lt)) out.push_back(Q);
  }
  return out;
}

namespace {

int subgroup_center_loewy_length(const CenterAlgebra& Z,
                                 const SubgroupHandle& P) {
  const FiniteGroup& G = *Z.group;
  SubgroupHandle ZP = subgroup_center(G, P);
  FiniteGroup ZPg = subgroup_as_group(G, ZP, "Z(P)");
  return loewy_length(group_algebra(ZPg, Z.field));
}

}  // namespace

long long lower_defect_chain_value(const CenterAlgebra& Z, const Block& B,
                                   const std::vector<SubgroupHandle>& ldgs) {
  const FiniteGroup& G = *Z.group;
  std::size_t n = ldgs.size();
  std::vector<long long> ll(n);
  std::size_t d_idx = n;
  for (std::size_t i = 0; i < n; ++i) {
    ll[i] = subgroup_center_loewy_length(Z, ldgs[i]);
    if (ldgs[i].order == B.defect_group.order &&
        are_conjugate(G, ldgs[i], B.defect_group))
      d_idx = i;
  }
  if (d_idx == n) return 0;  // defect group not among the lower defect groups
  // longest-chain DP over strict conjugate inclusion, ending at the defect group
  std::vector<std::vector<std::size_t>> below(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (ldgs[i].order < ldgs[j].order && conjugate_into(G, ldgs[i], ldgs[j]))
        below[j].push_back(i);
  std::vector<long long> best(n, -1);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ldgs[a].order < ldgs[b].order; });
  for (auto i : order) {
    best[i] = ll[i];
    for (auto j : below[i])
      if (best[j] >= 0) best[i] = std::max(best[i], best[j] + ll[i]);
  }
  return best[d_idx];
}

CheckResult verify_passman(const CenterAlgebra& Z, const SubgroupHandle& P) {
  const FiniteGroup& G = *Z.group;
  require(p_part(P.order, Z.p) == P.order, ErrorKind::CentralityViolated,
          "P must be a p-subgroup");
  SubgroupHandle center = subgroup_center(G, whole_group(G));
  require(is_subset(P, center), ErrorKind::CentralityViolated,
          "P must be central in G");

  std::size_t k = Z.num_classes();
  std::vector<std::size_t> class_of(G.order());
  for (std::size_t i = 0; i < k; ++i)
    for (auto x : Z.classes[i].members) class_of[x] = i;

  IdealIP le = ideal_IP(Z, P, IPFlavor::le);
  IdealBasis JZ = nilradical(Z.alg);
  IdealBasis lhs = ideal_product(le.basis, JZ);

  // I_{<=P} * JFP, with JFP spanned by (u - 1) for u in P; multiplication by a
  // central u permutes the class sums
  RowSpace rhs(Z.field, k);
  for (auto u : P.members) {
    if (u == G.id_index()) continue;
    for (const auto& v : le.basis.space.rows) {
      std::vector<Fq> w(k, 0);
      for (std::size_t c = 0; c < k; ++c) {
        if (v[c] == 0) continue;
        std::size_t uc = class_of[G.mult(u, Z.classes[c].rep)];
        w[uc] = Z.field.add(w[uc], v[c]);
        w[c] = Z.field.sub(w[c], v[c]);
      }
      rhs.insert(std::move(w));
    }
  }

  CheckResult res;
  res.name = "passman:|P|=" + std::to_string(P.order);
  res.pass = lhs.space == rhs;
  res.details = {{"dim_I_le", le.basis.dim()},
                 {"dim_lhs", lhs.dim()},
                 {"dim_rhs", rhs.dim()}};
  return res;
}

std::vector<CheckResult> verify_lemma2(const CenterAlgebra& Z) {
  std::vector<CheckResult> out;
  auto series = center_radical_series(Z);
  auto Jpow = [&](std::size_t n) -> IdealBasis {
    if (n == 0) return ideal_power(zero_ideal(Z.alg), 0);
    if (n > series.size()) return zero_ideal(Z.alg);
    return series[n - 1];
  };

  // base case: I_1 * JZFG = 0
  {
    IdealIP i1 = ideal_IP(Z, trivial_subgroup(*Z.group), IPFlavor::le);
    IdealBasis prod = ideal_product(i1.basis, Jpow(1));
    CheckResult r;
    r.name = "I_1*JZFG=0";
    r.pass = prod.dim() == 0;
    r.details = {{"dim_I1", i1.basis.dim()}, {"dim_product", prod.dim()}};
    out.push_back(std::move(r));
  }

  for (const auto& P : class_defect_groups_up_to_conjugacy(Z)) {
    int n = p_valuation(P.order, Z.p);
    IdealIP le = ideal_IP(Z, P, IPFlavor::le);
    IdealIP lt = ideal_IP(Z, P, IPFlavor::lt);
    std::string tag = "|P|=" + std::to_string(P.order);

    // (i) I_{<=P} * J^(LL(F Z(P))) contained in I_{<P}
    int llz = subgroup_center_loewy_length(Z, P);
    IdealBasis prod_i = ideal_product(le.basis, Jpow((std::size_t)llz));
    bool pass_i = true;
    for (const auto& v : prod_i.space.rows)
      pass_i &= lt.basis.space.contains(v);
    out.push_back({"lemma2(i):" + tag, pass_i,
                   {{"LL_FZ(P)", llz},
                    {"dim_product", prod_i.dim()},
                    {"dim_I_lt", lt.basis.dim()}}});

    // (ii) I_{<=P} * J^((p^(n+1)-1)/(p-1)) = 0
    std::uint64_t power = 0, pk = 1;
    for (int i = 0; i <= n; ++i) {
      power += pk;
      pk *= Z.p;
    }
    IdealBasis prod_ii = ideal_product(le.basis, Jpow(power));
    out.push_back({"lemma2(ii):" + tag, prod_ii.dim() == 0,
                   {{"power", power}, {"dim_product", prod_ii.dim()}}});

    // proof identity: Ker(Br_P) cap I_{<=P} = I_{<P}
    BrauerMap br = brauer_hom(Z, P);
    Mat K = kernel(Z.field, br.matrix);
    RowSpace ker(Z.field, Z.num_classes());
    for (std::size_t r = 0; r < K.rows; ++r) {
      std::vector<Fq> v(Z.num_classes());
      for (std::size_t j = 0; j < Z.num_classes(); ++j) v[j] = K.at(r, j);
      ker.insert(std::move(v));
    }
    RowSpace meet = intersect(ker, le.basis.space);
    out.push_back({"ker(Br)∩I_le=I_lt:" + tag, meet == lt.basis.space,
                   {{"dim_ker", ker.dim()},
                    {"dim_meet", meet.dim()},
                    {"dim_I_lt", lt.basis.dim()}}});
  }
  return out;
}

}  // namespace bc
