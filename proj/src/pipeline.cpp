#include "blockcenter/pipeline.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

namespace bc {

std::vector<ManifestEntry> parse_manifest(const ordered_json& j) {
  std::vector<ManifestEntry> out;
  for (const auto& e : j) {
    ManifestEntry m;
    m.group_spec = e.at("group_spec").get<std::string>();
    m.p = e.at("p").get<std::uint32_t>();
    if (e.contains("expected")) {
      const auto& ex = e.at("expected");
      if (ex.contains("num_blocks"))
        m.num_blocks = ex.at("num_blocks").get<std::size_t>();
      if (ex.contains("per_block"))
        for (const auto& b : ex.at("per_block")) m.per_block.push_back(b);
    }
    out.push_back(std::move(m));
  }
  return out;
}

BlockProfile make_profile(const CenterAlgebra& Z, const Block& B) {
  const FiniteGroup& G = *Z.group;
  GroupInvariants inv = subgroup_invariants(G, B.defect_group);
  BlockProfile pr;
  pr.p = Z.p;
  pr.d = B.defect;
  pr.e = p_valuation(inv.exponent, Z.p);
  pr.abelian = inv.is_abelian;
  pr.cyclic = inv.is_abelian && inv.abelian_type->size() <= 1;
  if (inv.is_abelian) {
    std::vector<int> type;
    for (auto q : *inv.abelian_type) type.push_back(p_valuation(q, Z.p));
    pr.abelian_type = std::move(type);
  }
  pr.LL = B.LL;
  pr.lB = B.annotations.lB;
  pr.nilpotent = B.annotations.nilpotent;
  // W recognition: construction provenance when the defect group is the whole
  // W-built group, invariant matching otherwise ("presumed")
  if (!pr.abelian) {
    if (G.family.tag == FamilyTag::CentralProductW &&
        B.defect_group.order == G.order()) {
      pr.w_flag = WFlag::constructed;
    } else if (Z.p > 2 && pr.d >= 3) {
      GroupInvariants zinv =
          subgroup_invariants(G, subgroup_center(G, B.defect_group));
      bool z_cyclic = zinv.abelian_type && zinv.abelian_type->size() == 1;
      if (z_cyclic &&
          (long long)subgroup_center(G, B.defect_group).order ==
              int_pow(Z.p, pr.d - 2) &&
          (long long)inv.derived.order == (long long)Z.p &&
          (long long)p_part(inv.exponent, Z.p) == int_pow(Z.p, pr.d - 2))
        pr.w_flag = WFlag::presumed;
    }
  }
  return pr;
}

namespace {

ordered_json field_json(const Field& F) {
  return {{"p", F.p}, {"m", F.m}, {"modulus", F.modulus}};
}

ordered_json bounds_json(const BoundReport& rep) {
  ordered_json arr = ordered_json::array();
  for (const auto& ev : rep.bounds) {
    ordered_json b;
    b["name"] = ev.name;
    b["applicable"] = ev.applicable;
    if (ev.applicable) {
      b["value"] = ev.value;
      b["relation"] = ev.equality ? "==" : (ev.strict ? "<" : "<=");
      b["satisfied"] = ev.satisfied;
    }
    arr.push_back(std::move(b));
  }
  return arr;
}

void apply_annotations(const FiniteGroup& G, std::vector<Block>& blocks,
                       const std::vector<ordered_json>& manifest_ann) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Block& B = blocks[i];
    if (B.defect_group.order == G.order()) {
      // G itself is a p-group: its unique block is nilpotent with l(B) = 1
      B.annotations.nilpotent = true;
      B.annotations.lB = 1;
      B.annotations.source = "principal block of a p-group";
    } else if (B.defect == 0) {
      B.annotations.nilpotent = true;
      B.annotations.lB = 1;
      B.annotations.source = "block of defect zero";
    }
    if (i < manifest_ann.size()) {
      const auto& a = manifest_ann[i];
      if (a.contains("lB")) B.annotations.lB = a.at("lB").get<long long>();
      if (a.contains("nilpotent"))
        B.annotations.nilpotent = a.at("nilpotent").get<bool>();
      if (a.contains("source"))
        B.annotations.source = a.at("source").get<std::string>();
    }
  }
}

}  // namespace

ordered_json analyze_blocks(const std::string& spec, std::uint32_t p,
                            const RunConfig& cfg,
                            const std::vector<ordered_json>& annotations) {
  GroupGuards guards{cfg.order_guard};
  FiniteGroup G = build_group(spec, guards);
  CenterAlgebra Z = center_of_group_algebra(G, p, std::nullopt,
                                            cfg.field_degree_guard);
  std::vector<Block> blocks = block_decomposition(Z);
  apply_annotations(G, blocks, annotations);

  ordered_json rep;
  std::vector<std::string> violations;
  rep["version"] = kVersion;
  rep["group"] = spec;
  rep["group_name"] = G.name;
  rep["order"] = G.order();
  rep["p"] = p;
  rep["field"] = field_json(Z.field);
  rep["num_classes"] = Z.num_classes();

  int ll_zfg = loewy_length(Z.alg);
  rep["LL_ZFG"] = ll_zfg;

  ordered_json jblocks = ordered_json::array();
  int max_block_ll = 1;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& B = blocks[bi];
    max_block_ll = std::max(max_block_ll, B.LL);
    BlockProfile pr = make_profile(Z, B);
    ordered_json jb;
    jb["index"] = bi;
    jb["kB"] = B.kB;
    jb["defect"] = B.defect;
    jb["defect_group_order"] = B.defect_group.order;
    jb["LL"] = B.LL;
    jb["support"] = B.support;
    jb["idempotent"] = B.idempotent;
    {
      ordered_json pj;
      pj["d"] = pr.d;
      pj["e"] = pr.e;
      pj["abelian"] = pr.abelian;
      if (pr.abelian_type) {
        std::vector<long long> type;
        for (int a : *pr.abelian_type) type.push_back(int_pow(p, a));
        pj["abelian_type"] = type;
      }
      pj["cyclic"] = pr.cyclic;
      pj["w_flag"] = pr.w_flag == WFlag::constructed ? "constructed"
                     : pr.w_flag == WFlag::presumed  ? "presumed"
                                                     : "absent";
      jb["profile"] = std::move(pj);
    }
    {
      ordered_json an;
      if (B.annotations.lB) an["lB"] = *B.annotations.lB;
      if (B.annotations.nilpotent) an["nilpotent"] = *B.annotations.nilpotent;
      if (!B.annotations.source.empty()) an["source"] = B.annotations.source;
      jb["annotations"] = std::move(an);
    }

    BoundReport bounds = evaluate_bounds(pr);  // throws on classification failure
    jb["bounds"] = bounds_json(bounds);
    jb["classify"] = bounds.classify_case;
    jb["extremal"] = bounds.extremal;
    if (!bounds.all_satisfied)
      for (const auto& ev : bounds.bounds)
        if (!ev.satisfied)
          violations.push_back("block " + std::to_string(bi) + ": bound " +
                               ev.name + " = " + ev.value + " violated (LL=" +
                               std::to_string(B.LL) + ")");

    SubAlgebra ZB = component_algebra(Z.alg, B.idempotent);
    bool uniserial = is_uniserial(ZB.alg);
    jb["uniserial"] = uniserial;
    if (B.annotations.nilpotent) {
      bool expect = *B.annotations.nilpotent && pr.cyclic;
      if (uniserial != expect)
        violations.push_back("block " + std::to_string(bi) +
                             ": uniserial center inconsistent with "
                             "nilpotent/cyclic data");
    }
    if (Z.field.p == 2 && B.kB == 4)
      jb["klein_four_center"] = is_klein_four_group_algebra(ZB.alg);

    auto ldgs = lower_defect_groups(Z, B);
    std::vector<std::size_t> orders;
    bool has_defect_group = false;
    for (const auto& Q : ldgs) {
      orders.push_back(Q.order);
      has_defect_group |= Q.order == B.defect_group.order &&
                          are_conjugate(G, Q, B.defect_group);
    }
    long long chain = lower_defect_chain_value(Z, B, ldgs);
    jb["lower_defect_group_orders"] = orders;
    jb["lower_defect_chain_bound"] = chain;
    bool chain_ok = has_defect_group && chain >= B.LL;
    jb["lower_defect_chain_ok"] = chain_ok;
    if (!chain_ok)
      violations.push_back("block " + std::to_string(bi) +
                           ": lower defect chain bound failed");
    jblocks.push_back(std::move(jb));
  }
  rep["blocks"] = std::move(jblocks);
  if (ll_zfg != max_block_ll)
    violations.push_back("LL(ZFG) differs from the maximum block Loewy length");

  if (cfg.with_lemmas) {
    ordered_json lem = ordered_json::array();
    for (const auto& r : verify_lemma2(Z)) {
      lem.push_back({{"check", r.name}, {"pass", r.pass}, {"details", r.details}});
      if (!r.pass) violations.push_back("lemma check failed: " + r.name);
    }
    // Passman's identity for the central p-subgroups (all cyclic ones plus
    // the full p-part of the center)
    SubgroupHandle zc = subgroup_center(G, whole_group(G));
    SubgroupHandle zp = sylow_p(G, zc, p);
    std::vector<SubgroupHandle> ps;
    for (auto x : zp.members) {
      if (x == G.id_index()) continue;
      SubgroupHandle c = closure(G, {x});
      bool seen = false;
      for (const auto& q : ps) seen |= q.members == c.members;
      if (!seen) ps.push_back(std::move(c));
    }
    if (zp.order > 1) ps.push_back(zp);
    for (const auto& P : ps) {
      CheckResult r = verify_passman(Z, P);
      lem.push_back({{"check", r.name}, {"pass", r.pass}, {"details", r.details}});
      if (!r.pass) violations.push_back("lemma check failed: " + r.name);
    }
    rep["lemmas"] = std::move(lem);
  }

  rep["violations"] = violations;
  return rep;
}

ordered_json run_quiver_case(const std::string& case_id, int d,
                             const std::string& data_dir) {
  CaseReport rep = coexp_case(case_id, d, data_dir);
  ordered_json j = rep.to_json();
  j["version"] = kVersion;
  return j;
}

// ---------------------------------------------------------------------------
// cache

std::string resolve_cache_path(const RunConfig& cfg) {
  if (!cfg.cache_path.empty()) return cfg.cache_path;
  if (const char* env = std::getenv("BLOCKCENTER_CACHE")) return env;
  if (!cfg.output_dir.empty()) return cfg.output_dir + "/cache.jsonl";
  return "blockcenter_cache.jsonl";
}

std::optional<ordered_json> cache_lookup(const std::string& path,
                                         const std::string& spec,
                                         std::uint32_t p) {
  std::ifstream in(path);
  if (!in.good()) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ordered_json j = ordered_json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;
    const auto& key = j.at("key");
    if (key.at("spec") == spec && key.at("p") == p &&
        key.at("version") == kVersion)
      return j.at("report");
  }
  return std::nullopt;
}

void cache_store(const std::string& path, const std::string& spec,
                 std::uint32_t p, const ordered_json& report) {
  std::vector<std::string> lines;
  {
    std::ifstream in(path);
    std::string line;
    while (in.good() && std::getline(in, line)) {
      if (line.empty()) continue;
      ordered_json j = ordered_json::parse(line, nullptr, false);
      if (!j.is_discarded()) {
        const auto& key = j.at("key");
        if (key.at("spec") == spec && key.at("p") == p &&
            key.at("version") == kVersion)
          continue;  // replaced below
      }
      lines.push_back(line);
    }
  }
  ordered_json entry;
  entry["key"] = {{"spec", spec}, {"p", p}, {"version", kVersion}};
  entry["report"] = report;
  lines.push_back(entry.dump());
  std::filesystem::path fp(path);
  if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
  std::ofstream out(path, std::ios::trunc);
  for (const auto& l : lines) out << l << "\n";
}

// ---------------------------------------------------------------------------
// manifest verification

ordered_json VerifySummary::to_json() const {
  ordered_json j;
  j["version"] = kVersion;
  j["entries"] = entries;
  j["checks"] = checks;
  j["failures"] = failures;
  j["cache_hits"] = cache_hits;
  j["pass"] = failures.empty();
  return j;
}

VerifySummary verify_manifest(const std::string& manifest_path,
                              const RunConfig& cfg) {
  std::ifstream in(manifest_path);
  require(in.good(), ErrorKind::ParseError,
          "cannot open manifest: " + manifest_path);
  ordered_json mj = ordered_json::parse(in, nullptr, false);
  require(!mj.is_discarded(), ErrorKind::ParseError, "manifest is not valid JSON");
  auto entries = parse_manifest(mj);

  VerifySummary sum;
  std::string cache = resolve_cache_path(cfg);
  for (const auto& e : entries) {
    ++sum.entries;
    ordered_json rep;
    std::optional<ordered_json> hit =
        cfg.fresh ? std::nullopt : cache_lookup(cache, e.group_spec, e.p);
    if (hit) {
      rep = *hit;
      ++sum.cache_hits;
    } else {
      rep = analyze_blocks(e.group_spec, e.p, cfg, e.per_block);
      cache_store(cache, e.group_spec, e.p, rep);
    }
    std::string tag = e.group_spec + "/p=" + std::to_string(e.p);
    auto check = [&](bool ok, const std::string& what) {
      ++sum.checks;
      if (!ok) sum.failures.push_back(tag + ": " + what);
    };
    for (const auto& v : rep.at("violations"))
      sum.failures.push_back(tag + ": " + v.get<std::string>());
    if (e.num_blocks)
      check(rep.at("blocks").size() == *e.num_blocks,
            "expected " + std::to_string(*e.num_blocks) + " blocks, got " +
                std::to_string(rep.at("blocks").size()));
    for (std::size_t i = 0; i < e.per_block.size() && i < rep.at("blocks").size();
         ++i) {
      const auto& expect = e.per_block[i];
      const auto& got = rep.at("blocks").at(i);
      std::string btag = "block " + std::to_string(i) + " ";
      if (expect.contains("kB"))
        check(got.at("kB") == expect.at("kB"),
              btag + "kB=" + got.at("kB").dump() + " expected " +
                  expect.at("kB").dump());
      if (expect.contains("defect"))
        check(got.at("defect") == expect.at("defect"),
              btag + "defect=" + got.at("defect").dump() + " expected " +
                  expect.at("defect").dump());
      if (expect.contains("LL"))
        check(got.at("LL") == expect.at("LL"),
              btag + "LL=" + got.at("LL").dump() + " expected " +
                  expect.at("LL").dump());
      if (expect.contains("lB")) {
        // the cyclic equality consumes l(B): LL = (p^d - 1)/l(B) + 1
        bool cyclic = got.at("profile").at("cyclic").get<bool>();
        if (cyclic) {
          BlockProfile pr;
          pr.p = e.p;
          pr.d = got.at("defect").get<int>();
          pr.cyclic = true;
          pr.lB = expect.at("lB").get<long long>();
          pr.LL = got.at("LL").get<int>();
          check(cyclic_equality(pr) == pr.LL,
                btag + "cyclic equality (p^d-1)/l(B)+1 != LL");
        }
      }
    }
  }
  return sum;
}

// ---------------------------------------------------------------------------
// survey

std::vector<std::pair<std::string, std::uint32_t>> survey_tasks_for_preset(
    const std::string& preset) {
  std::vector<std::pair<std::string, std::uint32_t>> tasks;
  auto corpus = [&] {
    for (auto t : std::initializer_list<std::pair<const char*, std::uint32_t>>{
             {"S(3)", 3}, {"S(4)", 2}, {"S(4)", 3}, {"A(4)", 2}, {"SL(2,3)", 2},
             {"D(8)", 2}, {"Q(8)", 2}, {"Q(16)", 2}, {"SD(16)", 2},
             {"M(27)", 3}, {"W(81)", 3}, {"C(9)xC(3)", 3}})
      tasks.push_back({t.first, t.second});
  };
  auto dqsd = [&] {
    for (long long o : {8, 16, 32, 64}) {
      tasks.push_back({"D(" + std::to_string(o) + ")", 2});
      tasks.push_back({"Q(" + std::to_string(o) + ")", 2});
      if (o >= 16) tasks.push_back({"SD(" + std::to_string(o) + ")", 2});
    }
  };
  auto abelian = [&] {
    // all abelian p-group types with |D| <= 243, p in {2, 3, 5}
    for (std::uint32_t p : {2u, 3u, 5u}) {
      long long cap = 243;
      std::vector<std::vector<int>> parts;
      std::vector<int> cur;
      // partitions with p^(sum) <= cap, parts decreasing
      std::function<void(int, int)> rec = [&](int remaining_log, int max_part) {
        if (!cur.empty()) parts.push_back(cur);
        for (int a = std::min(max_part, remaining_log); a >= 1; --a) {
          cur.push_back(a);
          rec(remaining_log - a, a);
          cur.pop_back();
        }
      };
      int maxlog = 0;
      long long v = 1;
      while (v * p <= cap) {
        v *= p;
        ++maxlog;
      }
      rec(maxlog, maxlog);
      for (const auto& t : parts) {
        std::string spec = "Ab(" + std::to_string(p) + ";";
        for (std::size_t i = 0; i < t.size(); ++i)
          spec += (i ? "," : "") + std::to_string(t[i]);
        spec += ")";
        tasks.push_back({spec, p});
      }
    }
  };
  if (preset == "corpus") corpus();
  else if (preset == "dqsd") dqsd();
  else if (preset == "abelian") abelian();
  else if (preset == "paper") {
    corpus();
    dqsd();
    abelian();
  } else {
    fail(ErrorKind::ParseError, "unknown survey preset '" + preset + "'");
  }
  return tasks;
}

SurveyResult run_survey(
    const std::vector<std::pair<std::string, std::uint32_t>>& tasks,
    const RunConfig& cfg) {
  SurveyResult out;
  out.columns = {"group",   "p",        "block",   "kB",      "d",
                 "e",       "abelian",  "cyclic",  "LL",      "otokita",
                 "abelian_LLFD", "nonabelian_min", "nonabelian_3p",
                 "noncyclic", "exp",    "exp_simple", "refined", "coexp",
                 "cyclic_equality", "classify", "extremal", "ok"};
  std::vector<ordered_json> reports(tasks.size());
  std::vector<std::string> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      try {
        reports[i] = analyze_blocks(tasks[i].first, tasks[i].second, cfg);
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    }
  };
  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) {
      out.violations.push_back(tasks[i].first + "/p=" +
                               std::to_string(tasks[i].second) + ": " +
                               errors[i]);
      continue;
    }
    const auto& rep = reports[i];
    for (const auto& v : rep.at("violations"))
      out.violations.push_back(tasks[i].first + "/p=" +
                               std::to_string(tasks[i].second) + ": " +
                               v.get<std::string>());
    for (const auto& jb : rep.at("blocks")) {
      SurveyRow row;
      row.group = tasks[i].first;
      row.p = tasks[i].second;
      row.block = jb.at("index").get<std::size_t>();
      ordered_json f;
      f["group"] = row.group;
      f["p"] = row.p;
      f["block"] = row.block;
      f["kB"] = jb.at("kB");
      f["d"] = jb.at("profile").at("d");
      f["e"] = jb.at("profile").at("e");
      f["abelian"] = jb.at("profile").at("abelian").get<bool>() ? 1 : 0;
      f["cyclic"] = jb.at("profile").at("cyclic").get<bool>() ? 1 : 0;
      f["LL"] = jb.at("LL");
      bool ok = true;
      for (const auto& b : jb.at("bounds")) {
        std::string name = b.at("name").get<std::string>();
        if (!b.at("applicable").get<bool>()) {
          f[name] = "-";
        } else {
          f[name] = b.at("value");
          ok &= b.at("satisfied").get<bool>();
        }
      }
      f["classify"] = jb.at("classify");
      f["extremal"] = jb.at("extremal").get<bool>() ? "EXTREMAL" : "";
      f["ok"] = ok ? 1 : 0;
      row.fields = std::move(f);
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

namespace {

std::string cell_text(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string SurveyResult::csv() const {
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c)
    os << (c ? "," : "") << columns[c];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      os << (c ? "," : "");
      if (row.fields.contains(columns[c])) os << cell_text(row.fields.at(columns[c]));
    }
    os << "\n";
  }
  return os.str();
}

std::string SurveyResult::markdown() const {
  std::ostringstream os;
  os << "|";
  for (const auto& c : columns) os << " " << c << " |";
  os << "\n|";
  for (std::size_t c = 0; c < columns.size(); ++c) os << " --- |";
  os << "\n";
  for (const auto& row : rows) {
    os << "|";
    for (const auto& c : columns)
      os << " " << (row.fields.contains(c) ? cell_text(row.fields.at(c)) : "")
         << " |";
    os << "\n";
  }
  return os.str();
}

}  // namespace bc
