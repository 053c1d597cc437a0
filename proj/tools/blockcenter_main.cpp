#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "blockcenter/pipeline.hpp"

using namespace bc;

namespace {

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::ParseError:
    case ErrorKind::UnknownFamily:
    case ErrorKind::BadParameters:
    case ErrorKind::UnsupportedCase:
      return 2;
    case ErrorKind::OrderGuardExceeded:
    case ErrorKind::DegreeGuardExceeded:
      return 3;
    case ErrorKind::ClassificationViolated:
      return 4;
    default:
      return 1;
  }
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::trunc);
  out << content;
}

std::string sanitize(std::string s) {
  for (auto& c : s)
    if (!std::isalnum((unsigned char)c)) c = '_';
  return s;
}

void print_block_table(const ordered_json& rep) {
  std::cout << rep.at("group_name").get<std::string>() << "  |G|="
            << rep.at("order") << "  p=" << rep.at("p") << "  classes="
            << rep.at("num_classes") << "  LL(ZFG)=" << rep.at("LL_ZFG")
            << "\n";
  std::cout << "block  kB  defect  |D|  LL  classify            extremal\n";
  for (const auto& b : rep.at("blocks")) {
    std::cout << "  " << b.at("index") << "    " << b.at("kB") << "   "
              << b.at("defect") << "       " << b.at("defect_group_order")
              << "    " << b.at("LL") << "  "
              << b.at("classify").get<std::string>() << "  "
              << (b.at("extremal").get<bool>() ? "EXTREMAL" : "") << "\n";
  }
  for (const auto& v : rep.at("violations"))
    std::cout << "VIOLATION: " << v.get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block-center toolkit: centers of p-blocks, Loewy lengths, "
               "and their inequalities at desk scale"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  bool as_json = false;
  app.add_option("--order-guard", cfg.order_guard, "largest allowed group order");
  app.add_option("--field-degree", cfg.field_degree_guard,
                 "largest allowed splitting-field degree");
  app.add_option("--out", cfg.output_dir, "directory for JSON/CSV artifacts");
  app.add_option("--cache", cfg.cache_path, "cache file (JSON lines)");
  app.add_option("--jobs,-j", cfg.jobs, "worker threads for surveys");
  app.add_flag("--fresh", cfg.fresh, "ignore cached results");
  app.add_flag("--json", as_json, "print machine-readable JSON to stdout");

  std::string spec, manifest_path, case_id, preset, groups_arg, primes_arg = "2";
  std::uint32_t p = 2;
  int d = 4;
  bool with_lemmas = false;

  auto* cb = app.add_subcommand("blocks", "analyze the blocks of Z(FG)");
  cb->add_option("spec", spec, "group spec, e.g. S(4) or C(9)xC(3)")->required();
  cb->add_option("-p,--prime", p, "characteristic")->required();
  cb->add_flag("--lemmas", with_lemmas, "include the lemma suite");

  auto* cq = app.add_subcommand("quiver", "run a built-in d=e+1 presentation");
  cq->add_option("case", case_id, "case id: i..vi")->required();
  cq->add_option("d", d, "defect exponent (>= 4)")->required();

  auto* cv = app.add_subcommand("verify", "run a verification manifest");
  cv->add_option("manifest", manifest_path, "manifest JSON path")->required();

  auto* cs = app.add_subcommand("survey", "sweep families and tabulate bounds");
  cs->add_option("--preset", preset, "corpus|dqsd|abelian|paper");
  cs->add_option("--groups", groups_arg, "comma-separated group specs");
  cs->add_option("-p,--primes", primes_arg, "comma-separated primes for --groups");

  auto* cl = app.add_subcommand("lemmas", "run the lemma suite for one group");
  cl->add_option("spec", spec, "group spec")->required();
  cl->add_option("-p,--prime", p, "characteristic")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // usage problems are exit 2; --help stays 0
  }

  try {
    if (cb->parsed() || cl->parsed()) {
      cfg.with_lemmas = with_lemmas || cl->parsed();
      ordered_json rep = analyze_blocks(spec, p, cfg);
      if (as_json)
        std::cout << rep.dump(2) << "\n";
      else {
        print_block_table(rep);
        if (cfg.with_lemmas)
          for (const auto& l : rep.at("lemmas"))
            std::cout << (l.at("pass").get<bool>() ? "pass  " : "FAIL  ")
                      << l.at("check").get<std::string>() << "\n";
      }
      write_file(cfg.output_dir,
                 "blocks_" + sanitize(spec) + "_p" + std::to_string(p) + ".json",
                 rep.dump(2) + "\n");
      return rep.at("violations").empty() ? 0 : 4;
    }
    if (cq->parsed()) {
      ordered_json rep = run_quiver_case(case_id, d);
      if (as_json)
        std::cout << rep.dump(2) << "\n";
      else {
        std::cout << "case " << case_id << " d=" << d << ": dim A = "
                  << rep.at("algebra_dim") << ", dim ZB = " << rep.at("dim_ZB")
                  << ", LL = " << rep.at("LL") << " (expected "
                  << rep.at("LL_expected") << ")\n";
        for (const auto& ic : rep.at("identities"))
          std::cout << (ic.at("pass").get<bool>() ? "pass  " : "FAIL  ")
                    << ic.at("identity").get<std::string>() << "\n";
        std::cout << (rep.at("pass").get<bool>() ? "PASS" : "FAIL") << "\n";
      }
      write_file(cfg.output_dir,
                 "quiver_" + case_id + "_d" + std::to_string(d) + ".json",
                 rep.dump(2) + "\n");
      return rep.at("pass").get<bool>() ? 0 : 4;
    }
    if (cv->parsed()) {
      VerifySummary sum = verify_manifest(manifest_path, cfg);
      ordered_json j = sum.to_json();
      if (as_json)
        std::cout << j.dump(2) << "\n";
      else {
        std::cout << "entries=" << sum.entries << " checks=" << sum.checks
                  << " cache_hits=" << sum.cache_hits << "\n";
        for (const auto& f : sum.failures) std::cout << "FAIL: " << f << "\n";
        std::cout << (sum.failures.empty() ? "PASS" : "FAIL") << "\n";
      }
      write_file(cfg.output_dir, "verify_summary.json", j.dump(2) + "\n");
      return sum.failures.empty() ? 0 : 4;
    }
    if (cs->parsed()) {
      std::vector<std::pair<std::string, std::uint32_t>> tasks;
      if (!preset.empty()) tasks = survey_tasks_for_preset(preset);
      if (!groups_arg.empty()) {
        std::vector<std::uint32_t> primes;
        std::stringstream ps(primes_arg);
        std::string tok;
        while (std::getline(ps, tok, ',')) primes.push_back((std::uint32_t)std::stoul(tok));
        std::stringstream gs(groups_arg);
        while (std::getline(gs, tok, ','))
          for (auto q : primes) tasks.push_back({tok, q});
      }
      require(!tasks.empty(), ErrorKind::ParseError,
              "survey needs --preset or --groups");
      SurveyResult res = run_survey(tasks, cfg);
      if (as_json) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : res.rows) rows.push_back(r.fields);
        ordered_json j{{"version", kVersion},
                       {"rows", rows},
                       {"violations", res.violations}};
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << res.markdown();
        for (const auto& v : res.violations) std::cout << "VIOLATION: " << v << "\n";
      }
      write_file(cfg.output_dir, "survey.csv", res.csv());
      write_file(cfg.output_dir, "survey.md", res.markdown());
      return res.violations.empty() ? 0 : 4;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
