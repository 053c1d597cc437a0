#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blockcenter/pipeline.hpp"

namespace py = pybind11;
using namespace bc;

namespace {

py::object json_to_py(const ordered_json& j) {
  switch (j.type()) {
    case ordered_json::value_t::null:
      return py::none();
    case ordered_json::value_t::boolean:
      return py::bool_(j.get<bool>());
    case ordered_json::value_t::number_integer:
      return py::int_(j.get<long long>());
    case ordered_json::value_t::number_unsigned:
      return py::int_(j.get<unsigned long long>());
    case ordered_json::value_t::number_float:
      return py::float_(j.get<double>());
    case ordered_json::value_t::string:
      return py::str(j.get<std::string>());
    case ordered_json::value_t::array: {
      py::list out;
      for (const auto& item : j) out.append(json_to_py(item));
      return out;
    }
    case ordered_json::value_t::object: {
      py::dict out;
      for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
      return out;
    }
    default:
      return py::none();
  }
}

RunConfig make_config(std::size_t order_guard, std::uint32_t field_degree,
                      bool lemmas) {
  RunConfig cfg;
  cfg.order_guard = order_guard;
  cfg.field_degree_guard = field_degree;
  cfg.with_lemmas = lemmas;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "centers of p-blocks of small group algebras: blocks, Loewy "
            "lengths, bound checks, and quiver-presented block centers";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "BlockcenterError");

  m.def(
      "analyze_blocks",
      [](const std::string& spec, std::uint32_t p, bool lemmas,
         std::size_t order_guard, std::uint32_t field_degree) {
        return json_to_py(analyze_blocks(
            spec, p, make_config(order_guard, field_degree, lemmas)));
      },
      py::arg("spec"), py::arg("p"), py::arg("lemmas") = false,
      py::arg("order_guard") = 10'000, py::arg("field_degree") = 16,
      "full block analysis of Z(FG) for the given group spec and prime");

  m.def(
      "group_info",
      [](const std::string& spec) {
        FiniteGroup G = build_group(spec);
        GroupInvariants inv = group_invariants(G);
        ordered_json j;
        j["name"] = G.name;
        j["order"] = G.order();
        std::vector<std::size_t> sizes;
        for (const auto& K : conjugacy_classes(G)) sizes.push_back(K.size);
        j["class_sizes"] = sizes;
        j["exponent"] = inv.exponent;
        j["center_order"] = inv.center.order;
        j["abelian"] = inv.is_abelian;
        if (inv.abelian_type) j["abelian_type"] = *inv.abelian_type;
        return json_to_py(j);
      },
      py::arg("spec"), "orders, classes and invariants of a group spec");

  m.def(
      "loewy_length_zfg",
      [](const std::string& spec, std::uint32_t p) {
        FiniteGroup G = build_group(spec);
        return loewy_length(center_of_group_algebra(G, p).alg);
      },
      py::arg("spec"), py::arg("p"),
      "Loewy length of the center of the group algebra over a splitting field");

  m.def(
      "quiver_case",
      [](const std::string& case_id, int d, const std::string& data_dir) {
        return json_to_py(run_quiver_case(
            case_id, d, data_dir.empty() ? default_data_dir() : data_dir));
      },
      py::arg("case_id"), py::arg("d"), py::arg("data_dir") = "",
      "run one built-in d = e+1 block-center presentation");

  m.def(
      "verify_manifest",
      [](const std::string& path, bool fresh, const std::string& cache) {
        RunConfig cfg;
        cfg.fresh = fresh;
        cfg.cache_path = cache;
        return json_to_py(verify_manifest(path, cfg).to_json());
      },
      py::arg("path"), py::arg("fresh") = false, py::arg("cache") = "",
      "run a verification manifest and summarize pass/fail");

  m.def(
      "survey",
      [](const std::vector<std::string>& groups,
         const std::vector<std::uint32_t>& primes, int jobs) {
        std::vector<std::pair<std::string, std::uint32_t>> tasks;
        for (const auto& g : groups)
          for (auto p : primes) tasks.push_back({g, p});
        RunConfig cfg;
        cfg.jobs = jobs;
        SurveyResult res = run_survey(tasks, cfg);
        ordered_json rows = ordered_json::array();
        for (const auto& r : res.rows) rows.push_back(r.fields);
        ordered_json j{{"rows", rows}, {"violations", res.violations}};
        return json_to_py(j);
      },
      py::arg("groups"), py::arg("primes"), py::arg("jobs") = 1,
      "per-block bound table over a list of groups and primes");

  m.def(
      "survey_preset",
      [](const std::string& preset, int jobs) {
        RunConfig cfg;
        cfg.jobs = jobs;
        SurveyResult res = run_survey(survey_tasks_for_preset(preset), cfg);
        ordered_json rows = ordered_json::array();
        for (const auto& r : res.rows) rows.push_back(r.fields);
        ordered_json j{{"rows", rows}, {"violations", res.violations}};
        return json_to_py(j);
      },
      py::arg("preset"), py::arg("jobs") = 1,
      "survey one of the built-in family presets (corpus|dqsd|abelian|paper)");
}
