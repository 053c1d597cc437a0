#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blockcenter/blocks.hpp"
#include "blockcenter/bounds.hpp"
#include "blockcenter/quiver.hpp"

namespace bc {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::size_t order_guard = 10'000;
  std::uint32_t field_degree_guard = 16;
  std::string output_dir;
  std::string cache_path;  // empty: BLOCKCENTER_CACHE or output_dir/cache.jsonl
  int jobs = 1;
  bool fresh = false;
  bool with_lemmas = false;
};

// external facts for one (group, p) pair, never derived
struct ManifestEntry {
  std::string group_spec;
  std::uint32_t p = 2;
  std::optional<std::size_t> num_blocks;
  std::vector<ordered_json> per_block;  // {kB?, defect?, LL?, lB?, nilpotent?, source?}
};

std::vector<ManifestEntry> parse_manifest(const ordered_json& j);

BlockProfile make_profile(const CenterAlgebra& Z, const Block& B);

// Full per-(group, p) analysis: blocks, bounds, classification, structure
// predicates, lower defect groups, and (optionally) the lemma suite. Any
// violated bound/lemma/classification lands in report["violations"].
ordered_json analyze_blocks(const std::string& spec, std::uint32_t p,
                            const RunConfig& cfg,
                            const std::vector<ordered_json>& annotations = {});

ordered_json run_quiver_case(const std::string& case_id, int d,
                             const std::string& data_dir = default_data_dir());

struct VerifySummary {
  std::size_t entries = 0;
  std::size_t checks = 0;
  std::vector<std::string> failures;
  std::size_t cache_hits = 0;
  ordered_json to_json() const;
};

VerifySummary verify_manifest(const std::string& manifest_path,
                              const RunConfig& cfg);

struct SurveyRow {
  std::string group;
  std::uint32_t p = 0;
  std::size_t block = 0;
  ordered_json fields;  // flat column -> value
};

struct SurveyResult {
  std::vector<std::string> columns;
  std::vector<SurveyRow> rows;
  std::vector<std::string> violations;
  std::string csv() const;
  std::string markdown() const;
};

// presets: "corpus", "dqsd", "abelian", "paper" (= all of them)
std::vector<std::pair<std::string, std::uint32_t>> survey_tasks_for_preset(
    const std::string& preset);
SurveyResult run_survey(const std::vector<std::pair<std::string, std::uint32_t>>& tasks,
                        const RunConfig& cfg);

std::string resolve_cache_path(const RunConfig& cfg);
std::optional<ordered_json> cache_lookup(const std::string& path,
                                         const std::string& spec,
                                         std::uint32_t p);
void cache_store(const std::string& path, const std::string& spec,
                 std::uint32_t p, const ordered_json& report);

}  // namespace bc
