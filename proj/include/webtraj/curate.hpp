#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "webtraj/model.hpp"

namespace webtraj {

// ---------------------------------------------------------------------------
// Named query-indexed trajectory collections and the cumulative union
// algebra: a base dataset absorbs an addition only for query ids it does not
// already cover, so harder-won trajectories enter the pool only for queries
// simpler stages failed to solve.
// ---------------------------------------------------------------------------

struct CurationDataset {
    std::string name;
    std::map<std::string, Trajectory> entries;  // query_id -> trajectory

    std::set<std::string> query_set() const;
    size_t size() const { return entries.size(); }
    bool contains(const std::string& query_id) const { return entries.count(query_id) > 0; }
    void insert(Trajectory t);
};

/// base plus the addition's entries whose query id is not in base; base
/// entries are never replaced.
CurationDataset cumulative_union(const CurationDataset& base, const CurationDataset& addition,
                                 const std::string& name = "");

struct PipelineDatasets {
    CurationDataset d_l_c;
    CurationDataset d_b_c;
    CurationDataset d_r_c;
};

/// Chained unions: rejection set, then reflection, branching and rollback
/// additions in that order.
PipelineDatasets build_pipeline_datasets(const CurationDataset& d_rej,
                                         const CurationDataset& d_l,
                                         const CurationDataset& d_b,
                                         const CurationDataset& d_r);

// ---------------------------------------------------------------------------
// SFT export: one record per trajectory step, supervising the thought and the
// action given the query and the clipped context of the step's own prior
// steps.
// ---------------------------------------------------------------------------

struct SftRecord {
    std::string system;
    std::string user_context;
    std::string target;
    std::string query_id;
    size_t step_index = 0;
    Provenance provenance = Provenance::self;
};

std::vector<SftRecord> export_sft(const CurationDataset& ds, int clip_k, const std::string& system_prompt);

/// Role-tagged chat JSONL line: {"messages": [system, user, assistant], "meta": ...}
nlohmann::ordered_json sft_record_to_json(const SftRecord& r);

struct DatasetDiff {
    std::vector<std::string> only_a;
    std::vector<std::string> only_b;
    std::vector<std::string> shared;
};

DatasetDiff dataset_diff(const CurationDataset& a, const CurationDataset& b);

// --- persistence ---

std::vector<nlohmann::ordered_json> dataset_to_jsonl(const CurationDataset& ds);
CurationDataset dataset_from_jsonl(const std::string& name, const std::vector<nlohmann::json>& lines);
CurationDataset load_dataset(const std::string& name, const std::filesystem::path& path);
void save_dataset(const CurationDataset& ds, const std::filesystem::path& path);

nlohmann::ordered_json dataset_manifest(const CurationDataset& ds,
                                        const std::string& parent,
                                        const std::vector<std::string>& added_query_ids);

}  // namespace webtraj
