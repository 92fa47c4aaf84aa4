#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "webtraj/backend.hpp"
#include "webtraj/curate.hpp"
#include "webtraj/env.hpp"
#include "webtraj/model.hpp"

namespace webtraj {

enum class JudgeMode { rule_based, model_based };

JudgeMode judge_mode_from_string(std::string_view s);
std::string to_string(JudgeMode m);

struct RolloutConfig {
    int max_steps = 15;
    int clip_k = 3;
    JudgeMode judge = JudgeMode::rule_based;
};

/// Episode loop: reset, then decide/step until Stop, the step limit, or an
/// unrecoverable policy protocol violation (terminal = env_error). Every
/// executed step is recorded with provenance = self.
Trajectory run_episode(const SiteSpec& site, Backend& policy, const QueryRecord& q, const RolloutConfig& cfg);

/// Self-assessment in [0,1]: rule_based delegates to env is_success;
/// model_based maps the judge verdict SUCCESS -> 1, NOT SUCCESS -> 0.
/// The judge backend is only consulted in model_based mode.
double self_assess(const Trajectory& t,
                   const QueryRecord& q,
                   const SiteSpec& site,
                   JudgeMode mode,
                   Backend* judge);

using EpisodeRunner = std::function<Trajectory(const QueryRecord&)>;
using JudgeFn = std::function<double(const Trajectory&, const QueryRecord&)>;

struct RejectionResult {
    CurationDataset dataset;               // trajectories with score == 1, one per query
    std::map<std::string, double> scores;  // per-query judge scores
    std::vector<Trajectory> trajectories;  // every sampled trajectory, input order
};

/// One episode per query; a trajectory is kept iff its score equals 1.
RejectionResult rejection_sample(const std::vector<QueryRecord>& queries, const EpisodeRunner& run,
                                 const JudgeFn& judge);

}  // namespace webtraj
