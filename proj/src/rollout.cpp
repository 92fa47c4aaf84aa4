#include "webtraj/rollout.hpp"

#include "webtraj/evalkit.hpp"
#include "webtraj/policy.hpp"

namespace webtraj {

JudgeMode judge_mode_from_string(std::string_view s) {
    if (s == "rule_based") return JudgeMode::rule_based;
    if (s == "model_based") return JudgeMode::model_based;
    throw ConfigError("unknown judge mode: " + std::string(s));
}

std::string to_string(JudgeMode m) {
    return m == JudgeMode::rule_based ? "rule_based" : "model_based";
}

Trajectory run_episode(const SiteSpec& site, Backend& policy, const QueryRecord& q, const RolloutConfig& cfg) {
    if (q.site != site.site_id)
        throw UnknownSite("query '" + q.query_id + "' targets site '" + q.site + "', not '" + site.site_id + "'");

    Trajectory t;
    t.query_id = q.query_id;
    t.query_text = q.query_text;
    t.site = site.site_id;
    t.terminal = Terminal::step_limit;

    auto [state, obs] = reset(site, q);
    for (int step_index = 0; step_index < cfg.max_steps; ++step_index) {
        PromptContext ctx = clip_context(t.steps, obs, cfg.clip_k, q.query_text);
        Decision d;
        try {
            d = decide(policy, ctx, q.query_id);
        } catch (const ProtocolViolation&) {
            t.terminal = Terminal::env_error;
            return t;
        }

        Step s;
        s.observation = obs;
        s.thought = d.thought;
        s.action = d.action;
        s.provenance = Provenance::self;
        s.tokens = d.tokens;
        t.steps.push_back(std::move(s));

        if (is_stop(d.action)) {
            t.terminal = Terminal::stopped;
            return t;
        }
        StepOutcome out = step(site, state, d.action);
        state = std::move(out.state);
        obs = std::move(out.observation);
    }
    t.terminal = Terminal::step_limit;
    return t;
}

double self_assess(const Trajectory& t,
                   const QueryRecord& q,
                   const SiteSpec& site,
                   JudgeMode mode,
                   Backend* judge) {
    if (mode == JudgeMode::rule_based) return is_success(site, q, t) ? 1.0 : 0.0;
    if (!judge) throw JudgeUnavailable("model_based self-assessment requires a judge backend");
    try {
        JudgeVerdict verdict = judge_trajectory(*judge, q, t);
        return verdict.verdict == Verdict::success ? 1.0 : 0.0;
    } catch (const BackendUnavailable& e) {
        throw JudgeUnavailable(std::string("judge backend unavailable: ") + e.what());
    }
}

RejectionResult rejection_sample(const std::vector<QueryRecord>& queries, const EpisodeRunner& run,
                                 const JudgeFn& judge) {
    RejectionResult result;
    result.dataset.name = "D_rej";
    for (const auto& q : queries) {
        Trajectory t = run(q);
        double score = judge(t, q);
        result.scores[q.query_id] = score;
        if (score >= 1.0) result.dataset.insert(t);
        result.trajectories.push_back(std::move(t));
    }
    return result;
}

}  // namespace webtraj
