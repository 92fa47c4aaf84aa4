#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "webtraj/backend.hpp"
#include "webtraj/model.hpp"

namespace webtraj {

// ---------------------------------------------------------------------------
// Prompt context with observation clipping. All prior (thought, action)
// pairs are kept in order; page observations are kept only for the most
// recent k-1 prior steps, plus the current observation supplied at decision
// time. Thoughts and actions carry compressed history, so dropping stale
// page trees bounds the context without losing the decision record.
// ---------------------------------------------------------------------------

struct PromptContext {
    struct Entry {
        std::optional<Observation> observation;  // absent when clipped
        Thought thought;
        Action action;
    };

    std::string system_instructions;
    std::string query_text;
    std::vector<Entry> history;
    Observation current;
    int clip_k = 3;

    size_t retained_observations() const;
};

/// Retained history indices for step t (1-based, history length t-1): every
/// index appears as a (thought, action) pair; indices >= t-k+1 also keep
/// their observation.
std::vector<size_t> retained_observation_indices(size_t history_len, size_t k);

PromptContext clip_context(std::span<const Step> history,
                           const Observation& current,
                           int k,
                           const std::string& query_text = "",
                           const std::string& system_instructions = "");

/// Re-applies the retention rule to an existing context (idempotent for the
/// same k).
PromptContext clip_context(const PromptContext& ctx, int k);

/// Role-tagged message rendering of a context (system prompt excluded; it is
/// passed separately to the backend).
std::vector<ChatMessage> context_messages(const PromptContext& ctx);

/// Single-string rendering of the user side of the context, used for SFT
/// records.
std::string render_user_context(const PromptContext& ctx);

struct Decision {
    Thought thought;
    Action action;
    long tokens = 0;
};

/// Queries the backend with the clipped context and parses the reply into
/// (thought, action). One automatic reprompt on protocol violations; a second
/// failure raises ProtocolViolation. Transport failures propagate as
/// BackendUnavailable.
Decision decide(Backend& backend, const PromptContext& ctx, const std::string& query_id);

}  // namespace webtraj
