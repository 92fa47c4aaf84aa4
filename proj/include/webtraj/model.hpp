#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "webtraj/errors.hpp"

namespace webtraj {

// ---------------------------------------------------------------------------
// Actions
//
// The atomic browser operations and their canonical text grammar:
//   click [7]
//   type [3] [query text] [1]
//   scroll [down]
//   goback
//   restart
//   stop [answer]
// ---------------------------------------------------------------------------

struct Click {
    int element_id = 0;
    bool operator==(const Click&) const = default;
};

struct Type {
    int element_id = 0;
    std::string content;
    bool press_enter = true;
    bool operator==(const Type&) const = default;
};

enum class ScrollDirection { up, down };

struct Scroll {
    ScrollDirection direction = ScrollDirection::down;
    bool operator==(const Scroll&) const = default;
};

struct GoBack {
    bool operator==(const GoBack&) const = default;
};

struct Restart {
    bool operator==(const Restart&) const = default;
};

struct Stop {
    std::string answer;  // may be empty or "N/A"
    bool operator==(const Stop&) const = default;
};

using Action = std::variant<Click, Type, Scroll, GoBack, Restart, Stop>;

/// Canonical rendering in the surface grammar above.
std::string render_action(const Action& action);

/// Parses a single action expression. Tolerates surrounding whitespace and
/// backtick fencing. Throws MalformedAction on unknown verbs, missing
/// brackets, or non-integer element ids.
Action parse_action(std::string_view text);

inline bool is_stop(const Action& a) { return std::holds_alternative<Stop>(a); }
inline bool is_goback(const Action& a) { return std::holds_alternative<GoBack>(a); }

// ---------------------------------------------------------------------------
// Observations
// ---------------------------------------------------------------------------

/// Collapses whitespace runs to single spaces and strips trailing spaces per
/// line; trailing blank lines are dropped.
std::string normalize_tree_text(std::string_view text);

/// 64-bit FNV-1a digest (hex) of the normalized text. Stable across runs and
/// platforms so fingerprints may appear in serialized artifacts.
std::string fingerprint_text(std::string_view text);

struct Observation {
    std::string tree_text;
    std::string fingerprint;

    static Observation from_text(std::string text);

    bool operator==(const Observation& other) const { return fingerprint == other.fingerprint; }
    bool operator!=(const Observation& other) const { return !(*this == other); }
};

// ---------------------------------------------------------------------------
// Thoughts, steps, trajectories
// ---------------------------------------------------------------------------

struct Thought {
    std::string text;
    // Enumerated candidate deliberation, present only for branch-style
    // thoughts rendered between <think> tags.
    std::optional<std::string> think_block;

    bool operator==(const Thought&) const = default;
};

enum class Provenance { self, lookahead, branch, rollback };

std::string to_string(Provenance p);
Provenance provenance_from_string(std::string_view s);

struct Step {
    Observation observation;
    Thought thought;
    Action action;
    Provenance provenance = Provenance::self;
    long tokens = 0;
};

enum class Terminal { stopped, step_limit, env_error };

std::string to_string(Terminal t);
Terminal terminal_from_string(std::string_view s);

struct Trajectory {
    std::string query_id;
    std::string query_text;
    std::string site;
    std::vector<Step> steps;
    Terminal terminal = Terminal::env_error;

    long total_tokens() const;
    size_t length() const { return steps.size(); }
};

struct QueryRecord {
    std::string query_id;
    std::string query_text;
    std::string site;
};

// ---------------------------------------------------------------------------
// Agent reply protocol
//
// Replies follow the format (think block optional):
//
//   <think>
//   1. Thought: ... Possible Step: ... Simulated Output: ... Critic Evaluation: ...
//   </think>
//
//   Thought: {text} Action: ```{action}```
// ---------------------------------------------------------------------------

struct ParsedReply {
    Thought thought;
    Action action;
};

/// Extracts the optional <think> block, the Thought text and the fenced
/// action. Throws MissingThought / MissingAction / MalformedAction.
ParsedReply parse_agent_reply(std::string_view completion);

/// Inverse of parse_agent_reply for a (thought, action) pair, including the
/// think block when present.
std::string render_reply(const Thought& thought, const Action& action);

// ---------------------------------------------------------------------------
// Serialization (one JSON document per trajectory; JSONL for collections)
// ---------------------------------------------------------------------------

nlohmann::ordered_json trajectory_to_json(const Trajectory& t);
Trajectory trajectory_from_json(const nlohmann::json& j);

nlohmann::ordered_json query_to_json(const QueryRecord& q);
QueryRecord query_from_json(const nlohmann::json& j);

}  // namespace webtraj
