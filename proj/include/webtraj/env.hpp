#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "webtraj/model.hpp"

namespace webtraj {

// ---------------------------------------------------------------------------
// Deterministic simulated web environment. Sites are explicit graphs: pages
// hold accessibility-tree text and element affordances; transitions are a
// lookup table keyed by (page, action pattern); success predicates map query
// ids to checks over the final page and the stop answer.
// ---------------------------------------------------------------------------

enum class Affordance { clickable, typable, static_text };

Affordance affordance_from_string(std::string_view s);
std::string to_string(Affordance a);

struct PageSpec {
    std::string tree_text;
    std::map<int, Affordance> elements;
};

struct ActionPattern {
    enum class Kind { click, type, scroll };
    Kind kind = Kind::click;
    int element_id = -1;                 // click / type
    std::string content_pattern = "*";   // type: exact string or "*" wildcard
    ScrollDirection direction = ScrollDirection::down;  // scroll
};

struct SuccessPredicate {
    std::optional<std::string> final_page;
    std::optional<std::string> answer_contains;
    std::optional<std::string> answer_equals;
};

struct SiteSpec {
    std::string site_id;
    std::string start_page;
    std::map<std::string, PageSpec> pages;
    struct Transition {
        std::string from;
        ActionPattern pattern;
        std::string to;
    };
    std::vector<Transition> transitions;
    std::map<std::string, SuccessPredicate> success;

    /// Throws UnknownSite when the start page or a transition endpoint is
    /// missing, or a pattern's element has an incompatible affordance.
    void validate() const;
};

SiteSpec site_from_json(const nlohmann::json& j);
nlohmann::ordered_json site_to_json(const SiteSpec& site);
SiteSpec load_site(const std::filesystem::path& path);

struct EnvState {
    std::string site_id;
    std::string current_page;
    std::vector<std::string> history;  // stack of departed pages
    int step_count = 0;
};

/// The observation function: the page's accessibility tree as text.
Observation observe(const SiteSpec& site, const std::string& page_id);

/// Initializes an episode at the start page with empty history.
std::pair<EnvState, Observation> reset(const SiteSpec& site, const QueryRecord& q);

struct StepOutcome {
    EnvState state;
    Observation observation;
    // Inline error relayed back to the agent, already appended to the
    // observation text; empty when the action executed cleanly.
    std::optional<std::string> banner;
};

/// Pure transition: never mutates the input state.
///
/// Click/Type follow the matching transition and push the departed page onto
/// history. Scroll pushes the current page and moves to the scrolled variant
/// when the site defines one (no-op page-wise otherwise). GoBack pops history
/// or yields a warning banner when it is empty. Restart returns to the start
/// page and clears history. Stop freezes the state. Unmatched or invalid
/// Click/Type yields the same page plus an error banner.
StepOutcome step(const SiteSpec& site, const EnvState& state, const Action& action);

/// Rule-based reward: evaluates the success predicate for q against the
/// trajectory's final page and stop answer; false when terminal != stopped.
/// Throws UnknownQuery when the site defines no predicate for q.
bool is_success(const SiteSpec& site, const QueryRecord& q, const Trajectory& t);

/// Page lookup by observation fingerprint (banner observations match no page).
std::optional<std::string> page_for_observation(const SiteSpec& site, const Observation& o);

/// True when target is reachable from `from` following transition edges only
/// (goback/restart excluded: they are the recovery mechanism, not progress).
bool page_can_reach(const SiteSpec& site, const std::string& from, const std::string& target);

}  // namespace webtraj
