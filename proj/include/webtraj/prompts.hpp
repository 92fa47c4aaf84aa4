#pragma once

#include <string>
#include <vector>

#include "webtraj/model.hpp"

namespace webtraj::prompts {

// Fixed prompt assets for every backend-facing operation. The agent system
// prompt is the environment description (browser role, action definitions)
// followed by the agent hints (rules + reply format with the optional
// <think> deliberation block).

const std::string& environment_description();
const std::string& agent_hints();
const std::string& agent_system_prompt();

/// Hints steering lookahead verbalization; parameterized on the rendered
/// current action.
std::string refinement_hints(const std::string& current_action);

/// Full verbalization request: environment description, refinement hints and
/// the filled demonstration fields (history before t_c, current observation
/// and action, lookahead after t_c).
std::string lookahead_prompt(const std::string& original_thought,
                             const std::string& task,
                             const std::string& history,
                             const std::string& current_observation,
                             const std::string& current_action,
                             const std::string& lookahead);

/// System prompt for the trajectory evaluator; verdict must end 'SUCCESS' or
/// 'NOT SUCCESS'.
const std::string& evaluator_system_prompt();
std::string evaluator_user_message(const std::string& instruction,
                                   const std::string& final_tree,
                                   const std::string& result_response);

/// Candidate-exclusion request listing prior proposals.
std::string proposal_exclusion_message(const std::vector<std::pair<std::string, std::string>>& prior);

/// System prompt for the web-server style outcome simulator.
const std::string& simulation_system_prompt();
std::string simulation_user_message(const std::string& observation, const std::string& action);
std::string simulation_continue_message(const std::string& predicted);

/// System prompt for the candidate scorer (reply format "Thought: ... Score: x").
const std::string& scoring_system_prompt();
std::string scoring_user_message(const std::string& query,
                                 const std::string& observation,
                                 const std::string& action,
                                 const std::string& simulation);

std::string alternative_action_message(const std::string& attempted_action);

std::string goback_request_message(const std::string& attempted_action,
                                   const std::string& last_observation,
                                   const std::string& current_observation);

}  // namespace webtraj::prompts
