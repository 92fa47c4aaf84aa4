#include "webtraj/prompts.hpp"

namespace webtraj::prompts {

namespace {

const char* kEnvironmentDescription =
    R"(You are an autonomous intelligent agent tasked with navigating a web browser. You will be given web-based tasks. These tasks will be accomplished through the use of specific actions you can issue.
Here's the information you'll have:
The user's objective: This is the task you're trying to complete.
The current observation (web page's accessibility tree): This is a simplified representation of the webpage, providing key information.
The open tabs: These are the tabs you have open.
The previous actions: You can refer to the conversation history with the user to see the actions you have taken. It may be helpful to track your progress.

The actions you can perform are the following:
`click [id]`: This action clicks on an element with a specific id on the webpage.
`type [id] [content] [press_enter_after=0|1]`: Use this to type the content into the field with id. By default, the "Enter" key is pressed after typing unless press_enter_after is set to 0.
`scroll [direction=down|up]`: Scroll the page up or down.
`goback`: Navigate to the previously viewed page.
`restart`: Navigate to the original homepage at first. When you can't find information on some websites, try starting over from the beginning.
`stop [answer]`: Issue this action when you believe the task is complete. If the objective is to find a text-based answer, provide the answer in the bracket. If you believe the task is impossible to complete, provide the answer as "N/A" in the bracket.)";

const char* kAgentHints =
    R"(To be successful, it is very important to follow the following rules:
1. If you are uncertain about the next action, follow these steps: First, generate up to three of the most likely and valid actions based on the current observation. Then, for each of these possible actions, simulate and describe the expected future outcome in free text, detailing the next observation that would result from performing the action. Next, evaluate the correctness of each action by considering both the current observation and the simulated future results. Assign a numerical score from 0 to 1 to indicate the likelihood of correctness for each action: a score of 1.0 means "complete", 0.5 means "on track", and 0 means "incorrect". Provide your rationale for each score before assigning it. Finally, select and output the action with the highest score from the evaluated actions.
2. You should only issue an action that is valid given the current observation. For example, you should NOT type into buttons or click on statictext.
3. You should only issue one action at a time.
4. STRICTLY Avoid repeating the same action if the webpage remains unchanged. You may have selected the wrong web element or numerical label.
5. Issue stop action when you think you have achieved the objective. Don't generate anything after stop.
6. If you ever need to login, login with Google. Try to skip any follow-up questions that may appear after logging in.
Your reply should strictly follow the format:

<think>
1. Thought: {{Your brief thoughts (briefly summarize the info that will help complete the task)}}
Possible Step: {{One of the logical and valid actions to take based on the current observation.}}
Simulated Output: {{A prediction of what the next observation or result will be after performing the action.}}
Critic Evaluation: {{Your rationale on the effectiveness of the action as well as a score from 0 (poor performance) to 1 (excellent performance), judging the corresponding action's effectiveness.}}
2. ... (continue with subsequent steps as needed in the same format)
</think> (Optional: You can choose to include the steps between `<think>` and `</think>` if necessary or skip them based on the task's complexity.)

Thought: {{Your brief thoughts (briefly summarize the info that will help complete the task)}} Action: ```{{The final action you choose to take in the process.}}```)";

const char* kEvaluatorSystem =
    R"(As an evaluator, you will be presented with three primary components to assist you in your role:
1. Web Task Instruction: This is a clear and specific directive provided in natural language, detailing the online activity to be carried out. These requirements may include conducting searches, verifying information, comparing prices, checking availability, or any other action relevant to the specified web service.
2. Result Webpage Accessibility Tree: This is a representation of the web page showing the result or intermediate state of performing a web task. It serves as proof of the actions taken in response to the instruction.
3. Result Response: This is a textual response obtained after the execution of the web task. It serves as textual result in response to the instruction.

-- You DO NOT NEED to interact with web pages or perform actions such as booking flights or conducting searches on websites.
-- You SHOULD NOT make assumptions based on information not presented in the webpage when comparing it to the instructions.
-- Your primary responsibility is to conduct a thorough assessment of the web task instruction against the outcome depicted in the accessibility tree and in the response, evaluating whether the actions taken align with the given instructions.
-- NOTE that the instruction may involve more than one task, for example, locating the garage and summarizing the review. Failing to complete either task, such as not providing a summary, should be considered unsuccessful.
-- NOTE that the accessibility tree is authentic, but the response is generated at the end of web browsing, and there may be discrepancies between the text and the tree.
-- Note the difference:
1) The result response may contradict the accessibility tree, then the content of the accessibility tree prevails, 2) The content in the result response is not mentioned in the accessibility tree, choose to believe the content.

You should elaborate on how you arrived at your final evaluation and then provide a definitive verdict on whether the task has been successfully accomplished, either as 'SUCCESS' or 'NOT SUCCESS'.)";

const char* kSimulationSystem =
    R"(You are a web server. You are given the current observed accessibility tree of the web page, and an action to perform. The expected output is a short description on what the next observation is, in the form of free text.

The definitions of the actions are as follows: The actions you can perform are the following:
`click [id]`: This action clicks on an element with a specific id on the webpage.
`type [id] [content] [press_enter_after=0|1]`: Use this to type the content into the field with id. By default, the "Enter" key is pressed after typing unless press_enter_after is set to 0.
`scroll [direction=down|up]`: Scroll the page up or down.
`goback`: Navigate to the previously viewed page.
`restart`: Navigate to the original home page and restart the action.)";

const char* kScoringSystem =
    R"(You are an evaluator of a web agent task, evaluating the correctness of the action, conditioned on the current observation and a simulated future result.
You are given the task query, the current observed accessibility tree, the action performed, and a textual description of the simulated output after performing this action.
You are expected to give a numerical score (0 to 1) to indicate whether the simulated output is correct. The higher the score, the more likely the action is correct.

Here are some example scores: complete (1.0), on track (0.5), or incorrect (0).
Output your rationale first and then the score.

Output format:
Thought: XXXX. Score: {a score from 0 to 1}.)";

}  // namespace

const std::string& environment_description() {
    static const std::string text = kEnvironmentDescription;
    return text;
}

const std::string& agent_hints() {
    static const std::string text = kAgentHints;
    return text;
}

const std::string& agent_system_prompt() {
    static const std::string text = environment_description() + "\n\n" + agent_hints();
    return text;
}

std::string refinement_hints(const std::string& current_action) {
    return "Please directly generate your chain of thoughts and critiques, and reasoning right before exactly "
           "choosing the given current action " + current_action +
           " according to the task, the navigation history/lookahead, and the current observation. Your thoughts "
           "should be focused on: What important information for the task completion can be expected after "
           "performing the current action based on the current observation within the broader navigation context? "
           "How does the current action, based on the current observation, contribute to achieving the overall task "
           "goal within the broader context of the navigation overview? How necessary is the current action based "
           "on the current observation for the task completion in the context of the overall navigation overview? "
           "Additionally, provide a detailed plan outlining the next steps after completing the current action, "
           "ensuring it aligns with the navigation overview.\n\n"
           "Hints:\n"
           "1. Be aware of the task's constraints while offering your insights.\n"
           "2. Try to avoid mentioning the current action at the beginning of the chain of thought.\n"
           "3. Write the chain of thought supposing that the given current action has not been taken, and you are "
           "giving a look-ahead of what will happen in the future.\n"
           "4. Your chain of thought should be shorter as length of navigation lookahead decreases, which means "
           "you are closer to the task completion.";
}

std::string lookahead_prompt(const std::string& original_thought,
                             const std::string& task,
                             const std::string& history,
                             const std::string& current_observation,
                             const std::string& current_action,
                             const std::string& lookahead) {
    return environment_description() + "\n\n" + refinement_hints(current_action) + "\n\n" +
           "Chain of Thought demonstration: " + original_thought + "\n" +
           "The task: " + task + "\n" +
           "The navigation history: " + history + "\n" +
           "The current observation (web page's accessibility tree): " + current_observation + "\n" +
           "The current action you are about to exactly choose: " + current_action + "\n" +
           "The navigation lookahead: " + lookahead + "\n\n" +
           "Please directly generate your thoughts and critiques.";
}

const std::string& evaluator_system_prompt() {
    static const std::string text = kEvaluatorSystem;
    return text;
}

std::string evaluator_user_message(const std::string& instruction,
                                   const std::string& final_tree,
                                   const std::string& result_response) {
    return "Web Task Instruction: " + instruction + "\n\nResult Webpage Accessibility Tree:\n" + final_tree +
           "\n\nResult Response: " + result_response;
}

std::string proposal_exclusion_message(const std::vector<std::pair<std::string, std::string>>& prior) {
    std::string out = "Please generate actions different from:";
    for (size_t i = 0; i < prior.size(); ++i) {
        out += "\n" + std::to_string(i + 1) + ". Thought: " + prior[i].first +
               " Action: ```" + prior[i].second + "```";
    }
    return out;
}

const std::string& simulation_system_prompt() {
    static const std::string text = kSimulationSystem;
    return text;
}

std::string simulation_user_message(const std::string& observation, const std::string& action) {
    return "Observation:\n" + observation + "\n\nAction: " + action;
}

std::string simulation_continue_message(const std::string& predicted) {
    return "Observation:\n" + predicted +
           "\n\nDescribe the most likely next observation if the agent continues toward its goal.";
}

const std::string& scoring_system_prompt() {
    static const std::string text = kScoringSystem;
    return text;
}

std::string scoring_user_message(const std::string& query,
                                 const std::string& observation,
                                 const std::string& action,
                                 const std::string& simulation) {
    return "Task query: " + query + "\nCurrent observation:\n" + observation + "\nAction: " + action +
           "\nSimulated output: " + simulation;
}

std::string alternative_action_message(const std::string& attempted_action) {
    return "Previously, the action \"" + attempted_action +
           "\" has been attempted. Please explore a different action.";
}

std::string goback_request_message(const std::string& attempted_action,
                                   const std::string& last_observation,
                                   const std::string& current_observation) {
    return "Previously, the action \"" + attempted_action +
           "\" has been attempted, and this action will not lead to the task completion. Please provide an action "
           "for going back to the last observation following the aforementioned format. Give your brief reason why "
           "this action cannot help to complete the task.\n\nLast Observation: " + last_observation +
           "\nCurrent Observation: " + current_observation;
}

}  // namespace webtraj::prompts
