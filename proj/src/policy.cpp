#include "webtraj/policy.hpp"

#include "webtraj/prompts.hpp"

namespace webtraj {

size_t PromptContext::retained_observations() const {
    size_t n = 0;
    for (const auto& e : history)
        if (e.observation) ++n;
    return n;
}

std::vector<size_t> retained_observation_indices(size_t history_len, size_t k) {
    std::vector<size_t> out;
    if (k == 0) return out;
    const size_t keep = std::min(history_len, k - 1);
    for (size_t i = history_len - keep; i < history_len; ++i) out.push_back(i);
    return out;
}

PromptContext clip_context(std::span<const Step> history,
                           const Observation& current,
                           int k,
                           const std::string& query_text,
                           const std::string& system_instructions) {
    if (k < 1) throw Error("clip window k must be >= 1");
    PromptContext ctx;
    ctx.system_instructions = system_instructions.empty() ? prompts::agent_system_prompt() : system_instructions;
    ctx.query_text = query_text;
    ctx.clip_k = k;
    ctx.current = current;

    const auto retained = retained_observation_indices(history.size(), static_cast<size_t>(k));
    const size_t first_retained = retained.empty() ? history.size() : retained.front();
    for (size_t i = 0; i < history.size(); ++i) {
        PromptContext::Entry e;
        if (i >= first_retained) e.observation = history[i].observation;
        e.thought = history[i].thought;
        e.action = history[i].action;
        ctx.history.push_back(std::move(e));
    }
    return ctx;
}

PromptContext clip_context(const PromptContext& ctx, int k) {
    if (k < 1) throw Error("clip window k must be >= 1");
    PromptContext out = ctx;
    out.clip_k = k;
    const auto retained = retained_observation_indices(ctx.history.size(), static_cast<size_t>(k));
    const size_t first_retained = retained.empty() ? ctx.history.size() : retained.front();
    for (size_t i = 0; i < out.history.size(); ++i)
        if (i < first_retained) out.history[i].observation.reset();
    return out;
}

std::vector<ChatMessage> context_messages(const PromptContext& ctx) {
    std::vector<ChatMessage> messages;
    messages.push_back({"user", "OBJECTIVE: " + ctx.query_text});
    for (const auto& e : ctx.history) {
        if (e.observation)
            messages.push_back({"user", "Observation:\n" + e.observation->tree_text});
        else
            messages.push_back({"user", "Observation: (earlier page omitted from context)"});
        messages.push_back({"assistant", render_reply(e.thought, e.action)});
    }
    messages.push_back({"user", "Observation:\n" + ctx.current.tree_text});
    return messages;
}

std::string render_user_context(const PromptContext& ctx) {
    std::string out;
    for (const auto& m : context_messages(ctx)) {
        if (!out.empty()) out += "\n\n";
        out += m.content;
    }
    return out;
}

Decision decide(Backend& backend, const PromptContext& ctx, const std::string& query_id) {
    const CallInfo info{query_id, ctx.current.fingerprint};
    auto messages = context_messages(ctx);

    Completion first = backend.complete(ctx.system_instructions, messages, info);
    long tokens = first.tokens;
    try {
        ParsedReply reply = parse_agent_reply(first.text);
        return Decision{std::move(reply.thought), std::move(reply.action), tokens};
    } catch (const Error& first_error) {
        // One reprompt: show the broken reply and restate the format.
        messages.push_back({"assistant", first.text});
        messages.push_back({"user",
                            "Your previous reply did not follow the required format. Reply exactly in the "
                            "format: Thought: {your thoughts} Action: ```{one action}```"});
        std::string cause = first_error.what();
        try {
            Completion second = backend.complete(ctx.system_instructions, messages, info);
            tokens += second.tokens;
            ParsedReply reply = parse_agent_reply(second.text);
            return Decision{std::move(reply.thought), std::move(reply.action), tokens};
        } catch (const BackendUnavailable&) {
            throw;
        } catch (const Error& second_error) {
            throw ProtocolViolation("policy reply violated the protocol after one reprompt: " + cause +
                                    "; retry: " + second_error.what());
        }
    }
}

}  // namespace webtraj
