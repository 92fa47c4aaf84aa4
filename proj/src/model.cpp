#include "webtraj/model.hpp"

#include <cctype>
#include <charconv>
#include <regex>
#include <sstream>

namespace webtraj {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string_view strip_backticks(std::string_view s) {
    s = trim(s);
    while (!s.empty() && s.front() == '`') s.remove_prefix(1);
    while (!s.empty() && s.back() == '`') s.remove_suffix(1);
    return trim(s);
}

int parse_element_id(std::string_view digits, std::string_view whole) {
    int id = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || id < 0)
        throw MalformedAction("invalid element id in action: " + std::string(whole));
    return id;
}

}  // namespace

std::string render_action(const Action& action) {
    struct Renderer {
        std::string operator()(const Click& a) const { return "click [" + std::to_string(a.element_id) + "]"; }
        std::string operator()(const Type& a) const {
            return "type [" + std::to_string(a.element_id) + "] [" + a.content + "] [" +
                   (a.press_enter ? "1" : "0") + "]";
        }
        std::string operator()(const Scroll& a) const {
            return std::string("scroll [") + (a.direction == ScrollDirection::down ? "down" : "up") + "]";
        }
        std::string operator()(const GoBack&) const { return "goback"; }
        std::string operator()(const Restart&) const { return "restart"; }
        std::string operator()(const Stop& a) const { return "stop [" + a.answer + "]"; }
    };
    return std::visit(Renderer{}, action);
}

Action parse_action(std::string_view raw) {
    const std::string text{strip_backticks(raw)};
    if (text.empty()) throw MalformedAction("empty action expression");

    // Grammar regexes. Content groups use [\s\S] so typed text and answers may
    // span arbitrary characters; greedy matching keeps bracketed content whole.
    static const std::regex click_re(R"(^click\s*\[\s*(\d+)\s*\]$)", std::regex::icase);
    static const std::regex type_full_re(
        R"(^type\s*\[\s*(\d+)\s*\]\s*\[([\s\S]*)\]\s*\[\s*(?:press_enter_after=)?([01])\s*\]$)",
        std::regex::icase);
    static const std::regex type_short_re(R"(^type\s*\[\s*(\d+)\s*\]\s*\[([\s\S]*)\]$)", std::regex::icase);
    static const std::regex scroll_re(R"(^scroll\s*\[\s*(?:direction=)?(up|down)\s*\]$)", std::regex::icase);
    static const std::regex stop_re(R"(^stop\s*\[([\s\S]*)\]$)", std::regex::icase);
    static const std::regex goback_re(R"(^goback$)", std::regex::icase);
    static const std::regex restart_re(R"(^restart$)", std::regex::icase);

    std::smatch m;
    if (std::regex_match(text, m, click_re)) return Click{parse_element_id(m[1].str(), text)};
    if (std::regex_match(text, m, type_full_re))
        return Type{parse_element_id(m[1].str(), text), m[2].str(), m[3].str() == "1"};
    if (std::regex_match(text, m, type_short_re))
        return Type{parse_element_id(m[1].str(), text), m[2].str(), true};
    if (std::regex_match(text, m, scroll_re)) {
        std::string dir = m[1].str();
        for (auto& c : dir) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return Scroll{dir == "down" ? ScrollDirection::down : ScrollDirection::up};
    }
    if (std::regex_match(text, m, stop_re)) return Stop{m[1].str()};
    if (std::regex_match(text, goback_re)) return GoBack{};
    if (std::regex_match(text, restart_re)) return Restart{};

    throw MalformedAction("unrecognized action expression: " + text);
}

std::string normalize_tree_text(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::string line;
    size_t pos = 0;
    std::vector<std::string> lines;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view raw = (nl == std::string_view::npos) ? text.substr(pos) : text.substr(pos, nl - pos);
        std::string collapsed;
        bool in_space = false;
        for (char c : raw) {
            if (c == ' ' || c == '\t' || c == '\r') {
                in_space = true;
                continue;
            }
            if (in_space && !collapsed.empty()) collapsed.push_back(' ');
            in_space = false;
            collapsed.push_back(c);
        }
        lines.push_back(std::move(collapsed));
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();
    for (size_t i = 0; i < lines.size(); ++i) {
        if (i) out.push_back('\n');
        out += lines[i];
    }
    return out;
}

std::string fingerprint_text(std::string_view text) {
    const std::string normalized = normalize_tree_text(text);
    uint64_t hash = 1469598103934665603ull;  // FNV offset basis
    for (unsigned char c : normalized) {
        hash ^= c;
        hash *= 1099511628211ull;  // FNV prime
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf);
}

Observation Observation::from_text(std::string text) {
    Observation o;
    o.fingerprint = fingerprint_text(text);
    o.tree_text = std::move(text);
    return o;
}

std::string to_string(Provenance p) {
    switch (p) {
        case Provenance::self: return "self";
        case Provenance::lookahead: return "lookahead";
        case Provenance::branch: return "branch";
        case Provenance::rollback: return "rollback";
    }
    return "self";
}

Provenance provenance_from_string(std::string_view s) {
    if (s == "self") return Provenance::self;
    if (s == "lookahead") return Provenance::lookahead;
    if (s == "branch") return Provenance::branch;
    if (s == "rollback") return Provenance::rollback;
    throw Error("unknown provenance: " + std::string(s));
}

std::string to_string(Terminal t) {
    switch (t) {
        case Terminal::stopped: return "stopped";
        case Terminal::step_limit: return "step_limit";
        case Terminal::env_error: return "env_error";
    }
    return "env_error";
}

Terminal terminal_from_string(std::string_view s) {
    if (s == "stopped") return Terminal::stopped;
    if (s == "step_limit") return Terminal::step_limit;
    if (s == "env_error") return Terminal::env_error;
    throw Error("unknown terminal: " + std::string(s));
}

long Trajectory::total_tokens() const {
    long sum = 0;
    for (const auto& s : steps) sum += s.tokens;
    return sum;
}

namespace {

constexpr std::string_view kThinkOpen = "<think>";
constexpr std::string_view kThinkClose = "</think>";

}  // namespace

ParsedReply parse_agent_reply(std::string_view completion) {
    std::string text{completion};
    std::optional<std::string> think_block;

    size_t open = text.find(kThinkOpen);
    if (open != std::string::npos) {
        size_t close = text.find(kThinkClose, open + kThinkOpen.size());
        if (close != std::string::npos) {
            std::string_view inner{text.data() + open + kThinkOpen.size(), close - open - kThinkOpen.size()};
            think_block = std::string(trim(inner));
            text.erase(open, close + kThinkClose.size() - open);
        }
    }

    size_t thought_pos = text.find("Thought:");
    if (thought_pos == std::string::npos)
        throw MissingThought("reply has no Thought segment");
    size_t action_pos = text.rfind("Action:");
    if (action_pos == std::string::npos || action_pos < thought_pos)
        throw MissingAction("reply has no Action segment");

    std::string_view thought_text{text.data() + thought_pos + 8, action_pos - thought_pos - 8};
    thought_text = trim(thought_text);
    if (thought_text.empty()) throw MissingThought("reply has an empty Thought segment");

    std::string_view action_text{text.data() + action_pos + 7, text.size() - action_pos - 7};
    action_text = trim(action_text);
    // Prefer the fenced expression when present.
    size_t fence = action_text.find("```");
    if (fence != std::string_view::npos) {
        size_t end = action_text.find("```", fence + 3);
        if (end != std::string_view::npos) action_text = action_text.substr(fence + 3, end - fence - 3);
    }
    Action action = parse_action(action_text);

    Thought thought;
    thought.text = std::string(thought_text);
    thought.think_block = std::move(think_block);
    return ParsedReply{std::move(thought), std::move(action)};
}

std::string render_reply(const Thought& thought, const Action& action) {
    std::string out;
    if (thought.think_block && !thought.think_block->empty()) {
        out += "<think>\n";
        out += *thought.think_block;
        out += "\n</think>\n\n";
    }
    out += "Thought: " + thought.text + " Action: ```" + render_action(action) + "```";
    return out;
}

nlohmann::ordered_json trajectory_to_json(const Trajectory& t) {
    nlohmann::ordered_json j;
    j["query_id"] = t.query_id;
    j["query_text"] = t.query_text;
    j["site"] = t.site;
    j["steps"] = nlohmann::ordered_json::array();
    for (const auto& s : t.steps) {
        nlohmann::ordered_json js;
        js["observation"] = s.observation.tree_text;
        js["thought"] = s.thought.text;
        js["think_block"] = s.thought.think_block ? nlohmann::ordered_json(*s.thought.think_block)
                                                  : nlohmann::ordered_json(nullptr);
        js["action"] = render_action(s.action);
        js["provenance"] = to_string(s.provenance);
        js["tokens"] = s.tokens;
        j["steps"].push_back(std::move(js));
    }
    j["terminal"] = to_string(t.terminal);
    return j;
}

Trajectory trajectory_from_json(const nlohmann::json& j) {
    Trajectory t;
    t.query_id = j.at("query_id").get<std::string>();
    t.query_text = j.at("query_text").get<std::string>();
    t.site = j.at("site").get<std::string>();
    for (const auto& js : j.at("steps")) {
        Step s;
        s.observation = Observation::from_text(js.at("observation").get<std::string>());
        s.thought.text = js.at("thought").get<std::string>();
        if (js.contains("think_block") && !js.at("think_block").is_null())
            s.thought.think_block = js.at("think_block").get<std::string>();
        s.action = parse_action(js.at("action").get<std::string>());
        s.provenance = provenance_from_string(js.at("provenance").get<std::string>());
        s.tokens = js.value("tokens", 0L);
        t.steps.push_back(std::move(s));
    }
    t.terminal = terminal_from_string(j.at("terminal").get<std::string>());
    return t;
}

nlohmann::ordered_json query_to_json(const QueryRecord& q) {
    nlohmann::ordered_json j;
    j["query_id"] = q.query_id;
    j["query_text"] = q.query_text;
    j["site"] = q.site;
    return j;
}

QueryRecord query_from_json(const nlohmann::json& j) {
    QueryRecord q;
    q.query_id = j.at("query_id").get<std::string>();
    q.query_text = j.at("query_text").get<std::string>();
    q.site = j.at("site").get<std::string>();
    return q;
}

}  // namespace webtraj
