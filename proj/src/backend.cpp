#include "webtraj/backend.hpp"

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "webtraj/io.hpp"

namespace webtraj {

long whitespace_token_count(std::string_view text) {
    long count = 0;
    bool in_token = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_token = false;
        } else if (!in_token) {
            in_token = true;
            ++count;
        }
    }
    return count;
}

ScriptedBackend ScriptedBackend::from_file(const std::filesystem::path& path) {
    std::vector<ScriptEntry> entries;
    for (const auto& j : read_jsonl(path)) {
        ScriptEntry e;
        if (j.contains("match")) {
            const auto& m = j.at("match");
            if (m.contains("query_id")) e.query_id = m.at("query_id").get<std::string>();
            if (m.contains("fingerprint")) e.fingerprint = m.at("fingerprint").get<std::string>();
            if (m.contains("prompt_contains")) {
                const auto& pc = m.at("prompt_contains");
                if (pc.is_string()) {
                    e.prompt_contains.push_back(pc.get<std::string>());
                } else {
                    for (const auto& s : pc) e.prompt_contains.push_back(s.get<std::string>());
                }
            }
        }
        e.reply = j.at("reply").get<std::string>();
        if (j.contains("tokens")) e.tokens = j.at("tokens").get<long>();
        entries.push_back(std::move(e));
    }
    return ScriptedBackend(std::move(entries));
}

Completion ScriptedBackend::complete(const std::string& system,
                                     const std::vector<ChatMessage>& messages,
                                     const CallInfo& info) {
    std::string prompt = system;
    for (const auto& m : messages) {
        prompt += '\n';
        prompt += m.content;
    }
    for (const auto& e : entries_) {
        if (e.query_id && *e.query_id != info.query_id) continue;
        if (e.fingerprint && *e.fingerprint != info.fingerprint) continue;
        bool ok = true;
        for (const auto& needle : e.prompt_contains) {
            if (prompt.find(needle) == std::string::npos) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        return Completion{e.reply, e.tokens ? *e.tokens : whitespace_token_count(e.reply)};
    }
    throw ScriptMiss("no scripted reply for query_id='" + info.query_id + "' fingerprint='" + info.fingerprint +
                     "' (prompt length " + std::to_string(prompt.size()) + ")");
}

// Bounds concurrent remote requests.
class InflightGate {
  public:
    explicit InflightGate(int max_inflight) : sem_(std::max(1, max_inflight)) {}
    void acquire() { sem_.acquire(); }
    void release() { sem_.release(); }

  private:
    std::counting_semaphore<256> sem_;
};

namespace {

void parse_endpoint(const std::string& endpoint, std::string& host, int& port, std::string& path) {
    std::string rest = endpoint;
    if (rest.rfind("http://", 0) == 0) {
        rest = rest.substr(7);
        port = 80;
    } else if (rest.rfind("https://", 0) == 0) {
        throw ConfigError("https endpoints are not supported; use an http proxy or gateway");
    }
    size_t slash = rest.find('/');
    std::string hostport = slash == std::string::npos ? rest : rest.substr(0, slash);
    path = slash == std::string::npos ? "/" : rest.substr(slash);
    size_t colon = hostport.find(':');
    if (colon == std::string::npos) {
        host = hostport;
    } else {
        host = hostport.substr(0, colon);
        port = std::stoi(hostport.substr(colon + 1));
    }
    if (host.empty()) throw ConfigError("remote backend endpoint has no host: " + endpoint);
}

}  // namespace

RemoteBackend::RemoteBackend(BackendConfig config) : config_(std::move(config)) {
    parse_endpoint(config_.endpoint, host_, port_, path_);
    gate_ = std::make_unique<InflightGate>(config_.max_inflight);
}

Completion RemoteBackend::complete(const std::string& system,
                                   const std::vector<ChatMessage>& messages,
                                   const CallInfo&) {
    nlohmann::ordered_json body;
    body["model"] = config_.model_name;
    body["messages"] = nlohmann::ordered_json::array();
    if (!system.empty()) body["messages"].push_back({{"role", "system"}, {"content", system}});
    for (const auto& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    body["max_tokens"] = config_.max_tokens;
    body["temperature"] = config_.temperature;
    body["seed"] = config_.seed;

    httplib::Headers headers;
    if (!config_.api_key_env.empty()) {
        if (const char* key = std::getenv(config_.api_key_env.c_str()))
            headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    gate_->acquire();
    struct Release {
        InflightGate* g;
        ~Release() { g->release(); }
    } release{gate_.get()};

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(100 * attempt));
        httplib::Client client(host_, port_);
        client.set_read_timeout(120, 0);
        auto res = client.Post(path_, headers, body.dump(), "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500) {
            last_error = "server error: HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200)
            throw BackendUnavailable("chat completion failed: HTTP " + std::to_string(res->status) + " " + res->body);
        try {
            auto j = nlohmann::json::parse(res->body);
            Completion c;
            c.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
            if (j.contains("usage") && j.at("usage").contains("completion_tokens"))
                c.tokens = j.at("usage").at("completion_tokens").get<long>();
            else
                c.tokens = whitespace_token_count(c.text);
            return c;
        } catch (const nlohmann::json::exception& e) {
            throw BackendUnavailable(std::string("malformed chat completion response: ") + e.what());
        }
    }
    throw BackendUnavailable("chat completion unreachable after " + std::to_string(config_.max_retries + 1) +
                             " attempts: " + last_error);
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config, const std::filesystem::path& base_dir) {
    if (config.kind == BackendConfig::Kind::scripted) {
        std::filesystem::path p = config.script_path;
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        return std::make_unique<ScriptedBackend>(ScriptedBackend::from_file(p));
    }
    return std::make_unique<RemoteBackend>(config);
}

}  // namespace webtraj
