#pragma once

#include <atomic>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "webtraj/errors.hpp"

namespace webtraj {

struct ChatMessage {
    std::string role;  // "system" | "user" | "assistant"
    std::string content;
};

// Metadata the caller knows about the request; scripted backends may key
// replies on it in addition to prompt text.
struct CallInfo {
    std::string query_id;
    std::string fingerprint;
};

struct Completion {
    std::string text;
    long tokens = 0;
};

/// Text-completion abstraction. Implementations must be safely callable from
/// multiple concurrent episode workers.
class Backend {
  public:
    virtual ~Backend() = default;
    virtual Completion complete(const std::string& system,
                                const std::vector<ChatMessage>& messages,
                                const CallInfo& info = {}) = 0;
};

long whitespace_token_count(std::string_view text);

// ---------------------------------------------------------------------------
// Scripted backend: deterministic replies from a JSONL script of
//   {"match": {"query_id"?, "fingerprint"?, "prompt_contains"?}, "reply", "tokens"?}
// All present match fields must hold; prompt_contains may be a string or an
// array of strings (all must occur in system + messages). First matching
// entry wins, so scripts order specific entries before general ones.
// ---------------------------------------------------------------------------

struct ScriptEntry {
    std::optional<std::string> query_id;
    std::optional<std::string> fingerprint;
    std::vector<std::string> prompt_contains;
    std::string reply;
    std::optional<long> tokens;
};

class ScriptedBackend : public Backend {
  public:
    explicit ScriptedBackend(std::vector<ScriptEntry> entries) : entries_(std::move(entries)) {}

    static ScriptedBackend from_file(const std::filesystem::path& path);

    Completion complete(const std::string& system,
                        const std::vector<ChatMessage>& messages,
                        const CallInfo& info = {}) override;

  private:
    const std::vector<ScriptEntry> entries_;  // immutable after load
};

// ---------------------------------------------------------------------------
// Remote backend: chat-completion HTTP API (system/user/assistant message
// array; request carries model, max_tokens, temperature, seed; response read
// from choices[0].message.content and usage.completion_tokens).
// ---------------------------------------------------------------------------

struct BackendConfig {
    enum class Kind { scripted, remote };
    Kind kind = Kind::scripted;
    std::string script_path;  // scripted
    std::string endpoint;     // remote, e.g. http://host:port/v1/chat/completions
    std::string model_name;
    int max_tokens = 1000;
    double temperature = 0.0;
    long seed = 42;
    std::string api_key_env;  // env var holding the key; never the key itself
    int max_retries = 2;
    int max_inflight = 4;
};

class RemoteBackend : public Backend {
  public:
    explicit RemoteBackend(BackendConfig config);

    Completion complete(const std::string& system,
                        const std::vector<ChatMessage>& messages,
                        const CallInfo& info = {}) override;

  private:
    BackendConfig config_;
    std::string host_;
    int port_ = 80;
    std::string path_;
    std::unique_ptr<class InflightGate> gate_;
};

std::unique_ptr<Backend> make_backend(const BackendConfig& config,
                                      const std::filesystem::path& base_dir = {});

/// Decorator that accumulates completion token usage; used by pipeline stages
/// to fill cost ledgers.
class CountingBackend : public Backend {
  public:
    explicit CountingBackend(Backend& inner) : inner_(inner) {}

    Completion complete(const std::string& system,
                        const std::vector<ChatMessage>& messages,
                        const CallInfo& info = {}) override {
        Completion c = inner_.complete(system, messages, info);
        tokens_ += c.tokens;
        calls_ += 1;
        return c;
    }

    long tokens() const { return tokens_.load(); }
    long calls() const { return calls_.load(); }

  private:
    Backend& inner_;
    std::atomic<long> tokens_{0};
    std::atomic<long> calls_{0};
};

}  // namespace webtraj
