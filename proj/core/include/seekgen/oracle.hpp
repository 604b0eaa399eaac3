#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace seekgen {

/// Client interface for the external LLM used by question rendering, key
/// column selection, and judge-style entity scoring. Every call may fail;
/// callers must have a deterministic fallback.
class OracleClient {
public:
    virtual ~OracleClient() = default;

    /// `kind` is one of "render", "select_key", "judge"; `prompt` is the
    /// full request text. Returns the completion, or nullopt on failure.
    virtual std::optional<std::string> complete(std::string_view kind, std::string_view prompt) = 0;

    virtual std::string name() const = 0;
};

/// Deterministic stand-in for tests and reproducible runs. Responses are
/// pure functions of the prompt (hash-picked canned variants), so repeated
/// runs produce identical bytes.
class MockOracle final : public OracleClient {
public:
    std::optional<std::string> complete(std::string_view kind, std::string_view prompt) override;
    std::string name() const override { return "mock"; }
};

/// Always fails; forces every caller onto its fallback path.
class NullOracle final : public OracleClient {
public:
    std::optional<std::string> complete(std::string_view, std::string_view) override {
        return std::nullopt;
    }
    std::string name() const override { return "null"; }
};

/// POSTs {kind, prompt} as JSON to `<endpoint>/complete` and expects
/// {"text": ...} back. Endpoint and credentials come from the environment:
/// SEEKGEN_ORACLE_URL and SEEKGEN_ORACLE_KEY.
class HttpOracle final : public OracleClient {
public:
    /// Throws OracleError if SEEKGEN_ORACLE_URL is unset.
    HttpOracle();
    HttpOracle(std::string endpoint, std::string api_key, int timeout_sec = 30);

    std::optional<std::string> complete(std::string_view kind, std::string_view prompt) override;
    std::string name() const override { return "http"; }

private:
    std::string endpoint_;
    std::string api_key_;
    int timeout_sec_;
};

/// Factory for the config value oracle.mode: "mock", "http", or "off".
std::unique_ptr<OracleClient> make_oracle(std::string_view mode);

// Helpers shared by the mock and by prompt-building call sites. Prompts
// carry machine-readable lines ("KEY: value") so the mock can answer
// sensibly without a model behind it.
namespace oracle_prompt {
std::optional<std::string> extract_line(std::string_view prompt, std::string_view key);
}

}  // namespace seekgen
