#pragma once
// Client for chat-completions HTTP inference endpoints: multi-sample
// requests, schema-guided decoding, content-addressed response caching,
// bounded retries with backoff, and a bounded-parallelism gate.

#include <condition_variable>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pairkit/errors.hpp"

namespace pairkit {

enum class ReasoningEffort { low, medium, high };

inline const char* to_string(ReasoningEffort e) {
  switch (e) {
    case ReasoningEffort::low: return "low";
    case ReasoningEffort::medium: return "medium";
    case ReasoningEffort::high: return "high";
  }
  return "medium";
}

struct CompletionRequest {
  std::string model_name;
  std::optional<std::string> system_prompt;
  std::string user_prompt;
  int n_samples = 1;            // >= 1
  double temperature = 0.0;     // >= 0
  double top_p = 1.0;           // in (0, 1]
  int max_tokens = 0;           // 0 = backend default
  std::optional<nlohmann::json> response_schema;
  std::optional<ReasoningEffort> reasoning_effort;
  // Distinguishes deliberate re-rolls of an otherwise identical request
  // (e.g. judge retries after a parse failure) in the cache.
  std::string cache_salt;
};

struct TokenUsage {
  long prompt_tokens = 0;
  long completion_tokens = 0;
};

struct CompletionBatch {
  std::string request_digest;
  std::vector<std::string> completions;  // |completions| == n_samples
  TokenUsage usage;
  bool from_cache = false;
  int attempts = 0;  // network attempts; 0 when served from cache
};

// Stable content hash (SHA-256 hex) over every request field. Equal requests
// yield equal digests in any process on any platform.
std::string cache_key(const CompletionRequest& request);

struct TransportResponse {
  enum class Failure { none, transport, timeout };
  Failure failure = Failure::none;
  int status = 0;
  std::string body;
  std::string error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual TransportResponse post(const std::string& path, const std::string& body,
                                 const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

// Real HTTP transport (cpp-httplib). base_url like "http://host:port".
std::unique_ptr<Transport> make_http_transport(const std::string& base_url, int timeout_ms);

class TransportError : public Error {
 public:
  TransportError(const std::string& what, int attempts) : Error(what), attempts_(attempts) {}
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

// Non-retryable backend rejection (4xx); carries the raw response body.
class BackendError : public Error {
 public:
  BackendError(const std::string& what, int status, std::string body)
      : Error(what), status_(status), body_(std::move(body)) {}
  int status() const { return status_; }
  const std::string& body() const { return body_; }

 private:
  int status_;
  std::string body_;
};

struct RetryPolicy {
  int max_attempts = 5;
  int base_delay_ms = 250;  // doubled per attempt, +/-50% jitter
  int max_delay_ms = 8000;
  bool jitter = true;
};

struct ClientConfig {
  std::string api_key;  // sent as Bearer token when non-empty
  std::filesystem::path cache_dir;
  int max_in_flight = 4;
  RetryPolicy retry;
  std::string completions_path = "/v1/chat/completions";
};

// Thread-safe. At most max_in_flight transport calls are outstanding at any
// moment; cache writes are atomic and write-once per digest.
class LlmClient {
 public:
  LlmClient(ClientConfig config, std::shared_ptr<Transport> transport);

  // Returns n_samples completions in sample order. Cache hits perform no
  // network call and come back with from_cache=true.
  CompletionBatch complete(const CompletionRequest& request);

 private:
  std::optional<std::string> cache_lookup(const std::string& digest) const;
  void cache_store(const std::string& digest, const std::string& model,
                   const std::string& body) const;
  CompletionBatch parse_response(const CompletionRequest& request, const std::string& digest,
                                 const std::string& body, bool from_cache, int attempts) const;

  ClientConfig config_;
  std::shared_ptr<Transport> transport_;

  // Runtime-sized counting semaphore.
  std::mutex gate_mutex_;
  std::condition_variable gate_cv_;
  int in_flight_ = 0;
};

}  // namespace pairkit
