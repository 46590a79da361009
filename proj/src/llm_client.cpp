#include "pairkit/llm_client.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <thread>

#include "pairkit/detrand.hpp"
#include "pairkit/jsonl.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

namespace pairkit {

namespace {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xf];
  }
  return out;
}

void validate_request(const CompletionRequest& r) {
  if (r.n_samples < 1) throw DataError("completion request: n_samples must be >= 1");
  if (r.temperature < 0.0) throw DataError("completion request: temperature must be >= 0");
  if (!(r.top_p > 0.0 && r.top_p <= 1.0))
    throw DataError("completion request: top_p must be in (0, 1]");
}

json request_body(const CompletionRequest& r, bool include_schema) {
  json messages = json::array();
  if (r.system_prompt) messages.push_back({{"role", "system"}, {"content", *r.system_prompt}});
  messages.push_back({{"role", "user"}, {"content", r.user_prompt}});
  json body{{"model", r.model_name},
            {"messages", std::move(messages)},
            {"n", r.n_samples},
            {"temperature", r.temperature},
            {"top_p", r.top_p}};
  if (r.max_tokens > 0) body["max_tokens"] = r.max_tokens;
  if (r.reasoning_effort) body["reasoning_effort"] = to_string(*r.reasoning_effort);
  if (include_schema && r.response_schema) {
    body["response_format"] = {
        {"type", "json_schema"},
        {"json_schema",
         {{"name", "response"}, {"strict", true}, {"schema", *r.response_schema}}}};
  }
  return body;
}

class HttpTransport : public Transport {
 public:
  HttpTransport(std::string base_url, int timeout_ms)
      : base_url_(std::move(base_url)), timeout_ms_(timeout_ms) {}

  TransportResponse post(const std::string& path, const std::string& body,
                         const std::vector<std::pair<std::string, std::string>>& headers) override {
    httplib::Client client(base_url_);
    client.set_connection_timeout(std::chrono::milliseconds(timeout_ms_));
    client.set_read_timeout(std::chrono::milliseconds(timeout_ms_));
    client.set_write_timeout(std::chrono::milliseconds(timeout_ms_));
    httplib::Headers h;
    for (const auto& [k, v] : headers) h.emplace(k, v);
    auto res = client.Post(path, h, body, "application/json");
    TransportResponse out;
    if (!res) {
      const auto err = res.error();
      out.failure = (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read)
                        ? TransportResponse::Failure::timeout
                        : TransportResponse::Failure::transport;
      out.error = httplib::to_string(err);
      return out;
    }
    out.status = res->status;
    out.body = res->body;
    return out;
  }

 private:
  std::string base_url_;
  int timeout_ms_;
};

}  // namespace

std::unique_ptr<Transport> make_http_transport(const std::string& base_url, int timeout_ms) {
  return std::make_unique<HttpTransport>(base_url, timeout_ms);
}

std::string cache_key(const CompletionRequest& r) {
  // Canonical serialization: every field present (null when unset), keys in
  // nlohmann's sorted order, doubles in shortest round-trip form.
  json j;
  j["model_name"] = r.model_name;
  j["system_prompt"] = r.system_prompt ? json(*r.system_prompt) : json(nullptr);
  j["user_prompt"] = r.user_prompt;
  j["n_samples"] = r.n_samples;
  j["temperature"] = r.temperature;
  j["top_p"] = r.top_p;
  j["max_tokens"] = r.max_tokens;
  j["response_schema"] = r.response_schema ? *r.response_schema : json(nullptr);
  j["reasoning_effort"] = r.reasoning_effort ? json(to_string(*r.reasoning_effort)) : json(nullptr);
  j["cache_salt"] = r.cache_salt;
  return sha256_hex(j.dump());
}

LlmClient::LlmClient(ClientConfig config, std::shared_ptr<Transport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  if (config_.max_in_flight < 1) throw ConfigError("max_in_flight must be >= 1");
}

std::optional<std::string> LlmClient::cache_lookup(const std::string& digest) const {
  if (config_.cache_dir.empty()) return std::nullopt;
  const auto path = config_.cache_dir / (digest + ".resp");
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  try {
    const json h = json::parse(header);
    if (h.at("digest").get<std::string>() != digest)
      throw DataError("cache entry digest mismatch: " + path.string());
  } catch (const json::exception&) {
    throw DataError("corrupt cache header: " + path.string());
  }
  std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return body;
}

void LlmClient::cache_store(const std::string& digest, const std::string& model,
                            const std::string& body) const {
  if (config_.cache_dir.empty()) return;
  const auto path = config_.cache_dir / (digest + ".resp");
  if (std::filesystem::exists(path)) return;  // write-once
  json header{{"digest", digest},
              {"model", model},
              {"created_unix", static_cast<long>(std::chrono::duration_cast<std::chrono::seconds>(
                                                     std::chrono::system_clock::now().time_since_epoch())
                                                     .count())}};
  jsonl::atomic_write(path, header.dump() + "\n" + body);
}

CompletionBatch LlmClient::parse_response(const CompletionRequest& request,
                                          const std::string& digest, const std::string& body,
                                          bool from_cache, int attempts) const {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw BackendError(std::string("unparseable completion response: ") + e.what(), 200, body);
  }
  if (!j.contains("choices") || !j["choices"].is_array())
    throw BackendError("completion response has no choices array", 200, body);

  struct Choice {
    long index;
    std::string content;
  };
  std::vector<Choice> choices;
  long fallback_index = 0;
  for (const auto& c : j["choices"]) {
    Choice ch;
    ch.index = c.contains("index") ? c["index"].get<long>() : fallback_index;
    ++fallback_index;
    if (c.contains("message") && c["message"].contains("content") &&
        c["message"]["content"].is_string()) {
      ch.content = c["message"]["content"].get<std::string>();
    } else if (c.contains("text") && c["text"].is_string()) {
      ch.content = c["text"].get<std::string>();
    } else {
      throw BackendError("completion choice has no message content", 200, body);
    }
    choices.push_back(std::move(ch));
  }
  std::stable_sort(choices.begin(), choices.end(),
                   [](const Choice& a, const Choice& b) { return a.index < b.index; });

  CompletionBatch batch;
  batch.request_digest = digest;
  batch.from_cache = from_cache;
  batch.attempts = attempts;
  for (auto& c : choices) batch.completions.push_back(std::move(c.content));
  if (static_cast<int>(batch.completions.size()) != request.n_samples)
    throw BackendError("backend returned " + std::to_string(batch.completions.size()) +
                           " completions, expected " + std::to_string(request.n_samples),
                       200, body);
  if (j.contains("usage") && j["usage"].is_object()) {
    const auto& u = j["usage"];
    if (u.contains("prompt_tokens")) batch.usage.prompt_tokens = u["prompt_tokens"].get<long>();
    if (u.contains("completion_tokens"))
      batch.usage.completion_tokens = u["completion_tokens"].get<long>();
  }
  return batch;
}

namespace {

// RAII slot in the bounded-parallelism gate.
class GateSlot {
 public:
  GateSlot(std::mutex& m, std::condition_variable& cv, int& in_flight, int limit)
      : m_(m), cv_(cv), in_flight_(in_flight) {
    std::unique_lock<std::mutex> lock(m_);
    cv_.wait(lock, [&] { return in_flight_ < limit; });
    ++in_flight_;
  }
  ~GateSlot() {
    {
      std::lock_guard<std::mutex> lock(m_);
      --in_flight_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex& m_;
  std::condition_variable& cv_;
  int& in_flight_;
};

int backoff_delay_ms(const RetryPolicy& policy, int attempt, std::uint64_t jitter_key) {
  long delay = policy.base_delay_ms;
  for (int i = 1; i < attempt && delay < policy.max_delay_ms; ++i) delay *= 2;
  delay = std::min<long>(delay, policy.max_delay_ms);
  if (policy.jitter && delay > 0) {
    // Deterministic jitter in [0.5, 1.5); no entropy source needed.
    const double f = 0.5 + static_cast<double>(detrand::mix(jitter_key, attempt) >> 11) * 0x1.0p-53;
    delay = static_cast<long>(delay * f);
  }
  return static_cast<int>(delay);
}

}  // namespace

CompletionBatch LlmClient::complete(const CompletionRequest& request) {
  validate_request(request);
  const std::string digest = cache_key(request);
  if (auto cached = cache_lookup(digest))
    return parse_response(request, digest, *cached, true, 0);

  std::vector<std::pair<std::string, std::string>> headers;
  if (!config_.api_key.empty()) headers.emplace_back("Authorization", "Bearer " + config_.api_key);

  const std::uint64_t jitter_key = detrand::fnv1a64(digest);
  bool include_schema = request.response_schema.has_value();
  int attempts = 0;
  for (;;) {
    ++attempts;
    const std::string body = request_body(request, include_schema).dump();
    TransportResponse res;
    {
      GateSlot slot(gate_mutex_, gate_cv_, in_flight_, config_.max_in_flight);
      res = transport_->post(config_.completions_path, body, headers);
    }
    const bool can_retry = attempts < config_.retry.max_attempts;
    if (res.failure == TransportResponse::Failure::timeout) {
      if (!can_retry)
        throw TimeoutError("request timed out after " + std::to_string(attempts) + " attempts",
                           attempts);
    } else if (res.failure == TransportResponse::Failure::transport) {
      if (!can_retry)
        throw TransportError("transport failure after " + std::to_string(attempts) +
                                 " attempts: " + res.error,
                             attempts);
    } else if (res.status == 200) {
      cache_store(digest, request.model_name, res.body);
      return parse_response(request, digest, res.body, false, attempts);
    } else if (res.status == 429 || res.status >= 500) {
      if (!can_retry)
        throw TransportError("backend status " + std::to_string(res.status) + " after " +
                                 std::to_string(attempts) + " attempts",
                             attempts);
    } else {
      // Other 4xx. If schema guidance was attached, assume the backend does
      // not support it, drop it once and decode plain; the caller validates
      // locally. Otherwise the request itself is bad.
      if (include_schema) {
        include_schema = false;
        continue;
      }
      throw BackendError("backend rejected request with status " + std::to_string(res.status),
                         res.status, res.body);
    }
    std::this_thread::sleep_for(
        std::chrono::milliseconds(backoff_delay_ms(config_.retry, attempts, jitter_key)));
  }
}

}  // namespace pairkit
