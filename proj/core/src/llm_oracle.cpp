#include "feeder/llm_oracle.hpp"

#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "feeder/errors.hpp"

namespace feeder {

using nlohmann::json;

void LlmEndpointConfig::validate() const {
  if (base_url.empty()) throw Error(ErrorKind::InvalidArgument, "llm oracle: base_url is required");
  if (model_name.empty()) throw Error(ErrorKind::InvalidArgument, "llm oracle: model is required");
  if (temperature != 0.0 && !allow_nonzero_temperature) {
    throw Error(ErrorKind::InvalidArgument, "llm oracle: temperature must be 0 unless allow_nonzero_temperature is set");
  }
  if (max_attempts < 1) throw Error(ErrorKind::InvalidArgument, "llm oracle: max_attempts must be >= 1");
  if (prompt_template.find("{query}") == std::string::npos) {
    throw Error(ErrorKind::InvalidArgument, "llm oracle: prompt template lacks {query}");
  }
}

std::string render_prompt(const Corpus& corpus, const DemoSet& context, std::string_view query,
                          std::string_view prompt_template) {
  std::string demos;
  for (const auto& id : corpus.in_corpus_order(context)) {
    const auto& d = corpus.at(id);
    demos += "Q: " + d.x + "\nA: " + d.y + "\n";
  }
  // Single pass, so placeholder-like text inside substituted values stays literal.
  std::string out;
  std::size_t i = 0;
  while (i < prompt_template.size()) {
    if (prompt_template.compare(i, 7, "{demos}") == 0) {
      out += demos;
      i += 7;
    } else if (prompt_template.compare(i, 7, "{query}") == 0) {
      out += query;
      i += 7;
    } else {
      out += prompt_template[i++];
    }
  }
  return out;
}

LlmOracle::LlmOracle(LlmEndpointConfig config, std::shared_ptr<const Corpus> corpus)
    : config_(std::move(config)), corpus_(std::move(corpus)) {
  config_.validate();
  fingerprint_ = Hasher{}
                     .field("llm")
                     .field(config_.base_url)
                     .field(config_.path)
                     .field(config_.model_name)
                     .field(std::to_string(config_.temperature))
                     .field(static_cast<std::uint64_t>(config_.max_tokens))
                     .field(config_.prompt_template)
                     .field(config_.response_pointer)
                     .field(static_cast<std::uint64_t>(config_.compare))
                     .field(corpus_digest(*corpus_))
                     .finish();
}

std::string LlmOracle::complete(const std::string& prompt) const {
  json body = json::object();
  body["model"] = config_.model_name;
  body["prompt"] = prompt;
  body["temperature"] = config_.temperature;
  body["max_tokens"] = config_.max_tokens;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key != nullptr && *key != '\0') {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  std::string last_error;
  auto backoff = config_.initial_backoff;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    httplib::Client client(config_.base_url);
    const auto timeout = std::chrono::duration<double>(config_.request_timeout_s);
    client.set_connection_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    client.set_read_timeout(std::chrono::duration_cast<std::chrono::microseconds>(timeout));
    auto res = client.Post(config_.path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
    } else if (res->status < 200 || res->status >= 300) {
      last_error = "HTTP status " + std::to_string(res->status);
    } else {
      try {
        auto parsed = json::parse(res->body);
        const auto& text = parsed.at(json::json_pointer(config_.response_pointer));
        if (!text.is_string()) throw Error(ErrorKind::OracleUnavailable, "response field is not a string");
        return text.get<std::string>();
      } catch (const Error&) {
        throw;
      } catch (const std::exception& e) {
        // Malformed bodies are not retried.
        throw Error(ErrorKind::OracleUnavailable, std::string("unusable completion response: ") + e.what());
      }
    }
    if (attempt < config_.max_attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw Error(ErrorKind::OracleUnavailable,
              "completion endpoint failed after " + std::to_string(config_.max_attempts) + " attempts: " + last_error);
}

bool LlmOracle::evaluate(const DemoSet& context, const Demonstration& query) const {
  if (!corpus_->contains(query.id)) {
    throw Error(ErrorKind::NotInCorpus, "query '" + query.id.str() + "' is not in the oracle corpus");
  }
  const auto prompt = render_prompt(*corpus_, context, query.x, config_.prompt_template);
  return answers_match(complete(prompt), query.y, config_.compare);
}

}  // namespace feeder
