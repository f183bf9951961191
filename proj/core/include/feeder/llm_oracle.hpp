#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "feeder/oracle.hpp"

namespace feeder {

inline constexpr std::string_view kDefaultPromptTemplate = "{demos}Q: {query}\nA:";

/// HTTP completion endpoint used as the model under evaluation.
struct LlmEndpointConfig {
  std::string base_url;                 // scheme://host[:port]
  std::string path = "/v1/completions";
  std::string model_name;
  std::string api_key_env;              // name of the environment variable holding the key
  double temperature = 0.0;
  bool allow_nonzero_temperature = false;
  int max_tokens = 32;
  std::string prompt_template{kDefaultPromptTemplate};
  std::string response_pointer = "/choices/0/text";  // JSON pointer to the generated text
  double request_timeout_s = 30.0;
  CompareMode compare = CompareMode::Exact;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};

  /// Rejects a non-zero temperature unless explicitly allowed.
  void validate() const;
};

/// Renders demonstrations as "Q: {x}\nA: {y}\n" blocks in corpus order and
/// substitutes them and the query into the template.
std::string render_prompt(const Corpus& corpus, const DemoSet& context, std::string_view query,
                          std::string_view prompt_template = kDefaultPromptTemplate);

class LlmOracle final : public Oracle {
 public:
  LlmOracle(LlmEndpointConfig config, std::shared_ptr<const Corpus> corpus);

  const LlmEndpointConfig& config() const noexcept { return config_; }
  Digest fingerprint() const override { return fingerprint_; }
  const Corpus& corpus() const override { return *corpus_; }

  /// Raw completion for a prompt; retries transport failures with exponential
  /// backoff, then throws OracleUnavailable.
  std::string complete(const std::string& prompt) const;

 protected:
  bool evaluate(const DemoSet& context, const Demonstration& query) const override;

 private:
  LlmEndpointConfig config_;
  std::shared_ptr<const Corpus> corpus_;
  Digest fingerprint_;
};

}  // namespace feeder
