#include <atomic>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include <feeder/llm_oracle.hpp>

#include "check.hpp"

using namespace feeder;
using testing::S;

namespace {

/// In-process completion endpoint on an ephemeral port.
class MockServer {
 public:
  explicit MockServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

std::string completion(const std::string& text) {
  nlohmann::json body;
  body["choices"] = nlohmann::json::array({{{"text", text}}});
  return body.dump();
}

std::shared_ptr<const Corpus> capitals() {
  return std::make_shared<const Corpus>(Corpus({{DemoId("fr"), "capital of France?", "Paris"},
                                                {DemoId("de"), "capital of Germany?", "Berlin"}}));
}

LlmEndpointConfig config_for(const MockServer& server) {
  LlmEndpointConfig c;
  c.base_url = server.url();
  c.model_name = "mock";
  c.max_attempts = 2;
  c.initial_backoff = std::chrono::milliseconds(1);
  c.request_timeout_s = 5;
  return c;
}

}  // namespace

TEST_CASE("llm oracle judges completions") {
  MockServer server([](const httplib::Request& req, httplib::Response& res) {
    auto body = nlohmann::json::parse(req.body);
    const auto prompt = body["prompt"].get<std::string>();
    // Knows Germany only when shown the France demo.
    std::string answer = " Paris";
    if (prompt.ends_with("capital of Germany?\nA:")) {
      answer = prompt.find("Q: capital of France?\nA: Paris\n") != std::string::npos ? " Berlin" : " Bonn";
    }
    res.set_content(completion(answer), "application/json");
  });
  LlmOracle oracle(config_for(server), capitals());
  CHECK(oracle.is_correct(S({}), DemoId("fr")));
  CHECK_FALSE(oracle.is_correct(S({}), DemoId("de")));
  CHECK(oracle.is_correct(S({"fr"}), DemoId("de")));
}

TEST_CASE("llm oracle sends deterministic requests and the api key") {
  std::mutex mu;
  nlohmann::json seen;
  std::string auth;
  MockServer server([&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard lock(mu);
    seen = nlohmann::json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(completion("Paris"), "application/json");
  });
  ::setenv("FEEDER_TEST_KEY", "sekret", 1);
  auto cfg = config_for(server);
  cfg.api_key_env = "FEEDER_TEST_KEY";
  LlmOracle oracle(cfg, capitals());
  CHECK(oracle.is_correct(S({}), DemoId("fr")));
  std::lock_guard lock(mu);
  CHECK(seen["temperature"].get<double>() == 0.0);
  CHECK(seen["model"] == "mock");
  CHECK(seen["prompt"] == "Q: capital of France?\nA:");
  CHECK(auth == "Bearer sekret");
  ::unsetenv("FEEDER_TEST_KEY");
}

TEST_CASE("llm oracle retries then reports unavailability") {
  std::atomic<int> hits{0};
  MockServer server([&](const httplib::Request&, httplib::Response& res) {
    if (hits.fetch_add(1) == 0) {
      res.status = 503;
      return;
    }
    res.set_content(completion("Paris"), "application/json");
  });
  LlmOracle oracle(config_for(server), capitals());
  CHECK(oracle.is_correct(S({}), DemoId("fr")));
  CHECK(hits.load() == 2);

  MockServer down([](const httplib::Request&, httplib::Response& res) { res.status = 500; });
  LlmOracle failing(config_for(down), capitals());
  CHECK_KIND(failing.is_correct(S({}), DemoId("fr")), ErrorKind::OracleUnavailable);

  MockServer garbage([](const httplib::Request&, httplib::Response& res) { res.set_content("{}", "application/json"); });
  LlmOracle unusable(config_for(garbage), capitals());
  CHECK_KIND(unusable.is_correct(S({}), DemoId("fr")), ErrorKind::OracleUnavailable);
}

TEST_CASE("llm oracle containment comparison") {
  MockServer server([](const httplib::Request&, httplib::Response& res) {
    res.set_content(completion("The capital is Paris."), "application/json");
  });
  auto cfg = config_for(server);
  CHECK_FALSE(LlmOracle(cfg, capitals()).is_correct(S({}), DemoId("fr")));
  cfg.compare = CompareMode::Containment;
  CHECK(LlmOracle(cfg, capitals()).is_correct(S({}), DemoId("fr")));
}

TEST_CASE("llm endpoint config validation") {
  LlmEndpointConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.model_name = "m";
  CHECK_NOTHROW(c.validate());
  c.temperature = 0.7;
  CHECK_KIND(c.validate(), ErrorKind::InvalidArgument);
  c.allow_nonzero_temperature = true;
  CHECK_NOTHROW(c.validate());
  c.prompt_template = "{demos} only";
  CHECK_KIND(c.validate(), ErrorKind::InvalidArgument);
  LlmEndpointConfig missing;
  CHECK_KIND(missing.validate(), ErrorKind::InvalidArgument);
}

TEST_CASE("llm oracle fingerprint tracks configuration") {
  LlmEndpointConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.model_name = "m";
  LlmOracle a(c, capitals());
  LlmOracle b(c, capitals());
  CHECK(a.fingerprint() == b.fingerprint());
  c.model_name = "other";
  CHECK(LlmOracle(c, capitals()).fingerprint() != a.fingerprint());
  CHECK_KIND(a.is_correct(S({}), Demonstration{DemoId("xx"), "q", "a"}), ErrorKind::NotInCorpus);
}
