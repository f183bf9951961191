#include <atomic>
#include <random>

#include <feeder/approx.hpp>
#include <feeder/sufficiency.hpp>
#include <feeder/world_gen.hpp>

#include "check.hpp"

using namespace feeder;
using testing::S;

namespace {

/// Fails every call after the first `budget`.
class FlakyOracle final : public Oracle {
 public:
  FlakyOracle(OraclePtr base, std::size_t budget) : base_(std::move(base)), budget_(budget) {}
  Digest fingerprint() const override { return base_->fingerprint(); }
  const Corpus& corpus() const override { return base_->corpus(); }

 protected:
  bool evaluate(const DemoSet& context, const Demonstration& query) const override {
    if (calls_.fetch_add(1) >= budget_) throw Error(ErrorKind::OracleUnavailable, "endpoint down");
    return base_->is_correct(context, query);
  }

 private:
  OraclePtr base_;
  std::size_t budget_;
  mutable std::atomic<std::size_t> calls_{0};
};

}  // namespace

TEST_CASE("one round on the four-demo world") {
  auto f = testing::tournament_world();
  auto r = approx_feeder(*f.oracle, f.corpus, TreeConfig{});
  CHECK(r.feeder == S({"d1", "d3", "d4"}));
  REQUIRE(r.rounds.size() == 1);
  const auto& round = r.rounds[0];
  REQUIRE(round.pairs.size() == 2);
  CHECK(round.pairs[0].kind == PairCase::LeftSufficient);
  CHECK(to_string(round.pairs[0].kind) == "II-left");
  CHECK(round.pairs[0].survivor == S({"d1"}));
  CHECK(round.pairs[1].kind == PairCase::Neither);
  CHECK(to_string(round.pairs[1].kind) == "III");
  CHECK(round.pairs[1].survivor == S({"d3", "d4"}));
  CHECK_FALSE(round.carried.has_value());
  CHECK(round.sufficiency_checks == 4);
  CHECK(r.sufficiency_checks == 4);
  CHECK(r.input_size == 4);
  CHECK(set_sufficient(*f.oracle, r.feeder, f.corpus.ids()));
}

TEST_CASE("a second round shrinks further") {
  auto f = testing::tournament_world();
  TreeConfig c;
  c.rounds = 2;
  auto r = approx_feeder(*f.oracle, f.corpus, c);
  REQUIRE(r.rounds.size() == 2);
  CHECK(r.rounds[1].pairs.size() == 1);
  CHECK(r.rounds[1].pairs[0].kind == PairCase::Neither);
  CHECK(r.feeder == S({"d1", "d3", "d4"}));
  CHECK(r.runs.size() == 1);
  CHECK(r.runs[0].rounds_executed == 2);
}

TEST_CASE("mutual sufficiency keeps the smaller node, right on ties") {
  auto f = testing::make_fixture({{"a", {"F"}, {"F"}}, {"b", {"F"}, {"F"}}});
  auto t = run_round(*f.oracle, {S({"a"}), S({"b"})});
  REQUIRE(t.pairs.size() == 1);
  CHECK(t.pairs[0].kind == PairCase::MutuallySufficient);
  CHECK(to_string(t.pairs[0].kind) == "I");
  CHECK(t.pairs[0].survivor == S({"b"}));

  auto g = testing::make_fixture({{"a", {"F"}, {"F"}}, {"b", {"F"}, {"F"}}, {"c", {"F"}, {"F"}}});
  auto u = run_round(*g.oracle, {S({"a", "b"}), S({"c"})});
  CHECK(u.pairs[0].survivor == S({"c"}));
  auto v = run_round(*g.oracle, {S({"c"}), S({"a", "b"})});
  CHECK(v.pairs[0].survivor == S({"c"}));
}

TEST_CASE("right-sufficient pairs keep the right node") {
  auto f = testing::make_fixture({{"a", {}, {"F"}}, {"b", {"F"}, {"F"}}});
  auto t = run_round(*f.oracle, {S({"a"}), S({"b"})});
  CHECK(t.pairs[0].kind == PairCase::RightSufficient);
  CHECK(to_string(t.pairs[0].kind) == "II-right");
  CHECK(t.pairs[0].survivor == S({"b"}));
}

TEST_CASE("odd node is carried") {
  auto f = testing::make_fixture({{"a", {"A"}, {"A"}}, {"b", {"B"}, {"B"}}, {"c", {"C"}, {"C"}}});
  auto t = run_round(*f.oracle, {S({"a"}), S({"b"}), S({"c"})});
  CHECK(t.pairs.size() == 1);
  REQUIRE(t.carried.has_value());
  CHECK(*t.carried == S({"c"}));
  CHECK(t.survivors.size() == 2);
  CHECK(t.survivors.back() == S({"c"}));
}

TEST_CASE("single node costs nothing") {
  auto f = testing::make_fixture({{"a", {"A"}, {"A"}}});
  auto counting = std::make_shared<CountingOracle>(f.oracle);
  TreeConfig c;
  c.rounds = 3;
  auto r = approx_feeder(*counting, f.corpus, c);
  CHECK(r.feeder == S({"a"}));
  CHECK(counting->calls() == 0);
  CHECK(r.oracle_calls == 0);
  CHECK(r.runs[0].early_stop);
}

TEST_CASE("input validation") {
  auto f = testing::tournament_world();
  CHECK_KIND(run_round(*f.oracle, {S({"d1", "d2"}), S({"d2"})}), ErrorKind::NodesNotDisjoint);
  CHECK_KIND(run_round(*f.oracle, {}), ErrorKind::InvalidArgument);
  std::vector<DemoId> none;
  CHECK_KIND(approx_feeder(*f.oracle, none, TreeConfig{}), ErrorKind::EmptyInput);
  CHECK_KIND(approx_feeder(*f.oracle, Corpus{}, TreeConfig{}), ErrorKind::EmptyInput);
  TreeConfig bad;
  bad.rounds = 0;
  CHECK_KIND(approx_feeder(*f.oracle, f.corpus, bad), ErrorKind::InvalidArgument);
}

TEST_CASE("call budget") {
  auto k = [](int rounds, int runs) {
    TreeConfig c;
    c.rounds = rounds;
    c.runs = runs;
    return c;
  };
  CHECK(call_budget(4, k(1, 1)) == 4);
  CHECK(call_budget(5, k(1, 1)) == 4);
  CHECK(call_budget(8, k(2, 1)) == 12);
  CHECK(call_budget(8, k(2, 2)) == 24);
  CHECK(call_budget(1, k(5, 1)) == 0);
  CHECK(call_budget(3, k(4, 1)) == 4);  // 3 -> 2 -> 1
}

TEST_CASE("zero-shot worlds halve per round") {
  for (std::size_t n : {2u, 5u, 9u, 16u}) {
    std::vector<testing::Spec> specs;
    for (std::size_t i = 0; i < n; ++i) specs.push_back({"d" + std::to_string(10 + i), {}, {"B"}});
    auto f = testing::make_fixture(specs, {"B"});
    auto r = approx_feeder(*f.oracle, f.corpus, TreeConfig{});
    CHECK(r.feeder.size() == (n + 1) / 2);
  }
}

TEST_CASE("results are independent of fan-out and sufficient on random worlds") {
  std::mt19937_64 rng(404);
  for (int w = 0; w < 15; ++w) {
    WorldParams p;
    p.n_demos = 13 + w;
    p.n_facts = 10;
    p.redundant_fraction = 0.2;
    auto g = random_world(rng, p);
    for (bool shuffle : {false, true}) {
      TreeConfig c;
      c.rounds = 3;
      c.runs = 2;
      c.shuffle_pairs = shuffle;
      c.pairing_seed = 99;
      auto serial = approx_feeder(*g.oracle, g.train, c);
      c.jobs = 4;
      auto parallel = approx_feeder(*g.oracle, g.train, c);
      CHECK(serial.feeder == parallel.feeder);
      CHECK(serial.sufficiency_checks == parallel.sufficiency_checks);
      CHECK(serial.rounds.size() == parallel.rounds.size());
      CHECK(set_sufficient(*g.oracle, serial.feeder, g.train.ids()));
      CHECK(serial.sufficiency_checks <= call_budget(g.train.size(), c));
      CHECK(serial.feeder.size() < g.train.size());
    }
  }
}

TEST_CASE("shuffled pairing depends on the seed only") {
  std::mt19937_64 rng(9);
  WorldParams p;
  p.n_demos = 20;
  auto g = random_world(rng, p);
  TreeConfig c;
  c.shuffle_pairs = true;
  c.pairing_seed = 5;
  auto a = approx_feeder(*g.oracle, g.train, c);
  auto b = approx_feeder(*g.oracle, g.train, c);
  CHECK(a.feeder == b.feeder);
  REQUIRE(a.rounds[0].pairs.size() == b.rounds[0].pairs.size());
  for (std::size_t i = 0; i < a.rounds[0].pairs.size(); ++i) {
    CHECK(a.rounds[0].pairs[i].left == b.rounds[0].pairs[i].left);
  }
}

TEST_CASE("oracle failure keeps the completed rounds") {
  auto f = testing::tournament_world();
  TreeConfig c;
  c.rounds = 2;
  FlakyOracle flaky(f.oracle, 4);  // round one uses exactly four calls
  try {
    approx_feeder(flaky, f.corpus, c);
    FAIL("expected RunAborted");
  } catch (const RunAborted& e) {
    CHECK(e.kind() == ErrorKind::OracleUnavailable);
    CHECK(e.partial().size() == 1);
  }
}
