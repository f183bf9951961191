#include <random>

#include <feeder/analysis.hpp>
#include <feeder/approx.hpp>
#include <feeder/embedding.hpp>
#include <feeder/exact.hpp>
#include <feeder/world_gen.hpp>

#include "check.hpp"

using namespace feeder;
using testing::S;

namespace {

TrialSpace space(std::initializer_list<TrialOutcome> outcomes) { return TrialSpace{outcomes}; }

}  // namespace

TEST_CASE("accuracy on the two-fact world") {
  auto f = testing::two_fact_world();
  auto test = f.corpus.subset(S({"d_m"}));
  auto emb = std::make_shared<TrigramEmbedder>();
  for (auto kind : {SelectorKind::Similarity, SelectorKind::Random, SelectorKind::Diversity}) {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      Selector sel(kind, emb, 1.0, seed);
      CHECK(icl_accuracy(*f.oracle, S({"d_i", "d_j"}), sel, 2, test) == 1.0);
      CHECK(icl_accuracy(*f.oracle, S({"d_i", "d_j"}), sel, 1, test) == 0.0);
    }
  }
  Selector sel(SelectorKind::Similarity, emb);
  CHECK_KIND(icl_accuracy(*f.oracle, DemoSet{}, sel, 1, test), ErrorKind::EmptyPool);
}

TEST_CASE("accuracy extremes and order invariance") {
  auto saturated = testing::make_fixture({{"a", {}, {"B"}}, {"b", {}, {"B"}}, {"t", {}, {"B"}}}, {"B"});
  Selector sel(SelectorKind::Similarity, std::make_shared<TrigramEmbedder>());
  CHECK(icl_accuracy(*saturated.oracle, S({"a", "b"}), sel, 1, saturated.corpus.subset(S({"t"}))) == 1.0);

  auto blank = testing::make_fixture({{"a", {"A"}, {"A"}}, {"t", {}, {"Z"}}, {"u", {}, {"Y"}}});
  CHECK(icl_accuracy(*blank.oracle, S({"a"}), sel, 1, blank.corpus.subset(S({"t", "u"}))) == 0.0);

  std::mt19937_64 rng(3);
  WorldParams p;
  p.n_demos = 12;
  p.n_test = 10;
  auto g = random_world(rng, p);
  std::vector<Demonstration> reversed(g.test.begin(), g.test.end());
  std::reverse(reversed.begin(), reversed.end());
  const double a = icl_accuracy(*g.oracle, g.train.ids(), sel, 3, g.test);
  const double b = icl_accuracy(*g.oracle, g.train.ids(), sel, 3, Corpus(reversed), 4);
  CHECK(a == b);
}

TEST_CASE("deterministic causation") {
  auto r = ps_pn_pns(space({{true, true, 0.5}, {false, false, 0.5}}));
  CHECK(r.ps == doctest::Approx(1.0));
  CHECK(r.pn == doctest::Approx(1.0));
  CHECK(r.pns == doctest::Approx(1.0));
  CHECK(r.residual <= 1e-12);
}

TEST_CASE("sufficient but never necessary") {
  auto r = ps_pn_pns(space({{true, true, 0.4}, {false, true, 0.6}}));
  CHECK(r.ps == doctest::Approx(1.0));
  CHECK(r.pn == doctest::Approx(0.0));
  CHECK(r.pns == doctest::Approx(r.p_unplugged_incorrect * 1.0 + r.p_plugged_correct * 0.0));
  CHECK(r.residual <= 1e-12);
}

TEST_CASE("uniform space satisfies the identity") {
  auto r = ps_pn_pns(space({{true, true, 0.25}, {true, false, 0.25}, {false, true, 0.25}, {false, false, 0.25}}));
  CHECK(r.ps == doctest::Approx(0.5));
  CHECK(r.pn == doctest::Approx(0.5));
  CHECK(r.residual <= 1e-12);
}

TEST_CASE("identity holds on rational spaces") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 500; ++t) {
    const int denom = 1 + static_cast<int>(rng() % 10000);
    std::vector<int> w(4, 1);
    int rest = denom;
    for (int i = 0; i < 3; ++i) {
      w[i] = static_cast<int>(rng() % (rest + 1));
      rest -= w[i];
    }
    w[3] = rest;
    if (w[0] + w[1] == 0 || w[2] + w[3] == 0) continue;
    TrialSpace s{{{true, true, w[0] / double(denom)},
                  {true, false, w[1] / double(denom)},
                  {false, true, w[2] / double(denom)},
                  {false, false, w[3] / double(denom)}}};
    CHECK(ps_pn_pns(s).residual <= 1e-12);
  }
}

TEST_CASE("trial space errors") {
  CHECK_KIND(ps_pn_pns(space({{true, true, 1.0}})), ErrorKind::ConditionUndefined);
  CHECK_KIND(ps_pn_pns(space({{false, true, 0.3}, {false, false, 0.7}})), ErrorKind::ConditionUndefined);
  CHECK_KIND(space({{true, true, 0.5}, {false, true, 0.4}}).validate(), ErrorKind::Malformed);
  CHECK_KIND(space({{true, true, 1.2}, {false, true, -0.2}}).validate(), ErrorKind::Malformed);
  auto parsed = read_trial_space_json(
      R"({"outcomes":[{"plugged":true,"correct":true,"p":0.5},{"plugged":false,"correct":false,"p":0.5}]})");
  CHECK(parsed.outcomes.size() == 2);
  CHECK(ps_pn_pns(parsed).pns == doctest::Approx(1.0));
  CHECK_KIND(read_trial_space_json("{\"outcomes\":[{\"plugged\":1}]}"), ErrorKind::Malformed);
  CHECK_KIND(read_trial_space_json("nope"), ErrorKind::Malformed);
}

TEST_CASE("brute-force minimal sufficient sets") {
  auto covered = testing::make_fixture({{"a", {}, {"B"}}, {"b", {}, {"B"}}}, {"B"});
  auto none = brute_force_min_sufficient(*covered.oracle, covered.corpus);
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());

  auto f = testing::two_fact_world();
  auto sets = brute_force_min_sufficient(*f.oracle, f.corpus);
  CHECK(std::find(sets.begin(), sets.end(), S({"d_i", "d_j"})) != sets.end());

  std::vector<testing::Spec> many;
  for (int i = 0; i < 5; ++i) many.push_back({"d" + std::to_string(i), {}, {}});
  auto big = testing::make_fixture(many);
  CHECK_KIND(brute_force_min_sufficient(*big.oracle, big.corpus, 4), ErrorKind::TooLarge);
}

TEST_CASE("brute force agrees with the reference evaluator") {
  std::mt19937_64 rng(21);
  for (int w = 0; w < 20; ++w) {
    WorldParams p;
    p.n_demos = 8;
    p.n_facts = 7;
    p.duplicate_all = (w % 5 == 0);
    auto g = random_world(rng, p);
    testing::Reference ref(g.world, g.train);
    const auto all = testing::corpus_names(g.train);
    auto sets = brute_force_min_sufficient(*g.oracle, g.train);
    REQUIRE_FALSE(sets.empty());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      CHECK(ref.sufficient(sets[i], all));
      for (const auto& drop : sets[i]) CHECK_FALSE(ref.sufficient(set_difference(sets[i], DemoSet::singleton(drop)), all));
      for (std::size_t j = 0; j < sets.size(); ++j) {
        if (i != j) CHECK_FALSE(is_subset(sets[i], sets[j]));
      }
      if (i > 0) CHECK(sets[i - 1].size() <= sets[i].size());
    }
    // Exhaustive count of sufficient minimal sets straight from the reference.
    std::size_t expected = 0;
    for (std::uint64_t m = 0; m < (1ull << all.size()); ++m) {
      auto s = testing::pick(all, m);
      if (!ref.sufficient(s, all)) continue;
      bool minimal = true;
      for (std::size_t b = 0; b < all.size() && minimal; ++b) {
        if ((m >> b & 1) && ref.sufficient(testing::pick(all, m & ~(1ull << b)), all)) minimal = false;
      }
      expected += minimal;
    }
    CHECK(sets.size() == expected);
  }
}

TEST_CASE("reduction reports") {
  auto f = testing::tournament_world();
  auto approx = approx_feeder(*f.oracle, f.corpus, TreeConfig{});
  auto r = reduction_report(approx, 0.5);
  CHECK(r.algorithm == "approx");
  CHECK(r.input_size == 4);
  CHECK(r.output_size == 3);
  CHECK(r.reduction_ratio == doctest::Approx(0.25));
  CHECK(r.oracle_calls == approx.oracle_calls);
  CHECK(r.wall_time_s == 0.5);

  auto g = testing::make_fixture({{"a", {"A"}, {"A"}}, {"b", {"B"}, {"B"}}});
  auto exact = exact_feeder_iterative(*g.oracle, g.corpus);
  auto e = reduction_report(exact, g.corpus.size());
  CHECK(e.algorithm == "exact-iterative");
  CHECK(e.reduction_ratio == 0.0);
}
