#include <cmath>
#include <fstream>
#include <map>
#include <memory>

#include <feeder/embedding.hpp>
#include <feeder/selectors.hpp>

#include "check.hpp"

using namespace feeder;

namespace {

std::vector<Demonstration> pool_of(std::initializer_list<std::pair<const char*, const char*>> items) {
  std::vector<Demonstration> out;
  for (const auto& [id, x] : items) out.push_back({DemoId(id), x, "y"});
  return out;
}

std::vector<std::string> ids(const std::vector<Demonstration>& demos) {
  std::vector<std::string> out;
  for (const auto& d : demos) out.push_back(d.id.str());
  return out;
}

/// q=(1,0,0), c1=(0.9,0.436,0), c2=(0.85,0.527,0), c3=(0.8,0,0.6).
std::shared_ptr<TableEmbedder> mmr_fixture() {
  auto t = std::make_shared<TableEmbedder>(3);
  t->set("q", {1, 0, 0});
  t->set("c1", {0.9, 0.436, 0});
  t->set("c2", {0.85, 0.527, 0});
  t->set("c3", {0.8, 0, 0.6});
  return t;
}

double norm(const Embedding& e) {
  double s = 0;
  for (double v : e.values()) s += v * v;
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("trigram embedder") {
  TrigramEmbedder e;
  CHECK(e.dim() == 256);
  auto a = e.embed("The capital of France");
  CHECK(a.values() == e.embed("The capital of France").values());
  CHECK(norm(a) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sim(a, a) == doctest::Approx(1.0).epsilon(1e-9));
  // Case and whitespace are normalized away.
  CHECK(sim(a, e.embed("the  CAPITAL of france ")) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sim(a, e.embed("capital of France")) > sim(a, e.embed("zebra migration")));
  CHECK_KIND(e.embed("   "), ErrorKind::EmptyInput);
  CHECK_KIND(e.embed(""), ErrorKind::EmptyInput);
}

TEST_CASE("similarity arithmetic") {
  auto x = Embedding::normalized({1, 0, 0});
  auto y = Embedding::normalized({0, 1, 0});
  CHECK(sim(x, y) == doctest::Approx(0.0));
  CHECK(sim(x, x) == doctest::Approx(1.0));
  CHECK(sim(x, Embedding::normalized({0.9, 0.436, 0})) == doctest::Approx(0.9).epsilon(1e-3));
  CHECK_KIND(Embedding::normalized({0, 0}), ErrorKind::EmptyInput);
  CHECK_KIND(sim(x, Embedding::normalized({1, 0})), ErrorKind::InvalidArgument);
}

TEST_CASE("table embedder") {
  auto t = mmr_fixture();
  CHECK(norm(t->embed("c1")) == doctest::Approx(1.0));
  CHECK_KIND(t->embed("unknown"), ErrorKind::InvalidArgument);
  TableEmbedder with_fallback(256, std::make_shared<TrigramEmbedder>());
  CHECK(with_fallback.embed("anything").dim() == 256);
}

TEST_CASE("random selection") {
  auto pool = pool_of({{"a", "1"}, {"b", "2"}, {"c", "3"}, {"d", "4"}});
  CHECK(ids(select_random(pool, 2, 7)) == ids(select_random(pool, 2, 7)));
  auto all = select_random(pool, 10, 3);
  CHECK(all.size() == 4);
  auto sorted = ids(all);
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK_KIND(select_random({}, 1, 0), ErrorKind::EmptyPool);
  CHECK_KIND(select_random(pool, 0, 0), ErrorKind::InvalidArgument);
}

TEST_CASE("random selection is uniform") {
  std::vector<Demonstration> pool;
  for (int i = 0; i < 10; ++i) pool.push_back({DemoId("p" + std::to_string(i)), "x", "y"});
  std::map<std::string, int> counts;
  const int draws = 10000;
  for (int s = 0; s < draws; ++s) counts[select_random(pool, 1, static_cast<std::uint64_t>(s))[0].id.str()]++;
  CHECK(counts.size() == 10);
  for (const auto& [id, c] : counts) {
    INFO(id);
    CHECK(static_cast<double>(c) / draws == doctest::Approx(0.1).epsilon(0.2));
  }
}

TEST_CASE("similarity selection") {
  TrigramEmbedder e;
  auto pool = pool_of({{"a", "how tall is the eiffel tower"}, {"b", "who wrote hamlet"}, {"c", "capital of spain"}});
  CHECK(select_similar(pool, "who wrote hamlet", 1, e)[0].id.str() == "b");
  CHECK(select_similar(pool, "who wrote hamlet", 3, e).size() == 3);

  auto t = std::make_shared<TableEmbedder>(3);
  t->set("q", {1, 0, 0});
  t->set("low", {0.1, std::sqrt(1 - 0.01), 0});
  t->set("mid", {0.6, 0.8, 0});
  t->set("high", {0.9, std::sqrt(1 - 0.81), 0});
  auto fixture = pool_of({{"x1", "low"}, {"x2", "high"}, {"x3", "mid"}});
  CHECK(ids(select_similar(fixture, "q", 3, *t)) == std::vector<std::string>{"x2", "x3", "x1"});
  // Equal embeddings fall back to id order.
  auto ties = pool_of({{"z", "mid"}, {"m", "mid"}, {"a", "mid"}});
  CHECK(ids(select_similar(ties, "q", 3, *t)) == std::vector<std::string>{"a", "m", "z"});
  CHECK_KIND(select_similar({}, "q", 1, *t), ErrorKind::EmptyPool);
}

TEST_CASE("diversity selection") {
  auto t = mmr_fixture();
  auto pool = pool_of({{"c1", "c1"}, {"c2", "c2"}, {"c3", "c3"}});
  CHECK(ids(select_diverse(pool, "q", 2, 1.0, *t)) == std::vector<std::string>{"c1", "c3"});
  CHECK(ids(select_similar(pool, "q", 2, *t)) == std::vector<std::string>{"c1", "c2"});
  CHECK(ids(select_diverse(pool, "q", 3, 0.0, *t)) == ids(select_similar(pool, "q", 3, *t)));
  CHECK(select_diverse(pool, "q", 1, 1.0, *t)[0].id == select_similar(pool, "q", 1, *t)[0].id);
  // The literal penalty is the same for every candidate, so it ranks by similarity.
  CHECK(ids(select_diverse(pool, "q", 3, 1.0, *t, MmrVariant::Literal)) == ids(select_similar(pool, "q", 3, *t)));
  CHECK_KIND(select_diverse({}, "q", 1, 1.0, *t), ErrorKind::EmptyPool);
}

TEST_CASE("selectors have the prefix property and ignore fan-out") {
  std::vector<Demonstration> pool;
  for (int i = 0; i < 30; ++i) pool.push_back({DemoId("p" + std::to_string(i)), "question number " + std::to_string(i * 7), "y"});
  auto emb = std::make_shared<TrigramEmbedder>();
  for (auto kind : {SelectorKind::Random, SelectorKind::Similarity, SelectorKind::Diversity}) {
    Selector s(kind, emb, 1.0, 11);
    Selector parallel(kind, emb, 1.0, 11, MmrVariant::Standard, 4);
    const auto full = ids(s.rank(pool, "question number 42"));
    CHECK(full.size() == pool.size());
    CHECK(ids(parallel.rank(pool, "question number 42")) == full);
    for (std::size_t n : {1u, 5u, 17u}) {
      auto part = s.select(pool, "question number 42", n);
      CHECK(ids(part) == std::vector<std::string>(full.begin(), full.begin() + static_cast<long>(n)));
    }
  }
}

TEST_CASE("embedding cache round trip") {
  testing::TempDir dir;
  auto base = std::make_shared<TrigramEmbedder>(64);
  CachingEmbedder c(base);
  auto a = c.embed("alpha beta");
  c.embed("gamma");
  c.embed("alpha beta");
  CHECK(c.size() == 2);
  c.save(dir / "emb.bin");

  CachingEmbedder warm(std::make_shared<TableEmbedder>(64));
  warm.load(dir / "emb.bin");
  CHECK(warm.size() == 2);
  auto b = warm.embed("alpha beta");
  for (std::size_t i = 0; i < a.dim(); ++i) CHECK(b.values()[i] == doctest::Approx(a.values()[i]).epsilon(1e-6));

  CachingEmbedder wrong_dim(std::make_shared<TrigramEmbedder>(32));
  CHECK_KIND(wrong_dim.load(dir / "emb.bin"), ErrorKind::Malformed);

  {
    std::ifstream in(dir / "emb.bin", std::ios::binary);
    std::string bytes((std::istreambuf_iterator<char>(in)), {});
    std::ofstream out(dir / "cut.bin", std::ios::binary);
    out << bytes.substr(0, bytes.size() - 5);
    std::ofstream junk(dir / "junk.bin", std::ios::binary);
    junk << "not an embedding cache";
  }
  CachingEmbedder truncated(base);
  CHECK_KIND(truncated.load(dir / "cut.bin"), ErrorKind::Malformed);
  CHECK_KIND(truncated.load(dir / "junk.bin"), ErrorKind::Malformed);
}
