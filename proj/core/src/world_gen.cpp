#include "feeder/world_gen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "feeder/errors.hpp"

namespace feeder {

namespace {

std::string fact_name(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "f%02zu", i);
  return buf;
}

std::string padded_id(char prefix, std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%c%03zu", prefix, i);
  return buf;
}

std::string join(const FactSet& facts) {
  std::string out;
  for (const auto& f : facts) {
    if (!out.empty()) out += ' ';
    out += f;
  }
  return out;
}

bool coin(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Draws k distinct elements of `from` (k clamped to its size).
FactSet sample(std::mt19937_64& rng, const std::vector<std::string>& from, std::size_t k) {
  std::vector<std::string> pool = from;
  FactSet out;
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    auto j = i + bounded_draw(rng, pool.size() - i);
    std::swap(pool[i], pool[j]);
    out.insert(pool[i]);
  }
  return out;
}

}  // namespace

GeneratedWorld random_world(std::mt19937_64& rng, const WorldParams& p, SyntheticOptions options) {
  if (p.n_demos == 0 || p.n_facts == 0 || p.max_teach == 0) {
    throw Error(ErrorKind::InvalidArgument, "world needs at least one demo, fact and taught fact");
  }
  const auto redundant = static_cast<std::size_t>(std::llround(p.redundant_fraction * static_cast<double>(p.n_demos)));

  std::vector<std::string> all_facts;
  for (std::size_t i = 0; i < p.n_facts; ++i) all_facts.push_back(fact_name(i));

  GeneratedWorld out;
  SyntheticWorld& world = out.world;
  for (const auto& f : all_facts) {
    if (coin(rng, p.base_fraction)) world.base_knowledge.insert(f);
  }
  if (redundant > 0 && world.base_knowledge.empty()) {
    world.base_knowledge.insert(all_facts[bounded_draw(rng, all_facts.size())]);
  }
  if (world.base_knowledge.size() == all_facts.size() && redundant < p.n_demos) {
    world.base_knowledge.erase(all_facts[bounded_draw(rng, all_facts.size())]);
  }
  std::vector<std::string> base_facts(world.base_knowledge.begin(), world.base_knowledge.end());
  std::vector<std::string> open_facts;
  for (const auto& f : all_facts) {
    if (!world.base_knowledge.contains(f)) open_facts.push_back(f);
  }

  std::vector<bool> is_redundant(p.n_demos, false);
  for (auto idx : seeded_permutation(p.n_demos, rng())) {
    if (std::count(is_redundant.begin(), is_redundant.end(), true) >= static_cast<std::ptrdiff_t>(redundant)) break;
    is_redundant[idx] = true;
  }
  out.redundant_count = redundant;

  std::vector<Demonstration> train;
  std::size_t next_id = 0;
  for (std::size_t i = 0; i < p.n_demos; ++i) {
    FactSet taught;
    FactSet required;
    if (is_redundant[i]) {
      taught = sample(rng, base_facts, 1 + bounded_draw(rng, p.max_teach));
      required = taught;
    } else {
      taught = sample(rng, open_facts, 1 + bounded_draw(rng, p.max_teach));
      required = taught;
      auto extra = sample(rng, all_facts, bounded_draw(rng, p.max_extra + 1));
      required.insert(extra.begin(), extra.end());
    }
    Demonstration demo{DemoId(padded_id('d', next_id++)), "which " + join(required) + "?", join(taught)};
    world.teaches[demo.id] = taught;
    world.requirements[demo.id] = required;
    train.push_back(demo);
    if (p.duplicate_all) {
      Demonstration twin = demo;
      twin.id = DemoId(demo.id.str() + "b");
      world.teaches[twin.id] = taught;
      world.requirements[twin.id] = required;
      train.push_back(twin);
    }
  }

  std::vector<Demonstration> test;
  for (std::size_t i = 0; i < p.n_test; ++i) {
    FactSet required = sample(rng, all_facts, 1 + bounded_draw(rng, p.max_teach + p.max_extra));
    Demonstration demo{DemoId(padded_id('t', i)), "test which " + join(required) + "?", "t " + join(required)};
    world.teaches[demo.id] = required;
    world.requirements[demo.id] = required;
    test.push_back(demo);
  }

  out.train = Corpus(std::move(train));
  out.test = Corpus(std::move(test));
  out.oracle = make_synthetic_oracle(world, out.train.merged(out.test), options);
  return out;
}

}  // namespace feeder
