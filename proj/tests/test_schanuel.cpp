#include <gtest/gtest.h>

#include "corpus.hpp"
#include "efc/schanuel.hpp"

using namespace efc;
using namespace efc::testing;

namespace {

ExpSystem renamed_for_presentation(const ExpSystem& s) {
  VarList target;
  for (std::size_t i = 1; i <= s.n; ++i) target.push_back("x_g" + std::to_string(i));
  for (std::size_t i = 1; i <= s.n; ++i) target.push_back("y_g" + std::to_string(i));
  auto shared = std::make_shared<const VarList>(target);
  std::vector<std::size_t> index(2 * s.n);
  for (std::size_t i = 0; i < 2 * s.n; ++i) index[i] = i;
  ExpSystem out{s.n, {}};
  for (const auto& g : s.ideal_gens) out.ideal_gens.push_back(g.embed(shared, index));
  return out;
}

ExpSystem disjoint_union(const ExpSystem& a, const ExpSystem& b) {
  const std::size_t n = a.n + b.n;
  auto ring = std::make_shared<const VarList>(ExpSystem::ring(n));
  ExpSystem out{n, {}};
  std::vector<std::size_t> ia(2 * a.n), ib(2 * b.n);
  for (std::size_t i = 0; i < a.n; ++i) {
    ia[i] = i;
    ia[a.n + i] = n + i;
  }
  for (std::size_t i = 0; i < b.n; ++i) {
    ib[i] = a.n + i;
    ib[b.n + i] = n + a.n + i;
  }
  for (const auto& g : a.ideal_gens) out.ideal_gens.push_back(g.embed(ring, ia));
  for (const auto& g : b.ideal_gens) out.ideal_gens.push_back(g.embed(ring, ib));
  return out;
}

ExpSystem random_system(std::mt19937_64& rng, bool rational_points = true) {
  std::size_t n = 1 + rng() % 3;
  VarList ring = ExpSystem::ring(n);
  auto var = [&](char c) { return std::string(1, c) + std::to_string(1 + rng() % n); };
  std::vector<std::string> rel;
  std::size_t count = rng() % (n + 1);
  for (std::size_t k = 0; k < count; ++k) {
    switch (rng() % 5) {
      case 0: rel.push_back(var('y') + " - " + var('x')); break;
      case 1: rel.push_back(var('y') + "^2 - " + var('y')); break;
      case 2:
        if (rational_points) rel.push_back(var('x') + " - " + std::to_string(1 + rng() % 3));
        break;
      case 3: rel.push_back(var('x') + "*" + var('y') + " - 1"); break;
      default: rel.push_back(var('y') + " - " + var('x') + "^2"); break;
    }
  }
  return ExpSystem::parse(n, rel);
}

}  // namespace

TEST(GenericPredimension, Examples) {
  EXPECT_EQ(generic_predimension(ExpSystem::parse(1, {"y1 - x1"})), 0);
  EXPECT_EQ(generic_predimension(ExpSystem::parse(1, {"x1 - 1", "y1 - 2"})), -1);
  EXPECT_EQ(generic_predimension(ExpSystem::parse(2, {"y1 - x2", "y2 - x1"})), 0);
  EXPECT_EQ(generic_predimension(ExpSystem::parse(2, {})), 2);
  EXPECT_EQ(generic_predimension(ExpSystem::parse(2, {"x1 - 2*x2"})), 2);
}

TEST(GenericPredimension, UnitIdeal) {
  try {
    generic_predimension(ExpSystem::parse(1, {"x1", "x1 - 1"}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnitIdeal);
  }
}

TEST(ScScreen, Examples) {
  EXPECT_TRUE(sc_screen(ExpSystem::parse(1, {"y1 - x1"})).compatible);
  auto v = sc_screen(ExpSystem::parse(1, {"x1 - 1", "y1 - 2"}));
  EXPECT_FALSE(v.compatible);
  EXPECT_EQ(v.witness, std::vector<std::size_t>{1});
  EXPECT_EQ(v.value, -1);
  EXPECT_TRUE(sc_screen(ExpSystem::parse(2, {})).compatible);
}

TEST(ScScreen, WitnessIsAProjection) {
  // The second pair alone is algebraic; the full system is not.
  auto v = sc_screen(ExpSystem::parse(3, {"x2 - 3", "y2 - 5", "y1 - x3"}));
  EXPECT_FALSE(v.compatible);
  EXPECT_EQ(v.witness, std::vector<std::size_t>{2});
}

TEST(ScScreen, ThreadIndependent) {
  std::mt19937_64 rng(11);
  ExecPolicy many;
  many.threads = 5;
  for (int t = 0; t < 40; ++t) {
    auto s = random_system(rng);
    try {
      auto a = sc_screen(s), b = sc_screen(s, many);
      EXPECT_EQ(a.compatible, b.compatible);
      EXPECT_EQ(a.witness, b.witness);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::UnitIdeal);
    }
  }
}

TEST(ScScreen, JsonRoundTrip) {
  auto s = ExpSystem::parse(2, {"y1 - x2", "y2 - x1"});
  auto back = ExpSystem::from_json(nlohmann::json::parse(s.to_json().dump()));
  EXPECT_EQ(back.to_json().dump(), s.to_json().dump());
}

TEST(ScScreen, AdditiveOnDisjointUnions) {
  std::mt19937_64 rng(7);
  int checked = 0;
  while (checked < 30) {
    auto a = random_system(rng), b = random_system(rng, false);
    long da, db;
    try {
      da = generic_predimension(a);
      db = generic_predimension(b);
    } catch (const Error&) {
      continue;
    }
    EXPECT_EQ(generic_predimension(disjoint_union(a, b)), da + db) << a.to_json().dump() << b.to_json().dump();
    ++checked;
  }
}

TEST(ScScreen, RationalPointsOnBothSidesAreLinearlyDependent) {
  // x1 = 3 and x2 = 3 force x1 - x2 = 0 in the union.
  auto a = ExpSystem::parse(1, {"x1 - 3"});
  EXPECT_EQ(generic_predimension(a), 0);
  EXPECT_EQ(generic_predimension(disjoint_union(a, a)), 1);
}

TEST(ScScreen, CompatibleSystemsPassHrushovski) {
  std::mt19937_64 rng(3);
  int checked = 0;
  while (checked < 30) {
    auto s = random_system(rng);
    ScVerdict v;
    try {
      v = sc_screen(s);
    } catch (const Error&) {
      continue;
    }
    if (!v.compatible) continue;
    EFieldPresentation p;
    try {
      p = make([&] {
        std::vector<std::string> g;
        for (std::size_t i = 1; i <= s.n; ++i) g.push_back("g" + std::to_string(i));
        return g;
      }(), [&] {
        std::vector<std::string> r;
        for (const auto& q : renamed_for_presentation(s).ideal_gens) r.push_back(q.to_string());
        return r;
      }());
    } catch (const Error&) {
      continue;  // coherence closure made the presentation improper
    }
    EXPECT_TRUE(hrushovski_check(p).pass) << s.to_json().dump();
    ++checked;
  }
}
