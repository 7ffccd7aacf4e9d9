#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "efc/groebner.hpp"

using namespace efc;

namespace {

std::vector<Poly> polys(const VarList& ring, std::initializer_list<const char*> texts) {
  std::vector<Poly> out;
  for (const char* t : texts) out.push_back(parse_poly(t, ring));
  return out;
}

std::vector<std::string> strings(const GroebnerBasis& gb) {
  std::vector<std::string> out;
  for (const auto& g : gb.generators) out.push_back(g.to_string());
  return out;
}

// Number of monomials outside the leading-term ideal, or -1 when infinite
// (checked up to a degree bound that covers every test case here).
long standard_monomial_count(const GroebnerBasis& gb, std::uint32_t bound) {
  auto lms = leading_monomials(gb);
  const std::size_t n = gb.ring_vars.size();
  long count = 0;
  Exponents e(n, 0);
  for (;;) {
    bool standard = std::none_of(lms.begin(), lms.end(), [&](const Exponents& m) { return divides(m, e); });
    if (standard) {
      if (std::any_of(e.begin(), e.end(), [&](auto v) { return v + 1 >= bound; })) return -1;
      ++count;
    }
    std::size_t i = 0;
    while (i < n && ++e[i] > bound) e[i++] = 0;
    if (i == n) break;
  }
  return count;
}

// Independent oracle: largest variable subset containing no leading-monomial
// support, by enumerating every subset.
std::size_t brute_force_dimension(const std::vector<Exponents>& monomials, std::size_t n) {
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool independent = std::none_of(monomials.begin(), monomials.end(), [&](const Exponents& m) {
      for (std::size_t i = 0; i < n; ++i)
        if (m[i] && !(mask & (1u << i))) return false;
      return true;
    });
    if (independent) best = std::max<std::size_t>(best, __builtin_popcount(mask));
  }
  return best;
}

}  // namespace

TEST(Buchberger, SingleLinearGenerator) {
  VarList ring{"x", "y"};
  auto gb = buchberger(ring, polys(ring, {"y - 1"}));
  EXPECT_EQ(strings(gb), std::vector<std::string>{"y - 1"});
}

TEST(Buchberger, EmptyInputIsZeroIdeal) {
  VarList ring{"x", "y"};
  auto gb = buchberger(ring, std::vector<Poly>{});
  EXPECT_TRUE(gb.is_zero_ideal());
  EXPECT_EQ(ideal_dimension(gb), 2u);
}

TEST(Buchberger, ZeroDimensionalSystem) {
  VarList ring{"x", "y"};
  auto gb = buchberger(ring, polys(ring, {"x^2 - y", "y^2 - x"}));
  EXPECT_EQ(ideal_dimension(gb), 0u);
  EXPECT_EQ(standard_monomial_count(gb, 8), 4);
  // Oracle: solutions over F_7, where the cube roots of unity are rational.
  int solutions = 0;
  for (int x = 0; x < 7; ++x)
    for (int y = 0; y < 7; ++y)
      if ((x * x - y) % 7 == 0 && (y * y - x) % 7 == 0) ++solutions;
  EXPECT_EQ(solutions, 4);
  auto lex_gb = buchberger(ring, polys(ring, {"x^2 - y", "y^2 - x"}), MonomialOrder::lex());
  EXPECT_EQ(strings(lex_gb), (std::vector<std::string>{"y^4 - y", "-y^2 + x"}));
}

TEST(Buchberger, UnitIdeal) {
  VarList ring{"x", "y"};
  auto gb = buchberger(ring, polys(ring, {"x*y - 1", "x"}));
  EXPECT_TRUE(gb.is_unit());
  EXPECT_THROW(ideal_dimension(gb), Error);
  try {
    ideal_dimension(gb);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnitIdeal);
  }
}

TEST(Buchberger, CyclicThree) {
  VarList ring{"a", "b", "c"};
  auto gb = buchberger(ring, polys(ring, {"a + b + c", "a*b + b*c + c*a", "a*b*c - 1"}));
  EXPECT_EQ(ideal_dimension(gb), 0u);
  EXPECT_EQ(standard_monomial_count(gb, 10), 6);
}

TEST(IdealDimension, Examples) {
  VarList ring{"x", "y"};
  EXPECT_EQ(ideal_dimension(buchberger(ring, polys(ring, {"y - 1"}))), 1u);
  EXPECT_EQ(ideal_dimension(buchberger(ring, polys(ring, {"x", "y"}))), 0u);
}

TEST(IdealDimension, MonomialIdealsMatchBruteForce) {
  std::mt19937_64 rng(7);
  VarList ring{"a", "b", "c"};
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Poly> gens;
    int k = static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) {
      Exponents e(3);
      for (auto& v : e) v = static_cast<std::uint32_t>(rng() % 3);
      if (total_degree(e) == 0) e[rng() % 3] = 1;
      gens.push_back(Poly::monomial(ring, e));
    }
    auto gb = buchberger(ring, gens);
    std::vector<Exponents> monos;
    for (const auto& g : gens) monos.push_back(g.terms().begin()->first);
    EXPECT_EQ(ideal_dimension(gb), brute_force_dimension(monos, 3));
  }
}

namespace {

std::vector<std::pair<VarList, std::vector<std::string>>> ideal_corpus() {
  return {
      {{"x", "y"}, {"x^2 - y", "y^2 - x"}},
      {{"x", "y", "z"}, {"x*y - z", "y*z - x"}},
      {{"x1", "x2", "y1", "y2"}, {"y1 - x2", "y2 - x1"}},
      {{"a", "b", "c", "d"}, {"a*d - b*c", "a^2 - b"}},
      {{"a", "b", "c", "d"}, {"a + b + c + d", "a*b*c*d - 1"}},
      {{"x", "y", "z"}, {"x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y"}},
      {{"t", "u"}, {"t^2*u - u^3 + 1"}},
  };
}

}  // namespace

TEST(Buchberger, IdempotentOnCorpus) {
  for (const auto& [ring, gens] : ideal_corpus()) {
    std::vector<Poly> ps;
    for (const auto& g : gens) ps.push_back(parse_poly(g, ring));
    for (auto order : {MonomialOrder::degrevlex(), MonomialOrder::lex()}) {
      auto gb = buchberger(ring, ps, order);
      auto again = buchberger(ring, gb.generators, order);
      EXPECT_EQ(strings(gb), strings(again));
    }
  }
}

TEST(IdealDimension, InvariantUnderPermutationAndOrder) {
  for (const auto& [ring, gens] : ideal_corpus()) {
    std::vector<Poly> ps;
    for (const auto& g : gens) ps.push_back(parse_poly(g, ring));
    std::size_t reference = ideal_dimension(buchberger(ring, ps));
    std::sort(ps.begin(), ps.end(), [](const Poly& a, const Poly& b) { return a.to_string() < b.to_string(); });
    do {
      for (auto order : {MonomialOrder::degrevlex(), MonomialOrder::lex()}) {
        auto gb = buchberger(ring, ps, order);
        EXPECT_EQ(ideal_dimension(gb), reference);
        // Every input generator lies in the computed ideal.
        for (const auto& p : ps) EXPECT_TRUE(ideal_member(p, gb));
      }
    } while (std::next_permutation(ps.begin(), ps.end(), [](const Poly& a, const Poly& b) {
      return a.to_string() < b.to_string();
    }));
  }
}

TEST(IdealMember, Examples) {
  VarList ring{"x", "y"};
  auto gb = buchberger(ring, polys(ring, {"y - 1"}));
  EXPECT_TRUE(ideal_member(parse_poly("y - 1", ring), gb));
  EXPECT_FALSE(ideal_member(parse_poly("x", ring), gb));
  EXPECT_TRUE(ideal_member(parse_poly("x^2 - y*x^2 + x^2*(y - 1)", ring), gb));
  EXPECT_TRUE(ideal_member(parse_poly("x^3*y - x^3", ring), gb));
}

TEST(Eliminate, Examples) {
  VarList ring{"x", "y"};
  auto e1 = eliminate(buchberger(ring, polys(ring, {"y - x^2"})), {"y"});
  EXPECT_TRUE(e1.is_zero_ideal());
  EXPECT_EQ(e1.ring_vars, VarList{"y"});

  VarList ring4{"x1", "x2", "y1", "y2"};
  auto e2 = eliminate(buchberger(ring4, polys(ring4, {"y1 - x2", "y2 - x1"})), {"x1", "y1"});
  EXPECT_TRUE(e2.is_zero_ideal());
  EXPECT_EQ(ideal_dimension(e2), 2u);

  auto e3 = eliminate(buchberger(ring, polys(ring, {"x - 1", "y - 2"})), {"y"});
  EXPECT_EQ(strings(e3), std::vector<std::string>{"y - 2"});
}

TEST(Eliminate, TwistedCubicProjection) {
  VarList ring{"t", "x", "y", "z"};
  auto gb = buchberger(ring, polys(ring, {"x - t", "y - t^2", "z - t^3"}));
  auto e = eliminate(gb, {"x", "y", "z"});
  EXPECT_EQ(ideal_dimension(e), 1u);
  EXPECT_TRUE(ideal_member(parse_poly("y - x^2", e.ring_vars), e));
  EXPECT_TRUE(ideal_member(parse_poly("x*z - y^2", e.ring_vars), e));
}

TEST(LinearPart, Examples) {
  VarList ring{"x1", "x2", "y1", "y2"};
  auto m = linear_part(buchberger(ring, polys(ring, {"x1 - 2*x2", "y1*y2 - 1"})), {"x1", "x2"});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0], (std::vector<Rational>{1, -2}));

  EXPECT_TRUE(linear_part(buchberger(ring, std::vector<Poly>{}), {"x1", "x2"}).empty());

  VarList one{"x1"};
  EXPECT_TRUE(linear_part(buchberger(one, polys(one, {"x1 - 1"})), {"x1"}).empty());
}

TEST(LinearPart, HiddenLinearRelation) {
  VarList ring{"a", "b", "c"};
  // a - b - c follows from the two quadrics without being a generator.
  auto gb = buchberger(ring, polys(ring, {"a^2 - a*b - a*c", "a - b - c + a^2 - a*b - a*c"}));
  auto m = linear_part(gb, {"a", "b", "c"});
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0], (std::vector<Rational>{1, -1, -1}));
  auto lex = buchberger(ring, gb.generators, MonomialOrder::lex());
  EXPECT_EQ(linear_part(lex, {"a", "b", "c"}), m);
}
