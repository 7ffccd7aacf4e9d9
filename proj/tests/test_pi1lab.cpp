#include <gtest/gtest.h>

#include <numeric>

#include "efc/pi1lab.hpp"

using namespace efc;

namespace {

Rational frac(long p, long q) {
  Rational r{Integer(p), Integer(q)};
  r.canonicalize();
  return r;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidModel;
}

}  // namespace

TEST(Endpoint, Examples) {
  TorusFunctorModel one(12, 1), five(12, 5);
  EXPECT_EQ(endpoint(one, {{0}, {Rational(1)}}), TorsionPoint{0});
  EXPECT_EQ(endpoint(one, {{0}, {frac(1, 3)}}), TorsionPoint{4});
  EXPECT_EQ(endpoint(five, {{0}, {frac(1, 12)}}), TorsionPoint{5});
  EXPECT_EQ(endpoint(five, {{3, 1}, {frac(-1, 12), frac(5, 2)}}), (TorsionPoint{10, 7}));
  EXPECT_EQ(kind_of([&] { endpoint(one, {{0}, {frac(1, 5)}}); }), ErrorKind::LevelInsufficient);
}

TEST(Model, RejectsNonUnits) {
  EXPECT_EQ(kind_of([] { TorusFunctorModel(12, 4); }), ErrorKind::InvalidModel);
  EXPECT_EQ(kind_of([] { TorusFunctorModel(0, 1); }), ErrorKind::InvalidModel);
  EXPECT_EQ(TorusFunctorModel(12, -1).unit(), 11);
}

TEST(Lift, Examples) {
  TorusFunctorModel m(12, 1);
  auto q = lift_path(m, 3, generator_loop(), {0});
  EXPECT_EQ(q.winding, std::vector<Rational>{frac(1, 3)});
  EXPECT_EQ(endpoint(m, q), TorsionPoint{4});
  EXPECT_EQ(kind_of([&] { lift_path(m, 5, generator_loop(), {0}); }), ErrorKind::LevelInsufficient);
  auto id = lift_path(m, 1, {{7}, {frac(5, 6)}}, {7});
  EXPECT_EQ(id.winding, std::vector<Rational>{frac(5, 6)});
  EXPECT_EQ(id.start, TorsionPoint{7});
  EXPECT_EQ(kind_of([&] { lift_path(m, 3, generator_loop(), {1}); }), ErrorKind::StartNotInFiber);
}

TEST(Lift, MatrixCover) {
  TorusFunctorModel m(24, 7);
  CoverMatrix a{{2, 1}, {0, 3}};  // det 6 divides 24
  TorusPath p{{0, 0}, {Rational(1), Rational(1)}};
  auto q = lift_path(m, a, p, {0, 0});
  // 2w1 + w2 = 1, 3w2 = 1.
  EXPECT_EQ(q.winding, (std::vector<Rational>{frac(1, 3), frac(1, 3)}));
  EXPECT_EQ(count_lifts_exhaustive(m, a, p.winding, 1), 1u);
  EXPECT_EQ(kind_of([&] { lift_path(m, CoverMatrix{{1, 2}, {2, 4}}, p, {0, 0}); }), ErrorKind::InvalidModel);
}

TEST(Lift, ProjectsBackForEveryDivisorAndStart) {
  for (std::int64_t N : {1, 6, 12, 24}) {
    for (std::int64_t u = 0; u < N; ++u) {
      if (std::gcd(u, N) != 1) continue;
      TorusFunctorModel m(N, u);
      for (auto n : divisors(N)) {
        for (std::int64_t k = -N; k <= N; k += std::max<std::int64_t>(1, N / 4)) {
          TorusPath p{{0}, {frac(k * n, N)}};
          if (Integer(static_cast<long>(N)) % p.winding[0].get_den() != 0) continue;
          for (std::int64_t s = 0; s < N; s += N / n) {
            auto q = lift_path(m, n, p, {s});
            EXPECT_EQ(q.winding[0] * n, p.winding[0]);
            EXPECT_EQ(m.reduce(endpoint(m, q)[0] * n), endpoint(m, p)[0]);
          }
          EXPECT_EQ(count_lifts_exhaustive(m, scalar_cover(n, 1), p.winding, 2), 1u);
        }
      }
    }
  }
}

TEST(Xi, Examples) {
  auto xi = xi_sequence(TorusFunctorModel(12, 1));
  std::map<std::int64_t, std::int64_t> one(xi.begin(), xi.end());
  EXPECT_EQ(one[2], 6);
  EXPECT_EQ(one[3], 4);
  EXPECT_EQ(one[12], 1);
  EXPECT_EQ(one[1], 0);
  auto xi5 = xi_sequence(TorusFunctorModel(12, 5));
  std::map<std::int64_t, std::int64_t> five(xi5.begin(), xi5.end());
  EXPECT_EQ(five[12], 5);
  EXPECT_EQ(five[3], 8);
  EXPECT_EQ(five[1], 0);
}

TEST(Xi, CompatibleAlongDivisorChains) {
  for (std::int64_t N : {1, 8, 12, 24, 30}) {
    for (std::int64_t u = 1; u < std::max<std::int64_t>(N, 2); ++u) {
      if (std::gcd(u, N) != 1) continue;
      TorusFunctorModel m(N, u);
      auto seq = xi_sequence(m);
      std::map<std::int64_t, std::int64_t> xi(seq.begin(), seq.end());
      for (auto [mn, value] : xi)
        for (auto d : divisors(mn)) EXPECT_EQ(m.reduce(value * d), xi[mn / d]) << N << " " << u << " " << mn;
      // Oracle: ξ_n codes u·N/n.
      for (auto [n, value] : xi) EXPECT_EQ(value, m.reduce(u * (N / n)));
    }
  }
}

TEST(Axioms, Examples) {
  auto report = check_axioms(TorusFunctorModel(12, 1), 2);
  EXPECT_TRUE(report.all_pass());
  EXPECT_FALSE(report.entries.empty());
  for (const auto& e : report.entries) EXPECT_GT(e.checked, 0u);
  EXPECT_TRUE(check_axioms(TorusFunctorModel(1, 0), 2).all_pass());
}

TEST(Axioms, RankThreeAndThreadIndependence) {
  ExecPolicy many;
  many.threads = 4;
  auto a = check_axioms(TorusFunctorModel(24, 5), 3);
  auto b = check_axioms(TorusFunctorModel(24, 5), 3, many);
  EXPECT_TRUE(a.all_pass());
  ASSERT_EQ(a.entries.size(), b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    EXPECT_EQ(a.entries[i].axiom, b.entries[i].axiom);
    EXPECT_EQ(a.entries[i].checked, b.entries[i].checked);
  }
}

TEST(Compare, Examples) {
  EXPECT_EQ(compare_functors(TorusFunctorModel(12, 1), TorusFunctorModel(12, 5)), 5);
  EXPECT_EQ(compare_functors(TorusFunctorModel(12, 7), TorusFunctorModel(12, 7)), 1);
  EXPECT_EQ(kind_of([] { compare_functors(TorusFunctorModel(12, 1), TorusFunctorModel(8, 1)); }),
            ErrorKind::IncompatibleLevels);
}

TEST(Compare, UnitTwistsActTransitively) {
  const std::int64_t N = 24;
  for (std::int64_t u1 = 1; u1 < N; ++u1)
    for (std::int64_t u2 = 1; u2 < N; ++u2) {
      if (std::gcd(u1, N) != 1 || std::gcd(u2, N) != 1) continue;
      auto t = compare_functors(TorusFunctorModel(N, u1), TorusFunctorModel(N, u2));
      EXPECT_EQ((t * u1) % N, u2);
    }
}
