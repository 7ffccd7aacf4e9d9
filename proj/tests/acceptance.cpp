// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "corpus.hpp"
#include "efc/pi1lab.hpp"
#include "efc/schanuel.hpp"
#include "efc/zform.hpp"
#include "golden_runner.hpp"

using namespace efc;
using namespace efc::testing;

namespace {

struct Check {
  std::ostringstream log;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) log << what;
    if (!cond) ok = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

using Criterion = std::function<void(Check&)>;

void predimension_corpus(Check& c) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<EFieldPresentation, long>> corpus{
      {free_one(), 1}, {kernel_only(), 0}, {two_cycle(), 0}, {collapse(), -1}};
  for (const auto& [p, expected] : corpus) {
    long d = predimension(p, p.full_set());
    c.expect(d == expected, "delta " + std::to_string(d) + " != " + std::to_string(expected));
    long oracle = static_cast<long>(oracle_trdeg(p, p.full_set())) - static_cast<long>(linear_dimension(p, p.full_set()));
    c.expect(d == oracle, "oracle disagrees");
  }
  double s = seconds_since(t0);
  c.expect(s < 1.0, "took " + std::to_string(s) + " s");
  c.log << (c.ok ? "4 presentations, " + std::to_string(s) + " s" : "");
}

EFieldPresentation twelve_generators() {
  std::vector<std::string> gens, polys;
  for (int i = 1; i <= 4; ++i) {
    std::string a = "a" + std::to_string(i), b = "b" + std::to_string(i), f = "f" + std::to_string(i);
    gens.insert(gens.end(), {a, b, f});
    polys.push_back("y_" + a + " - x_" + b);
    polys.push_back("y_" + b + " - x_" + a);
  }
  return make(gens, polys);
}

void hrushovski_strongness(Check& c) {
  std::vector<std::pair<std::string, EFieldPresentation>> corpus{
      {"free", free_one()}, {"kernel", kernel_only()}, {"2-cycle", two_cycle()}, {"collapse", collapse()}};
  for (const auto& [name, p] : corpus) {
    auto v = hrushovski_check(p);
    bool should_fail = name == "collapse";
    c.expect(v.pass != should_fail, "hrushovski wrong on " + name);
    if (should_fail)
      c.expect(v.witness == std::vector<std::string>{"x1"}, "collapse witness is not {x1}");
  }
  c.expect(!is_strong(PresentationEmbedding::identity_on_names(free_one(), two_cycle())).pass,
           "free{x1} -> 2-cycle accepted");

  std::mt19937_64 rng(2024);
  std::size_t embeddings = 0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ForgeStep> steps{ForgeStep::free_gen()};
    for (int i = 0; i < 4; ++i) steps.push_back(random_step(rng, true));
    auto trace = forge(kernel_only(), steps, rng());
    for (std::size_t i = 0; i + 1 < trace.stages.size(); ++i, ++embeddings)
      c.expect(is_strong(PresentationEmbedding::identity_on_names(trace.stages[i].presentation,
                                                                  trace.stages[i + 1].presentation))
                   .pass,
               "forge embedding rejected");
  }

  auto big = twelve_generators();
  auto t0 = std::chrono::steady_clock::now();
  ExecPolicy policy = ExecPolicy::from_env();
  policy.max_free_generators = std::max(policy.max_free_generators, 12u);
  auto v = hrushovski_check(big, policy);
  double s = seconds_since(t0);
  c.expect(big.size() == 12 && v.pass, "12-generator check failed");
  c.expect(s < 60.0, "12-generator check took " + std::to_string(s) + " s");
  if (c.ok) c.log << embeddings << " forge embeddings, 12 generators in " << s << " s";
}

void amalgam_additivity(Check& c) {
  std::mt19937_64 rng(31337);
  std::size_t sets = 0;
  const int trials = 50;
  for (int trial = 0; trial < trials; ++trial) {
    auto A = forge(kernel_only(), {ForgeStep::free_gen()}, rng()).stages.back().presentation;
    std::vector<ForgeStep> sb, sc;
    for (std::uint64_t i = 0, n = 1 + rng() % 2; i < n; ++i) sb.push_back(random_step(rng, true));
    for (std::uint64_t i = 0, n = 1 + rng() % 2; i < n; ++i) sc.push_back(random_step(rng, true));
    auto B = forge(A, sb, rng()).stages.back().presentation;
    auto C = forge(A, sc, rng()).stages.back().presentation;
    auto am = free_amalgam(PresentationEmbedding::identity_on_names(A, B), PresentationEmbedding::identity_on_names(A, C));
    const auto& P = am.presentation;
    const GenSet a_in_b = B.mask_of(A.generators()), a_in_c = C.mask_of(A.generators());
    const long da = predimension(A, A.full_set());
    for (GenSet xb = 0; xb <= B.full_set(); ++xb) {
      if ((xb & a_in_b) != a_in_b) continue;
      for (GenSet xc = 0; xc <= C.full_set(); ++xc) {
        if ((xc & a_in_c) != a_in_c) continue;
        std::vector<std::string> names;
        for (const auto& g : B.names_of(xb)) names.push_back(am.left.at(g));
        for (const auto& g : C.names_of(xc)) names.push_back(am.right.at(g));
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        ++sets;
        c.expect(predimension(P, names) == predimension(B, xb) + predimension(C, xc) - da,
                 "additivity fails in trial " + std::to_string(trial));
      }
    }
  }
  if (c.ok) c.log << trials << " amalgams, " << sets << " subsets";
}

void kummer(Check& c) {
  ExecPolicy policy = ExecPolicy::from_env();
  double worst = 0;
  for (unsigned n : {1u, 2u})
    for (unsigned m : {2u, 3u, 4u}) {
      std::vector<ForgeStep> steps(n, ForgeStep::free_gen());
      auto base = forge(kernel_only(), steps, 0).stages.back().presentation;
      auto t0 = std::chrono::steady_clock::now();
      std::uint64_t d = kummer_degree(base, n, m, policy);
      double s = seconds_since(t0);
      worst = std::max(worst, s);
      std::uint64_t expected = 1;
      for (unsigned i = 0; i < n; ++i) expected *= m;
      c.expect(d == expected, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " gave " + std::to_string(d));
      c.expect(s < 60.0, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " took " + std::to_string(s) + " s");
    }
  if (c.ok) c.log << "6 cases, slowest " << worst << " s";
}

void schanuel(Check& c) {
  auto fixed = sc_screen(ExpSystem::parse(1, {"y1 - x1"}));
  auto algebraic = sc_screen(ExpSystem::parse(1, {"y1 - 2", "x1^2 - 3"}));
  auto empty = sc_screen(ExpSystem::parse(2, {}));
  c.expect(fixed.compatible, "fixed point flagged");
  c.expect(!algebraic.compatible && algebraic.witness == std::vector<std::size_t>{1}, "algebraic not Contradicts({1})");
  c.expect(empty.compatible, "empty system flagged");
  if (c.ok) c.log << "Compatible, Contradicts({1}), Compatible";
}

bool preserves_form(const ZMat& t, std::int64_t lambda, const SymplecticLattice& L) {
  const std::size_t n = L.rank();
  const std::int64_t q = L.modulus();
  auto j = [&](std::size_t a, std::size_t b) -> std::int64_t {
    if (b == a + L.g && a < L.g) return 1;
    if (a == b + L.g && b < L.g) return -1;
    return 0;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      __int128 s = 0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t col = 0; col < n; ++col) s += static_cast<__int128>(t[r][a]) * j(r, col) % q * t[col][b];
      __int128 rhs = static_cast<__int128>(lambda) * j(a, b);
      if (((s - rhs) % q + q) % q != 0) return false;
    }
  return true;
}

void symplectic(Check& c) {
  ExecPolicy policy = ExecPolicy::from_env();
  auto t0 = std::chrono::steady_clock::now();
  auto a = orbit_count_bruteforce(SymplecticLattice(1, 2, 1), OrbitGroup::Full, policy);
  auto b = orbit_count_bruteforce(SymplecticLattice(1, 3, 1), OrbitGroup::Full, policy);
  auto d = orbit_count_bruteforce(SymplecticLattice(2, 2, 1), OrbitGroup::Full, policy);
  double s = seconds_since(t0);
  c.expect(a.bases == 6 && a.orbits == 1, "(1,2,1) wrong");
  c.expect(b.orbits == 1, "(1,3,1) wrong");
  c.expect(d.orbits == 1, "(2,2,1) wrong");
  c.expect(s < 120.0, "brute force took " + std::to_string(s) + " s");
  std::mt19937_64 rng(1000);
  for (int trial = 0; trial < 1000; ++trial) {
    SymplecticLattice L(1 + static_cast<unsigned>(rng() % 3), std::vector<std::int64_t>{2, 3, 5, 7}[rng() % 4],
                        1 + static_cast<unsigned>(rng() % 3));
    auto b1 = random_symplectic_basis(L, rng), b2 = random_symplectic_basis(L, rng);
    auto t = transport(b1, b2, L);
    c.expect(L.is_unit(t.lambda) && preserves_form(t.matrix, t.lambda, L), "transport pair " + std::to_string(trial));
  }
  if (c.ok) c.log << "orbits 1/1/1, 1000 transports, brute force " << s << " s";
}

void path_lifting(Check& c) {
  const std::int64_t N = 24;
  std::size_t lifts = 0, pairs = 0;
  for (std::int64_t u = 1; u < N; ++u) {
    if (std::gcd(u, N) != 1) continue;
    TorusFunctorModel m(N, u);
    for (std::int64_t n : divisors(N)) {
      Rational one_over_n{Integer(1), Integer(static_cast<long>(n))};
      one_over_n.canonicalize();
      std::uint64_t count = count_lifts_exhaustive(m, scalar_cover(n, 1), {Rational(1)}, 1);
      c.expect(count == 1, "lift count " + std::to_string(count) + " for n=" + std::to_string(n));
      for (std::int64_t s = 0; s < N; ++s) {
        if (m.reduce(n * s) != 0) continue;
        auto q = lift_path(m, n, generator_loop(), {s});
        c.expect(q.winding == std::vector<Rational>{one_over_n} && q.start == TorsionPoint{s}, "lift wrong");
        c.expect(m.reduce(n * endpoint(m, q)[0]) == endpoint(m, generator_loop())[0], "lift does not project");
        ++lifts;
      }
    }
    auto seq = xi_sequence(m);
    std::map<std::int64_t, std::int64_t> xi(seq.begin(), seq.end());
    for (auto [mn, value] : xi)
      for (auto k : divisors(mn)) c.expect(m.reduce(value * k) == xi[mn / k], "xi chain breaks");
    for (std::int64_t u2 = 1; u2 < N; ++u2) {
      if (std::gcd(u2, N) != 1) continue;
      std::int64_t t = compare_functors(m, TorusFunctorModel(N, u2));
      c.expect(m.reduce(t * u) == u2, "compare_functors wrong");
      ++pairs;
    }
  }
  c.expect(pairs == 64, "expected 64 unit pairs");
  if (c.ok) c.log << lifts << " lifts, " << pairs << " functor pairs";
}

void determinism(Check& c) {
  const std::string root = EFC_ROOT, binary = EFC_BINARY;
  auto cases = efc::golden::load_cases(root + "/tests/golden/cases.txt");
  c.expect(!cases.empty(), "no golden cases");
  for (const auto& g : cases) {
    std::string first = efc::golden::run_case(binary, root, g, 1);
    for (int i = 0; i < 2; ++i) c.expect(efc::golden::run_case(binary, root, g, 1) == first, g.name + " differs on rerun");
    c.expect(efc::golden::run_case(binary, root, g, 8) == first, g.name + " differs with 8 threads");
  }
  if (c.ok) c.log << cases.size() << " golden cases, 3 runs and 1 vs 8 threads";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria{
      {"predimension corpus", predimension_corpus},
      {"hrushovski and strongness", hrushovski_strongness},
      {"amalgamation additivity", amalgam_additivity},
      {"kummer degrees", kummer},
      {"schanuel screen", schanuel},
      {"symplectic transitivity", symplectic},
      {"path lifting", path_lifting},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.log << "threw: " << e.what();
    }
    failures += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
              << c.log.str() << ")" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
