#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "efc/error.hpp"
#include "efc/linalg.hpp"
#include "efc/parallel.hpp"
#include "efc/rational.hpp"

namespace efc {

/// Level-N model of a π₁-like functor on powers of G_m. Torsion points of
/// G_m^r are coded additively in (Z/N)^r; u says which primitive N-th root
/// the generator loop ends at after dividing by N.
class TorusFunctorModel {
 public:
  TorusFunctorModel(std::int64_t n_max, std::int64_t u) : n_(n_max) {
    if (n_max < 1) throw Error(ErrorKind::InvalidModel, "level must be positive");
    u_ = ((u % n_) + n_) % n_;
    if (std::gcd(u_, n_) != 1) throw Error(ErrorKind::InvalidModel, std::to_string(u) + " is not a unit mod " + std::to_string(n_));
  }

  std::int64_t level() const { return n_; }
  std::int64_t unit() const { return u_; }
  std::int64_t reduce(std::int64_t a) const { return ((a % n_) + n_) % n_; }
  std::int64_t reduce(const Integer& a) const {
    Integer r = a % Integer(static_cast<long>(n_));
    if (r < 0) r += static_cast<long>(n_);
    return r.get_si();
  }

 private:
  std::int64_t n_ = 1;
  std::int64_t u_ = 0;
};

using TorsionPoint = std::vector<std::int64_t>;

struct TorusPath {
  TorsionPoint start;
  std::vector<Rational> winding;

  std::size_t rank() const { return start.size(); }
};

using CoverMatrix = std::vector<std::vector<std::int64_t>>;

inline CoverMatrix scalar_cover(std::int64_t n, std::size_t r) {
  CoverMatrix a(r, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i) a[i][i] = n;
  return a;
}

namespace detail {

inline Rational fraction(std::int64_t num, std::int64_t den) {
  Rational q{Integer(static_cast<long>(num)), Integer(static_cast<long>(den))};
  q.canonicalize();
  return q;
}

inline void check_path(const TorusFunctorModel& m, const TorusPath& p) {
  if (p.start.size() != p.winding.size()) throw Error(ErrorKind::InvalidModel, "start and winding differ in rank");
  for (const auto& w : p.winding)
    if (Integer(static_cast<long>(m.level())) % w.get_den() != 0)
      throw Error(ErrorKind::LevelInsufficient, "winding " + to_string(w) + " needs level " +
                                                    to_string(Rational(w.get_den())));
}

inline TorsionPoint apply_cover(const TorusFunctorModel& m, const CoverMatrix& a, const TorsionPoint& x) {
  TorsionPoint out(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    __int128 s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += static_cast<__int128>(a[i][j]) * x[j];
    out[i] = m.reduce(static_cast<std::int64_t>(s % m.level()));
  }
  return out;
}

}  // namespace detail

/// start_i + u·(N·winding_i) mod N.
inline TorsionPoint endpoint(const TorusFunctorModel& m, const TorusPath& p) {
  detail::check_path(m, p);
  TorsionPoint out(p.rank());
  for (std::size_t i = 0; i < p.rank(); ++i) {
    Rational steps = p.winding[i] * static_cast<long>(m.level());
    out[i] = m.reduce(p.start[i] + m.reduce(Integer(steps.get_num()) * static_cast<long>(m.unit())));
  }
  return out;
}

/// The path q from `lift_start` with cover·q.winding = p.winding.
inline TorusPath lift_path(const TorusFunctorModel& m, const CoverMatrix& cover, const TorusPath& p,
                           const TorsionPoint& lift_start) {
  detail::check_path(m, p);
  const std::size_t r = p.rank();
  if (cover.size() != r || lift_start.size() != r)
    throw Error(ErrorKind::InvalidModel, "cover, path and start differ in rank");
  for (const auto& row : cover)
    if (row.size() != r) throw Error(ErrorKind::InvalidModel, "cover must be square");
  if (detail::apply_cover(m, cover, lift_start) != [&] {
        TorsionPoint s(r);
        for (std::size_t i = 0; i < r; ++i) s[i] = m.reduce(p.start[i]);
        return s;
      }())
    throw Error(ErrorKind::StartNotInFiber, "the cover does not send the lift start to the path start");

  // Solve cover·w = winding over Q.
  Matrix aug(r, std::vector<Rational>(r + 1));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) aug[i][j] = static_cast<long>(cover[i][j]);
    aug[i][r] = p.winding[i];
  }
  auto pivots = rref(aug, r + 1);
  if (aug.size() != r || pivots.size() != r || pivots.back() >= r)
    throw Error(ErrorKind::InvalidModel, "cover is not an isogeny");
  TorusPath q{lift_start, std::vector<Rational>(r)};
  for (std::size_t i = 0; i < r; ++i) q.winding[pivots[i]] = aug[i][r];
  for (auto& x : q.start) x = m.reduce(x);
  detail::check_path(m, q);
  return q;
}

inline TorusPath lift_path(const TorusFunctorModel& m, std::int64_t n, const TorusPath& p,
                           const TorsionPoint& lift_start) {
  return lift_path(m, scalar_cover(n, p.rank()), p, lift_start);
}

/// Number of winding vectors with denominators dividing N and |w_i| ≤ bound
/// such that cover·w = target, by enumerating every numerator.
inline std::uint64_t count_lifts_exhaustive(const TorusFunctorModel& m, const CoverMatrix& cover,
                                            const std::vector<Rational>& target, std::int64_t bound) {
  const std::size_t r = target.size();
  const std::int64_t n = m.level();
  std::vector<std::int64_t> k(r, -bound * n);
  std::uint64_t count = 0;
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < r && ok; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < r; ++j) s += detail::fraction(cover[i][j] * k[j], n);
      ok = s == target[i];
    }
    count += ok;
    std::size_t i = 0;
    while (i < r && ++k[i] > bound * n) k[i++] = -bound * n;
    if (i == r) break;
  }
  return count;
}

inline std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> d;
  for (std::int64_t i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

/// The generator loop of G_m: from the identity, one full turn.
inline TorusPath generator_loop() { return {{0}, {Rational(1)}}; }

/// ξ_n for n | N: endpoint of the lift of the generator loop under z^n
/// starting at the identity.
inline std::vector<std::pair<std::int64_t, std::int64_t>> xi_sequence(const TorusFunctorModel& m) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (auto n : divisors(m.level())) out.emplace_back(n, endpoint(m, lift_path(m, n, generator_loop(), {0}))[0]);
  return out;
}

struct AxiomEntry {
  int axiom = 0;
  std::size_t r = 0;
  std::int64_t n = 0;  // cover exponent; 0 where not applicable
  std::uint64_t checked = 0;
  bool pass = true;
  std::string detail;
};

struct AxiomReport {
  std::vector<AxiomEntry> entries;
  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const AxiomEntry& e) { return e.pass; });
  }
};

namespace detail {

// Every point of (Z/N)^r when there are at most `cap` of them, otherwise a
// strided subset of that size.
inline std::vector<TorsionPoint> sample_points(std::int64_t n, std::size_t r, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= static_cast<std::uint64_t>(n);
  std::uint64_t stride = total <= cap ? 1 : (total + cap - 1) / cap;
  std::vector<TorsionPoint> out;
  for (std::uint64_t code = 0; code < total; code += stride) {
    TorsionPoint x(r);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < r; ++i) {
      x[i] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(n));
      c /= static_cast<std::uint64_t>(n);
    }
    out.push_back(std::move(x));
  }
  return out;
}

inline std::vector<Rational> windings_from(const TorsionPoint& steps, std::int64_t n) {
  std::vector<Rational> w;
  for (auto k : steps) w.push_back(fraction(k, n));
  return w;
}

}  // namespace detail

/// Checks axioms (0)-(3) at ranks 1..r_max. Entries are sorted by
/// (r, n, axiom).
inline AxiomReport check_axioms(const TorusFunctorModel& m, std::size_t r_max, const ExecPolicy& policy = {}) {
  const std::int64_t N = m.level();
  constexpr std::uint64_t kCap = 1024;
  std::vector<std::tuple<std::size_t, std::int64_t, int>> jobs;
  for (std::size_t r = 1; r <= r_max; ++r) {
    jobs.emplace_back(r, 0, 0);
    if (r >= 2) jobs.emplace_back(r, 0, 1);
    jobs.emplace_back(r, 0, 2);
    for (auto n : divisors(N)) jobs.emplace_back(r, n, 3);
  }
  std::vector<AxiomEntry> entries(jobs.size());
  parallel_for(jobs.size(), policy.threads, [&](std::size_t j) {
    auto [r, n, axiom] = jobs[j];
    AxiomEntry e{axiom, r, n, 0, true, ""};
    auto fail = [&](const std::string& why) {
      if (e.pass) e.detail = why;
      e.pass = false;
    };
    auto points = detail::sample_points(N, r, kCap);
    switch (axiom) {
      case 0: {
        // Objects are the torsion points: paths from the identity reach all of them.
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < r; ++i) total *= static_cast<std::uint64_t>(N);
        std::vector<bool> hit(total, false);
        for (const auto& steps : detail::sample_points(N, r, total)) {
          auto end = endpoint(m, {TorsionPoint(r, 0), detail::windings_from(steps, N)});
          std::uint64_t code = 0;
          for (std::size_t i = r; i-- > 0;) code = code * static_cast<std::uint64_t>(N) + static_cast<std::uint64_t>(end[i]);
          hit[code] = true;
          ++e.checked;
        }
        if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) fail("some torsion point is not reached");
        break;
      }
      case 1: {
        // Splitting (Z/N)^r as (Z/N)^1 x (Z/N)^{r-1}: paths, endpoints and
        // lifts act componentwise.
        auto windings = detail::sample_points(N, r, 64);
        for (const auto& s : points)
          for (const auto& k : windings) {
            TorusPath p{s, detail::windings_from(k, N)};
            TorusPath left{{s[0]}, {p.winding[0]}};
            TorusPath right{TorsionPoint(s.begin() + 1, s.end()), std::vector<Rational>(p.winding.begin() + 1, p.winding.end())};
            auto whole = endpoint(m, p);
            auto a = endpoint(m, left), b = endpoint(m, right);
            a.insert(a.end(), b.begin(), b.end());
            if (a != whole) fail("endpoint does not factor");
            ++e.checked;
          }
        break;
      }
      case 2: {
        // Any two objects are joined by a path.
        const std::int64_t inv = [&] {
          for (std::int64_t t = 0; t < N; ++t)
            if (m.reduce(t * m.unit()) == m.reduce(1)) return t;
          return std::int64_t{0};
        }();
        auto targets = detail::sample_points(N, r, 64);
        for (const auto& a : points)
          for (const auto& b : targets) {
            TorsionPoint steps(r);
            for (std::size_t i = 0; i < r; ++i) steps[i] = m.reduce((b[i] - a[i]) * inv);
            if (endpoint(m, {a, detail::windings_from(steps, N)}) != b) fail("objects not joined");
            ++e.checked;
          }
        break;
      }
      default: {
        // Unique lifting of each coordinate generator loop under z^n from
        // every point of the fiber over the identity.
        auto cover = scalar_cover(n, r);
        std::vector<TorsionPoint> fiber;
        for (const auto& x : detail::sample_points(N / n, r, std::uint64_t{1} << 20)) {
          TorsionPoint y(r);
          for (std::size_t i = 0; i < r; ++i) y[i] = x[i] * (N / n);
          fiber.push_back(std::move(y));
        }
        for (std::size_t coord = 0; coord < r; ++coord) {
          TorusPath p{TorsionPoint(r, 0), std::vector<Rational>(r, Rational(0))};
          p.winding[coord] = 1;
          if (r <= 2 && count_lifts_exhaustive(m, cover, p.winding, 1) != 1) fail("lift is not unique");
          for (const auto& start : fiber) {
            auto q = lift_path(m, cover, p, start);
            if (detail::apply_cover(m, cover, endpoint(m, q)) != endpoint(m, p)) fail("endpoint does not project");
            for (std::size_t i = 0; i < r; ++i)
              if (q.winding[i] * n != p.winding[i]) fail("lift does not project");
            ++e.checked;
          }
        }
        break;
      }
    }
    entries[j] = std::move(e);
  });
  std::stable_sort(entries.begin(), entries.end(), [](const AxiomEntry& a, const AxiomEntry& b) {
    return std::tie(a.r, a.n, a.axiom) < std::tie(b.r, b.n, b.axiom);
  });
  return {std::move(entries)};
}

/// The unit t with u2 = t·u1, checked by carrying ξ of m1 onto ξ of m2.
inline std::int64_t compare_functors(const TorusFunctorModel& m1, const TorusFunctorModel& m2) {
  if (m1.level() != m2.level())
    throw Error(ErrorKind::IncompatibleLevels,
                "levels " + std::to_string(m1.level()) + " and " + std::to_string(m2.level()) + " differ");
  const std::int64_t N = m1.level();
  std::int64_t t = 0;
  for (std::int64_t c = 0; c < N; ++c)
    if (std::gcd(c, N) == 1 && m1.reduce(static_cast<std::int64_t>(static_cast<__int128>(c) * m1.unit() % N)) == m2.unit()) {
      t = c;
      break;
    }
  auto xi1 = xi_sequence(m1), xi2 = xi_sequence(m2);
  for (std::size_t i = 0; i < xi1.size(); ++i)
    if (m1.reduce(xi1[i].second * t) != xi2[i].second)
      throw Error(ErrorKind::InvalidModel, "twist does not carry the distinguished sequence");
  return t;
}

}  // namespace efc
