#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "efc/error.hpp"
#include "efc/parallel.hpp"
#include "efc/rational.hpp"

namespace efc {

using ZVec = std::vector<std::int64_t>;
using ZMat = std::vector<ZVec>;  // row-major
using LatticeBasis = std::vector<ZVec>;

/// (Z/l^k)^{2g} with the standard alternating form: ω(e_i, e_{g+i}) = 1.
struct SymplecticLattice {
  unsigned g = 1;
  std::int64_t l = 2;
  unsigned k = 1;

  SymplecticLattice(unsigned g_, std::int64_t l_, unsigned k_) : g(g_), l(l_), k(k_) {
    if (g == 0 || k == 0) throw Error(ErrorKind::DegenerateInput, "genus and exponent must be positive");
    if (l < 2) throw Error(ErrorKind::DegenerateInput, "l must be prime");
    for (std::int64_t d = 2; d * d <= l; ++d)
      if (l % d == 0) throw Error(ErrorKind::DegenerateInput, "l must be prime");
    std::int64_t q = 1;
    for (unsigned i = 0; i < k; ++i) {
      if (q > (std::int64_t{1} << 31) / l) throw Error(ErrorKind::DegenerateInput, "l^k is too large");
      q *= l;
    }
    q_ = q;
  }

  std::int64_t modulus() const { return q_; }
  std::size_t rank() const { return 2 * g; }

  std::int64_t reduce(std::int64_t a) const {
    a %= q_;
    return a < 0 ? a + q_ : a;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % q_);
  }
  bool is_unit(std::int64_t a) const { return reduce(a) % l != 0; }
  std::int64_t inverse(std::int64_t a) const {
    // Extended Euclid; a must be a unit.
    std::int64_t r0 = q_, r1 = reduce(a), s0 = 0, s1 = 1;
    while (r1) {
      std::int64_t t = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - t * r1);
      std::tie(s0, s1) = std::make_pair(s1, s0 - t * s1);
    }
    if (r0 != 1) throw Error(ErrorKind::DegenerateInput, std::to_string(a) + " is not a unit");
    return reduce(s0);
  }

  std::int64_t omega(const ZVec& u, const ZVec& v) const {
    std::int64_t s = 0;
    for (unsigned i = 0; i < g; ++i) s += mul(u[i], v[g + i]) - mul(u[g + i], v[i]);
    return reduce(s);
  }

  ZMat standard_form() const {
    ZMat j(rank(), ZVec(rank(), 0));
    for (unsigned i = 0; i < g; ++i) {
      j[i][g + i] = 1;
      j[g + i][i] = reduce(-1);
    }
    return j;
  }

  LatticeBasis standard_basis() const {
    LatticeBasis b(rank(), ZVec(rank(), 0));
    for (std::size_t i = 0; i < rank(); ++i) b[i][i] = 1;
    return b;
  }

 private:
  std::int64_t q_ = 2;
};

namespace detail {

inline void check_shape(const std::vector<ZVec>& vs, const SymplecticLattice& L, std::size_t count) {
  if (vs.size() != count) throw Error(ErrorKind::WrongRank, "expected " + std::to_string(count) + " vectors");
  for (const auto& v : vs)
    if (v.size() != L.rank()) throw Error(ErrorKind::WrongRank, "vectors must have length " + std::to_string(L.rank()));
}

inline std::vector<ZVec> reduced(std::vector<ZVec> vs, const SymplecticLattice& L) {
  for (auto& v : vs)
    for (auto& a : v) a = L.reduce(a);
  return vs;
}

inline bool unimodular(const ZVec& v, const SymplecticLattice& L) {
  return std::any_of(v.begin(), v.end(), [&](std::int64_t a) { return L.is_unit(a); });
}

// Solves A x = c over Z/l^k where every row can be given a unit pivot;
// free coordinates are set from `free_values` (default zero). Raises
// DegenerateInput if some row has no unit pivot.
inline ZVec solve_unit_pivot(ZMat a, ZVec c, const SymplecticLattice& L, std::size_t n,
                             const std::map<std::size_t, std::int64_t>& free_values = {}) {
  const std::size_t m = a.size();
  std::vector<std::size_t> pivot_col(m);
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < m; ++r) {
    std::size_t col = n;
    for (std::size_t j = 0; j < n && col == n; ++j)
      if (!is_pivot[j] && L.is_unit(a[r][j])) col = j;
    if (col == n) throw Error(ErrorKind::DegenerateInput, "pairing values are all non-units");
    std::int64_t inv = L.inverse(a[r][col]);
    for (auto& x : a[r]) x = L.mul(x, inv);
    c[r] = L.mul(c[r], inv);
    for (std::size_t s = 0; s < m; ++s) {
      if (s == r || a[s][col] == 0) continue;
      std::int64_t f = a[s][col];
      for (std::size_t j = 0; j < n; ++j) a[s][j] = L.reduce(a[s][j] - L.mul(f, a[r][j]));
      c[s] = L.reduce(c[s] - L.mul(f, c[r]));
    }
    pivot_col[r] = col;
    is_pivot[col] = true;
  }
  ZVec x(n, 0);
  for (const auto& [j, v] : free_values)
    if (!is_pivot[j]) x[j] = L.reduce(v);
  for (std::size_t r = 0; r < m; ++r) {
    std::int64_t s = c[r];
    for (std::size_t j = 0; j < n; ++j)
      if (!is_pivot[j]) s = L.reduce(s - L.mul(a[r][j], x[j]));
    x[pivot_col[r]] = s;
  }
  return x;
}

// Position of the i-th vector of a partial list filled in the order
// e_1, f_1, e_2, f_2, ...
inline std::size_t interleaved_slot(std::size_t i, unsigned g) { return i % 2 == 0 ? i / 2 : g + i / 2; }

}  // namespace detail

/// The multiplier λ if the Gram matrix of b is λ·J with λ a unit.
inline std::optional<std::int64_t> symplectic_multiplier(const LatticeBasis& b, const SymplecticLattice& L) {
  detail::check_shape(b, L, L.rank());
  auto v = detail::reduced(b, L);
  const unsigned g = L.g;
  std::int64_t lambda = L.omega(v[0], v[g]);
  if (!L.is_unit(lambda)) return std::nullopt;
  for (std::size_t i = 0; i < L.rank(); ++i)
    for (std::size_t j = 0; j < L.rank(); ++j) {
      std::int64_t want = 0;
      if (j == i + g && i < g) want = lambda;
      if (i == j + g && j < g) want = L.reduce(-lambda);
      if (L.omega(v[i], v[j]) != want) return std::nullopt;
    }
  return lambda;
}

inline bool is_symplectic_basis(const LatticeBasis& b, const SymplecticLattice& L) {
  return symplectic_multiplier(b, L).has_value();
}

/// Extends `partial`, read as e_1, f_1, e_2, f_2, ..., to a strict
/// symplectic basis (e_1..e_g, f_1..f_g). Each missing e is the first
/// solution orthogonal to everything so far; each missing f pairs to 1 with
/// its e and to 0 with everything else. Free coordinates are zero unless
/// `rng` is given, in which case they are drawn from it.
inline LatticeBasis complete_symplectic(const std::vector<ZVec>& partial, const SymplecticLattice& L,
                                        std::mt19937_64* rng = nullptr) {
  const unsigned g = L.g;
  const std::size_t n = L.rank();
  if (partial.size() > n) throw Error(ErrorKind::WrongRank, "more than 2g vectors");
  detail::check_shape(partial, L, partial.size());
  auto given = detail::reduced(partial, L);
  for (const auto& v : given)
    if (!detail::unimodular(v, L)) throw Error(ErrorKind::DegenerateInput, "a given vector is not unimodular");

  LatticeBasis basis(n);
  std::vector<bool> filled(n, false);
  for (std::size_t i = 0; i < given.size(); ++i) {
    basis[detail::interleaved_slot(i, g)] = given[i];
    filled[detail::interleaved_slot(i, g)] = true;
  }
  auto expected = [&](std::size_t a, std::size_t b) -> std::int64_t {
    if (b == a + g && a < g) return 1;
    if (a == b + g && b < g) return L.reduce(-1);
    return 0;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (filled[a] && filled[b] && L.omega(basis[a], basis[b]) != expected(a, b))
        throw Error(ErrorKind::DegenerateInput, "given vectors are not a partial symplectic family");

  auto random_free = [&] {
    std::map<std::size_t, std::int64_t> free;
    if (rng)
      for (std::size_t j = 0; j < n; ++j) free[j] = static_cast<std::int64_t>((*rng)() % L.modulus());
    return free;
  };
  // ω(v, x) as a row acting on x.
  auto pairing_row = [&](const ZVec& v) {
    ZVec row(n);
    for (unsigned i = 0; i < g; ++i) {
      row[g + i] = v[i];
      row[i] = L.reduce(-v[g + i]);
    }
    return row;
  };
  for (unsigned i = 0; i < g; ++i) {
    for (std::size_t slot : {std::size_t{i}, std::size_t{g + i}}) {
      if (filled[slot]) continue;
      ZMat a;
      ZVec c;
      for (std::size_t s = 0; s < n; ++s) {
        if (!filled[s]) continue;
        a.push_back(pairing_row(basis[s]));
        c.push_back(expected(s, slot));
      }
      ZVec x;
      if (slot < g) {
        // Orthogonal to everything so far and unimodular: one free coordinate
        // is set to 1.
        for (std::size_t pick = 0;; ++pick) {
          if (pick == n) throw Error(ErrorKind::DegenerateInput, "no unimodular orthogonal vector");
          auto free = random_free();
          free[pick] = 1;
          x = detail::solve_unit_pivot(a, c, L, n, free);
          if (x[pick] == 1 && detail::unimodular(x, L)) break;
        }
      } else {
        x = detail::solve_unit_pivot(a, c, L, n, random_free());
      }
      basis[slot] = x;
      filled[slot] = true;
    }
  }
  return basis;
}

namespace detail {

inline ZMat columns_to_matrix(const LatticeBasis& b) {
  const std::size_t n = b.size();
  ZMat m(n, ZVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[j][i] = b[i][j];
  return m;
}

inline ZMat multiply(const ZMat& a, const ZMat& b, const SymplecticLattice& L) {
  const std::size_t n = a.size(), m = b[0].size(), inner = b.size();
  ZMat out(n, ZVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < inner; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] = L.reduce(out[i][j] + L.mul(a[i][t], b[t][j]));
    }
  return out;
}

inline ZMat transpose(const ZMat& a) {
  ZMat t(a[0].size(), ZVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline std::optional<ZMat> inverse(ZMat a, const SymplecticLattice& L) {
  const std::size_t n = a.size();
  ZMat inv(n, ZVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && !L.is_unit(a[p][col])) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[col]);
    std::swap(inv[p], inv[col]);
    std::int64_t s = L.inverse(a[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = L.mul(a[col][j], s);
      inv[col][j] = L.mul(inv[col][j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      std::int64_t f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = L.reduce(a[r][j] - L.mul(f, a[col][j]));
        inv[r][j] = L.reduce(inv[r][j] - L.mul(f, inv[col][j]));
      }
    }
  }
  return inv;
}

}  // namespace detail

/// The multiplier λ with TᵀJT = λJ, if T is general-symplectic.
inline std::optional<std::int64_t> gsp_multiplier(const ZMat& t, const SymplecticLattice& L) {
  // TᵀJT is the Gram matrix of the columns of T.
  return symplectic_multiplier(detail::transpose(t), L);
}

struct Transport {
  ZMat matrix;
  std::int64_t lambda = 1;
};

/// T = B2·B1^{-1} (bases as columns): T·b1_i = b2_i and TᵀJT = λJ with
/// λ = λ2/λ1.
inline Transport transport(const LatticeBasis& b1, const LatticeBasis& b2, const SymplecticLattice& L) {
  auto l1 = symplectic_multiplier(b1, L);
  auto l2 = symplectic_multiplier(b2, L);
  if (!l1) throw Error(ErrorKind::NotSymplectic, "first basis is not symplectic");
  if (!l2) throw Error(ErrorKind::NotSymplectic, "second basis is not symplectic");
  auto m1 = detail::columns_to_matrix(detail::reduced(b1, L));
  auto m2 = detail::columns_to_matrix(detail::reduced(b2, L));
  auto inv = detail::inverse(m1, L);
  if (!inv) throw Error(ErrorKind::NotSymplectic, "first basis is not invertible");
  return {detail::multiply(m2, *inv, L), L.mul(*l2, L.inverse(*l1))};
}

/// det of the Gram matrix of M is a unit.
inline bool sublattice_nondegenerate(const std::vector<ZVec>& m, const SymplecticLattice& L) {
  detail::check_shape(m, L, L.rank());
  auto v = detail::reduced(m, L);
  const std::size_t n = L.rank();
  // Bareiss elimination over Z, reduced at the end.
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Integer(static_cast<long>(L.omega(v[i], v[j])));
  Integer prev = 1;
  int sign = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return false;
    if (p != c) {
      std::swap(a[p], a[c]);
      sign = -sign;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      for (std::size_t j = c + 1; j < n; ++j) a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) / prev;
      a[r][c] = 0;
    }
    prev = a[c][c];
  }
  Integer det = a[n - 1][n - 1] * sign;
  Integer r = det % Integer(static_cast<long>(L.l));
  return r != 0;
}

/// A random element of GSp: random symplectic transvections followed by a
/// random unit multiplier on the f-block. Returned as a basis (its columns).
inline LatticeBasis random_symplectic_basis(const SymplecticLattice& L, std::mt19937_64& rng,
                                            unsigned transvections = 12) {
  LatticeBasis b = L.standard_basis();
  const std::size_t n = L.rank();
  for (unsigned t = 0; t < transvections; ++t) {
    ZVec v(n);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % L.modulus());
    std::int64_t a = static_cast<std::int64_t>(rng() % L.modulus());
    for (auto& x : b) {
      std::int64_t s = L.mul(a, L.omega(x, v));
      for (std::size_t j = 0; j < n; ++j) x[j] = L.reduce(x[j] + L.mul(s, v[j]));
    }
  }
  std::int64_t mu;
  do mu = static_cast<std::int64_t>(rng() % L.modulus());
  while (!L.is_unit(mu));
  for (unsigned i = 0; i < L.g; ++i)
    for (auto& x : b[L.g + i]) x = L.mul(x, mu);
  return b;
}

struct OrbitCount {
  std::uint64_t bases = 0;
  std::uint64_t orbits = 0;
};

enum class OrbitGroup { Full, Trivial };

/// Enumerates every ordered 2g-tuple of vectors, keeps the general-symplectic
/// bases, and counts their orbits under GSp (acting by T·b) or under the
/// trivial group.
inline OrbitCount orbit_count_bruteforce(const SymplecticLattice& L, OrbitGroup group = OrbitGroup::Full,
                                         const ExecPolicy& policy = {}, std::uint64_t limit = std::uint64_t{1} << 24) {
  const std::size_t n = L.rank();
  const auto q = static_cast<std::uint64_t>(L.modulus());
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) {
    if (total > limit / q) throw Error(ErrorKind::EnumerationTooLarge, "too many tuples to enumerate");
    total *= q;
  }
  auto decode = [&](std::uint64_t code) {
    LatticeBasis b(n, ZVec(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        b[i][j] = static_cast<std::int64_t>(code % q);
        code /= q;
      }
    return b;
  };
  auto encode = [&](const LatticeBasis& b) {
    std::uint64_t code = 0;
    for (std::size_t i = n; i-- > 0;)
      for (std::size_t j = n; j-- > 0;) code = code * q + static_cast<std::uint64_t>(b[i][j]);
    return code;
  };

  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (total + kChunk - 1) / kChunk;
  std::vector<std::vector<std::uint64_t>> found(chunks);
  parallel_for(chunks, policy.threads, [&](std::size_t c) {
    for (std::uint64_t code = c * kChunk; code < std::min(total, (c + 1) * kChunk); ++code)
      if (is_symplectic_basis(decode(code), L)) found[c].push_back(code);
  });
  std::vector<std::uint64_t> bases;
  for (auto& f : found) bases.insert(bases.end(), f.begin(), f.end());
  OrbitCount out{bases.size(), bases.size()};
  if (group == OrbitGroup::Trivial || bases.empty()) return out;

  // The group elements are the matrices whose columns are the bases.
  auto index = [&](std::uint64_t code) {
    return static_cast<std::size_t>(std::lower_bound(bases.begin(), bases.end(), code) - bases.begin());
  };
  // Acting by every group element on one basis reaches its whole orbit.
  std::vector<bool> seen(bases.size(), false);
  std::uint64_t orbits = 0;
  for (std::size_t s = 0; s < bases.size(); ++s) {
    if (seen[s]) continue;
    ++orbits;
    const LatticeBasis b = decode(bases[s]);
    std::vector<std::size_t> hits(bases.size());
    parallel_for(bases.size(), policy.threads, [&](std::size_t t) {
      ZMat m = detail::columns_to_matrix(decode(bases[t]));
      LatticeBasis image(n);
      for (std::size_t i = 0; i < n; ++i) {
        image[i] = ZVec(n, 0);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t j = 0; j < n; ++j) image[i][r] = L.reduce(image[i][r] + L.mul(m[r][j], b[i][j]));
      }
      hits[t] = index(encode(image));
    });
    for (std::size_t h : hits) seen[h] = true;
  }
  out.orbits = orbits;
  return out;
}

}  // namespace efc
