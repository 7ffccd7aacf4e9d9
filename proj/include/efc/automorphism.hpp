#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "efc/forge.hpp"

namespace efc {

struct AutCount {
  std::uint64_t count = 0;
  bool at_least = false;  // count reached the caller's bound
};

namespace detail {

// Multiplicative order of y_t when y_t is a root of unity, else 0.
inline unsigned torsion_order(const EFieldPresentation& p, std::size_t t, unsigned limit) {
  const std::string y = y_var(p.generators()[t]);
  GroebnerBasis univariate = eliminate(p.ideal(), {y});
  if (univariate.is_zero_ideal()) return 0;
  const VarList& r = univariate.ring_vars;
  Poly power = Poly::constant(r, 1);
  Poly var = Poly::variable(r, 0);
  for (unsigned e = 1; e <= limit; ++e) {
    power = normal_form(power * var, univariate);
    if (ideal_member(power - Poly::constant(r, 1), univariate)) return e;
  }
  return 0;
}

}  // namespace detail

/// Counts automorphisms of the presentation that fix every x-coordinate and
/// the y-coordinates of `fixed`, moving each remaining y_u to a root-of-unity
/// multiple s * y_u * prod y_t^e_t (s = ±1, t ranging over generators whose
/// exponential is torsion). Every candidate is checked by sending each ideal
/// generator through the substitution and testing membership.
inline AutCount aut_count(const EFieldPresentation& p, const std::vector<std::string>& fixed,
                          std::uint64_t bound, const ExecPolicy& policy = {}) {
  const std::size_t n = p.size();
  const VarList& ring = p.ring();
  GenSet fixed_mask = p.mask_of(fixed);
  std::vector<std::size_t> moving;
  for (std::size_t i = 0; i < n; ++i)
    if (!(fixed_mask & (GenSet{1} << i))) moving.push_back(i);
  if (moving.empty()) return {1, bound <= 1};

  // Base coordinates: all x's and the fixed y's.
  std::vector<std::string> base(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    if (fixed_mask & (GenSet{1} << i)) base.push_back(ring[n + i]);
  const std::size_t base_dim = ideal_dimension(eliminate(p.ideal(), base));
  std::vector<int> transcendental(moving.size(), 0);
  parallel_for(moving.size(), policy.threads, [&](std::size_t k) {
    auto with = base;
    with.push_back(ring[n + moving[k]]);
    transcendental[k] = ideal_dimension(eliminate(p.ideal(), with)) > base_dim;
  });
  for (std::size_t k = 0; k < moving.size(); ++k)
    if (transcendental[k])
      throw Error(ErrorKind::InfiniteAutomorphismGroup,
                  "exponential of " + p.generators()[moving[k]] + " is not algebraic over the fixed part");

  constexpr unsigned kOrderLimit = 720;
  std::vector<unsigned> order(n, 0);
  parallel_for(n, policy.threads, [&](std::size_t t) { order[t] = detail::torsion_order(p, t, kOrderLimit); });

  // Root-of-unity multipliers, deduplicated by normal form.
  std::vector<Poly> multipliers;
  {
    std::set<std::string> seen;
    std::vector<std::size_t> torsion;
    for (std::size_t t = 0; t < n; ++t)
      if (order[t] > 1) torsion.push_back(t);
    std::vector<unsigned> e(torsion.size(), 0);
    for (;;) {
      Exponents mono(ring.size(), 0);
      for (std::size_t k = 0; k < torsion.size(); ++k) mono[n + torsion[k]] = e[k];
      for (int sign : {1, -1}) {
        Poly c = normal_form(Poly::monomial(ring, mono, sign), p.ideal());
        if (seen.insert(c.to_string()).second) multipliers.push_back(c);
      }
      std::size_t k = 0;
      while (k < torsion.size() && ++e[k] == order[torsion[k]]) e[k++] = 0;
      if (k == torsion.size()) break;
    }
  }

  std::vector<std::vector<Poly>> candidates(moving.size());
  for (std::size_t k = 0; k < moving.size(); ++k) {
    std::set<std::string> seen;
    Poly y = Poly::variable(ring, n + moving[k]);
    for (const auto& c : multipliers) {
      Poly img = normal_form(c * y, p.ideal());
      if (seen.insert(img.to_string()).second) candidates[k].push_back(std::move(img));
    }
  }

  auto respects_relations = [&](const std::vector<std::size_t>& choice) {
    std::vector<Poly> subs;
    for (std::size_t v = 0; v < ring.size(); ++v) subs.push_back(Poly::variable(ring, v));
    for (std::size_t k = 0; k < moving.size(); ++k) subs[n + moving[k]] = candidates[k][choice[k]];
    for (const auto& g : p.ideal().generators)
      if (!ideal_member(g.substitute(subs, ring), p.ideal())) return false;
    return true;
  };

  // Enumerate in mixed-radix order, in parallel batches; counting is order-free.
  std::uint64_t total = 1;
  for (const auto& c : candidates) {
    if (total > (std::uint64_t{1} << 40) / c.size())
      throw Error(ErrorKind::EnumerationTooLarge, "too many candidate automorphisms");
    total *= c.size();
  }
  std::uint64_t count = 0;
  const std::uint64_t batch = 256;
  for (std::uint64_t start = 0; start < total && count < bound; start += batch) {
    std::uint64_t len = std::min(batch, total - start);
    std::vector<char> ok(len, 0);
    parallel_for(static_cast<std::size_t>(len), policy.threads, [&](std::size_t i) {
      std::uint64_t code = start + i;
      std::vector<std::size_t> choice(moving.size());
      for (std::size_t k = 0; k < moving.size(); ++k) {
        choice[k] = static_cast<std::size_t>(code % candidates[k].size());
        code /= candidates[k].size();
      }
      ok[i] = respects_relations(choice);
    });
    for (char v : ok) count += v;
  }
  if (count >= bound) return {bound, true};
  return {count, false};
}

/// The Kummer extension of a base: division points alpha_i / m for each
/// listed generator together with a primitive m-th root of unity.
struct KummerExtension {
  EFieldPresentation presentation;
  std::vector<std::string> division_points;
  std::string root_of_unity;
};

inline KummerExtension kummer_extension(const EFieldPresentation& base, const std::vector<std::string>& alphas,
                                        unsigned m) {
  if (!base.kernel()) throw Error(ErrorKind::StepInapplicable, "the base needs a kernel generator");
  ForgeRng unused(0);
  KummerExtension ext{base, {}, {}};
  for (const auto& a : alphas) {
    auto r = apply_step(ext.presentation, ForgeStep::division(a, m), unused);
    ext.presentation = std::move(r.presentation);
    ext.division_points.push_back(r.new_generator);
  }
  auto r = apply_step(ext.presentation, ForgeStep::kernel_division(m), unused);
  ext.presentation = std::move(r.presentation);
  ext.root_of_unity = r.new_generator;
  return ext;
}

/// Order of the automorphism group of the Kummer extension over the base
/// together with its roots of unity.
inline std::uint64_t kummer_degree(const EFieldPresentation& base, const std::vector<std::string>& alphas,
                                   unsigned m, const ExecPolicy& policy = {}) {
  auto ext = kummer_extension(base, alphas, m);
  std::vector<std::string> fixed = base.generators();
  fixed.push_back(ext.root_of_unity);
  return aut_count(ext.presentation, fixed, std::uint64_t{1} << 32, policy).count;
}

/// Uses the first n non-kernel generators of the base as alpha_1..alpha_n.
inline std::uint64_t kummer_degree(const EFieldPresentation& base, unsigned n, unsigned m,
                                   const ExecPolicy& policy = {}) {
  std::vector<std::string> alphas;
  for (const auto& g : base.generators())
    if (g != base.kernel() && alphas.size() < n) alphas.push_back(g);
  if (alphas.size() < n)
    throw Error(ErrorKind::StepInapplicable, "the base has fewer than " + std::to_string(n) + " generators");
  return kummer_degree(base, alphas, m, policy);
}

/// Sub-presentation on a generator subset: the relations supported on it and
/// the elimination ideal of its coordinates.
struct Restriction {
  std::vector<std::string> generators;
  std::optional<std::string> kernel;
  Matrix linear_relations;  // columns follow `generators`
  GroebnerBasis ideal;
};

inline Restriction restrict_to(const EFieldPresentation& p, GenSet mask) {
  Restriction r;
  r.generators = p.names_of(mask);
  if (p.kernel() && (mask & (GenSet{1} << p.index_of(*p.kernel())))) r.kernel = p.kernel();
  const Matrix& rel = p.linear_relations();
  const std::size_t n = p.size();
  std::vector<std::size_t> inside, outside;
  for (std::size_t j = 0; j < n; ++j) ((mask & (GenSet{1} << j)) ? inside : outside).push_back(j);
  // Combinations of relation rows vanishing outside the subset.
  Matrix constraint(outside.size(), std::vector<Rational>(rel.size(), Rational(0)));
  for (std::size_t o = 0; o < outside.size(); ++o)
    for (std::size_t i = 0; i < rel.size(); ++i) constraint[o][i] = rel[i][outside[o]];
  Matrix combos = rel.empty() ? Matrix{} : nullspace(constraint, rel.size());
  for (const auto& c : combos) {
    std::vector<Rational> row(inside.size(), Rational(0));
    for (std::size_t i = 0; i < rel.size(); ++i)
      for (std::size_t k = 0; k < inside.size(); ++k) row[k] += c[i] * rel[i][inside[k]];
    r.linear_relations.push_back(std::move(row));
  }
  rref(r.linear_relations, inside.size());
  r.ideal = eliminate(p.ideal(), p.vars_of(mask));
  return r;
}

namespace detail {

inline bool same_ideal(const GroebnerBasis& a, const GroebnerBasis& b) {
  for (const auto& g : a.generators)
    if (!ideal_member(g, b)) return false;
  for (const auto& g : b.generators)
    if (!ideal_member(g, a)) return false;
  return true;
}

// Is `perm` (index in r1 -> index in r2) an isomorphism of restrictions?
inline bool is_isomorphism(const Restriction& r1, const Restriction& r2, const std::vector<std::size_t>& perm) {
  const std::size_t k = perm.size();
  if (r1.kernel.has_value() != r2.kernel.has_value()) return false;
  if (r1.kernel) {
    auto i1 = static_cast<std::size_t>(std::find(r1.generators.begin(), r1.generators.end(), *r1.kernel) -
                                       r1.generators.begin());
    if (r2.generators[perm[i1]] != *r2.kernel) return false;
  }
  Matrix moved;
  for (const auto& row : r1.linear_relations) {
    std::vector<Rational> m(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) m[perm[i]] = row[i];
    moved.push_back(std::move(m));
  }
  rref(moved, k);
  if (moved != r2.linear_relations) return false;

  const VarList& ring2 = r2.ideal.ring_vars;
  std::vector<std::size_t> index(2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    index[i] = perm[i];
    index[k + i] = k + perm[i];
  }
  auto shared = std::make_shared<const VarList>(ring2);
  std::vector<Poly> renamed;
  for (const auto& g : r1.ideal.generators) renamed.push_back(g.embed(shared, index));
  GroebnerBasis moved_ideal = buchberger(ring2, renamed);
  return same_ideal(moved_ideal, r2.ideal);
}

}  // namespace detail

/// Presentation-scale equality of quantifier-free types: the hulls of a and b
/// are isomorphic by a map sending a to b in order.
inline bool qftp_eq(const EFieldPresentation& p1, const std::vector<std::string>& a,
                    const EFieldPresentation& p2, const std::vector<std::string>& b,
                    const ExecPolicy& policy = {}) {
  if (a.size() != b.size()) throw Error(ErrorKind::MalformedPresentation, "tuples differ in length");
  Hull h1 = hull(p1, a, policy), h2 = hull(p2, b, policy);
  if (h1.value != h2.value || h1.subset.size() != h2.subset.size()) return false;
  GenSet m1 = p1.mask_of(h1.subset), m2 = p2.mask_of(h2.subset);
  Restriction r1 = restrict_to(p1, m1), r2 = restrict_to(p2, m2);
  const std::size_t k = r1.generators.size();

  auto pos = [](const std::vector<std::string>& v, const std::string& s) {
    return static_cast<std::size_t>(std::find(v.begin(), v.end(), s) - v.begin());
  };
  std::vector<long> delta1(k), delta2(k);
  for (std::size_t i = 0; i < k; ++i) {
    delta1[i] = predimension(p1, GenSet{1} << p1.index_of(r1.generators[i]));
    delta2[i] = predimension(p2, GenSet{1} << p2.index_of(r2.generators[i]));
  }

  std::vector<std::size_t> perm(k, k);
  std::vector<bool> used(k, false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t s = pos(r1.generators, a[i]), t = pos(r2.generators, b[i]);
    if (perm[s] != k && perm[s] != t) return false;
    if (perm[s] == k && used[t]) return false;
    perm[s] = t;
    used[t] = true;
  }
  // Backtracking over the remaining generators, pruned by singleton deltas.
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < k; ++i)
    if (perm[i] == k) open.push_back(i);
  auto search = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == open.size()) return detail::is_isomorphism(r1, r2, perm);
    std::size_t s = open[depth];
    for (std::size_t t = 0; t < k; ++t) {
      if (used[t] || delta1[s] != delta2[t]) continue;
      perm[s] = t;
      used[t] = true;
      if (self(self, depth + 1)) return true;
      used[t] = false;
    }
    perm[s] = k;
    return false;
  };
  for (std::size_t i = 0; i < k; ++i)
    if (perm[i] != k && delta1[i] != delta2[perm[i]]) return false;
  return search(search, 0);
}

}  // namespace efc
