#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "efc/parallel.hpp"
#include "efc/presentation.hpp"

namespace efc {

/// Q-linear dimension of the generators in `mask` modulo the presentation's
/// homogeneous linear relations.
inline std::size_t linear_dimension(const EFieldPresentation& p, GenSet mask) {
  const std::size_t n = p.size();
  const Matrix& rel = p.linear_relations();
  Matrix stacked = rel;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(mask & (GenSet{1} << i))) continue;
    std::vector<Rational> e(n, Rational(0));
    e[i] = 1;
    stacked.push_back(std::move(e));
  }
  return rank(std::move(stacked), n) - rel.size();
}

/// Transcendence degree of the coordinates x_g, y_g for g in `mask`.
inline std::size_t transcendence_degree(const EFieldPresentation& p, GenSet mask) {
  if (mask == 0) return 0;
  if (mask == p.full_set()) return ideal_dimension(p.ideal());
  return ideal_dimension(eliminate(p.ideal(), p.vars_of(mask)));
}

/// delta(S) = tr.deg(S ∪ ex(S)) - lin.dim(S).
inline long predimension(const EFieldPresentation& p, GenSet mask) {
  return static_cast<long>(transcendence_degree(p, mask)) -
         static_cast<long>(linear_dimension(p, mask));
}

inline long predimension(const EFieldPresentation& p, const std::vector<std::string>& subset) {
  return predimension(p, p.mask_of(subset));
}

/// Outcome of an exhaustive check; `witness` is set on failure.
struct SubsetVerdict {
  bool pass = true;
  std::optional<std::vector<std::string>> witness;
  long value = 0;
};

namespace detail {

inline void check_budget(std::size_t free_bits, const ExecPolicy& policy) {
  if (free_bits > policy.max_free_generators)
    throw Error(ErrorKind::SubsetLatticeTooLarge,
                "2^" + std::to_string(free_bits) + " subsets exceed the budget of 2^" +
                    std::to_string(policy.max_free_generators));
}

// Smaller cardinality first, then lexicographically smaller sorted index list.
inline bool canonical_less(GenSet a, GenSet b) {
  int ca = __builtin_popcountll(a), cb = __builtin_popcountll(b);
  if (ca != cb) return ca < cb;
  while (a != b) {
    GenSet la = a & (~a + 1), lb = b & (~b + 1);
    if (la != lb) return la < lb;
    a &= a - 1;
    b &= b - 1;
  }
  return false;
}

}  // namespace detail

/// delta for every subset of the generators, indexed by mask.
inline std::vector<long> predimension_table(const EFieldPresentation& p, const ExecPolicy& policy = {}) {
  detail::check_budget(p.size(), policy);
  const std::size_t count = std::size_t{1} << p.size();
  std::vector<long> table(count);
  parallel_for(count, policy.threads, [&](std::size_t m) { table[m] = predimension(p, GenSet{m}); });
  return table;
}

/// d(S) for every S, from a full delta table: the minimum over supersets.
inline std::vector<long> superset_minimum(std::vector<long> table, std::size_t n) {
  for (std::size_t bit = 0; bit < n; ++bit)
    for (std::size_t m = table.size(); m-- > 0;)
      if (!(m & (std::size_t{1} << bit))) table[m] = std::min(table[m], table[m | (std::size_t{1} << bit)]);
  return table;
}

namespace detail {

inline std::vector<GenSet> supersets(GenSet base, GenSet full) {
  std::vector<GenSet> out;
  GenSet free = full & ~base;
  for (GenSet s = free;; s = (s - 1) & free) {
    out.push_back(base | s);
    if (s == 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// min{ delta(Y) : S ⊆ Y ⊆ generators }.
inline long d_min(const EFieldPresentation& p, GenSet s, const ExecPolicy& policy = {}) {
  detail::check_budget(p.size() - static_cast<std::size_t>(__builtin_popcountll(s)), policy);
  auto ys = detail::supersets(s, p.full_set());
  std::vector<long> values(ys.size());
  parallel_for(ys.size(), policy.threads, [&](std::size_t i) { values[i] = predimension(p, ys[i]); });
  return *std::min_element(values.begin(), values.end());
}

inline long d_min(const EFieldPresentation& p, const std::vector<std::string>& subset,
                  const ExecPolicy& policy = {}) {
  return d_min(p, p.mask_of(subset), policy);
}

/// Passes iff delta(Y) >= 0 for every generator subset; on failure the
/// witness is the canonically least violator of minimum size.
inline SubsetVerdict hrushovski_check(const EFieldPresentation& p, const ExecPolicy& policy = {}) {
  auto table = predimension_table(p, policy);
  std::optional<GenSet> worst;
  for (GenSet m = 0; m < table.size(); ++m)
    if (table[m] < 0 && (!worst || detail::canonical_less(m, *worst))) worst = m;
  if (!worst) return {};
  return {false, p.names_of(*worst), table[*worst]};
}

struct Hull {
  std::vector<std::string> subset;
  long value = 0;
  bool is_self_sufficient = false;
};

/// The smallest Y ⊇ S attaining d(S), ties broken canonically.
inline Hull hull(const EFieldPresentation& p, GenSet s, const ExecPolicy& policy = {}) {
  detail::check_budget(p.size() - static_cast<std::size_t>(__builtin_popcountll(s)), policy);
  auto ys = detail::supersets(s, p.full_set());
  std::vector<long> values(ys.size());
  parallel_for(ys.size(), policy.threads, [&](std::size_t i) { values[i] = predimension(p, ys[i]); });
  long best = *std::min_element(values.begin(), values.end());
  std::optional<GenSet> chosen;
  for (std::size_t i = 0; i < ys.size(); ++i)
    if (values[i] == best && (!chosen || detail::canonical_less(ys[i], *chosen))) chosen = ys[i];
  bool sufficient = true;
  for (std::size_t i = 0; i < ys.size(); ++i)
    if ((ys[i] & *chosen) == *chosen && values[i] < best) sufficient = false;
  return {p.names_of(*chosen), best, sufficient};
}

inline Hull hull(const EFieldPresentation& p, const std::vector<std::string>& subset,
                 const ExecPolicy& policy = {}) {
  return hull(p, p.mask_of(subset), policy);
}

}  // namespace efc
