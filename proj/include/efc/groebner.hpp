#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "efc/linalg.hpp"
#include "efc/poly.hpp"

namespace efc {

/// A reduced Groebner basis: monic generators, each reduced against the
/// others, sorted by ascending leading monomial.
struct GroebnerBasis {
  VarList ring_vars;
  MonomialOrder order = MonomialOrder::degrevlex();
  std::vector<Poly> generators;

  bool is_zero_ideal() const { return generators.empty(); }
  bool is_unit() const { return generators.size() == 1 && generators.front().is_constant(); }
};

namespace detail {

struct Term {
  Exponents mono;
  Rational coef;
};

// Dense-sorted representation used inside the algorithm: terms descending.
struct SortedPoly {
  std::vector<Term> terms;

  bool empty() const { return terms.empty(); }
  const Exponents& lm() const { return terms.front().mono; }
};

inline SortedPoly to_sorted(const Poly& p, const MonomialOrder& order) {
  SortedPoly s;
  for (auto& [e, c] : p.sorted_terms(order)) s.terms.push_back({e, c});
  return s;
}

inline Poly from_sorted(const SortedPoly& s, const std::shared_ptr<const VarList>& vars) {
  Poly::TermMap m;
  for (const auto& t : s.terms) m.emplace(t.mono, t.coef);
  return Poly(vars, std::move(m));
}

inline void make_monic(SortedPoly& p) {
  if (p.empty() || p.terms.front().coef == 1) return;
  Rational inv = 1 / p.terms.front().coef;
  for (auto& t : p.terms) t.coef *= inv;
}

struct OrderGreater {
  const MonomialOrder* order;
  bool operator()(const Exponents& a, const Exponents& b) const { return order->greater(a, b); }
};

// Full normal form of p modulo the monic polynomials basis[idx] for idx in `active`.
inline SortedPoly normal_form(const SortedPoly& p, const std::vector<SortedPoly>& basis,
                              const std::vector<std::size_t>& active, const MonomialOrder& order) {
  std::map<Exponents, Rational, OrderGreater> work(OrderGreater{&order});
  for (const auto& t : p.terms) work.emplace(t.mono, t.coef);
  SortedPoly rem;
  while (!work.empty()) {
    auto it = work.begin();
    const SortedPoly* reducer = nullptr;
    for (std::size_t idx : active) {
      if (divides(basis[idx].lm(), it->first)) {
        reducer = &basis[idx];
        break;
      }
    }
    if (!reducer) {
      rem.terms.push_back({it->first, it->second});
      work.erase(it);
      continue;
    }
    Exponents shift = quotient(it->first, reducer->lm());
    Rational factor = it->second;
    work.erase(it);
    for (std::size_t k = 1; k < reducer->terms.size(); ++k) {
      const Term& t = reducer->terms[k];
      Exponents m = product(t.mono, shift);
      auto [pos, inserted] = work.try_emplace(std::move(m), -factor * t.coef);
      if (!inserted) {
        pos->second -= factor * t.coef;
        if (pos->second == 0) work.erase(pos);
      }
    }
  }
  return rem;
}

inline SortedPoly s_polynomial(const SortedPoly& f, const SortedPoly& g, const MonomialOrder& order) {
  Exponents l = lcm(f.lm(), g.lm());
  Exponents sf = quotient(l, f.lm());
  Exponents sg = quotient(l, g.lm());
  std::map<Exponents, Rational, OrderGreater> acc(OrderGreater{&order});
  for (std::size_t k = 1; k < f.terms.size(); ++k)
    acc[product(f.terms[k].mono, sf)] += f.terms[k].coef;
  for (std::size_t k = 1; k < g.terms.size(); ++k) {
    auto& slot = acc[product(g.terms[k].mono, sg)];
    slot -= g.terms[k].coef;
  }
  SortedPoly s;
  for (auto& [e, c] : acc)
    if (c != 0) s.terms.push_back({e, c});
  return s;
}

struct CriticalPair {
  std::size_t i, j;
  Exponents lcm;
};

// Gebauer-Moeller installation of a new basis element h (index `h`).
inline void gm_update(std::vector<std::size_t>& active, std::vector<CriticalPair>& pairs,
                      std::size_t h, const std::vector<SortedPoly>& polys) {
  const Exponents& lh = polys[h].lm();
  std::vector<CriticalPair> c;
  for (std::size_t g : active) c.push_back({g, h, lcm(polys[g].lm(), lh)});

  // Chain criterion among the new pairs, scanning in order: (h,g) survives
  // when coprime, or when no unscanned pair and no survivor has an lcm
  // dividing its lcm.
  std::vector<CriticalPair> d;
  for (std::size_t a = 0; a < c.size(); ++a) {
    bool keep = coprime(polys[c[a].i].lm(), lh);
    if (!keep) {
      keep = true;
      for (std::size_t b = a + 1; b < c.size() && keep; ++b)
        if (divides(c[b].lcm, c[a].lcm)) keep = false;
      for (const auto& x : d)
        if (keep && divides(x.lcm, c[a].lcm)) keep = false;
    }
    if (keep) d.push_back(c[a]);
  }
  // Product criterion.
  std::vector<CriticalPair> e;
  for (auto& p : d)
    if (!coprime(polys[p.i].lm(), lh)) e.push_back(p);

  // Drop old pairs made redundant by h.
  std::vector<CriticalPair> kept;
  for (auto& p : pairs) {
    bool redundant = divides(lh, p.lcm) && lcm(polys[p.i].lm(), lh) != p.lcm &&
                     lcm(polys[p.j].lm(), lh) != p.lcm;
    if (!redundant) kept.push_back(std::move(p));
  }
  for (auto& p : e) kept.push_back(std::move(p));
  pairs = std::move(kept);

  std::vector<std::size_t> next;
  for (std::size_t g : active)
    if (!divides(lh, polys[g].lm())) next.push_back(g);
  next.push_back(h);
  active = std::move(next);
}

inline GroebnerBasis buchberger_impl(const VarList& vars, std::span<const Poly> gens,
                                     const MonomialOrder& order) {
  auto shared = std::make_shared<const VarList>(vars);
  std::vector<SortedPoly> polys;
  std::vector<std::size_t> active;
  std::vector<CriticalPair> pairs;

  auto install = [&](SortedPoly p) {
    make_monic(p);
    polys.push_back(std::move(p));
    gm_update(active, pairs, polys.size() - 1, polys);
  };

  for (const Poly& g : gens) {
    SortedPoly s = to_sorted(g.vars() == vars ? g : g.embed(vars), order);
    s = normal_form(s, polys, active, order);
    if (s.empty()) continue;
    if (total_degree(s.lm()) == 0) {
      GroebnerBasis unit{vars, order, {Poly::constant(vars, 1)}};
      return unit;
    }
    install(std::move(s));
  }

  while (!pairs.empty()) {
    // Normal selection strategy; ties resolved by insertion indices.
    auto best = pairs.begin();
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      int c = order.compare(it->lcm, best->lcm);
      if (c < 0 || (c == 0 && std::pair(it->j, it->i) < std::pair(best->j, best->i))) best = it;
    }
    CriticalPair pair = *best;
    pairs.erase(best);
    SortedPoly s = s_polynomial(polys[pair.i], polys[pair.j], order);
    s = normal_form(s, polys, active, order);
    if (s.empty()) continue;
    if (total_degree(s.lm()) == 0) return GroebnerBasis{vars, order, {Poly::constant(vars, 1)}};
    install(std::move(s));
  }

  // Minimal basis, then inter-reduction.
  std::vector<std::size_t> minimal;
  for (std::size_t a : active) {
    bool redundant = false;
    for (std::size_t b : active) {
      if (a == b) continue;
      if (divides(polys[b].lm(), polys[a].lm()) &&
          (polys[b].lm() != polys[a].lm() || b < a)) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(a);
  }
  std::vector<SortedPoly> reduced;
  for (std::size_t a : minimal) {
    std::vector<std::size_t> others;
    for (std::size_t b : minimal)
      if (b != a) others.push_back(b);
    SortedPoly tail;
    tail.terms.assign(polys[a].terms.begin() + 1, polys[a].terms.end());
    SortedPoly r = normal_form(tail, polys, others, order);
    SortedPoly full;
    full.terms.push_back(polys[a].terms.front());
    for (auto& t : r.terms) full.terms.push_back(std::move(t));
    reduced.push_back(std::move(full));
  }
  std::sort(reduced.begin(), reduced.end(), [&](const SortedPoly& a, const SortedPoly& b) {
    return order.compare(a.lm(), b.lm()) < 0;
  });
  GroebnerBasis gb{vars, order, {}};
  for (auto& r : reduced) gb.generators.push_back(from_sorted(r, shared));
  return gb;
}

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `gens` in Q[vars].
inline GroebnerBasis buchberger(const VarList& vars, std::span<const Poly> gens,
                                const MonomialOrder& order = MonomialOrder::degrevlex()) {
  return detail::buchberger_impl(vars, gens, order);
}

inline GroebnerBasis buchberger(const VarList& vars, const std::vector<Poly>& gens,
                                const MonomialOrder& order = MonomialOrder::degrevlex()) {
  return detail::buchberger_impl(vars, std::span<const Poly>(gens), order);
}

/// Normal form of p modulo a Groebner basis (in gb's order).
inline Poly normal_form(const Poly& p, const GroebnerBasis& gb) {
  std::vector<detail::SortedPoly> basis;
  std::vector<std::size_t> active;
  for (const auto& g : gb.generators) {
    basis.push_back(detail::to_sorted(g, gb.order));
    active.push_back(active.size());
  }
  const Poly& in = p.vars() == gb.ring_vars ? p : p.embed(gb.ring_vars);
  auto nf = detail::normal_form(detail::to_sorted(in, gb.order), basis, active, gb.order);
  return detail::from_sorted(nf, in.shared_vars());
}

inline bool ideal_member(const Poly& p, const GroebnerBasis& gb) {
  return normal_form(p, gb).is_zero();
}

inline std::vector<Exponents> leading_monomials(const GroebnerBasis& gb) {
  std::vector<Exponents> out;
  for (const auto& g : gb.generators) {
    const Exponents* lm = nullptr;
    for (const auto& [e, c] : g.terms())
      if (!lm || gb.order.greater(e, *lm)) lm = &e;
    out.push_back(*lm);
  }
  return out;
}

namespace detail {

// Minimum number of variables hitting every support set, by branch and bound.
inline void min_hitting_set(const std::vector<std::uint64_t>& supports, std::uint64_t chosen,
                            int size, int& best) {
  if (size >= best) return;
  const std::uint64_t* open = nullptr;
  std::size_t open_bits = 65;
  for (const auto& s : supports) {
    if (s & chosen) continue;
    auto bits = static_cast<std::size_t>(__builtin_popcountll(s));
    if (bits < open_bits) {
      open = &s;
      open_bits = bits;
    }
  }
  if (!open) {
    best = size;
    return;
  }
  if (size + 1 >= best) return;
  for (std::uint64_t rest = *open; rest; rest &= rest - 1) {
    std::uint64_t bit = rest & (~rest + 1);
    min_hitting_set(supports, chosen | bit, size + 1, best);
  }
}

}  // namespace detail

/// Krull dimension of Q[vars]/I: the largest variable subset containing the
/// support of no leading monomial. Raises UnitIdeal for the unit ideal.
inline std::size_t ideal_dimension(const GroebnerBasis& gb) {
  if (gb.is_unit()) throw Error(ErrorKind::UnitIdeal, "the ideal contains 1");
  const std::size_t n = gb.ring_vars.size();
  if (n > 64) throw Error(ErrorKind::MalformedPresentation, "more than 64 ring variables");
  std::vector<std::uint64_t> supports;
  for (const auto& lm : leading_monomials(gb)) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (lm[i]) s |= std::uint64_t{1} << i;
    supports.push_back(s);
  }
  // Supersets of another support are implied.
  std::sort(supports.begin(), supports.end(),
            [](auto a, auto b) { return __builtin_popcountll(a) < __builtin_popcountll(b); });
  std::vector<std::uint64_t> minimal;
  for (auto s : supports) {
    bool implied = std::any_of(minimal.begin(), minimal.end(),
                               [&](std::uint64_t m) { return (m & s) == m; });
    if (!implied) minimal.push_back(s);
  }
  int best = static_cast<int>(n) + 1;
  detail::min_hitting_set(minimal, 0, 0, best);
  return n - static_cast<std::size_t>(best);
}

/// Groebner basis of I ∩ Q[keep], computed with a two-block order that puts
/// the eliminated variables first. The result lives in the kept variables
/// (in the original ring order) with degrevlex.
inline GroebnerBasis eliminate(const GroebnerBasis& gb, const std::vector<std::string>& keep) {
  const VarList& vars = gb.ring_vars;
  std::vector<bool> kept(vars.size(), false);
  for (const auto& k : keep) {
    auto it = std::find(vars.begin(), vars.end(), k);
    if (it == vars.end()) throw Error(ErrorKind::UnknownVariable, k);
    kept[static_cast<std::size_t>(it - vars.begin())] = true;
  }
  VarList sub;
  std::vector<std::size_t> to_sub(vars.size(), 0);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (kept[i]) {
      to_sub[i] = sub.size();
      sub.push_back(vars[i]);
    }
  }
  auto shared = std::make_shared<const VarList>(sub);
  GroebnerBasis out{sub, MonomialOrder::degrevlex(), {}};
  if (gb.is_unit()) {
    out.generators.push_back(Poly::constant(sub, 1));
    return out;
  }

  std::vector<bool> first_block(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) first_block[i] = !kept[i];
  bool trivial = std::none_of(first_block.begin(), first_block.end(), [](bool b) { return b; });
  GroebnerBasis full = trivial && gb.order == MonomialOrder::degrevlex()
                           ? gb
                           : buchberger(vars, gb.generators, MonomialOrder::block(first_block));
  for (const auto& g : full.generators) {
    bool inside = true;
    for (std::size_t i : g.support())
      if (!kept[i]) inside = false;
    if (inside) out.generators.push_back(g.embed(shared, to_sub));
  }
  return out;
}

/// Row basis (reduced echelon form) of all homogeneous linear forms in the
/// variables `among` that lie in the ideal. Columns follow `among`.
inline Matrix linear_part(const GroebnerBasis& gb, const std::vector<std::string>& among) {
  if (among.empty()) return {};
  const GroebnerBasis& work =
      gb.order.degree_compatible() ? gb : buchberger(gb.ring_vars, gb.generators);
  if (work.is_unit()) {
    Matrix all(among.size(), std::vector<Rational>(among.size(), Rational(0)));
    for (std::size_t i = 0; i < among.size(); ++i) all[i][i] = 1;
    return all;
  }
  // Under a degree-compatible order the normal form of a linear form is
  // affine; a combination lies in the ideal iff its normal forms cancel.
  std::vector<Poly> nfs;
  std::set<Exponents> monos;
  for (const auto& name : among) {
    Poly nf = normal_form(Poly::variable(work.ring_vars, name), work);
    for (const auto& [e, c] : nf.terms()) monos.insert(e);
    nfs.push_back(std::move(nf));
  }
  std::vector<Exponents> rows(monos.begin(), monos.end());
  Matrix m(rows.size(), std::vector<Rational>(among.size(), Rational(0)));
  for (std::size_t col = 0; col < nfs.size(); ++col)
    for (const auto& [e, c] : nfs[col].terms()) {
      auto r = static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), e) - rows.begin());
      m[r][col] = c;
    }
  return nullspace(m, among.size());
}

}  // namespace efc
