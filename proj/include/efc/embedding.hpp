#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "efc/predimension.hpp"

namespace efc {

using LinearCombination = std::map<std::string, Rational>;

/// source ↪ target, each source generator sent to a Q-linear combination of
/// target generators.
struct PresentationEmbedding {
  EFieldPresentation source;
  EFieldPresentation target;
  std::map<std::string, LinearCombination> gen_map;

  /// Every source generator sent to the target generator of the same name.
  static PresentationEmbedding identity_on_names(EFieldPresentation source, EFieldPresentation target) {
    PresentationEmbedding e{std::move(source), std::move(target), {}};
    for (const auto& g : e.source.generators()) e.gen_map[g] = {{g, Rational(1)}};
    return e;
  }
};

namespace detail {

inline std::vector<Rational> image_vector(const PresentationEmbedding& e, const std::string& g) {
  std::vector<Rational> v(e.target.size(), Rational(0));
  auto it = e.gen_map.find(g);
  if (it == e.gen_map.end()) throw Error(ErrorKind::MalformedPresentation, "no image for generator " + g);
  for (const auto& [t, q] : it->second) v[e.target.index_of(t)] += q;
  return v;
}

}  // namespace detail

/// Checks the embedding invariants: images are linearly independent modulo
/// the target relations exactly as far as the source relations allow,
/// relations map into relations, the kernel maps to the kernel, and the
/// induced ring map sends the source ideal into the target ideal. Images of
/// y-variables are monomials, so coefficients must be nonnegative integers.
inline void verify_embedding(const PresentationEmbedding& e) {
  const auto& src = e.source;
  const auto& tgt = e.target;
  const std::size_t n = src.size(), m = tgt.size();
  std::vector<std::vector<Rational>> images;
  for (const auto& g : src.generators()) images.push_back(detail::image_vector(e, g));
  for (const auto& [g, comb] : e.gen_map)
    if (!src.has_generator(g)) throw Error(ErrorKind::MalformedPresentation, "map names unknown generator " + g);

  // Relations go to relations, and nothing else does (injectivity on the span).
  const std::size_t target_rank = tgt.linear_relations().size();
  for (const auto& row : src.linear_relations()) {
    std::vector<Rational> mapped(m, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < m; ++j) mapped[j] += row[i] * images[i][j];
    Matrix stacked = tgt.linear_relations();
    stacked.push_back(mapped);
    if (rank(stacked, m) != target_rank)
      throw Error(ErrorKind::MalformedPresentation, "a linear relation does not map to a relation");
  }
  Matrix all = tgt.linear_relations();
  all.insert(all.end(), images.begin(), images.end());
  if (rank(all, m) - target_rank != n - src.linear_relations().size())
    throw Error(ErrorKind::MalformedPresentation, "the generator map is not injective");

  if (src.kernel()) {
    if (!tgt.kernel()) throw Error(ErrorKind::MalformedPresentation, "target has no kernel");
    LinearCombination want{{*tgt.kernel(), Rational(1)}};
    if (e.gen_map.at(*src.kernel()) != want)
      throw Error(ErrorKind::MalformedPresentation, "kernel must map to kernel");
  }

  const VarList& tr = tgt.ring();
  std::vector<Poly> subs(2 * n, Poly(tr));
  for (std::size_t i = 0; i < n; ++i) {
    Exponents y(2 * m, 0);
    for (std::size_t j = 0; j < m; ++j) {
      const Rational& q = images[i][j];
      if (q == 0) continue;
      subs[i] += Poly::variable(tr, j) * q;
      if (!is_integer(q) || q < 0)
        throw Error(ErrorKind::UnsupportedEmbedding,
                    "exponential image of " + src.generators()[i] + " is not a monomial");
      y[m + j] = static_cast<std::uint32_t>(q.get_num().get_ui());
    }
    subs[n + i] = Poly::monomial(tr, y);
  }
  for (const auto& g : src.ideal().generators)
    if (!ideal_member(g.substitute(subs, tr), tgt.ideal()))
      throw Error(ErrorKind::MalformedPresentation, "relation " + g.to_string() + " does not hold in the target");
}

/// Generators of the target supporting the image of the span of `mask`.
inline GenSet image_support(const PresentationEmbedding& e, GenSet mask) {
  GenSet out = 0;
  for (std::size_t i = 0; i < e.source.size(); ++i) {
    if (!(mask & (GenSet{1} << i))) continue;
    for (const auto& [t, q] : e.gen_map.at(e.source.generators()[i]))
      if (q != 0) out |= GenSet{1} << e.target.index_of(t);
  }
  return out;
}

/// Passes iff d_source(X) = d_target(support of image X) for every subset X
/// of the source generators; the witness is the canonically least failure.
inline SubsetVerdict is_strong(const PresentationEmbedding& e, const ExecPolicy& policy = {}) {
  auto source_d = superset_minimum(predimension_table(e.source, policy), e.source.size());
  auto target_d = superset_minimum(predimension_table(e.target, policy), e.target.size());
  std::optional<GenSet> worst;
  for (GenSet x = 0; x < source_d.size(); ++x) {
    if (source_d[x] == target_d[image_support(e, x)]) continue;
    if (!worst || detail::canonical_less(x, *worst)) worst = x;
  }
  if (!worst) return {};
  return {false, e.source.names_of(*worst), target_d[image_support(e, *worst)]};
}

/// The amalgam together with where B's and C's generators landed.
struct Amalgam {
  EFieldPresentation presentation;
  std::map<std::string, std::string> left;   // B generator -> amalgam generator
  std::map<std::string, std::string> right;  // C generator -> amalgam generator
};

namespace detail {

inline std::optional<std::string> single_image(const LinearCombination& c) {
  if (c.size() == 1 && c.begin()->second == 1) return c.begin()->first;
  return std::nullopt;
}

inline std::string rename_polynomial(const std::string& text, const VarList& from_ring,
                                     const VarList& to_ring, const std::map<std::string, std::string>& names) {
  Poly p = parse_poly(text, from_ring);
  std::vector<std::size_t> index(from_ring.size());
  for (std::size_t i = 0; i < from_ring.size(); ++i) {
    const std::string& v = from_ring[i];
    std::string prefix = v.substr(0, 2), gen = v.substr(2);
    auto it = std::find(to_ring.begin(), to_ring.end(), prefix + names.at(gen));
    index[i] = static_cast<std::size_t>(it - to_ring.begin());
  }
  return p.embed(std::make_shared<const VarList>(to_ring), index).to_string();
}

}  // namespace detail

/// Free amalgam of B and C over A: B's generators, C's generators with the
/// images of A identified, the union of linear relations and the sum of
/// ideals. Both embeddings must be strong.
inline Amalgam free_amalgam(const PresentationEmbedding& eB, const PresentationEmbedding& eC,
                            const ExecPolicy& policy = {}) {
  if (!(eB.source == eC.source))
    throw Error(ErrorKind::MalformedPresentation, "embeddings have different sources");
  verify_embedding(eB);
  verify_embedding(eC);
  if (auto v = is_strong(eB, policy); !v.pass)
    throw Error(ErrorKind::StrongnessViolated, "left embedding is not strong");
  if (auto v = is_strong(eC, policy); !v.pass)
    throw Error(ErrorKind::StrongnessViolated, "right embedding is not strong");

  const auto& A = eB.source;
  const auto& B = eB.target;
  const auto& C = eC.target;
  Amalgam out;
  std::vector<std::string> gens = B.generators();
  for (const auto& g : gens) out.left[g] = g;

  // C generators that are plain images of A generators merge with B's image
  // when that is plain too; all other identifications become linear relations.
  std::vector<std::pair<LinearCombination, LinearCombination>> glue;
  for (const auto& a : A.generators()) {
    auto b = detail::single_image(eB.gen_map.at(a));
    auto c = detail::single_image(eC.gen_map.at(a));
    if (b && c && !out.right.count(*c))
      out.right[*c] = *b;
    else
      glue.emplace_back(eB.gen_map.at(a), eC.gen_map.at(a));
  }
  auto taken = [&](const std::string& name) { return std::find(gens.begin(), gens.end(), name) != gens.end(); };
  for (const auto& c : C.generators()) {
    if (out.right.count(c)) continue;
    std::string name = c;
    for (int k = 2; taken(name); ++k) name = c + "_c" + std::to_string(k - 1);
    out.right[c] = name;
    gens.push_back(name);
  }

  RawPresentation raw;
  raw.generators = gens;
  raw.kernel = B.kernel();
  const std::size_t n = gens.size();
  auto column = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(gens.begin(), gens.end(), name) - gens.begin());
  };
  for (const auto& row : B.linear_relations()) {
    std::vector<Rational> r(n, Rational(0));
    for (std::size_t i = 0; i < B.size(); ++i) r[column(B.generators()[i])] = row[i];
    raw.linear_relations.push_back(std::move(r));
  }
  for (const auto& row : C.linear_relations()) {
    std::vector<Rational> r(n, Rational(0));
    for (std::size_t i = 0; i < C.size(); ++i) r[column(out.right.at(C.generators()[i]))] = row[i];
    raw.linear_relations.push_back(std::move(r));
  }
  for (const auto& [lb, lc] : glue) {
    std::vector<Rational> r(n, Rational(0));
    for (const auto& [g, q] : lb) r[column(out.left.at(g))] += q;
    for (const auto& [g, q] : lc) r[column(out.right.at(g))] -= q;
    raw.linear_relations.push_back(std::move(r));
  }
  // The kernel is cyclic: two kernels not identified through A are glued.
  if (C.kernel()) {
    const std::string ck = out.right.at(*C.kernel());
    if (!raw.kernel) {
      raw.kernel = ck;
    } else if (ck != *raw.kernel) {
      std::vector<Rational> r(n, Rational(0));
      r[column(*raw.kernel)] = 1;
      r[column(ck)] = -1;
      raw.linear_relations.push_back(std::move(r));
    }
  }

  const VarList ring = presentation_ring(gens);
  for (const auto& g : B.ideal().generators)
    raw.poly_relations.push_back(detail::rename_polynomial(g.to_string(), B.ring(), ring, out.left));
  for (const auto& g : C.ideal().generators)
    raw.poly_relations.push_back(detail::rename_polynomial(g.to_string(), C.ring(), ring, out.right));

  out.presentation = validate(raw);
  return out;
}

}  // namespace efc
