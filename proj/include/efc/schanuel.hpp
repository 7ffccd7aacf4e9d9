#pragma once

#include <string>
#include <vector>

#include "efc/predimension.hpp"

namespace efc {

/// An exponential-polynomial system in Q[x_1..x_n, y_1..y_n], y_i standing
/// for exp(x_i).
struct ExpSystem {
  std::size_t n = 0;
  std::vector<Poly> ideal_gens;

  static VarList ring(std::size_t n) {
    VarList r;
    for (std::size_t i = 1; i <= n; ++i) r.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) r.push_back("y" + std::to_string(i));
    return r;
  }

  static ExpSystem parse(std::size_t n, const std::vector<std::string>& relations) {
    if (n > 63) throw Error(ErrorKind::MalformedPresentation, "at most 63 variable pairs");
    ExpSystem s{n, {}};
    VarList r = ring(n);
    for (const auto& text : relations) s.ideal_gens.push_back(parse_poly(text, r));
    return s;
  }

  /// {"n": 2, "poly_relations": ["y1 - x2", ...]}
  static ExpSystem from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned())
      throw Error(ErrorKind::MalformedPresentation, "system needs a nonnegative integer 'n'");
    std::vector<std::string> rel;
    if (j.contains("poly_relations")) rel = j["poly_relations"].get<std::vector<std::string>>();
    return parse(j["n"].get<std::size_t>(), rel);
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    auto rel = nlohmann::ordered_json::array();
    for (const auto& g : ideal_gens) rel.push_back(g.to_string());
    j["poly_relations"] = rel;
    return j;
  }
};

namespace detail {

inline GroebnerBasis system_ideal(const ExpSystem& s) {
  GroebnerBasis gb = buchberger(ExpSystem::ring(s.n), s.ideal_gens);
  if (gb.is_unit()) throw Error(ErrorKind::UnitIdeal, "the system has no solutions");
  return gb;
}

// dim of the projection onto the pairs in `pairs` minus their generic
// linear dimension.
inline long projected_predimension(const GroebnerBasis& gb, std::size_t n, GenSet pairs) {
  std::vector<std::string> keep, xs;
  for (std::size_t i = 0; i < n; ++i)
    if (pairs & (GenSet{1} << i)) {
      keep.push_back(gb.ring_vars[i]);
      xs.push_back(gb.ring_vars[i]);
    }
  for (std::size_t i = 0; i < n; ++i)
    if (pairs & (GenSet{1} << i)) keep.push_back(gb.ring_vars[n + i]);
  GroebnerBasis proj = eliminate(gb, keep);
  long dim = static_cast<long>(ideal_dimension(proj));
  long r = static_cast<long>(linear_part(proj, xs).size());
  return dim - (static_cast<long>(xs.size()) - r);
}

}  // namespace detail

/// dim V - (n - r), r the rank of the homogeneous linear relations among the
/// x's in the ideal.
inline long generic_predimension(const ExpSystem& s) {
  GroebnerBasis gb = detail::system_ideal(s);
  GenSet all = s.n >= 64 ? ~GenSet{0} : (GenSet{1} << s.n) - 1;
  return detail::projected_predimension(gb, s.n, all);
}

struct ScVerdict {
  bool compatible = true;
  std::vector<std::size_t> witness;  // 1-based pair indices
  long value = 0;
};

/// Contradicts iff some coordinate projection onto a nonempty set of pairs
/// has negative generic predimension. The witness is the least such set,
/// by size and then lexicographically.
inline ScVerdict sc_screen(const ExpSystem& s, const ExecPolicy& policy = {}) {
  GroebnerBasis gb = detail::system_ideal(s);
  detail::check_budget(s.n, policy);
  const std::size_t count = std::size_t{1} << s.n;
  std::vector<long> values(count, 0);
  parallel_for(count - 1, policy.threads,
               [&](std::size_t i) { values[i + 1] = detail::projected_predimension(gb, s.n, GenSet{i + 1}); });
  std::optional<GenSet> worst;
  for (GenSet m = 1; m < count; ++m)
    if (values[m] < 0 && (!worst || detail::canonical_less(m, *worst))) worst = m;
  if (!worst) return {};
  ScVerdict v{false, {}, values[*worst]};
  for (std::size_t i = 0; i < s.n; ++i)
    if (*worst & (GenSet{1} << i)) v.witness.push_back(i + 1);
  return v;
}

}  // namespace efc
