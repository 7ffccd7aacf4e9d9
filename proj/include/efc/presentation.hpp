#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "efc/groebner.hpp"
#include "efc/linalg.hpp"
#include "efc/poly.hpp"

namespace efc {

/// Generator subsets are bit masks over the canonical generator order.
using GenSet = std::uint64_t;

inline std::string x_var(const std::string& gen) { return "x_" + gen; }
inline std::string y_var(const std::string& gen) { return "y_" + gen; }

/// Q[x_g1..x_gn, y_g1..y_gn] for the given generator order.
inline VarList presentation_ring(const std::vector<std::string>& generators) {
  VarList ring;
  for (const auto& g : generators) ring.push_back(x_var(g));
  for (const auto& g : generators) ring.push_back(y_var(g));
  return ring;
}

/// Unvalidated input: what a file or a caller supplies.
struct RawPresentation {
  std::vector<std::string> generators;
  std::optional<std::string> kernel;
  Matrix linear_relations;                // columns follow `generators`
  std::vector<std::string> poly_relations;  // text over x_<gen>, y_<gen>
};

enum class ValidateMode { Close, Strict };

/// A validated, finitely presented partial exponential field. Generators are
/// sorted, linear relations are in reduced echelon form and closed under the
/// forced linear relations of the ideal, and the ideal is held as a reduced
/// degrevlex Groebner basis containing the linear forms, the coherence
/// binomials and (with a kernel) y_kernel - 1.
class EFieldPresentation {
 public:
  EFieldPresentation() = default;

  const std::vector<std::string>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  const std::optional<std::string>& kernel() const { return kernel_; }
  const Matrix& linear_relations() const { return linear_; }
  const GroebnerBasis& ideal() const { return ideal_; }
  const VarList& ring() const { return ideal_.ring_vars; }

  std::size_t index_of(const std::string& gen) const {
    auto it = std::find(generators_.begin(), generators_.end(), gen);
    if (it == generators_.end()) throw Error(ErrorKind::MalformedPresentation, "unknown generator " + gen);
    return static_cast<std::size_t>(it - generators_.begin());
  }

  bool has_generator(const std::string& gen) const {
    return std::find(generators_.begin(), generators_.end(), gen) != generators_.end();
  }

  GenSet full_set() const {
    return generators_.size() >= 64 ? ~GenSet{0} : (GenSet{1} << generators_.size()) - 1;
  }

  GenSet mask_of(const std::vector<std::string>& names) const {
    GenSet m = 0;
    for (const auto& n : names) m |= GenSet{1} << index_of(n);
    return m;
  }

  std::vector<std::string> names_of(GenSet mask) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (mask & (GenSet{1} << i)) out.push_back(generators_[i]);
    return out;
  }

  /// Ring variables x_g, y_g for the generators in `mask`.
  std::vector<std::string> vars_of(GenSet mask) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (mask & (GenSet{1} << i)) out.push_back(x_var(generators_[i]));
    for (std::size_t i = 0; i < generators_.size(); ++i)
      if (mask & (GenSet{1} << i)) out.push_back(y_var(generators_[i]));
    return out;
  }

  RawPresentation raw() const {
    RawPresentation r{generators_, kernel_, linear_, {}};
    for (const auto& g : ideal_.generators) r.poly_relations.push_back(g.to_string());
    return r;
  }

  friend bool operator==(const EFieldPresentation& a, const EFieldPresentation& b) {
    return a.generators_ == b.generators_ && a.kernel_ == b.kernel_ && a.linear_ == b.linear_ &&
           a.ideal_.generators == b.ideal_.generators;
  }

 private:
  friend EFieldPresentation validate(const RawPresentation&, ValidateMode);

  std::vector<std::string> generators_;
  std::optional<std::string> kernel_;
  Matrix linear_;
  GroebnerBasis ideal_;
};

namespace detail {

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// The homomorphism law for an integer relation sum m_i x_i = 0:
// prod_{m_i>0} y_i^m_i - prod_{m_i<0} y_i^-m_i.
inline Poly coherence_binomial(const std::vector<Integer>& row, const VarList& ring, std::size_t n) {
  Exponents pos(ring.size(), 0), neg(ring.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] > 0) pos[n + i] = static_cast<std::uint32_t>(row[i].get_ui());
    if (row[i] < 0) neg[n + i] = static_cast<std::uint32_t>(Integer(-row[i]).get_ui());
  }
  return Poly::monomial(ring, pos) - Poly::monomial(ring, neg);
}

inline Poly linear_form(const std::vector<Rational>& row, const VarList& ring) {
  Poly p(ring);
  for (std::size_t i = 0; i < row.size(); ++i)
    if (row[i] != 0) p += Poly::variable(ring, i) * row[i];
  return p;
}

}  // namespace detail

/// Normal form plus invariant enforcement. In Close mode missing coherence
/// binomials are added; in Strict mode their absence is an error.
inline EFieldPresentation validate(const RawPresentation& in, ValidateMode mode = ValidateMode::Close) {
  const std::size_t n = in.generators.size();
  if (n > 63) throw Error(ErrorKind::MalformedPresentation, "at most 63 generators are supported");
  for (const auto& g : in.generators)
    if (!detail::is_identifier(g))
      throw Error(ErrorKind::MalformedPresentation, "generator name is not an identifier: '" + g + "'");

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return in.generators[a] < in.generators[b]; });

  EFieldPresentation out;
  for (std::size_t i = 0; i < n; ++i) out.generators_.push_back(in.generators[perm[i]]);
  for (std::size_t i = 1; i < n; ++i)
    if (out.generators_[i] == out.generators_[i - 1])
      throw Error(ErrorKind::MalformedPresentation, "duplicate generator " + out.generators_[i]);
  if (in.kernel) {
    if (!std::count(out.generators_.begin(), out.generators_.end(), *in.kernel))
      throw Error(ErrorKind::MalformedPresentation, "kernel " + *in.kernel + " is not a generator");
    out.kernel_ = in.kernel;
  }

  Matrix rows;
  for (const auto& r : in.linear_relations) {
    if (r.size() != n) throw Error(ErrorKind::MalformedPresentation, "linear relation has wrong length");
    std::vector<Rational> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = r[perm[i]];
    rows.push_back(std::move(sorted));
  }
  rref(rows, n);

  const VarList ring = presentation_ring(out.generators_);
  std::vector<Poly> base;
  for (const auto& text : in.poly_relations) base.push_back(parse_poly(text, ring));
  if (out.kernel_) {
    std::size_t k = out.index_of(*out.kernel_);
    base.push_back(Poly::variable(ring, n + k) - Poly::constant(ring, 1));
  }

  // Close the linear relations under the ideal's forced homogeneous linear
  // forms, adding linear forms and coherence binomials until stable.
  GroebnerBasis gb;
  std::vector<std::string> xs(ring.begin(), ring.begin() + static_cast<std::ptrdiff_t>(n));
  for (int round = 0;; ++round) {
    std::vector<Poly> gens = base;
    std::vector<Poly> coherence;
    for (const auto& r : rows) {
      std::vector<Rational> full(2 * n, Rational(0));
      std::copy(r.begin(), r.end(), full.begin());
      gens.push_back(detail::linear_form(full, ring));
      coherence.push_back(detail::coherence_binomial(clear_denominators(r), ring, n));
    }
    if (mode == ValidateMode::Strict && round == 0) {
      GroebnerBasis without = buchberger(ring, gens);
      for (const auto& c : coherence)
        if (!without.is_unit() && !ideal_member(c, without))
          throw Error(ErrorKind::IncoherentLinearRelation,
                      "coherence relation " + c.to_string() + " is not implied");
    }
    gens.insert(gens.end(), coherence.begin(), coherence.end());
    gb = buchberger(ring, gens);
    if (gb.is_unit()) throw Error(ErrorKind::ImproperIdeal, "1 lies in the relation ideal");

    Matrix forced = linear_part(gb, xs);
    Matrix merged = rows;
    merged.insert(merged.end(), forced.begin(), forced.end());
    rref(merged, n);
    if (merged.size() == rows.size()) break;
    if (mode == ValidateMode::Strict)
      throw Error(ErrorKind::IncoherentLinearRelation, "the ideal forces undeclared linear relations");
    rows = std::move(merged);
  }

  if (out.kernel_) {
    std::size_t k = out.index_of(*out.kernel_);
    if (ideal_dimension(eliminate(gb, {ring[k]})) == 0)
      throw Error(ErrorKind::KernelCollapsed, "kernel generator " + *out.kernel_ + " is forced algebraic");
  }

  out.linear_ = std::move(rows);
  out.ideal_ = std::move(gb);
  return out;
}

// ---- JSON presentation files ----------------------------------------------

inline RawPresentation raw_from_json(const nlohmann::json& j) {
  RawPresentation r;
  if (!j.is_object() || !j.contains("generators"))
    throw Error(ErrorKind::MalformedPresentation, "expected an object with \"generators\"");
  try {
    r.generators = j.at("generators").get<std::vector<std::string>>();
    if (j.contains("kernel") && !j.at("kernel").is_null()) r.kernel = j.at("kernel").get<std::string>();
    if (j.contains("linear_relations"))
      for (const auto& row : j.at("linear_relations")) {
        std::vector<Rational> parsed;
        for (const auto& cell : row)
          parsed.push_back(cell.is_number_integer() ? Rational(cell.get<long>())
                                                    : parse_rational(cell.get<std::string>()));
        r.linear_relations.push_back(std::move(parsed));
      }
    if (j.contains("poly_relations"))
      r.poly_relations = j.at("poly_relations").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedPresentation, e.what());
  }
  return r;
}

inline nlohmann::ordered_json to_json(const RawPresentation& r) {
  nlohmann::ordered_json j;
  j["generators"] = r.generators;
  if (r.kernel) j["kernel"] = *r.kernel;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : r.linear_relations) {
    auto cells = nlohmann::ordered_json::array();
    for (const auto& q : row) cells.push_back(to_string(q));
    rows.push_back(std::move(cells));
  }
  j["linear_relations"] = std::move(rows);
  j["poly_relations"] = r.poly_relations;
  return j;
}

inline nlohmann::ordered_json to_json(const EFieldPresentation& p) { return to_json(p.raw()); }

inline EFieldPresentation presentation_from_json(const nlohmann::json& j,
                                                 ValidateMode mode = ValidateMode::Close) {
  return validate(raw_from_json(j), mode);
}

}  // namespace efc
