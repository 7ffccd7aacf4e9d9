#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "efc/error.hpp"
#include "efc/rational.hpp"

namespace efc {

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline Exponents quotient(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Exponents product(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline bool coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) return false;
  return true;
}

/// Degree-reverse-lexicographic, lexicographic, or a two-block order whose
/// first block (the variables flagged in `block`) dominates; degrevlex is used
/// inside each block. Variables earlier in the ring list are larger.
class MonomialOrder {
 public:
  enum class Kind { DegRevLex, Lex, Block };

  static MonomialOrder degrevlex() { return MonomialOrder(Kind::DegRevLex, {}); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, {}); }
  static MonomialOrder block(std::vector<bool> first_block) {
    return MonomialOrder(Kind::Block, std::move(first_block));
  }

  Kind kind() const { return kind_; }
  const std::vector<bool>& first_block() const { return block_; }

  std::string name() const {
    switch (kind_) {
      case Kind::DegRevLex: return "degrevlex";
      case Kind::Lex: return "lex";
      case Kind::Block: return "block";
    }
    return "?";
  }

  bool degree_compatible() const { return kind_ == Kind::DegRevLex; }

  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Exponents& a, const Exponents& b) const {
    switch (kind_) {
      case Kind::DegRevLex: return compare_drl(a, b, nullptr, false);
      case Kind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::Block: {
        int c = compare_drl(a, b, &block_, true);
        if (c != 0) return c;
        return compare_drl(a, b, &block_, false);
      }
    }
    return 0;
  }

  bool greater(const Exponents& a, const Exponents& b) const { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  MonomialOrder(Kind k, std::vector<bool> block) : kind_(k), block_(std::move(block)) {}

  // Restricted to variables whose block flag equals `in_block` when a mask is given.
  static int compare_drl(const Exponents& a, const Exponents& b, const std::vector<bool>* mask,
                         bool in_block) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask && (*mask)[i] != in_block) continue;
      da += a[i];
      db += b[i];
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (mask && (*mask)[i] != in_block) continue;
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  Kind kind_;
  std::vector<bool> block_;
};

using VarList = std::vector<std::string>;

/// Sparse multivariate polynomial over Q in a named, ordered ring. Terms are
/// stored keyed by exponent vector; zero coefficients are never stored.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational>;

  Poly() : vars_(std::make_shared<const VarList>()) {}
  explicit Poly(VarList vars) : vars_(std::make_shared<const VarList>(std::move(vars))) {}
  Poly(std::shared_ptr<const VarList> vars, TermMap terms)
      : vars_(std::move(vars)), terms_(std::move(terms)) {
    prune();
  }

  static Poly constant(const VarList& vars, const Rational& c) {
    Poly p(vars);
    if (c != 0) p.terms_[Exponents(vars.size(), 0)] = c;
    return p;
  }

  static Poly variable(const VarList& vars, std::size_t index) {
    Poly p(vars);
    Exponents e(vars.size(), 0);
    e.at(index) = 1;
    p.terms_[e] = 1;
    return p;
  }

  static Poly variable(const VarList& vars, std::string_view name) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw Error(ErrorKind::UnknownVariable, std::string(name));
    return variable(vars, static_cast<std::size_t>(it - vars.begin()));
  }

  static Poly monomial(const VarList& vars, Exponents e, const Rational& c = 1) {
    Poly p(vars);
    if (c != 0) p.terms_[std::move(e)] = c;
    return p;
  }

  const VarList& vars() const { return *vars_; }
  const std::shared_ptr<const VarList>& shared_vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  Rational constant_term() const {
    auto it = terms_.find(Exponents(nvars(), 0));
    return it == terms_.end() ? Rational(0) : it->second;
  }

  std::uint64_t degree() const {
    std::uint64_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  /// Indices of variables that occur with a nonzero exponent.
  std::vector<std::size_t> support() const {
    std::vector<bool> used(nvars(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) used[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) out.push_back(i);
    return out;
  }

  /// Terms sorted from largest to smallest under `order`.
  std::vector<std::pair<Exponents, Rational>> sorted_terms(const MonomialOrder& order) const {
    std::vector<std::pair<Exponents, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [&](const auto& a, const auto& b) { return order.greater(a.first, b.first); });
    return out;
  }

  Poly& operator+=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_ring(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [e, v] : terms_) v *= c;
    }
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const { return Poly(*this) *= Rational(-1); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    Poly r(a.vars_, {});
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(efc::product(ea, eb), ca * cb);
    return r;
  }

  Poly pow(std::uint32_t n) const {
    Poly result = Poly::constant(vars(), 1);
    Poly base = *this;
    while (n) {
      if (n & 1u) result = result * base;
      n >>= 1u;
      if (n) base = base * base;
    }
    return result;
  }

  /// Replace variable i by images[i]; all images share one target ring.
  Poly substitute(const std::vector<Poly>& images, const VarList& target) const {
    Poly out(target);
    std::vector<std::vector<Poly>> powers(nvars());
    for (const auto& [e, c] : terms_) {
      Poly t = Poly::constant(target, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly::constant(target, 1));
        while (cache.size() <= e[i]) cache.push_back(cache.back() * images[i]);
        t = t * cache[e[i]];
      }
      out += t;
    }
    return out;
  }

  /// Move into another ring; `index_map[i]` is the target index of variable i.
  Poly embed(const std::shared_ptr<const VarList>& target,
             const std::vector<std::size_t>& index_map) const {
    TermMap out;
    for (const auto& [e, c] : terms_) {
      Exponents t(target->size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t[index_map[i]] += e[i];
      out[std::move(t)] += c;
    }
    return Poly(target, std::move(out));
  }

  /// Move into a ring given by names; every used variable must exist there.
  Poly embed(const VarList& target) const {
    auto shared = std::make_shared<const VarList>(target);
    std::vector<std::size_t> map(nvars(), 0);
    auto used = support();
    for (std::size_t i : used) {
      auto it = std::find(target.begin(), target.end(), (*vars_)[i]);
      if (it == target.end()) throw Error(ErrorKind::UnknownVariable, (*vars_)[i]);
      map[i] = static_cast<std::size_t>(it - target.begin());
    }
    return embed(shared, map);
  }

  /// Divide through by the leading coefficient under `order`.
  Poly monic(const MonomialOrder& order) const {
    if (is_zero()) return *this;
    const Rational* lead = nullptr;
    const Exponents* lm = nullptr;
    for (const auto& [e, c] : terms_) {
      if (!lm || order.greater(e, *lm)) {
        lm = &e;
        lead = &c;
      }
    }
    Rational inv = 1 / *lead;
    return *this * inv;
  }

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return *a.vars_ == *b.vars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  void add_term(const Exponents& e, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second == 0)
        it = terms_.erase(it);
      else
        ++it;
    }
  }

  void check_ring(const Poly& o) const {
    if (vars_ != o.vars_ && *vars_ != *o.vars_)
      throw Error(ErrorKind::RingMismatch, "polynomials live in different rings");
  }

  std::shared_ptr<const VarList> vars_;
  TermMap terms_;
};

/// Canonical text: terms in degrevlex order, coefficients as p/q, unit
/// coefficients dropped in front of monomials.
inline std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : sorted_terms(MonomialOrder::degrevlex())) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    bool constant = total_degree(e) == 0;
    bool need_coeff = constant || mag != 1;
    if (need_coeff) out += efc::to_string(mag);
    bool first_factor = !need_coeff;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_factor) out += "*";
      first_factor = false;
      out += (*vars_)[i];
      if (e[i] > 1) out += "^" + std::to_string(e[i]);
    }
  }
  return out;
}

namespace detail {

// Recursive-descent parser for
//   expr   := ["-"] term (("+"|"-") term)*
//   term   := factor ("*" factor)*
//   factor := atom ("^" nat)?
//   atom   := rational | var | "(" expr ")"
class PolyParser {
 public:
  PolyParser(std::string_view text, const VarList& vars)
      : text_(text), vars_(std::make_shared<const VarList>(vars)) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "operator or end of input");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly constant(const Rational& c) const {
    Poly::TermMap t;
    if (c != 0) t[Exponents(vars_->size(), 0)] = c;
    return Poly(vars_, std::move(t));
  }

  Poly expr() {
    bool negate = accept('-');
    Poly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (accept('^')) {
      skip_ws();
      std::string digits = read_digits();
      if (digits.empty()) throw SyntaxError(pos_, "natural exponent");
      if (digits.size() > 6) throw SyntaxError(pos_, "exponent below 10^6");
      base = base.pow(static_cast<std::uint32_t>(std::stoul(digits)));
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "number, variable or '('");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) throw SyntaxError(pos_, "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      // The '/' of a rational binds tighter than any operator and admits no spaces.
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        std::size_t at = pos_;
        std::string den = read_digits();
        if (den.empty() || den.find_first_not_of('0') == std::string::npos)
          throw SyntaxError(at, "positive integer");
        num += "/" + den;
      }
      Rational q(num, 10);
      q.canonicalize();
      return constant(q);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_->begin(), vars_->end(), name);
      if (it == vars_->end()) throw Error(ErrorKind::UnknownVariable, name);
      Exponents e(vars_->size(), 0);
      e[static_cast<std::size_t>(it - vars_->begin())] = 1;
      return Poly(vars_, Poly::TermMap{{e, Rational(1)}});
    }
    throw SyntaxError(pos_, "number, variable or '('");
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string_view text_;
  std::shared_ptr<const VarList> vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(std::string_view text, const VarList& ring_vars) {
  return detail::PolyParser(text, ring_vars).parse();
}

}  // namespace efc
