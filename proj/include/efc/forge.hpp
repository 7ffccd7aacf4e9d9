#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "efc/embedding.hpp"

namespace efc {

/// m-th cyclotomic polynomial in the variable `var` of `ring`, built by
/// dividing y^m - 1 by the cyclotomic factors of the proper divisors of m.
inline Poly cyclotomic(unsigned m, const VarList& ring, std::size_t var) {
  if (m == 0) throw Error(ErrorKind::StepInapplicable, "cyclotomic order must be positive");
  // Integer coefficient vectors, lowest degree first.
  std::vector<std::vector<Integer>> phi(m + 1);
  for (unsigned d = 1; d <= m; ++d) {
    if (m % d) continue;
    std::vector<Integer> num(d + 1, Integer(0));
    num[0] = -1;
    num[d] = 1;
    for (unsigned e = 1; e < d; ++e) {
      if (d % e) continue;
      const auto& den = phi[e];
      std::vector<Integer> q(num.size() - den.size() + 1, Integer(0));
      for (std::size_t k = q.size(); k-- > 0;) {
        q[k] = num[k + den.size() - 1];  // den is monic
        for (std::size_t t = 0; t < den.size(); ++t) num[k + t] -= q[k] * den[t];
      }
      num = std::move(q);
    }
    phi[d] = std::move(num);
  }
  Poly out(ring);
  for (std::size_t k = 0; k < phi[m].size(); ++k) {
    if (phi[m][k] == 0) continue;
    Exponents e(ring.size(), 0);
    e[var] = static_cast<std::uint32_t>(k);
    out += Poly::monomial(ring, e, Rational(phi[m][k]));
  }
  return out;
}

/// One primitive extension from the catalog. A missing target is chosen by
/// the forge's seeded generator among the non-kernel generators.
struct ForgeStep {
  enum class Kind { FreeGen, DivisionPoint, KernelDivision, ExIterate };
  Kind kind = Kind::FreeGen;
  std::optional<std::string> target;
  unsigned m = 1;

  static ForgeStep free_gen() { return {Kind::FreeGen, std::nullopt, 1}; }
  static ForgeStep division(std::optional<std::string> x, unsigned m) { return {Kind::DivisionPoint, std::move(x), m}; }
  static ForgeStep kernel_division(unsigned m) { return {Kind::KernelDivision, std::nullopt, m}; }
  static ForgeStep ex_iterate(std::optional<std::string> x) { return {Kind::ExIterate, std::move(x), 1}; }

  /// "free", "div:x:2", "div:2", "kdiv:3", "exiter:x", "exiter".
  static ForgeStep parse(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    auto number = [&](const std::string& s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 6)
        throw Error(ErrorKind::StepInapplicable, "bad number in step '" + text + "'");
      unsigned v = static_cast<unsigned>(std::stoul(s));
      if (v == 0) throw Error(ErrorKind::StepInapplicable, "order must be positive in '" + text + "'");
      return v;
    };
    if (parts.size() == 1 && parts[0] == "free") return free_gen();
    if (parts.size() == 3 && parts[0] == "div") return division(parts[1], number(parts[2]));
    if (parts.size() == 2 && parts[0] == "div") return division(std::nullopt, number(parts[1]));
    if (parts.size() == 2 && parts[0] == "kdiv") return kernel_division(number(parts[1]));
    if (parts.size() == 2 && parts[0] == "exiter") return ex_iterate(parts[1]);
    if (parts.size() == 1 && parts[0] == "exiter") return ex_iterate(std::nullopt);
    throw Error(ErrorKind::StepInapplicable, "unknown step '" + text + "'");
  }

  std::string describe() const {
    switch (kind) {
      case Kind::FreeGen: return "free";
      case Kind::DivisionPoint: return "div:" + target.value_or("?") + ":" + std::to_string(m);
      case Kind::KernelDivision: return "kdiv:" + std::to_string(m);
      case Kind::ExIterate: return "exiter:" + target.value_or("?");
    }
    return "?";
  }
};

/// Deterministic generator for underdetermined step targets.
class ForgeRng {
 public:
  explicit ForgeRng(std::uint64_t seed) : engine_(seed) {}
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

 private:
  std::mt19937_64 engine_;
};

struct StepResult {
  EFieldPresentation presentation;
  ForgeStep resolved;
  std::string new_generator;
};

namespace detail {

inline std::string fresh_name(const EFieldPresentation& p, const std::string& stem) {
  for (unsigned k = 1;; ++k) {
    std::string name = stem + std::to_string(k);
    if (!p.has_generator(name)) return name;
  }
}

}  // namespace detail

/// Applies one catalog step, choosing a missing target with `rng`.
inline StepResult apply_step(const EFieldPresentation& p, ForgeStep step, ForgeRng& rng) {
  using Kind = ForgeStep::Kind;
  if ((step.kind == Kind::DivisionPoint || step.kind == Kind::ExIterate) && !step.target) {
    std::vector<std::string> pool;
    for (const auto& g : p.generators())
      if (g != p.kernel()) pool.push_back(g);
    if (pool.empty()) throw Error(ErrorKind::StepInapplicable, step.describe() + ": no generator to act on");
    step.target = pool[rng.pick(pool.size())];
  }
  if (step.target && !p.has_generator(*step.target))
    throw Error(ErrorKind::StepInapplicable, step.describe() + ": unknown generator");
  if (step.kind == Kind::KernelDivision && !p.kernel())
    throw Error(ErrorKind::StepInapplicable, "kdiv needs a kernel generator");

  static constexpr const char* stems[] = {"x", "h", "k", "z"};
  RawPresentation raw = p.raw();
  const std::string name = detail::fresh_name(p, stems[static_cast<int>(step.kind)]);
  raw.generators.push_back(name);
  for (auto& row : raw.linear_relations) row.push_back(0);
  const std::size_t n = raw.generators.size();
  const VarList ring = presentation_ring(raw.generators);
  // Old relations were printed over the old ring; re-home them by name.
  for (auto& text : raw.poly_relations) text = parse_poly(text, p.ring()).embed(ring).to_string();

  auto column = [&](const std::string& g) {
    return static_cast<std::size_t>(std::find(raw.generators.begin(), raw.generators.end(), g) -
                                    raw.generators.begin());
  };
  switch (step.kind) {
    case Kind::FreeGen: break;
    case Kind::DivisionPoint: {
      // m*h = x; validate adds y_h^m - y_x.
      std::vector<Rational> row(n, Rational(0));
      row[column(*step.target)] = -1;
      row[column(name)] = step.m;
      raw.linear_relations.push_back(std::move(row));
      break;
    }
    case Kind::KernelDivision: {
      std::vector<Rational> row(n, Rational(0));
      row[column(*p.kernel())] = -1;
      row[column(name)] = step.m;
      raw.linear_relations.push_back(std::move(row));
      raw.poly_relations.push_back(cyclotomic(step.m, ring, n + column(name)).to_string());
      break;
    }
    case Kind::ExIterate:
      raw.poly_relations.push_back(x_var(name) + " - " + y_var(*step.target));
      break;
  }
  return {validate(raw), step, name};
}

struct ForgeStage {
  EFieldPresentation presentation;
  std::string step;
};

struct ForgeTrace {
  std::uint64_t seed = 0;
  std::vector<ForgeStage> stages;
};

/// Applies the steps in order, verifying that each stage embeds strongly in
/// the next and that every stage satisfies the Hrushovski inequality.
inline ForgeTrace forge(const EFieldPresentation& base, const std::vector<ForgeStep>& steps,
                        std::uint64_t seed, const ExecPolicy& policy = {}) {
  if (auto v = hrushovski_check(base, policy); !v.pass)
    throw Error(ErrorKind::MalformedPresentation, "base presentation violates the Hrushovski inequality");
  ForgeTrace trace{seed, {{base, "base"}}};
  ForgeRng rng(seed);
  for (const auto& step : steps) {
    const EFieldPresentation& current = trace.stages.back().presentation;
    StepResult r = apply_step(current, step, rng);
    auto strong = is_strong(PresentationEmbedding::identity_on_names(current, r.presentation), policy);
    if (!strong.pass)
      throw Error(ErrorKind::StrongnessViolated, r.resolved.describe() + " is not a strong extension");
    if (!hrushovski_check(r.presentation, policy).pass)
      throw Error(ErrorKind::StrongnessViolated, r.resolved.describe() + " breaks the Hrushovski inequality");
    trace.stages.push_back({std::move(r.presentation), r.resolved.describe()});
  }
  return trace;
}

}  // namespace efc
