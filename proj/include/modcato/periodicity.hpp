#pragma once

// Shift functors U = (- (x) L(gamma)) truncated to X \ J~' and
// D = (- (x) Gamma)^J on Verma-flag vectors, and the checks that the
// subquotient attached to K looks the same as the one attached to K + gamma.

#include <optional>
#include <string>
#include <vector>

#include "modcato/cat_o.hpp"

namespace modcato {

struct ShiftContext {
  LocallyClosedSet K;
  LocallyClosedSet Kt;  // K + gamma
  Weight gamma;
  Prime p;
  unsigned l;
  OpenSet J;
  CarvedOpen Jprime;
  OpenSet Jt;
  CarvedOpen Jtprime;
  FormalCharacter L;      // ch L(gamma)
  FormalCharacter Gamma;  // ch of the dual, weights negated
};

/// Refuses to build a context when gamma is not dominant, not in p^l X, or
/// K fails the periodicity condition.
inline ShiftContext make_shift_context(CategoryO& cat, const LocallyClosedSet& K, const Weight& gamma, unsigned l) {
  const RootSystem& rs = cat.roots();
  rs.check(gamma);
  if (l == 0) throw InvalidArgument("shift context: l must be positive");
  if (K.size() == 0) throw InvalidArgument("shift context: empty K");
  if (!rs.is_dominant(gamma)) throw InvalidArgument("shift context: gamma is not dominant");
  const Coord q = integer_power(cat.prime().value(), l);
  for (std::size_t i = 0; i < rs.rank(); ++i)
    if (gamma[i] % q != 0) throw InvalidArgument("shift context: gamma is not in p^l X");
  if (!periodicity_condition(rs, K.elements(), cat.prime().value(), l))
    throw InvalidArgument("shift context: K violates the periodicity condition for p^" + std::to_string(l));
  auto carved = carve_J_Jprime(rs, K);
  auto Kt = shift_set(rs, K, gamma);
  auto carved_t = carve_J_Jprime(rs, Kt);
  auto L = cat.full_simple_character(gamma);
  auto Gamma = negate_weights(rs, L);
  return ShiftContext{K,           Kt,       gamma,          cat.prime(), l, carved.J, carved.Jprime, carved_t.J,
                      carved_t.Jprime, std::move(L), std::move(Gamma)};
}

/// U on flag vectors supported in K.
inline FlagVector shift_up_flag(const RootSystem& rs, const ShiftContext& ctx, const FlagVector& V) {
  for (const auto& [w, c] : V.entries())
    if (!ctx.K.contains(w)) throw InvalidArgument("shift_up_flag: flag vector not supported in K");
  const auto tensored = tensor_flag(rs, V, ctx.L);
  const CarvedOpen Jtp = ctx.Jtprime;
  WeightPredicate outside{WeightPredicate::Kind::closed, [&rs, Jtp](const Weight& mu) { return !Jtp.contains(rs, mu); }};
  return truncate_flag(rs, tensored, outside);
}

/// D on flag vectors supported in K + gamma.
inline FlagVector shift_down_flag(const RootSystem& rs, const ShiftContext& ctx, const FlagVector& W) {
  for (const auto& [w, c] : W.entries())
    if (!ctx.Kt.contains(w)) throw InvalidArgument("shift_down_flag: flag vector not supported in K + gamma");
  return truncate_flag(rs, tensor_flag(rs, W, ctx.Gamma), open_predicate(rs, ctx.J));
}

inline std::string flag_text(const FlagVector& V) {
  std::string s = "{";
  bool first = true;
  for (const auto& [w, c] : V.entries()) {
    if (!first) s += ", ";
    first = false;
    s += to_string(w) + ":" + std::to_string(c);
  }
  return s + "}";
}

struct ReportEntry {
  std::string identity;
  std::string left;
  std::string right;
  bool pass = false;
};

struct Report {
  std::string title;
  std::vector<ReportEntry> entries;
  std::vector<DecompositionTable> tables;

  bool passed() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return !entries.empty();
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& e : entries) n += e.pass ? 0 : 1;
    return n;
  }
};

inline std::string context_title(const std::string& what, const RootSystem& rs, const ShiftContext& ctx) {
  std::string k;
  for (const auto& w : ctx.K.elements()) k += (k.empty() ? "" : ";") + to_string(w);
  return what + " " + to_string(rs.cartan_type()) + " p=" + std::to_string(ctx.p.value()) +
         " l=" + std::to_string(ctx.l) + " K={" + k + "} gamma=" + to_string(ctx.gamma);
}

/// U(Delta(lambda)) = Delta(lambda + gamma) and D(Delta(lambda + gamma)) =
/// Delta(lambda) for every lambda in K.
inline Report verify_updown(const CategoryO& cat, const ShiftContext& ctx) {
  const RootSystem& rs = cat.roots();
  Report rep{context_title("updown", rs, ctx), {}, {}};
  for (const auto& lambda : ctx.K.elements()) {
    const Weight lt = lambda + ctx.gamma;
    const FlagVector up = shift_up_flag(rs, ctx, FlagVector{{lambda, 1}});
    const FlagVector want_up{{lt, 1}};
    rep.entries.push_back({"U(Delta" + to_string(lambda) + ") = Delta" + to_string(lt), flag_text(up),
                           flag_text(want_up), up == want_up});
    const FlagVector down = shift_down_flag(rs, ctx, FlagVector{{lt, 1}});
    const FlagVector want_down{{lambda, 1}};
    rep.entries.push_back({"D(Delta" + to_string(lt) + ") = Delta" + to_string(lambda), flag_text(down),
                           flag_text(want_down), down == want_down});
  }
  return rep;
}

/// [Delta(mu) : L(lambda)] for lambda <= mu in K, each row peeled on the
/// part of K below mu. Throws BoxError when depth is too small.
inline DecompositionTable kernel_table(CategoryO& cat, const LocallyClosedSet& K, Coord depth) {
  const RootSystem& rs = cat.roots();
  DecompositionTable t;
  t.p = cat.prime().value();
  for (const auto& mu : K.elements()) {
    std::vector<Weight> region;
    for (const auto& lambda : K.elements())
      if (rs.leq(lambda, mu)) {
        if (height(*rs.to_root(mu - lambda)) > depth)
          throw BoxError("kernel_table: depth " + std::to_string(depth) + " does not reach " + to_string(lambda) +
                         " below " + to_string(mu));
        region.push_back(lambda);
      }
    t.merge(cat.decomposition_numbers(mu, region));
  }
  return t;
}

/// Same table with every weight moved by delta.
inline DecompositionTable translated_table(const DecompositionTable& t, const Weight& delta) {
  DecompositionTable out;
  out.p = t.p;
  for (const auto& [mu, region] : t.row_regions) {
    std::vector<Weight> r;
    for (const auto& w : region) r.push_back(w + delta);
    out.row_regions[mu + delta] = r;
  }
  for (const auto& [k, v] : t.entries) out.entries[{k.first + delta, k.second + delta}] = v;
  return out;
}

/// [Delta(mu) : L(lambda)] = [Delta(mu + gamma) : L(lambda + gamma)] for all
/// lambda <= mu in K, both sides from independent Gram computations.
inline Report verify_periodicity(CategoryO& cat, const ShiftContext& ctx, Coord depth) {
  const RootSystem& rs = cat.roots();
  Report rep{context_title("periodicity", rs, ctx), {}, {}};
  const auto base = kernel_table(cat, ctx.K, depth);
  const auto shifted = kernel_table(cat, ctx.Kt, depth);
  for (const auto& mu : ctx.K.elements())
    for (const auto& lambda : ctx.K.elements()) {
      if (!rs.leq(lambda, mu)) continue;
      const Coord a = base.at(mu, lambda);
      const Coord b = shifted.at(mu + ctx.gamma, lambda + ctx.gamma);
      rep.entries.push_back({"[Delta" + to_string(mu) + ":L" + to_string(lambda) + "] = [Delta" +
                                 to_string(mu + ctx.gamma) + ":L" + to_string(lambda + ctx.gamma) + "]",
                             std::to_string(a), std::to_string(b), a == b});
    }
  rep.tables = {base, shifted};
  return rep;
}

/// (P^J(lambda) : Delta(mu)) = (P^J~(lambda + gamma) : Delta(mu + gamma)) on K.
inline Report verify_projective_shift(CategoryO& cat, const ShiftContext& ctx) {
  const RootSystem& rs = cat.roots();
  Report rep{context_title("projective shift", rs, ctx), {}, {}};
  for (const auto& lambda : ctx.K.elements()) {
    FlagVector left, right;
    const FlagVector P = cat.projective_verma_mult(lambda, ctx.J);
    const FlagVector Pt = cat.projective_verma_mult(lambda + ctx.gamma, ctx.Jt);
    for (const auto& [mu, c] : P.entries())
      if (ctx.K.contains(mu)) left.add(mu, c);
    for (const auto& [mu, c] : Pt.entries())
      if (ctx.Kt.contains(mu)) right.add(mu - ctx.gamma, c);
    rep.entries.push_back({"P^J" + to_string(lambda) + " = P^J~" + to_string(lambda + ctx.gamma) + " - gamma",
                           flag_text(left), flag_text(right), left == right});
  }
  return rep;
}

}  // namespace modcato
