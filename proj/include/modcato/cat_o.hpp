#pragma once

// Category O at the level of characters and multiplicities: simple
// characters from Gram ranks, decomposition numbers, Verma-flag vectors
// under truncation and tensor functors, projective multiplicities by
// reciprocity, and the Steinberg factorisation.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "modcato/cache.hpp"
#include "modcato/charring.hpp"
#include "modcato/hypalg.hpp"
#include "modcato/topology.hpp"

namespace modcato {

/// Verma-flag multiplicities (M : Delta(mu)).
class FlagVector {
 public:
  FlagVector() = default;
  FlagVector(std::initializer_list<std::pair<const Weight, Coord>> init) {
    for (const auto& [w, c] : init) add(w, c);
  }

  const std::map<Weight, Coord>& entries() const { return mult_; }
  Coord operator[](const Weight& mu) const {
    auto it = mult_.find(mu);
    return it == mult_.end() ? 0 : it->second;
  }
  bool empty() const { return mult_.empty(); }

  void add(const Weight& mu, Coord c) {
    if (c < 0) throw InvalidArgument("flag multiplicities are nonnegative");
    if (c == 0) return;
    mult_[mu] += c;
  }

  Coord total() const {
    Coord s = 0;
    for (const auto& [w, c] : mult_) s += c;
    return s;
  }

  FlagVector shifted(const Weight& gamma) const {
    FlagVector out;
    for (const auto& [w, c] : mult_) out.add(w + gamma, c);
    return out;
  }

  friend FlagVector operator+(FlagVector a, const FlagVector& b) {
    for (const auto& [w, c] : b.mult_) a.add(w, c);
    return a;
  }
  friend bool operator==(const FlagVector&, const FlagVector&) = default;

 private:
  std::map<Weight, Coord> mult_;
};

/// Composition multiplicities [Delta(mu) : L(lambda)], one row per mu. Each
/// row remembers the region it was peeled on.
struct DecompositionTable {
  std::int64_t p = 0;
  std::map<Weight, std::vector<Weight>> row_regions;
  std::map<std::pair<Weight, Weight>, Coord> entries;  // (mu, lambda) -> value, zeros omitted

  Coord at(const Weight& mu, const Weight& lambda) const {
    auto it = entries.find({mu, lambda});
    return it == entries.end() ? 0 : it->second;
  }

  std::vector<Weight> region() const {
    std::set<Weight> all;
    for (const auto& [mu, r] : row_regions) all.insert(r.begin(), r.end());
    return {all.begin(), all.end()};
  }

  void merge(const DecompositionTable& other) {
    if (p != 0 && other.p != p) throw InvalidArgument("decomposition tables for different primes");
    p = other.p;
    for (const auto& [mu, r] : other.row_regions) row_regions[mu] = r;
    for (const auto& [k, v] : other.entries) entries[k] = v;
  }

  friend bool operator==(const DecompositionTable&, const DecompositionTable&) = default;
};

/// (M : Delta(nu)) restricted to the weights satisfying `set`. The predicate's
/// open/closed tag is checked against the order relations on the support.
inline FlagVector truncate_flag(const RootSystem& rs, const FlagVector& V, const WeightPredicate& set) {
  std::vector<Weight> support;
  for (const auto& [w, c] : V.entries()) support.push_back(w);
  for (const auto& a : support)
    for (const auto& b : support) {
      if (a == b || !rs.leq(a, b)) continue;
      const bool ia = set.contains(a), ib = set.contains(b);
      if (set.kind != WeightPredicate::Kind::closed && ib && !ia)
        throw InvalidArgument("truncate_flag: predicate is not open on the flag support");
      if (set.kind != WeightPredicate::Kind::open && ia && !ib)
        throw InvalidArgument("truncate_flag: predicate is not closed on the flag support");
    }
  FlagVector out;
  for (const auto& [w, c] : V.entries())
    if (set.contains(w)) out.add(w, c);
  return out;
}

/// (M (x) L : Delta(mu)) = sum_lambda (M : Delta(lambda)) dim L_{mu - lambda}.
/// ch_L must describe the whole (finite) module.
inline FlagVector tensor_flag(const RootSystem& rs, const FlagVector& V, const FormalCharacter& ch_L) {
  detail::same_system(rs, ch_L);
  if (!ch_L.complete()) throw BoxError("tensor_flag: character of the finite dimensional factor is truncated");
  FlagVector out;
  for (const auto& [lambda, m] : V.entries())
    for (const auto& [tau, d] : ch_L.terms()) {
      if (d < 0) throw InvalidArgument("tensor_flag: negative weight multiplicity");
      out.add(lambda + tau, m * d);
    }
  return out;
}

/// Character with every weight negated (the k-linear dual, no twist). Needs
/// a complete character.
inline FormalCharacter negate_weights(const RootSystem& rs, const FormalCharacter& chi) {
  detail::same_system(rs, chi);
  if (!chi.complete()) throw BoxError("negate_weights: character is truncated");
  std::set<Weight> support;
  for (const auto& [w, c] : chi.terms()) support.insert(-w);
  std::set<Weight> ceiling;
  for (const auto& a : support)
    if (std::none_of(support.begin(), support.end(), [&](const Weight& b) { return b != a && rs.leq(a, b); }))
      ceiling.insert(a);
  Coord depth = 0;
  for (const auto& w : support) {
    Coord best = -1;
    for (const auto& c : ceiling)
      if (rs.leq(w, c)) {
        Coord h = height(*rs.to_root(c - w));
        if (best < 0 || h < best) best = h;
      }
    depth = std::max(depth, best);
  }
  FormalCharacter out(rs.cartan_type(), TruncationBox(ceiling, depth), true);
  for (const auto& [w, c] : chi.terms()) out.add(rs, -w, c);
  return out;
}

/// (Q^J(lambda) : Delta(mu)) = P(mu - lambda) on {mu in J : mu >= lambda}.
inline FlagVector q_module_mult(const RootSystem& rs, const Weight& lambda, const OpenSet& J) {
  if (!J.contains(rs, lambda)) throw InvalidArgument("q_module_mult: lambda is not in J");
  FlagVector out;
  for (const auto& mu : J.up_set(rs, lambda))
    out.add(mu, static_cast<Coord>(kostant_partition(rs, *rs.to_root(mu - lambda))));
  return out;
}

/// Base-p digits of a dominant weight, lowest first: lambda = sum p^i d_i.
inline std::vector<Weight> steinberg_digits(const RootSystem& rs, const Weight& lambda, Prime p) {
  rs.check(lambda);
  if (!rs.is_dominant(lambda)) throw InvalidArgument("steinberg_digits: weight is not dominant");
  std::vector<Weight> digits;
  Weight rest = lambda;
  do {
    Weight d = Weight::zero(rs.rank());
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      d[i] = rest[i] % p.value();
      rest[i] /= p.value();
    }
    digits.push_back(d);
  } while (!rest.is_zero());
  return digits;
}

struct SteinbergResult {
  bool pass = false;
  std::vector<Weight> digits;
  FormalCharacter simple;      // ch L(lambda) in the box
  FormalCharacter product;     // prod_i twist^i ch L(lambda_i), restricted to the box
  std::map<Weight, Coord> difference;  // simple - product, nonzero terms
};

/// Everything that depends on a prime p: simple characters and all
/// multiplicity data derived from them.
class CategoryO {
 public:
  CategoryO(Hyperalgebra& alg, Prime p) : alg_(alg), p_(p) {}

  const RootSystem& roots() const { return alg_.roots(); }
  Prime prime() const { return p_; }
  Hyperalgebra& algebra() { return alg_; }

  /// dim L(lambda)_mu.
  Coord weight_dim(const Weight& lambda, const Weight& mu) {
    auto d = roots().to_root(lambda - mu);
    if (!d || !is_nonnegative(*d)) return 0;
    return static_cast<Coord>(alg_.simple_weight_dim(lambda, *d, p_));
  }

  FormalCharacter simple_character(const Weight& lambda, const TruncationBox& box) {
    const RootSystem& rs = roots();
    rs.check(lambda);
    if (!box.contains(rs, lambda)) throw InvalidArgument("simple_character: box does not contain lambda");
    bool complete = false;
    if (rs.is_dominant(lambda) && box.ceiling().size() == 1 && *box.ceiling().begin() == lambda &&
        box.depth() >= full_depth(rs, lambda))
      complete = true;
    FormalCharacter out(rs.cartan_type(), box, complete);
    for (const auto& mu : box.weights(rs)) out.add(rs, mu, weight_dim(lambda, mu));
    return out;
  }

  /// Whole character of the finite dimensional L(gamma), gamma dominant.
  FormalCharacter full_simple_character(const Weight& gamma) {
    if (!roots().is_dominant(gamma)) throw InvalidArgument("full_simple_character: weight is not dominant");
    return simple_character(gamma, TruncationBox(gamma, full_depth(roots(), gamma)));
  }

  /// One row [Delta(mu) : L(lambda)], lambda over the region. The region
  /// must lie below mu and contain every weight between any of its
  /// elements and mu.
  DecompositionTable decomposition_numbers(const Weight& mu, std::vector<Weight> region) {
    const RootSystem& rs = roots();
    rs.check(mu);
    std::sort(region.begin(), region.end(), HigherFirst{&rs});
    region.erase(std::unique(region.begin(), region.end()), region.end());
    Coord depth = 0;
    for (const auto& r : region) {
      if (!rs.leq(r, mu)) throw InvalidArgument("decomposition_numbers: region weight not below mu");
      depth = std::max(depth, height(*rs.to_root(mu - r)));
    }
    const auto key = cache::CacheKey{cache::Kind::decomp_row, rs.cartan_type(), p_.value(),
                                     "mu=" + cache::coords_text(mu) + ";region=" + region_text(region)};
    auto row = cache::memoize(
        alg_.store(), key, [&] { return compute_row(mu, region, depth); }, encode_row,
        [&](const std::string& s) { return decode_row(s); });
    DecompositionTable t;
    t.p = p_.value();
    t.row_regions[mu] = region;
    for (const auto& [lambda, c] : row) t.entries[{mu, lambda}] = c;
    return t;
  }

  /// Row over the full box below mu of the given depth.
  DecompositionTable decomposition_numbers(const Weight& mu, Coord depth) {
    return decomposition_numbers(mu, TruncationBox(mu, depth).weights(roots()));
  }

  FlagVector tensor_flag(const FlagVector& V, const Weight& gamma) {
    return modcato::tensor_flag(roots(), V, full_simple_character(gamma));
  }

  /// (P^J(lambda) : Delta(mu)) = [Delta(mu) : L(lambda)] for mu in J.
  FlagVector projective_verma_mult(const Weight& lambda, const OpenSet& J) {
    const RootSystem& rs = roots();
    if (!J.contains(rs, lambda)) throw InvalidArgument("projective_verma_mult: lambda is not in J");
    FlagVector out;
    for (const auto& mu : J.up_set(rs, lambda)) {
      auto row = decomposition_numbers(mu, interval(rs, lambda, mu));
      out.add(mu, row.at(mu, lambda));
    }
    return out;
  }

  /// dim Hom(P^J(lambda), M) = [M : L(lambda)], read off the peel of ch M
  /// against simple characters over all weights of its box.
  Coord hom_dim_projective(const Weight& lambda, const OpenSet& J, const FormalCharacter& ch_M) {
    const RootSystem& rs = roots();
    if (!J.contains(rs, lambda)) throw InvalidArgument("hom_dim_projective: lambda is not in J");
    for (const auto& [w, c] : ch_M.terms())
      if (!J.contains(rs, w)) throw InvalidArgument("hom_dim_projective: character has weights outside J");
    if (!ch_M.box().contains(rs, lambda)) throw BoxError("hom_dim_projective: lambda outside the character's box");
    const auto region = ch_M.box().weights(rs);
    auto coeffs = peel_decompose(rs, ch_M, [&](const Weight& r) { return basis_below(r, region); }, region);
    for (const auto& [w, c] : coeffs)
      if (c < 0) throw InvalidArgument("hom_dim_projective: input is not the character of a module");
    auto it = coeffs.find(lambda);
    return it == coeffs.end() ? 0 : it->second;
  }

  SteinbergResult steinberg_check(const Weight& lambda, const TruncationBox& box) {
    const RootSystem& rs = roots();
    SteinbergResult res;
    res.digits = steinberg_digits(rs, lambda, p_);
    res.simple = simple_character(lambda, box);
    FormalCharacter prod = monomial_character(rs, Weight::zero(rs.rank()), TruncationBox(Weight::zero(rs.rank()), 0));
    Weight top = Weight::zero(rs.rank());
    Coord depth = 0;
    for (std::size_t i = 0; i < res.digits.size(); ++i) {
      auto factor = frobenius_twist_char(rs, full_simple_character(res.digits[i]), static_cast<unsigned>(i), p_.value());
      top += *factor.box().ceiling().begin();
      depth += factor.box().depth();
      prod = char_multiply(rs, prod, factor, TruncationBox(top, depth));
    }
    res.product = restrict_to(rs, prod, box);
    std::map<Weight, Coord> diff = res.simple.terms();
    for (const auto& [w, c] : res.product.terms()) diff[w] -= c;
    for (const auto& [w, c] : diff)
      if (c != 0) res.difference[w] = c;
    res.pass = res.difference.empty();
    return res;
  }

  /// dim Delta(mu)_nu == sum_lambda [Delta(mu):L(lambda)] dim L(lambda)_nu
  /// for every region weight of every row. Returns the failing (mu, nu).
  std::vector<std::pair<Weight, Weight>> character_consistency(const DecompositionTable& t) {
    const RootSystem& rs = roots();
    std::vector<std::pair<Weight, Weight>> bad;
    for (const auto& [mu, region] : t.row_regions)
      for (const auto& nu : region) {
        auto d = rs.to_root(mu - nu);
        const Coord lhs = d ? static_cast<Coord>(kostant_partition(rs, *d)) : 0;
        Coord rhs = 0;
        for (const auto& lambda : region) {
          const Coord a = t.at(mu, lambda);
          if (a != 0) rhs += a * weight_dim(lambda, nu);
        }
        if (lhs != rhs) bad.push_back({mu, nu});
      }
    return bad;
  }

 private:
  /// ch L(r) on a box below r deep enough to cover every region weight.
  FormalCharacter basis_below(const Weight& r, const std::vector<Weight>& region) {
    Coord depth = 0;
    for (const auto& w : region)
      if (roots().leq(w, r)) depth = std::max(depth, height(*roots().to_root(r - w)));
    return simple_character(r, TruncationBox(r, depth));
  }

  std::map<Weight, Coord> compute_row(const Weight& mu, const std::vector<Weight>& region, Coord depth) {
    const RootSystem& rs = roots();
    const auto verma = verma_character(rs, mu, TruncationBox(mu, depth));
    auto row = peel_decompose(rs, verma, [&](const Weight& r) { return basis_below(r, region); }, region);
    for (const auto& [lambda, c] : row)
      if (c < 0)
        throw InternalError("decomposition_numbers: negative multiplicity at (" + cache::coords_text(mu) + "; " +
                            cache::coords_text(lambda) + ")");
    return row;
  }

  static std::string region_text(const std::vector<Weight>& region) {
    std::string s;
    for (const auto& w : region) s += cache::coords_text(w) + ' ';
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cache::fnv1a64(s)));
    return std::to_string(region.size()) + ":" + buf;
  }

  static std::string encode_row(const std::map<Weight, Coord>& row) {
    std::string s = "row";
    for (const auto& [w, c] : row) s += ";" + cache::coords_text(w) + "=" + std::to_string(c);
    return s;
  }

  std::optional<std::map<Weight, Coord>> decode_row(const std::string& s) const {
    if (s.rfind("row", 0) != 0) return std::nullopt;
    std::map<Weight, Coord> row;
    std::size_t pos = 3;
    try {
      while (pos < s.size()) {
        if (s[pos] != ';') return std::nullopt;
        auto end = s.find(';', pos + 1);
        std::string item = s.substr(pos + 1, end == std::string::npos ? std::string::npos : end - pos - 1);
        auto eq = item.find('=');
        if (eq == std::string::npos) return std::nullopt;
        std::vector<Coord> coords;
        std::size_t q = 0;
        std::string ws = item.substr(0, eq);
        while (true) {
          auto c = ws.find(',', q);
          coords.push_back(std::stoll(ws.substr(q, c == std::string::npos ? std::string::npos : c - q)));
          if (c == std::string::npos) break;
          q = c + 1;
        }
        if (coords.size() != roots().rank()) return std::nullopt;
        row[Weight(coords)] = std::stoll(item.substr(eq + 1));
        pos = end == std::string::npos ? s.size() : end;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
    return row;
  }

  Hyperalgebra& alg_;
  Prime p_;
};

}  // namespace modcato
