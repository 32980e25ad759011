#pragma once

// Straightening in the enveloping algebra over Z and the divided-power
// contravariant form on Verma weight spaces.
//
// All products are formed with ordinary powers e^n, f^n, h^n. Divided-power
// values are recovered at the very end by dividing by the product of the
// factorials of the exponents involved; Kostant's integrality theorem says
// this division is exact, and every such division is checked.

#include <atomic>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "modcato/cache.hpp"
#include "modcato/rootdata.hpp"

namespace modcato {

using Integer = boost::multiprecision::cpp_int;

inline constexpr std::size_t kMaxGenerators = 2 * kMaxPositiveRoots + kMaxRank;

/// Instance too large for the configured limits.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// A divided-power value was not integral: straightening is wrong.
class IntegralityError : public InternalError {
 public:
  using InternalError::InternalError;
};

class Prime {
 public:
  explicit Prime(std::int64_t v) : v_(v) {
    if (v < 2) throw InvalidArgument("p must be a prime, got " + std::to_string(v));
    for (std::int64_t d = 2; d * d <= v; ++d)
      if (v % d == 0) throw InvalidArgument("p must be a prime, got " + std::to_string(v));
  }
  std::int64_t value() const { return v_; }
  friend bool operator==(Prime, Prime) = default;

 private:
  std::int64_t v_;
};

struct Limits {
  std::uint64_t max_basis = 200;       // kostant_partition(nu) bound for Gram matrices
  std::size_t max_terms = 1'000'000;  // terms in any single straightening result
};

/// Ordered monomial f^(a) h^(b) e^(c), exponents indexed by generator id
/// (f's in PBW order, then h's, then e's). Stored without divided-power
/// denominators.
struct PBWMonomial {
  std::array<std::uint16_t, kMaxGenerators> exps{};

  friend auto operator<=>(const PBWMonomial&, const PBWMonomial&) = default;
  friend bool operator==(const PBWMonomial&, const PBWMonomial&) = default;

  bool is_one() const {
    return std::all_of(exps.begin(), exps.end(), [](std::uint16_t x) { return x == 0; });
  }
  bool has_f(const RootSystem& rs) const { return any_in(0, rs.num_positive_roots()); }
  bool has_e(const RootSystem& rs) const { return any_in(rs.e_gen(0), rs.num_generators()); }
  bool is_cartan(const RootSystem& rs) const { return !has_f(rs) && !has_e(rs); }

  /// Weight of the monomial in the root lattice.
  RootVector weight(const RootSystem& rs) const {
    RootVector w = RootVector::zero(rs.rank());
    for (std::size_t g = 0; g < rs.num_generators(); ++g)
      if (exps[g] != 0) w += static_cast<Coord>(exps[g]) * rs.generator_weight(g);
    return w;
  }

  std::string to_string(const RootSystem& rs) const {
    std::string s;
    for (std::size_t g = 0; g < rs.num_generators(); ++g) {
      if (exps[g] == 0) continue;
      if (!s.empty()) s += ' ';
      s += rs.generator_name(g);
      if (exps[g] > 1) s += '^' + std::to_string(exps[g]);
    }
    return s.empty() ? "1" : s;
  }

 private:
  bool any_in(std::size_t lo, std::size_t hi) const {
    for (std::size_t g = lo; g < hi; ++g)
      if (exps[g] != 0) return true;
    return false;
  }
};

struct PBWMonomialHash {
  std::size_t operator()(const PBWMonomial& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : m.exps) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Integer linear combination of PBW monomials.
class UElement {
 public:
  UElement() = default;
  static UElement monomial(const PBWMonomial& m, Integer c = 1) {
    UElement u;
    u.add(m, std::move(c));
    return u;
  }
  static UElement one() { return monomial(PBWMonomial{}); }

  const std::map<PBWMonomial, Integer>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const PBWMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add(const PBWMonomial& m, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add_scaled(const UElement& u, const Integer& c) {
    if (c == 0) return;
    for (const auto& [m, x] : u.terms_) add(m, x * c);
  }
  UElement& operator+=(const UElement& u) {
    add_scaled(u, 1);
    return *this;
  }
  friend bool operator==(const UElement&, const UElement&) = default;

  std::string to_string(const RootSystem& rs) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + c.str() + ")" + (m.is_one() ? std::string() : " " + m.to_string(rs));
    }
    return s;
  }

 private:
  std::map<PBWMonomial, Integer> terms_;
};

/// Generator raised to an ordinary power.
struct GenPower {
  std::size_t gen;
  unsigned power = 1;
};

/// Rewrites products into PBW normal form by left multiplication with single
/// generators, memoized on (generator, monomial).
///
/// In highest_weight mode terms with a nonzero e-part are discarded as soon
/// as they appear. That computes modulo the left ideal generated by the e's,
/// i.e. the action on a highest weight vector with symbolic weight.
class Straightener {
 public:
  enum class Mode { full, highest_weight };

  Straightener(std::shared_ptr<const RootSystem> rs, Mode mode, Limits limits = {})
      : rs_(std::move(rs)), mode_(mode), limits_(limits) {}

  const RootSystem& roots() const { return *rs_; }
  Mode mode() const { return mode_; }

  UElement multiply(std::size_t g, const PBWMonomial& m) {
    {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(Key{g, m});
      if (it != memo_.end()) return *it->second;
    }
    auto result = std::make_shared<const UElement>(compute(g, m));
    if (result->size() > limits_.max_terms) throw SizeGuardError("straightening exceeded the term limit");
    std::unique_lock lock(mutex_);
    memo_.try_emplace(Key{g, m}, result);
    return *result;
  }

  UElement multiply(std::size_t g, const UElement& u) {
    UElement out;
    for (const auto& [m, c] : u.terms()) out.add_scaled(multiply(g, m), c);
    if (out.size() > limits_.max_terms) throw SizeGuardError("straightening exceeded the term limit");
    return out;
  }

  /// Normal form of the word, read left to right.
  UElement straighten(const std::vector<GenPower>& word) {
    UElement u = UElement::one();
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      if (it->gen >= rs_->num_generators()) throw InvalidArgument("straighten: unknown generator");
      for (unsigned k = 0; k < it->power; ++k) u = multiply(it->gen, u);
    }
    return u;
  }

  std::size_t memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

 private:
  struct Key {
    std::size_t g;
    PBWMonomial m;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return PBWMonomialHash{}(k.m) * 31 + k.g; }
  };

  UElement compute(std::size_t g, const PBWMonomial& m) {
    const RootSystem& rs = *rs_;
    const auto gen = rs.generator(g);
    const bool hw = mode_ == Mode::highest_weight;

    if (gen.kind == Generator::Kind::h) {
      // h_i F = F (h_i + <wt F, alpha_i^vee>), and h's sit left of all e's.
      Coord shift = 0;
      for (std::size_t k = 0; k < rs.num_positive_roots(); ++k)
        if (m.exps[k] != 0) shift -= static_cast<Coord>(m.exps[k]) * rs.to_weight(rs.positive_roots()[k])[gen.index];
      UElement out;
      PBWMonomial up = m;
      ++up.exps[g];
      out.add(up, 1);
      out.add(m, shift);
      return out;
    }
    if (hw && gen.kind == Generator::Kind::e && !m.has_f(rs)) return {};

    std::size_t first = rs.num_generators();
    for (std::size_t x = 0; x < rs.num_generators(); ++x)
      if (m.exps[x] != 0) {
        first = x;
        break;
      }
    if (first == rs.num_generators() || g <= first) {
      if (hw && gen.kind == Generator::Kind::e) return {};
      PBWMonomial up = m;
      ++up.exps[g];
      return UElement::monomial(up);
    }
    // g x W = x (g W) + [g, x] W
    PBWMonomial rest = m;
    --rest.exps[first];
    UElement out = multiply(first, multiply(g, rest));
    for (auto [x, c] : rs.bracket(g, first)) out.add_scaled(multiply(x, rest), c);
    return out;
  }

  std::shared_ptr<const RootSystem> rs_;
  Mode mode_;
  Limits limits_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, std::shared_ptr<const UElement>, KeyHash> memo_;
};

/// Keeps exactly the terms without f's and e's.
inline UElement hc_project(const RootSystem& rs, const UElement& u) {
  UElement out;
  for (const auto& [m, c] : u.terms())
    if (m.is_cartan(rs)) out.add(m, c);
  return out;
}

/// Exact value of a U^0 element at lambda (h_i -> <lambda, alpha_i^vee>).
inline Integer evaluate_cartan(const RootSystem& rs, const UElement& u0, const Weight& lambda) {
  rs.check(lambda);
  Integer total = 0;
  for (const auto& [m, c] : u0.terms()) {
    if (!m.is_cartan(rs)) throw InvalidArgument("evaluate_cartan: element is not in U^0");
    Integer v = c;
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      const auto e = m.exps[rs.h_gen(i)];
      if (e != 0) v *= boost::multiprecision::pow(Integer(lambda[i]), e);
    }
    total += v;
  }
  return total;
}

inline std::int64_t mod_p(const Integer& x, Prime p) {
  Integer r = x % p.value();
  if (r < 0) r += p.value();
  return static_cast<std::int64_t>(r);
}

/// chi_lambda on an ordinary polynomial in the h_i, reduced mod p.
inline std::int64_t chi_eval(const RootSystem& rs, const UElement& u0, const Weight& lambda, Prime p) {
  return mod_p(evaluate_cartan(rs, u0, lambda), p);
}

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

/// (a choose n) = a(a-1)...(a-n+1)/n!, for any integer a, reduced mod p.
inline std::int64_t binomial_mod_p(std::int64_t a, unsigned n, Prime p) {
  Integer num = 1;
  for (unsigned j = 0; j < n; ++j) num *= Integer(a) - j;
  return mod_p(num / factorial(n), p);
}

/// Rank over F_p, Gaussian elimination with first-nonzero pivoting.
inline std::size_t rank_mod_p(const std::vector<std::vector<Integer>>& m, Prime p) {
  const std::int64_t q = p.value();
  std::vector<std::vector<std::int64_t>> a;
  for (const auto& row : m) {
    std::vector<std::int64_t> r;
    for (const auto& x : row) r.push_back(mod_p(x, p));
    a.push_back(std::move(r));
  }
  auto inverse = [q](std::int64_t x) {
    std::int64_t r = 1, b = x, e = q - 2;
    while (e > 0) {
      if (e & 1) r = r * b % q;
      b = b * b % q;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rank], a[piv]);
    const std::int64_t inv = inverse(a[rank][c]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const std::int64_t f = a[i][c] * inv % q;
      for (std::size_t k = c; k < cols; ++k) a[i][k] = ((a[i][k] - f * a[rank][k]) % q + q) % q;
    }
    ++rank;
  }
  return rank;
}

/// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t rank_over_q(std::vector<std::vector<Integer>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[rank], a[piv]);
    for (std::size_t i = rank + 1; i < a.size(); ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) a[i][k] = (a[rank][c] * a[i][k] - a[i][c] * a[rank][k]) / prev;
      a[i][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

/// Divided-power contravariant form on Delta(lambda)_{lambda - nu} in the
/// basis of f-monomials.
struct GramMatrix {
  Weight lambda;
  RootVector nu;
  std::vector<PBWMonomial> basis;
  std::vector<std::vector<Integer>> entries;
};

/// Straightening engine plus contravariant-form computations for one root
/// system. Products sigma(f_I) f_J are straightened once per (I, J) as
/// polynomials in the h_i and then evaluated at each requested lambda.
class Hyperalgebra {
 public:
  explicit Hyperalgebra(CartanType type, Limits limits = {}, const std::vector<int>& chevalley_signs = {})
      : rs_(std::make_shared<const RootSystem>(build_root_system(type, chevalley_signs))),
        limits_(limits),
        full_(rs_, Straightener::Mode::full, limits),
        hw_(rs_, Straightener::Mode::highest_weight, limits) {
    if (auto err = chevalley_self_test(*rs_); !err.empty()) throw InternalError("Chevalley basis self-test: " + err);
  }

  Hyperalgebra(const Hyperalgebra&) = delete;
  Hyperalgebra& operator=(const Hyperalgebra&) = delete;

  const RootSystem& roots() const { return *rs_; }
  const Limits& limits() const { return limits_; }

  void attach_store(const cache::Store* store) { store_ = store; }
  const cache::Store* store() const { return store_; }

  /// Number of exact factorial divisions checked so far.
  std::uint64_t integrality_checks() const { return integrality_checks_.load(); }

  /// f-only monomials of weight -nu, in lexicographic order of exponents.
  std::vector<PBWMonomial> enumerate_f_monomials(const RootVector& nu) const {
    const RootSystem& rs = *rs_;
    rs.check(nu);
    std::vector<PBWMonomial> out;
    if (!is_nonnegative(nu)) return out;
    PBWMonomial cur;
    auto rec = [&](auto&& self, const RootVector& rest, std::size_t k) -> void {
      if (k == rs.num_positive_roots()) {
        if (rest.is_zero()) out.push_back(cur);
        return;
      }
      RootVector r = rest;
      for (std::uint16_t n = 0; is_nonnegative(r); ++n) {
        cur.exps[rs.f_gen(k)] = n;
        self(self, r, k + 1);
        r -= rs.positive_roots()[k];
      }
      cur.exps[rs.f_gen(k)] = 0;
    };
    rec(rec, nu, 0);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Full PBW normal form of a word.
  UElement straighten(const std::vector<GenPower>& word) { return full_.straighten(word); }

  /// sigma(f_I) * f_J for all basis pairs, projected to U^0 (ordinary powers).
  const std::vector<std::vector<UElement>>& gram_polynomials(const RootVector& nu) {
    rs_->check(nu);
    {
      std::shared_lock lock(mutex_);
      auto it = gram_poly_.find(nu);
      if (it != gram_poly_.end()) return *it->second;
    }
    const auto basis = checked_basis(nu);
    auto table = std::make_shared<std::vector<std::vector<UElement>>>(basis.size(), std::vector<UElement>(basis.size()));
    const std::size_t n = rs_->num_positive_roots();
    for (std::size_t j = 0; j < basis.size(); ++j) {
      // State after applying e_0^{c_0} ... e_k^{c_k} (e_0 first) to f_J.
      std::map<std::array<std::uint16_t, kMaxPositiveRoots>, UElement> applied;
      std::array<std::uint16_t, kMaxPositiveRoots> zero{};
      applied[zero] = UElement::monomial(basis[j]);
      auto value = [&](auto&& self, std::array<std::uint16_t, kMaxPositiveRoots> counts) -> const UElement& {
        auto it = applied.find(counts);
        if (it != applied.end()) return it->second;
        std::size_t last = n;
        while (last > 0 && counts[last - 1] == 0) --last;
        auto prev = counts;
        --prev[last - 1];
        UElement u = hw_.multiply(rs_->e_gen(last - 1), self(self, prev));
        return applied.emplace(counts, std::move(u)).first->second;
      };
      for (std::size_t i = 0; i < basis.size(); ++i) {
        std::array<std::uint16_t, kMaxPositiveRoots> counts{};
        for (std::size_t k = 0; k < n; ++k) counts[k] = basis[i].exps[rs_->f_gen(k)];
        const UElement& u = value(value, counts);
        for (const auto& [m, c] : u.terms())
          if (!m.is_cartan(*rs_)) throw InternalError("gram: non-Cartan term survived straightening of a weight-zero product");
        (*table)[i][j] = u;
      }
    }
    std::unique_lock lock(mutex_);
    return *gram_poly_.try_emplace(nu, table).first->second;
  }

  GramMatrix shapovalov_gram(const Weight& lambda, const RootVector& nu) {
    rs_->check(lambda);
    GramMatrix g{lambda, nu, checked_basis(nu), {}};
    const auto key = cache::CacheKey{cache::Kind::gram, rs_->cartan_type(), std::nullopt,
                                     "lambda=" + cache::coords_text(lambda) + ";nu=" + cache::coords_text(nu)};
    g.entries = cache::memoize(
        store_, key, [&] { return compute_gram_entries(lambda, nu, g.basis); }, encode_matrix,
        [&](const std::string& s) { return decode_matrix(s, g.basis.size()); });
    return g;
  }

  /// dim L(lambda)_{lambda - nu} over F_p.
  std::size_t simple_weight_dim(const Weight& lambda, const RootVector& nu, Prime p) {
    rs_->check(lambda);
    rs_->check(nu);
    if (!is_nonnegative(nu)) return 0;
    const auto key = cache::CacheKey{cache::Kind::rank_p, rs_->cartan_type(), p.value(),
                                     "lambda=" + cache::coords_text(lambda) + ";nu=" + cache::coords_text(nu)};
    return cache::memoize(
        store_, key, [&] { return rank_mod_p(shapovalov_gram(lambda, nu).entries, p); },
        [](std::size_t v) { return std::to_string(v); }, decode_size);
  }

  /// Rank of the Gram matrix over Q.
  std::size_t gram_rank_char0(const Weight& lambda, const RootVector& nu) {
    rs_->check(lambda);
    rs_->check(nu);
    if (!is_nonnegative(nu)) return 0;
    const auto key = cache::CacheKey{cache::Kind::rank_0, rs_->cartan_type(), std::nullopt,
                                     "lambda=" + cache::coords_text(lambda) + ";nu=" + cache::coords_text(nu)};
    return cache::memoize(
        store_, key, [&] { return rank_over_q(shapovalov_gram(lambda, nu).entries); },
        [](std::size_t v) { return std::to_string(v); }, decode_size);
  }

 private:
  std::vector<PBWMonomial> checked_basis(const RootVector& nu) const {
    if (!is_nonnegative(nu)) throw InvalidArgument("gram: nu must be a nonnegative root-lattice vector");
    const auto count = kostant_partition(*rs_, nu);
    if (count > limits_.max_basis)
      throw SizeGuardError("gram: weight space of dimension " + std::to_string(count) + " exceeds the size guard");
    return enumerate_f_monomials(nu);
  }

  Integer exponent_factorials(const PBWMonomial& m) const {
    Integer r = 1;
    for (auto e : m.exps) r *= factorial(e);
    return r;
  }

  std::vector<std::vector<Integer>> compute_gram_entries(const Weight& lambda, const RootVector& nu,
                                                         const std::vector<PBWMonomial>& basis) {
    const auto& poly = gram_polynomials(nu);
    std::vector<std::vector<Integer>> entries(basis.size(), std::vector<Integer>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const Integer raw = evaluate_cartan(*rs_, poly[i][j], lambda);
        const Integer den = exponent_factorials(basis[i]) * exponent_factorials(basis[j]);
        ++integrality_checks_;
        if (raw % den != 0)
          throw IntegralityError("divided-power Gram entry not integral at lambda=(" + cache::coords_text(lambda) +
                                 "), nu=(" + cache::coords_text(nu) + "): " + raw.str() + " / " + den.str());
        entries[i][j] = raw / den;
      }
    return entries;
  }

  static std::string encode_matrix(const std::vector<std::vector<Integer>>& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i) s += ';';
      for (std::size_t j = 0; j < m[i].size(); ++j) {
        if (j) s += ',';
        s += m[i][j].str();
      }
    }
    return s;
  }

  static std::optional<std::vector<std::vector<Integer>>> decode_matrix(const std::string& s, std::size_t n) {
    std::vector<std::vector<Integer>> m;
    std::size_t pos = 0;
    try {
      while (m.size() < n) {
        auto end = s.find(';', pos);
        std::string row = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        std::vector<Integer> r;
        std::size_t q = 0;
        while (q <= row.size()) {
          auto c = row.find(',', q);
          r.emplace_back(row.substr(q, c == std::string::npos ? std::string::npos : c - q));
          if (c == std::string::npos) break;
          q = c + 1;
        }
        if (r.size() != n) return std::nullopt;
        m.push_back(std::move(r));
        if (end == std::string::npos) break;
        pos = end + 1;
      }
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (m.size() != n) return std::nullopt;
    return m;
  }

  static std::optional<std::size_t> decode_size(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return std::nullopt;
    return static_cast<std::size_t>(std::stoull(s));
  }

  std::shared_ptr<const RootSystem> rs_;
  Limits limits_;
  Straightener full_;
  Straightener hw_;
  const cache::Store* store_ = nullptr;
  std::atomic<std::uint64_t> integrality_checks_{0};
  mutable std::shared_mutex mutex_;
  std::map<RootVector, std::shared_ptr<const std::vector<std::vector<UElement>>>> gram_poly_;
};

}  // namespace modcato
