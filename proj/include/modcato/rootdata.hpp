#pragma once

// Root data for the rank <= 2 systems A1, A2, B2: weights in fundamental
// weight coordinates, root-lattice vectors, the dominance order, the Weyl
// group and the Kostant partition function. The Chevalley basis used by the
// straightening code is derived here as well, from explicit matrices.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modcato {

inline constexpr std::size_t kMaxRank = 2;
inline constexpr std::size_t kMaxPositiveRoots = 4;

using Coord = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Precondition violated by caller input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; results cannot be trusted.
class InternalError : public Error {
 public:
  using Error::Error;
};

namespace detail {

template <class Tag>
class LatticeVector {
 public:
  LatticeVector() = default;
  LatticeVector(std::initializer_list<Coord> c) {
    if (c.size() > kMaxRank) throw InvalidArgument("lattice vector: too many coordinates");
    rank_ = static_cast<std::uint8_t>(c.size());
    std::copy(c.begin(), c.end(), c_.begin());
  }
  explicit LatticeVector(const std::vector<Coord>& c) {
    if (c.size() > kMaxRank) throw InvalidArgument("lattice vector: too many coordinates");
    rank_ = static_cast<std::uint8_t>(c.size());
    std::copy(c.begin(), c.end(), c_.begin());
  }
  static LatticeVector zero(std::size_t rank) {
    LatticeVector v;
    v.rank_ = static_cast<std::uint8_t>(rank);
    return v;
  }

  std::size_t rank() const { return rank_; }
  Coord operator[](std::size_t i) const { return c_[i]; }
  Coord& operator[](std::size_t i) { return c_[i]; }
  std::vector<Coord> coords() const { return {c_.begin(), c_.begin() + rank_}; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.begin() + rank_, [](Coord x) { return x == 0; });
  }

  LatticeVector& operator+=(const LatticeVector& o) {
    check(o);
    for (std::size_t i = 0; i < rank_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  LatticeVector& operator-=(const LatticeVector& o) {
    check(o);
    for (std::size_t i = 0; i < rank_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator-(LatticeVector a) {
    for (std::size_t i = 0; i < a.rank_; ++i) a.c_[i] = -a.c_[i];
    return a;
  }
  friend LatticeVector operator*(Coord s, LatticeVector a) {
    for (std::size_t i = 0; i < a.rank_; ++i) a.c_[i] *= s;
    return a;
  }

  friend auto operator<=>(const LatticeVector&, const LatticeVector&) = default;
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

 private:
  void check(const LatticeVector& o) const {
    if (o.rank_ != rank_) throw InvalidArgument("lattice vectors of different rank");
  }
  std::array<Coord, kMaxRank> c_{};
  std::uint8_t rank_ = 0;
};

struct WeightTag {};
struct RootTag {};

}  // namespace detail

/// Integral weight, coordinates in the fundamental-weight basis.
using Weight = detail::LatticeVector<detail::WeightTag>;
/// Element of the root lattice, coordinates in the simple-root basis.
using RootVector = detail::LatticeVector<detail::RootTag>;

enum class CartanType { A1, A2, B2 };

inline CartanType parse_cartan_type(std::string_view s) {
  if (s == "A1") return CartanType::A1;
  if (s == "A2") return CartanType::A2;
  if (s == "B2") return CartanType::B2;
  throw InvalidArgument("unsupported Cartan type '" + std::string(s) + "' (expected A1, A2 or B2)");
}

/// "(a,b)" with the coordinates in order.
template <class Tag>
std::string to_string(const detail::LatticeVector<Tag>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.rank(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

inline std::string to_string(CartanType t) {
  switch (t) {
    case CartanType::A1: return "A1";
    case CartanType::A2: return "A2";
    case CartanType::B2: return "B2";
  }
  return "?";
}

/// Element of the Weyl group acting on fundamental-weight coordinates.
struct WeylElement {
  std::array<std::array<Coord, kMaxRank>, kMaxRank> matrix{};
  int sign = 1;
  int length = 0;

  Weight apply(const Weight& w) const {
    Weight out = Weight::zero(w.rank());
    for (std::size_t i = 0; i < w.rank(); ++i)
      for (std::size_t j = 0; j < w.rank(); ++j) out[i] += matrix[i][j] * w[j];
    return out;
  }
};

/// Generators of the Chevalley basis, in PBW normal order: f's (in the
/// global positive-root order), then h's (simple coroots), then e's.
struct Generator {
  enum class Kind : std::uint8_t { f, h, e };
  Kind kind;
  std::uint8_t index;  // positive-root index for f/e, simple index for h
};

/// Sparse linear combination of generators.
using GeneratorCombination = std::vector<std::pair<std::size_t, Coord>>;

class RootSystem;
RootSystem build_root_system(CartanType type, const std::vector<int>& chevalley_signs = {});

class RootSystem {
 public:
  CartanType cartan_type() const { return type_; }
  std::size_t rank() const { return rank_; }
  /// cartan(i, j) = <alpha_j, alpha_i^vee>.
  Coord cartan(std::size_t i, std::size_t j) const { return cartan_[i][j]; }
  const std::vector<RootVector>& positive_roots() const { return positive_roots_; }
  std::size_t num_positive_roots() const { return positive_roots_.size(); }
  /// Index into positive_roots() of the i-th simple root.
  std::size_t simple_root_index(std::size_t i) const { return simple_index_[i]; }
  const std::vector<WeylElement>& weyl_group() const { return weyl_; }
  const WeylElement& longest_element() const { return weyl_[longest_]; }
  Weight rho() const {
    Weight r = Weight::zero(rank_);
    for (std::size_t i = 0; i < rank_; ++i) r[i] = 1;
    return r;
  }

  /// <lambda, alpha_i^vee>.
  Coord pairing(const Weight& lambda, std::size_t i) const {
    if (i >= rank_) throw InvalidArgument("pairing: simple-root index out of range");
    check(lambda);
    return lambda[i];
  }

  /// <lambda, gamma^vee> for the positive root with index k.
  Coord coroot_pairing(const Weight& lambda, std::size_t k) const {
    Coord s = 0;
    for (std::size_t i = 0; i < rank_; ++i) s += coroot_[k][i] * lambda[i];
    return s;
  }
  /// Coefficients of gamma_k^vee in the simple coroots.
  const std::array<Coord, kMaxRank>& coroot(std::size_t k) const { return coroot_[k]; }

  Weight to_weight(const RootVector& v) const {
    Weight w = Weight::zero(rank_);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) w[i] += cartan_[i][j] * v[j];
    return w;
  }

  /// Exact inverse of to_weight; empty when lambda is outside the root lattice.
  std::optional<RootVector> to_root(const Weight& lambda) const {
    check(lambda);
    RootVector r = RootVector::zero(rank_);
    for (std::size_t j = 0; j < rank_; ++j) {
      Coord num = 0;
      for (std::size_t i = 0; i < rank_; ++i) num += adjugate_[j][i] * lambda[i];
      if (num % determinant_ != 0) return std::nullopt;
      r[j] = num / determinant_;
    }
    return r;
  }

  /// Linear functional that is positive on every positive root; scaled so
  /// it is integral on the whole weight lattice. Used to order weights.
  Coord scaled_height(const Weight& lambda) const {
    Coord s = 0;
    for (std::size_t j = 0; j < rank_; ++j)
      for (std::size_t i = 0; i < rank_; ++i) s += adjugate_[j][i] * lambda[i];
    return s;
  }

  bool leq(const Weight& mu, const Weight& lambda) const {
    auto d = to_root(lambda - mu);
    if (!d) return false;
    for (std::size_t i = 0; i < rank_; ++i)
      if ((*d)[i] < 0) return false;
    return true;
  }

  bool is_dominant(const Weight& lambda) const {
    check(lambda);
    for (std::size_t i = 0; i < rank_; ++i)
      if (lambda[i] < 0) return false;
    return true;
  }

  Weight dot(const WeylElement& w, const Weight& lambda) const { return w.apply(lambda + rho()) - rho(); }

  // Chevalley basis data -----------------------------------------------------

  std::size_t num_generators() const { return 2 * positive_roots_.size() + rank_; }
  std::size_t f_gen(std::size_t k) const { return k; }
  std::size_t h_gen(std::size_t i) const { return positive_roots_.size() + i; }
  std::size_t e_gen(std::size_t k) const { return positive_roots_.size() + rank_ + k; }
  Generator generator(std::size_t g) const {
    const std::size_t n = positive_roots_.size();
    if (g < n) return {Generator::Kind::f, static_cast<std::uint8_t>(g)};
    if (g < n + rank_) return {Generator::Kind::h, static_cast<std::uint8_t>(g - n)};
    return {Generator::Kind::e, static_cast<std::uint8_t>(g - n - rank_)};
  }
  /// Weight of a generator, in the root lattice.
  RootVector generator_weight(std::size_t g) const {
    auto gen = generator(g);
    switch (gen.kind) {
      case Generator::Kind::f: return -positive_roots_[gen.index];
      case Generator::Kind::e: return positive_roots_[gen.index];
      case Generator::Kind::h: break;
    }
    return RootVector::zero(rank_);
  }
  /// [x_a, x_b] expanded in the generators.
  const GeneratorCombination& bracket(std::size_t a, std::size_t b) const { return bracket_[a][b]; }

  std::string generator_name(std::size_t g) const {
    auto gen = generator(g);
    const char* k = gen.kind == Generator::Kind::f ? "f" : gen.kind == Generator::Kind::h ? "h" : "e";
    return k + std::to_string(gen.index);
  }

  void check(const Weight& w) const {
    if (w.rank() != rank_) throw InvalidArgument("weight rank does not match the root system");
  }
  void check(const RootVector& v) const {
    if (v.rank() != rank_) throw InvalidArgument("root vector rank does not match the root system");
  }

 private:
  friend RootSystem build_root_system(CartanType, const std::vector<int>&);
  RootSystem() = default;

  CartanType type_ = CartanType::A1;
  std::size_t rank_ = 0;
  std::array<std::array<Coord, kMaxRank>, kMaxRank> cartan_{};
  std::array<std::array<Coord, kMaxRank>, kMaxRank> adjugate_{};
  Coord determinant_ = 1;
  std::vector<RootVector> positive_roots_;
  std::vector<std::size_t> simple_index_;
  std::vector<std::array<Coord, kMaxRank>> coroot_;
  std::vector<WeylElement> weyl_;
  std::size_t longest_ = 0;
  std::vector<std::vector<GeneratorCombination>> bracket_;
};

inline Coord height(const RootVector& v) {
  Coord s = 0;
  for (std::size_t i = 0; i < v.rank(); ++i) s += v[i];
  return s;
}

inline bool is_nonnegative(const RootVector& v) {
  for (std::size_t i = 0; i < v.rank(); ++i)
    if (v[i] < 0) return false;
  return true;
}

namespace detail {

using IntMatrix = std::vector<std::vector<Coord>>;

inline IntMatrix zero_matrix(std::size_t d) { return IntMatrix(d, std::vector<Coord>(d, 0)); }

inline IntMatrix unit(std::size_t d, std::size_t i, std::size_t j, Coord v = 1) {
  auto m = zero_matrix(d);
  m[i][j] = v;
  return m;
}

inline IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] += b[i][j];
  return a;
}

inline IntMatrix scaled(IntMatrix a, Coord s) {
  for (auto& row : a)
    for (auto& x : row) x *= s;
  return a;
}

inline IntMatrix commutator(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t d = a.size();
  auto out = zero_matrix(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
  return out;
}

/// Matrices of a Chevalley basis in a faithful representation. Positive roots
/// are listed in the global PBW order (height, then lexicographically
/// decreasing simple-root coefficients).
struct ChevalleyMatrices {
  std::size_t rank;
  std::vector<std::vector<Coord>> cartan;
  std::vector<RootVector> roots;
  std::vector<IntMatrix> e, f, h;
};

inline ChevalleyMatrices chevalley_matrices(CartanType type) {
  ChevalleyMatrices m;
  switch (type) {
    case CartanType::A1: {
      m.rank = 1;
      m.cartan = {{2}};
      m.roots = {RootVector{1}};
      m.e = {unit(2, 0, 1)};
      m.f = {unit(2, 1, 0)};
      m.h = {unit(2, 0, 0) + unit(2, 1, 1, -1)};
      break;
    }
    case CartanType::A2: {
      // sl3: e1 = E12, e2 = E23, e12 = E13 and transposes.
      m.rank = 2;
      m.cartan = {{2, -1}, {-1, 2}};
      m.roots = {RootVector{1, 0}, RootVector{0, 1}, RootVector{1, 1}};
      m.e = {unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)};
      m.f = {unit(3, 1, 0), unit(3, 2, 1), unit(3, 2, 0)};
      m.h = {unit(3, 0, 0) + unit(3, 1, 1, -1), unit(3, 1, 1) + unit(3, 2, 2, -1)};
      break;
    }
    case CartanType::B2: {
      // sp4 with alpha1 = 2eps2 (long), alpha2 = eps1 - eps2 (short).
      m.rank = 2;
      m.cartan = {{2, -1}, {-2, 2}};
      m.roots = {RootVector{1, 0}, RootVector{0, 1}, RootVector{1, 1}, RootVector{1, 2}};
      m.e = {unit(4, 1, 3), unit(4, 0, 1) + unit(4, 3, 2, -1), unit(4, 0, 3) + unit(4, 1, 2), unit(4, 0, 2)};
      m.f = {unit(4, 3, 1), unit(4, 1, 0) + unit(4, 2, 3, -1), unit(4, 3, 0) + unit(4, 2, 1), unit(4, 2, 0)};
      m.h = {unit(4, 1, 1) + unit(4, 3, 3, -1),
             unit(4, 0, 0) + unit(4, 1, 1, -1) + unit(4, 2, 2, -1) + unit(4, 3, 3)};
      break;
    }
  }
  return m;
}

/// Solve for integer coefficients c with sum_k c_k basis[k] == target.
/// The basis matrices are linearly independent; fails if the target is not
/// an integral combination.
inline std::optional<std::vector<Coord>> decompose(const std::vector<IntMatrix>& basis, const IntMatrix& target) {
  // Rational Gaussian elimination on the flattened system, entries as
  // (numerator, denominator) pairs reduced by gcd.
  struct Q {
    Coord n = 0, d = 1;
    void norm() {
      if (d < 0) n = -n, d = -d;
      Coord g = std::gcd(n < 0 ? -n : n, d);
      if (g > 1) n /= g, d /= g;
    }
  };
  auto sub_mul = [](Q a, Q b, Q c) {  // a - b*c
    Q r{a.n * b.d * c.d - b.n * c.n * a.d, a.d * b.d * c.d};
    r.norm();
    return r;
  };
  auto div = [](Q a, Q b) {
    Q r{a.n * b.d, a.d * b.n};
    r.norm();
    return r;
  };
  const std::size_t d = target.size();
  const std::size_t n = basis.size();
  std::vector<std::vector<Q>> rows;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Q> row(n + 1);
      for (std::size_t k = 0; k < n; ++k) row[k] = {basis[k][i][j], 1};
      row[n] = {target[i][j], 1};
      rows.push_back(row);
    }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c].n == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[r], rows[piv]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].n == 0) continue;
      Q factor = div(rows[i][c], rows[r][c]);
      for (std::size_t k = c; k <= n; ++k) rows[i][k] = sub_mul(rows[i][k], factor, rows[r][k]);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows.size(); ++i)
    if (rows[i][n].n != 0) return std::nullopt;
  std::vector<Coord> out(n, 0);
  for (std::size_t i = 0; i < r; ++i) {
    Q v = div(rows[i][n], rows[i][pivot_col[i]]);
    if (v.d != 1) return std::nullopt;
    out[pivot_col[i]] = v.n;
  }
  return out;
}

}  // namespace detail

/// Build the root system of the given type. `chevalley_signs`, when given,
/// holds one +-1 per positive root; e_gamma and f_gamma are rescaled by it,
/// which yields another Chevalley basis with some structure constants
/// negated.
inline RootSystem build_root_system(CartanType type, const std::vector<int>& chevalley_signs) {
  using namespace detail;
  RootSystem rs;
  rs.type_ = type;
  auto mats = chevalley_matrices(type);
  rs.rank_ = mats.rank;
  const std::size_t r = rs.rank_;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rs.cartan_[i][j] = mats.cartan[i][j];
  if (r == 1) {
    rs.determinant_ = rs.cartan_[0][0];
    rs.adjugate_[0][0] = 1;
  } else {
    rs.determinant_ = rs.cartan_[0][0] * rs.cartan_[1][1] - rs.cartan_[0][1] * rs.cartan_[1][0];
    rs.adjugate_ = {{{rs.cartan_[1][1], -rs.cartan_[0][1]}, {-rs.cartan_[1][0], rs.cartan_[0][0]}}};
  }
  rs.positive_roots_ = mats.roots;
  const std::size_t n = rs.positive_roots_.size();
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t k = 0; k < n; ++k)
      if (height(rs.positive_roots_[k]) == 1 && rs.positive_roots_[k][i] == 1) rs.simple_index_.push_back(k);
  }

  if (!chevalley_signs.empty()) {
    if (chevalley_signs.size() != n) throw InvalidArgument("chevalley_signs: one sign per positive root expected");
    for (std::size_t k = 0; k < n; ++k) {
      if (chevalley_signs[k] != 1 && chevalley_signs[k] != -1)
        throw InvalidArgument("chevalley_signs: entries must be +1 or -1");
      mats.e[k] = scaled(mats.e[k], chevalley_signs[k]);
      mats.f[k] = scaled(mats.f[k], chevalley_signs[k]);
    }
  }

  // Generator matrices in normal order: f..., h..., e...
  std::vector<IntMatrix> gens;
  for (auto& m : mats.f) gens.push_back(m);
  for (auto& m : mats.h) gens.push_back(m);
  for (auto& m : mats.e) gens.push_back(m);
  const std::size_t ng = gens.size();
  rs.bracket_.assign(ng, std::vector<GeneratorCombination>(ng));
  for (std::size_t a = 0; a < ng; ++a)
    for (std::size_t b = 0; b < ng; ++b) {
      auto c = decompose(gens, commutator(gens[a], gens[b]));
      if (!c) throw InternalError("Chevalley basis: bracket is not an integral combination of the basis");
      for (std::size_t k = 0; k < ng; ++k)
        if ((*c)[k] != 0) rs.bracket_[a][b].push_back({k, (*c)[k]});
    }

  // Coroots: [e_gamma, f_gamma] = h_gamma in simple coroots.
  rs.coroot_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rs.coroot_[k] = {};
    for (auto [g, c] : rs.bracket_[rs.e_gen(k)][rs.f_gen(k)]) {
      if (rs.generator(g).kind != Generator::Kind::h)
        throw InternalError("Chevalley basis: [e,f] leaves the Cartan subalgebra");
      rs.coroot_[k][rs.generator(g).index] = c;
    }
  }

  // Weyl group by closure under simple reflections.
  WeylElement id;
  for (std::size_t i = 0; i < r; ++i) id.matrix[i][i] = 1;
  std::vector<WeylElement> simple;
  for (std::size_t i = 0; i < r; ++i) {
    WeylElement s = id;
    Weight alpha = rs.to_weight(rs.positive_roots_[rs.simple_index_[i]]);
    for (std::size_t a = 0; a < r; ++a) s.matrix[a][i] -= alpha[a];
    s.sign = -1;
    s.length = 1;
    simple.push_back(s);
  }
  rs.weyl_.push_back(id);
  for (std::size_t head = 0; head < rs.weyl_.size(); ++head) {
    for (const auto& s : simple) {
      WeylElement w;
      const auto cur = rs.weyl_[head];
      for (std::size_t a = 0; a < r; ++a)
        for (std::size_t b = 0; b < r; ++b)
          for (std::size_t c = 0; c < r; ++c) w.matrix[a][b] += s.matrix[a][c] * cur.matrix[c][b];
      w.sign = -cur.sign;
      w.length = cur.length + 1;
      bool seen = std::any_of(rs.weyl_.begin(), rs.weyl_.end(), [&](const WeylElement& x) { return x.matrix == w.matrix; });
      if (!seen) rs.weyl_.push_back(w);
    }
  }
  for (std::size_t k = 0; k < rs.weyl_.size(); ++k)
    if (rs.weyl_[k].length > rs.weyl_[rs.longest_].length) rs.longest_ = k;
  return rs;
}

inline RootSystem build_root_system(std::string_view label) { return build_root_system(parse_cartan_type(label)); }

/// Checks the Chevalley basis: Jacobi identity on all generator triples,
/// [h_i, e_gamma] = <gamma, alpha_i^vee> e_gamma, integral coroots, and
/// |N_{beta,gamma}| = r + 1. Returns an empty string on success, otherwise a
/// description of the first failure.
inline std::string chevalley_self_test(const RootSystem& rs) {
  const std::size_t ng = rs.num_generators();
  auto bracket_vec = [&](std::size_t a, const std::vector<Coord>& v) {
    std::vector<Coord> out(ng, 0);
    for (std::size_t b = 0; b < ng; ++b)
      if (v[b] != 0)
        for (auto [g, c] : rs.bracket(a, b)) out[g] += c * v[b];
    return out;
  };
  auto basis_vec = [&](std::size_t a) {
    std::vector<Coord> v(ng, 0);
    v[a] = 1;
    return v;
  };
  auto bracket_pair = [&](std::size_t a, std::size_t b) {
    std::vector<Coord> v(ng, 0);
    for (auto [g, c] : rs.bracket(a, b)) v[g] += c;
    return v;
  };
  // [x,[y,z]] = [[x,y],z] + [y,[x,z]]
  for (std::size_t x = 0; x < ng; ++x)
    for (std::size_t y = 0; y < ng; ++y)
      for (std::size_t z = 0; z < ng; ++z) {
        auto lhs = bracket_vec(x, bracket_pair(y, z));
        auto xy = bracket_pair(x, y);
        std::vector<Coord> rhs(ng, 0);
        for (std::size_t g = 0; g < ng; ++g)
          if (xy[g] != 0) {
            auto t = bracket_pair(g, z);
            for (std::size_t k = 0; k < ng; ++k) rhs[k] += xy[g] * t[k];
          }
        auto t = bracket_vec(y, bracket_pair(x, z));
        for (std::size_t k = 0; k < ng; ++k) rhs[k] += t[k];
        if (lhs != rhs)
          return "Jacobi identity fails for (" + rs.generator_name(x) + ", " + rs.generator_name(y) + ", " +
                 rs.generator_name(z) + ")";
      }
  const auto& roots = rs.positive_roots();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Weight w = rs.to_weight(roots[k]);
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      auto v = bracket_pair(rs.h_gen(i), rs.e_gen(k));
      auto expect = basis_vec(rs.e_gen(k));
      for (auto& c : expect) c *= w[i];
      if (v != expect) return "[h, e] does not act by the root pairing for " + rs.generator_name(rs.e_gen(k));
    }
    // coroot pairing with the root itself is 2
    if (rs.coroot_pairing(w, k) != 2) return "coroot normalisation fails for root " + std::to_string(k);
  }
  // |N_{beta,gamma}| = r+1, r maximal with gamma - r beta a root.
  auto root_index = [&](const RootVector& v) -> std::optional<std::size_t> {
    for (std::size_t k = 0; k < roots.size(); ++k)
      if (roots[k] == v) return k;
    return std::nullopt;
  };
  auto is_root = [&](const RootVector& v) { return root_index(v) || root_index(-v); };
  for (std::size_t a = 0; a < roots.size(); ++a)
    for (std::size_t b = 0; b < roots.size(); ++b) {
      if (a == b) continue;
      auto sum = root_index(roots[a] + roots[b]);
      auto v = bracket_pair(rs.e_gen(a), rs.e_gen(b));
      if (!sum) {
        if (std::any_of(v.begin(), v.end(), [](Coord c) { return c != 0; }))
          return "[e,e] nonzero although the sum is not a root";
        continue;
      }
      Coord rmax = 0;
      while (is_root(roots[b] - (rmax + 1) * roots[a])) ++rmax;
      Coord nval = v[rs.e_gen(*sum)];
      if (nval != rmax + 1 && nval != -(rmax + 1)) return "structure constant N has wrong magnitude";
      auto vf = bracket_pair(rs.f_gen(a), rs.f_gen(b));
      if (vf[rs.f_gen(*sum)] != -nval) return "N_{-a,-b} != -N_{a,b}";
    }
  return {};
}

/// Number of ways to write nu as a sum of positive roots (with repetition).
inline std::uint64_t kostant_partition(const RootSystem& rs, const RootVector& nu) {
  rs.check(nu);
  if (!is_nonnegative(nu)) return 0;
  const auto& roots = rs.positive_roots();
  // Recurse over roots in reverse PBW order so that the simple roots, which
  // are determined uniquely at the end, come last.
  auto rec = [&](auto&& self, const RootVector& rest, std::size_t k) -> std::uint64_t {
    if (k == 0) return rest.is_zero() ? 1 : 0;
    const RootVector& root = roots[k - 1];
    std::uint64_t total = 0;
    RootVector cur = rest;
    while (is_nonnegative(cur)) {
      total += self(self, cur, k - 1);
      cur -= root;
    }
    return total;
  };
  return rec(rec, nu, roots.size());
}

/// Nonnegative root vectors of height exactly h, lexicographically decreasing.
inline std::vector<RootVector> root_vectors_of_height(std::size_t rank, Coord h) {
  std::vector<RootVector> out;
  if (h < 0) return out;
  if (rank == 1) {
    out.push_back(RootVector{h});
  } else {
    for (Coord a = h; a >= 0; --a) out.push_back(RootVector{a, h - a});
  }
  return out;
}

/// All mu with lo <= mu <= hi (empty if lo is not below hi).
inline std::vector<Weight> interval(const RootSystem& rs, const Weight& lo, const Weight& hi) {
  std::vector<Weight> out;
  auto d = rs.to_root(hi - lo);
  if (!d || !is_nonnegative(*d)) return out;
  if (rs.rank() == 1) {
    for (Coord a = 0; a <= (*d)[0]; ++a) out.push_back(lo + rs.to_weight(RootVector{a}));
  } else {
    for (Coord a = 0; a <= (*d)[0]; ++a)
      for (Coord b = 0; b <= (*d)[1]; ++b) out.push_back(lo + rs.to_weight(RootVector{a, b}));
  }
  return out;
}

/// Orders weights for triangular algorithms: higher first (by a linear
/// functional positive on roots), ties lexicographically decreasing.
struct HigherFirst {
  const RootSystem* rs;
  bool operator()(const Weight& a, const Weight& b) const {
    auto ha = rs->scaled_height(a), hb = rs->scaled_height(b);
    if (ha != hb) return ha > hb;
    return a > b;
  }
};

}  // namespace modcato
