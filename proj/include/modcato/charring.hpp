#pragma once

// Truncated formal characters. A character is only ever known inside an
// explicit TruncationBox; operations that could silently lose terms refuse
// to run instead.

#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "modcato/rootdata.hpp"

namespace modcato {

/// Box exceeded: a result would depend on coefficients outside a box.
class BoxError : public Error {
 public:
  using Error::Error;
};

/// mu is in the box iff mu <= c for some ceiling weight c with
/// height(c - mu) <= depth.
class TruncationBox {
 public:
  TruncationBox() = default;
  TruncationBox(std::set<Weight> ceiling, Coord depth) : ceiling_(std::move(ceiling)), depth_(depth) {
    if (depth_ < 0) throw InvalidArgument("truncation box: negative depth");
  }
  TruncationBox(const Weight& top, Coord depth) : TruncationBox(std::set<Weight>{top}, depth) {}

  const std::set<Weight>& ceiling() const { return ceiling_; }
  Coord depth() const { return depth_; }

  bool contains(const RootSystem& rs, const Weight& mu) const {
    for (const auto& c : ceiling_) {
      auto d = rs.to_root(c - mu);
      if (d && is_nonnegative(*d) && height(*d) <= depth_) return true;
    }
    return false;
  }

  /// True iff mu <= c for some ceiling weight (depth ignored).
  bool below_ceiling(const RootSystem& rs, const Weight& mu) const {
    return std::any_of(ceiling_.begin(), ceiling_.end(), [&](const Weight& c) { return rs.leq(mu, c); });
  }

  /// All weights of the box, highest first.
  std::vector<Weight> weights(const RootSystem& rs) const {
    std::set<Weight> all;
    for (const auto& c : ceiling_)
      for (Coord h = 0; h <= depth_; ++h)
        for (const auto& nu : root_vectors_of_height(rs.rank(), h)) all.insert(c - rs.to_weight(nu));
    std::vector<Weight> out(all.begin(), all.end());
    std::sort(out.begin(), out.end(), HigherFirst{&rs});
    return out;
  }

  friend bool operator==(const TruncationBox&, const TruncationBox&) = default;

 private:
  std::set<Weight> ceiling_;
  Coord depth_ = 0;
};

/// Weight -> integer within a box. Zero coefficients are never stored.
/// `complete` records that the true support lies inside the box (finite
/// dimensional modules computed in full), so nothing outside is unknown.
class FormalCharacter {
 public:
  FormalCharacter() = default;
  FormalCharacter(CartanType type, TruncationBox box, bool complete = false)
      : type_(type), box_(std::move(box)), complete_(complete) {}

  CartanType cartan_type() const { return type_; }
  const TruncationBox& box() const { return box_; }
  bool complete() const { return complete_; }
  const std::map<Weight, Coord>& terms() const { return coeffs_; }

  Coord operator[](const Weight& mu) const {
    auto it = coeffs_.find(mu);
    return it == coeffs_.end() ? 0 : it->second;
  }

  /// Terms sorted highest weight first.
  std::vector<std::pair<Weight, Coord>> sorted_terms(const RootSystem& rs) const {
    std::vector<std::pair<Weight, Coord>> out(coeffs_.begin(), coeffs_.end());
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) { return HigherFirst{&rs}(a.first, b.first); });
    return out;
  }

  Coord total() const {
    Coord s = 0;
    for (const auto& [w, c] : coeffs_) s += c;
    return s;
  }

  /// Adds c at mu; mu must lie in the box.
  void add(const RootSystem& rs, const Weight& mu, Coord c) {
    if (c == 0) return;
    if (!box_.contains(rs, mu)) throw BoxError("character term outside its truncation box");
    auto& slot = coeffs_[mu];
    slot += c;
    if (slot == 0) coeffs_.erase(mu);
  }

  friend bool operator==(const FormalCharacter& a, const FormalCharacter& b) {
    return a.type_ == b.type_ && a.box_ == b.box_ && a.coeffs_ == b.coeffs_;
  }

 private:
  CartanType type_ = CartanType::A1;
  TruncationBox box_;
  bool complete_ = false;
  std::map<Weight, Coord> coeffs_;
};

namespace detail {
inline void same_system(const RootSystem& rs, const FormalCharacter& a) {
  if (a.cartan_type() != rs.cartan_type()) throw InvalidArgument("character belongs to a different root system");
}
}  // namespace detail

/// e^mu inside the given box.
inline FormalCharacter monomial_character(const RootSystem& rs, const Weight& mu, const TruncationBox& box) {
  FormalCharacter out(rs.cartan_type(), box, true);
  out.add(rs, mu, 1);
  return out;
}

/// Same coefficients, restricted to a new box.
inline FormalCharacter restrict_to(const RootSystem& rs, const FormalCharacter& chi, const TruncationBox& box) {
  detail::same_system(rs, chi);
  bool complete = chi.complete();
  for (const auto& [w, c] : chi.terms())
    if (!box.contains(rs, w)) complete = false;
  FormalCharacter out(rs.cartan_type(), box, complete);
  for (const auto& [w, c] : chi.terms())
    if (box.contains(rs, w)) out.add(rs, w, c);
  return out;
}

/// Result box: ceiling union, minimum depth. Terms outside it are dropped.
inline FormalCharacter char_add(const RootSystem& rs, const FormalCharacter& a, const FormalCharacter& b) {
  detail::same_system(rs, a);
  detail::same_system(rs, b);
  std::set<Weight> ceiling = a.box().ceiling();
  ceiling.insert(b.box().ceiling().begin(), b.box().ceiling().end());
  TruncationBox box(ceiling, std::min(a.box().depth(), b.box().depth()));
  std::map<Weight, Coord> sum = a.terms();
  for (const auto& [w, c] : b.terms()) sum[w] += c;
  bool complete = a.complete() && b.complete();
  for (const auto& [w, c] : sum)
    if (c != 0 && !box.contains(rs, w)) complete = false;
  FormalCharacter out(rs.cartan_type(), box, complete);
  for (const auto& [w, c] : sum)
    if (box.contains(rs, w)) out.add(rs, w, c);
  return out;
}

inline FormalCharacter char_scale(const RootSystem& rs, const FormalCharacter& a, Coord s) {
  detail::same_system(rs, a);
  FormalCharacter out(rs.cartan_type(), a.box(), a.complete());
  for (const auto& [w, c] : a.terms()) out.add(rs, w, c * s);
  return out;
}

/// Convolution truncated to `box`. Every weight mu - tau (tau in the support
/// of `finite`) needed for a box weight mu must be known in `big`: either
/// inside big's box, or big is complete, or mu - tau lies outside the
/// down-closure of big's ceiling (where the coefficient is zero anyway).
inline FormalCharacter char_multiply(const RootSystem& rs, const FormalCharacter& big, const FormalCharacter& finite,
                                     const TruncationBox& box) {
  detail::same_system(rs, big);
  detail::same_system(rs, finite);
  bool complete = big.complete() && finite.complete();
  if (complete)
    for (const auto& [a, c1] : big.terms())
      for (const auto& [b, c2] : finite.terms())
        if (!box.contains(rs, a + b)) complete = false;
  FormalCharacter out(rs.cartan_type(), box, complete);
  for (const auto& mu : box.weights(rs)) {
    Coord acc = 0;
    for (const auto& [tau, c2] : finite.terms()) {
      const Weight nu = mu - tau;
      if (!big.complete() && !big.box().contains(rs, nu) && big.box().below_ceiling(rs, nu))
        throw BoxError("char_multiply: insufficient margin in the first factor's box");
      acc += big[nu] * c2;
    }
    out.add(rs, mu, acc);
  }
  return out;
}

/// ch Delta(lambda) inside the box: coefficient P(lambda - mu).
inline FormalCharacter verma_character(const RootSystem& rs, const Weight& lambda, const TruncationBox& box) {
  rs.check(lambda);
  if (!box.contains(rs, lambda)) throw InvalidArgument("verma_character: box does not contain the highest weight");
  FormalCharacter out(rs.cartan_type(), box, false);
  for (const auto& mu : box.weights(rs)) {
    auto d = rs.to_root(lambda - mu);
    if (!d) continue;
    out.add(rs, mu, static_cast<Coord>(kostant_partition(rs, *d)));
  }
  return out;
}

/// Height of lambda - w0(lambda): the depth of the full weight diagram of a
/// finite dimensional module with highest weight lambda.
inline Coord full_depth(const RootSystem& rs, const Weight& lambda) {
  auto d = rs.to_root(lambda - rs.longest_element().apply(lambda));
  if (!d) throw InternalError("lambda - w0 lambda outside the root lattice");
  return height(*d);
}

/// Characteristic-zero character of the simple module of dominant highest
/// weight lambda, as the alternating sum of Verma characters over the dot
/// action. The box has depth max(full depth, min_depth).
inline FormalCharacter weyl_character(const RootSystem& rs, const Weight& lambda, Coord min_depth = 0) {
  rs.check(lambda);
  if (!rs.is_dominant(lambda)) throw InvalidArgument("weyl_character: highest weight is not dominant");
  const Coord depth = std::max(full_depth(rs, lambda), min_depth);
  TruncationBox box(lambda, depth);
  FormalCharacter out(rs.cartan_type(), box, true);
  std::vector<std::pair<Weight, int>> tops;
  for (const auto& w : rs.weyl_group()) tops.push_back({rs.dot(w, lambda), w.sign});
  for (const auto& mu : box.weights(rs)) {
    Coord acc = 0;
    for (const auto& [top, sign] : tops) {
      auto d = rs.to_root(top - mu);
      if (d) acc += sign * static_cast<Coord>(kostant_partition(rs, *d));
    }
    out.add(rs, mu, acc);
  }
  return out;
}

/// Product over positive roots of <lambda + rho, gamma^vee> / <rho, gamma^vee>.
inline Coord weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  const Weight lr = lambda + rs.rho();
  Coord num = 1, den = 1;
  for (std::size_t k = 0; k < rs.num_positive_roots(); ++k) {
    num *= rs.coroot_pairing(lr, k);
    den *= rs.coroot_pairing(rs.rho(), k);
  }
  return num / den;
}

inline Coord integer_power(Coord base, unsigned exp) {
  Coord r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

/// l-fold Frobenius twist: weights and box scaled by p^l.
inline FormalCharacter frobenius_twist_char(const RootSystem& rs, const FormalCharacter& chi, unsigned l, Coord p) {
  detail::same_system(rs, chi);
  const Coord q = integer_power(p, l);
  std::set<Weight> ceiling;
  for (const auto& c : chi.box().ceiling()) ceiling.insert(q * c);
  FormalCharacter out(rs.cartan_type(), TruncationBox(ceiling, chi.box().depth() * q), chi.complete());
  for (const auto& [w, c] : chi.terms()) out.add(rs, q * w, c);
  return out;
}

/// Expands chi in a unitriangular basis on a region, highest weights first.
/// basis(mu) must have leading coefficient 1 at mu; the region must be
/// contained in chi's box and contain every box weight above any of its
/// elements.
inline std::map<Weight, Coord> peel_decompose(const RootSystem& rs, const FormalCharacter& chi,
                                              const std::function<FormalCharacter(const Weight&)>& basis,
                                              const std::vector<Weight>& region) {
  detail::same_system(rs, chi);
  std::set<Weight> in_region(region.begin(), region.end());
  const auto box_weights = chi.box().weights(rs);
  for (const auto& r : in_region) {
    if (!chi.box().contains(rs, r)) throw BoxError("peel_decompose: region weight outside the character's box");
    for (const auto& w : box_weights)
      if (w != r && rs.leq(r, w) && !in_region.count(w))
        throw BoxError("peel_decompose: region is missing a box weight above a region weight");
  }
  std::vector<Weight> order(in_region.begin(), in_region.end());
  std::sort(order.begin(), order.end(), HigherFirst{&rs});

  std::map<Weight, Coord> residual;
  for (const auto& r : order) residual[r] = chi[r];
  std::map<Weight, Coord> out;
  for (const auto& r : order) {
    const Coord a = residual[r];
    if (a == 0) continue;
    const FormalCharacter b = basis(r);
    if (b[r] != 1) throw InvalidArgument("peel_decompose: basis element is not unitriangular");
    for (const auto& w : order) {
      if (!rs.leq(w, r)) continue;
      if (!b.complete() && !b.box().contains(rs, w))
        throw BoxError("peel_decompose: basis character does not cover the region");
      residual[w] -= a * b[w];
    }
    out[r] = a;
  }
  return out;
}

}  // namespace modcato
