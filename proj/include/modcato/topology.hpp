#pragma once

// Order topology on the weight lattice: open = downward closed, closed =
// upward closed, locally closed = order convex. Only finitely described
// sets are supported: opens are down-closures of finite ceilings.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "modcato/rootdata.hpp"

namespace modcato {

/// Down-closure of a finite ceiling. Always open and quasi-bounded.
class OpenSet {
 public:
  OpenSet() = default;
  explicit OpenSet(std::set<Weight> ceiling) : ceiling_(std::move(ceiling)) {}

  const std::set<Weight>& ceiling() const { return ceiling_; }

  bool contains(const RootSystem& rs, const Weight& mu) const {
    return std::any_of(ceiling_.begin(), ceiling_.end(), [&](const Weight& c) { return rs.leq(mu, c); });
  }

  OpenSet shifted(const Weight& gamma) const {
    std::set<Weight> c;
    for (const auto& w : ceiling_) c.insert(w + gamma);
    return OpenSet(std::move(c));
  }

  /// {mu in J : lambda <= mu}, finite by quasi-boundedness.
  std::vector<Weight> up_set(const RootSystem& rs, const Weight& lambda) const {
    std::set<Weight> out;
    for (const auto& c : ceiling_)
      for (const auto& w : interval(rs, lambda, c)) out.insert(w);
    std::vector<Weight> v(out.begin(), out.end());
    std::sort(v.begin(), v.end(), HigherFirst{&rs});
    return v;
  }

 private:
  std::set<Weight> ceiling_;
};

/// Membership predicate tagged with its topological kind. Truncation of flag
/// vectors checks the tag against the order relations on the support.
struct WeightPredicate {
  enum class Kind { open, closed, clopen };
  Kind kind;
  std::function<bool(const Weight&)> contains;
};

inline WeightPredicate open_predicate(const RootSystem& rs, const OpenSet& J) {
  return {WeightPredicate::Kind::open, [&rs, J](const Weight& mu) { return J.contains(rs, mu); }};
}

inline WeightPredicate closed_complement(const RootSystem& rs, const OpenSet& J) {
  return {WeightPredicate::Kind::closed, [&rs, J](const Weight& mu) { return !J.contains(rs, mu); }};
}

inline WeightPredicate whole_lattice() {
  return {WeightPredicate::Kind::clopen, [](const Weight&) { return true; }};
}

inline bool is_locally_closed(const RootSystem& rs, const std::set<Weight>& s) {
  for (const auto& lo : s)
    for (const auto& hi : s) {
      if (lo == hi || !rs.leq(lo, hi)) continue;
      for (const auto& mu : interval(rs, lo, hi))
        if (!s.count(mu)) return false;
    }
  return true;
}

/// Finite order-convex set of weights.
class LocallyClosedSet {
 public:
  LocallyClosedSet(const RootSystem& rs, std::set<Weight> elements) : elements_(std::move(elements)) {
    for (const auto& w : elements_) rs.check(w);
    if (!is_locally_closed(rs, elements_)) throw InvalidArgument("weight set is not locally closed");
  }

  const std::set<Weight>& elements() const { return elements_; }
  bool contains(const Weight& mu) const { return elements_.count(mu) != 0; }
  std::size_t size() const { return elements_.size(); }

  std::set<Weight> maximal_elements(const RootSystem& rs) const {
    std::set<Weight> out;
    for (const auto& a : elements_) {
      bool maximal = std::none_of(elements_.begin(), elements_.end(),
                                  [&](const Weight& b) { return b != a && rs.leq(a, b); });
      if (maximal) out.insert(a);
    }
    return out;
  }

 private:
  std::set<Weight> elements_;
};

inline LocallyClosedSet shift_set(const RootSystem& rs, const LocallyClosedSet& K, const Weight& gamma) {
  std::set<Weight> out;
  for (const auto& w : K.elements()) out.insert(w + gamma);
  return LocallyClosedSet(rs, std::move(out));
}

/// J' = J \ K for J the down-closure of K; open because K is convex.
class CarvedOpen {
 public:
  CarvedOpen(OpenSet J, LocallyClosedSet K) : J_(std::move(J)), K_(std::move(K)) {}
  bool contains(const RootSystem& rs, const Weight& mu) const { return J_.contains(rs, mu) && !K_.contains(mu); }
  const OpenSet& outer() const { return J_; }
  const LocallyClosedSet& removed() const { return K_; }

 private:
  OpenSet J_;
  LocallyClosedSet K_;
};

struct Carving {
  OpenSet J;
  CarvedOpen Jprime;
};

inline Carving carve_J_Jprime(const RootSystem& rs, const LocallyClosedSet& K) {
  OpenSet J(K.maximal_elements(rs));
  return {J, CarvedOpen(J, K)};
}

/// True iff no two elements of K differ by p^l times a nonzero nonnegative
/// root-lattice vector.
inline bool periodicity_condition(const RootSystem& rs, const std::set<Weight>& K, Coord p, unsigned l) {
  Coord q = 1;
  for (unsigned i = 0; i < l; ++i) q *= p;
  for (const auto& a : K)
    for (const auto& b : K) {
      if (a == b) continue;
      auto d = rs.to_root(a - b);
      if (!d || !is_nonnegative(*d)) continue;
      bool divisible = true;
      for (std::size_t i = 0; i < d->rank(); ++i)
        if ((*d)[i] % q != 0) divisible = false;
      if (divisible) return false;
    }
  return true;
}

inline unsigned min_l(const RootSystem& rs, const std::set<Weight>& K, Coord p) {
  if (K.empty()) throw InvalidArgument("min_l: empty set");
  if (p < 2) throw InvalidArgument("min_l: p must be at least 2");
  // Once p^l exceeds every root coordinate of every positive difference the
  // condition holds, so this terminates.
  for (unsigned l = 1;; ++l)
    if (periodicity_condition(rs, K, p, l)) return l;
}

}  // namespace modcato
