#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relsheaf/error.hpp"

namespace relsheaf {

/// Index of an algebra element; elements are numbered in declaration order.
using Elem = std::size_t;

/// Subset of an algebra's elements, bit i standing for element i.
using Mask = std::uint64_t;

inline constexpr std::size_t max_algebra_size = 64;

inline constexpr Mask bit(Elem e) { return Mask{1} << e; }
inline constexpr bool contains(Mask m, Elem e) { return (m >> e) & 1U; }
inline constexpr bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }
inline int popcount(Mask m) { return std::popcount(m); }

/// Calls `f(e)` for every element of `m` in ascending order.
template <class F>
void for_each_elem(Mask m, F&& f) {
  while (m != 0) {
    const Elem e = static_cast<Elem>(std::countr_zero(m));
    f(e);
    m &= m - 1;
  }
}

class HeytingAlgebra;
using Algebra = std::shared_ptr<const HeytingAlgebra>;

Algebra build_algebra(std::string label, std::vector<std::string> elements,
                      const std::vector<std::pair<std::string, std::string>>& leq_pairs);

/// A finite (hence complete) Heyting algebra with precomputed meet, join and
/// implication tables. Immutable once built; obtain one via build_algebra.
class HeytingAlgebra {
 public:
  const std::string& label() const noexcept { return label_; }
  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem e) const { return names_.at(e); }

  std::optional<Elem> find(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<Elem>(it - names_.begin());
  }

  Elem at(std::string_view name) const {
    if (auto e = find(name)) return *e;
    throw error(errc::invalid_argument,
                "unknown element '" + std::string(name) + "' in algebra " + label_);
  }

  Elem top() const noexcept { return top_; }
  Elem bottom() const noexcept { return bottom_; }
  Mask all() const noexcept { return size() == 64 ? ~Mask{0} : (bit(size()) - 1); }

  bool leq(Elem x, Elem y) const { return contains(down_[y], x); }
  Elem meet(Elem x, Elem y) const { return meet_[x * size() + y]; }
  Elem join(Elem x, Elem y) const { return join_[x * size() + y]; }
  Elem implies(Elem x, Elem z) const { return imp_[x * size() + z]; }
  Elem iff(Elem x, Elem z) const { return meet(implies(x, z), implies(z, x)); }

  /// Principal down-set {e}†.
  Mask down(Elem e) const { return down_[e]; }
  Mask up(Elem e) const { return up_[e]; }

  Elem sup(Mask m) const {
    Elem acc = bottom_;
    for_each_elem(m, [&](Elem e) { acc = join(acc, e); });
    return acc;
  }

  Elem inf(Mask m) const {
    Elem acc = top_;
    for_each_elem(m, [&](Elem e) { acc = meet(acc, e); });
    return acc;
  }

  Mask down_closure(Mask m) const {
    Mask out = 0;
    for_each_elem(m, [&](Elem e) { out |= down_[e]; });
    return out;
  }

  bool is_down_closed(Mask m) const { return down_closure(m) == m; }

  /// Elements listed in canonical order, e.g. "{bot,a}".
  std::string format(Mask m) const {
    std::string out = "{";
    bool first = true;
    for_each_elem(m, [&](Elem e) {
      if (!first) out += ',';
      out += names_[e];
      first = false;
    });
    return out + "}";
  }

  /// Covering pairs (x, y) with x < y and nothing strictly between.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    for (Elem y = 0; y < size(); ++y) {
      const Mask below = down_[y] & ~bit(y);
      for_each_elem(below, [&](Elem x) {
        if (popcount(below & up_[x]) == 1) out.emplace_back(x, y);
      });
    }
    return out;
  }

  friend bool operator==(const HeytingAlgebra& a, const HeytingAlgebra& b) {
    return a.label_ == b.label_ && a.names_ == b.names_ && a.down_ == b.down_;
  }

 private:
  HeytingAlgebra() = default;
  friend Algebra build_algebra(std::string, std::vector<std::string>,
                               const std::vector<std::pair<std::string, std::string>>&);

  std::string label_;
  std::vector<std::string> names_;
  std::vector<Mask> down_, up_;
  std::vector<Elem> meet_, join_, imp_;
  Elem top_ = 0, bottom_ = 0;
};

inline bool same_algebra(const Algebra& a, const Algebra& b) {
  return a == b || (a && b && *a == *b);
}

namespace detail {

// Greatest element of `candidates` above every other candidate, if any.
inline std::optional<Elem> greatest(const std::vector<Mask>& down, Mask candidates) {
  std::optional<Elem> out;
  for_each_elem(candidates, [&](Elem g) {
    if (!out && subset_of(candidates, down[g])) out = g;
  });
  return out;
}

}  // namespace detail

/// Builds and validates a finite Heyting algebra from a generating order.
/// The order is the reflexive-transitive closure of `leq_pairs`.
inline Algebra build_algebra(std::string label, std::vector<std::string> elements,
                             const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  const std::size_t n = elements.size();
  if (n == 0) throw error(errc::invalid_argument, "algebra needs at least one element");
  if (n > max_algebra_size)
    throw error(errc::bounds_error, "algebras are limited to 64 elements, got " + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (elements[i] == elements[j])
        throw error(errc::invalid_argument, "duplicate element '" + elements[i] + "'");

  auto index = [&](const std::string& s) -> Elem {
    auto it = std::find(elements.begin(), elements.end(), s);
    if (it == elements.end())
      throw error(errc::invalid_argument, "order pair references undeclared element '" + s + "'");
    return static_cast<Elem>(it - elements.begin());
  };

  // above[i] = { j | i <= j }
  std::vector<Mask> above(n);
  for (Elem i = 0; i < n; ++i) above[i] = bit(i);
  for (const auto& [lo, hi] : leq_pairs) above[index(lo)] |= bit(index(hi));
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (contains(above[i], k)) above[i] |= above[k];

  std::vector<Mask> below(n, 0);
  for (Elem i = 0; i < n; ++i) for_each_elem(above[i], [&](Elem j) { below[j] |= bit(i); });

  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j)
      if (contains(above[i], j) && contains(above[j], i))
        throw error(errc::not_a_poset, elements[i] + " <= " + elements[j] + " and " + elements[j] +
                                           " <= " + elements[i]);

  const Mask everything = n == 64 ? ~Mask{0} : bit(n) - 1;
  std::optional<Elem> top, bottom;
  for (Elem i = 0; i < n; ++i) {
    if (below[i] == everything) top = i;
    if (above[i] == everything) bottom = i;
  }
  if (!top || !bottom)
    throw error(errc::no_bounds, std::string("no ") + (!bottom ? "bottom" : "top") + " element");

  std::shared_ptr<HeytingAlgebra> h(new HeytingAlgebra());
  h->label_ = std::move(label);
  h->down_ = below;
  h->up_ = above;
  h->top_ = *top;
  h->bottom_ = *bottom;
  h->meet_.resize(n * n);
  h->join_.resize(n * n);
  h->imp_.resize(n * n);

  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      auto glb = detail::greatest(below, below[x] & below[y]);
      if (!glb)
        throw error(errc::not_a_lattice,
                    "no greatest lower bound for {" + elements[x] + "," + elements[y] + "}");
      // least upper bound = greatest element in the dual order
      std::optional<Elem> lub;
      const Mask ub = above[x] & above[y];
      for_each_elem(ub, [&](Elem g) {
        if (!lub && subset_of(ub, above[g])) lub = g;
      });
      if (!lub)
        throw error(errc::not_a_lattice,
                    "no least upper bound for {" + elements[x] + "," + elements[y] + "}");
      h->meet_[x * n + y] = *glb;
      h->join_[x * n + y] = *lub;
    }
  }

  for (Elem x = 0; x < n; ++x)
    for (Elem z = 0; z < n; ++z) {
      Elem acc = *bottom;
      for (Elem y = 0; y < n; ++y)
        if (contains(below[z], h->meet_[y * n + x])) acc = h->join_[acc * n + y];
      h->imp_[x * n + z] = acc;
    }

  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z) {
        const bool lhs = contains(below[z], h->meet_[y * n + x]);
        const bool rhs = contains(below[h->imp_[x * n + z]], y);
        if (lhs == rhs) continue;
        std::string detail = "meet with " + elements[x] + " has no right adjoint (y=" +
                             elements[y] + ", z=" + elements[z] + ")";
        // the matching distributivity failure is the more familiar witness
        for (Elem a = 0; a < n; ++a)
          for (Elem b = 0; b < n; ++b)
            for (Elem c = 0; c < n; ++c) {
              const Elem l = h->meet_[a * n + h->join_[b * n + c]];
              const Elem r = h->join_[h->meet_[a * n + b] * n + h->meet_[a * n + c]];
              if (l != r) {
                throw error(errc::not_heyting,
                            detail + "; witness: " + elements[a] + "∧(" + elements[b] + "∨" +
                                elements[c] + ")=" + elements[l] + " but (" + elements[a] + "∧" +
                                elements[b] + ")∨(" + elements[a] + "∧" + elements[c] +
                                ")=" + elements[r]);
              }
            }
        throw error(errc::not_heyting, detail);
      }

  h->names_ = std::move(elements);
  return h;
}

/// A down-closed subset of an algebra.
class DownSet {
 public:
  DownSet(Algebra algebra, Mask members) : algebra_(std::move(algebra)), members_(members) {
    if (!algebra_->is_down_closed(members_))
      throw error(errc::invalid_argument, algebra_->format(members_) + " is not down-closed");
  }

  const Algebra& algebra() const noexcept { return algebra_; }
  Mask members() const noexcept { return members_; }
  bool contains(Elem e) const { return relsheaf::contains(members_, e); }
  Elem sup() const { return algebra_->sup(members_); }

  /// True iff the set is {a}† for some a. The empty set is not principal.
  bool is_principal() const { return members_ != 0 && algebra_->down(sup()) == members_; }

  friend bool operator==(const DownSet& a, const DownSet& b) {
    return a.members_ == b.members_ && same_algebra(a.algebra_, b.algebra_);
  }

 private:
  Algebra algebra_;
  Mask members_;
};

inline Elem implication(const HeytingAlgebra& h, Elem x, Elem z) { return h.implies(x, z); }
inline Elem bi_implication(const HeytingAlgebra& h, Elem x, Elem z) { return h.iff(x, z); }

inline DownSet down_closure(const Algebra& h, Mask x) { return DownSet(h, h->down_closure(x)); }

inline bool is_principal(const DownSet& d) { return d.is_principal(); }

/// Every down-closed subset of `h`, smallest first.
inline std::vector<Mask> enumerate_downsets(const HeytingAlgebra& h) {
  if (h.size() > 24)
    throw error(errc::bounds_error, "down-set enumeration is limited to 24 elements");
  std::vector<Mask> out;
  const Mask n = Mask{1} << h.size();
  for (Mask m = 0; m < n; ++m)
    if (h.is_down_closed(m)) out.push_back(m);
  std::stable_sort(out.begin(), out.end(),
                   [](Mask a, Mask b) { return popcount(a) < popcount(b); });
  return out;
}

/// The algebra D(H) of down-sets of H, together with the correspondence
/// between its elements and subsets of H.
struct DownsetAlgebra {
  Algebra base;
  Algebra algebra;
  std::vector<Mask> sets;  // sets[i] = members of element i of D(H)

  Mask set(Elem i) const { return sets.at(i); }

  Elem of(Mask m) const {
    auto it = std::find(sets.begin(), sets.end(), m);
    if (it == sets.end())
      throw error(errc::invalid_argument, base->format(m) + " is not a down-set");
    return static_cast<Elem>(it - sets.begin());
  }

  /// Element h† of D(H).
  Elem principal(Elem h) const { return of(base->down(h)); }
};

inline DownsetAlgebra downset_algebra(const Algebra& h) {
  DownsetAlgebra d;
  d.base = h;
  d.sets = enumerate_downsets(*h);
  std::vector<std::string> names;
  names.reserve(d.sets.size());
  for (Mask m : d.sets) names.push_back(h->format(m));
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < d.sets.size(); ++i)
    for (std::size_t j = 0; j < d.sets.size(); ++j)
      if (i != j && subset_of(d.sets[i], d.sets[j])) pairs.emplace_back(names[i], names[j]);
  d.algebra = build_algebra("D(" + h->label() + ")", std::move(names), pairs);
  return d;
}

/// Checks ⋁X ≤ h ⟺ X ⊆ h† for every down-set X and element h.
inline Verdict sup_dagger_adjunction(const HeytingAlgebra& h) {
  for (Mask x : enumerate_downsets(h))
    for (Elem e = 0; e < h.size(); ++e)
      if (h.leq(h.sup(x), e) != subset_of(x, h.down(e)))
        return Verdict::fail("sup-dagger-adjunction", "X=" + h.format(x) + ", h=" + h.name(e));
  return Verdict::pass();
}

/// Checks y∧x ≤ z ⟺ y ≤ (x⇒z) for every triple.
inline Verdict implication_adjunction(const HeytingAlgebra& h) {
  const std::size_t n = h.size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (h.leq(h.meet(y, x), z) != h.leq(y, h.implies(x, z)))
          return Verdict::fail("implication-adjunction",
                               "x=" + h.name(x) + ", y=" + h.name(y) + ", z=" + h.name(z));
  return Verdict::pass();
}

/// Checks x ∧ ⋁S = ⋁{x∧s | s∈S} for every element x and every subset S.
inline Verdict frame_law(const HeytingAlgebra& h) {
  if (h.size() > 20) throw error(errc::bounds_error, "frame law check is limited to 20 elements");
  const Mask n = Mask{1} << h.size();
  for (Mask s = 0; s < n; ++s)
    for (Elem x = 0; x < h.size(); ++x) {
      Elem rhs = h.bottom();
      for_each_elem(s, [&](Elem e) { rhs = h.join(rhs, h.meet(x, e)); });
      if (h.meet(x, h.sup(s)) != rhs)
        return Verdict::fail("frame-law", "x=" + h.name(x) + ", S=" + h.format(s));
    }
  return Verdict::pass();
}

}  // namespace relsheaf
