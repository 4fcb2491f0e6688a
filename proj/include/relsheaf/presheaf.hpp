#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "relsheaf/heyting.hpp"

namespace relsheaf {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// A functor H^op → Set with finite carriers. Restriction maps are stored
/// for every pair k ≤ h; `complete()` derives the ones left implicit.
class Presheaf {
 public:
  Presheaf(Algebra algebra, std::string name, std::vector<std::vector<std::string>> carriers)
      : algebra_(std::move(algebra)), name_(std::move(name)), carriers_(std::move(carriers)),
        res_(algebra_->size() * algebra_->size()) {
    if (carriers_.size() != algebra_->size())
      throw error(errc::invalid_argument, "presheaf " + name_ + " needs one carrier per element");
    for (Elem h = 0; h < algebra_->size(); ++h) {
      std::vector<std::size_t> id(carriers_[h].size());
      for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
      res_[slot(h, h)] = std::move(id);
    }
  }

  const Algebra& algebra() const noexcept { return algebra_; }
  const std::string& name() const noexcept { return name_; }
  void rename(std::string n) { name_ = std::move(n); }

  const std::vector<std::string>& carrier(Elem h) const { return carriers_.at(h); }
  std::size_t carrier_size(Elem h) const { return carriers_.at(h).size(); }

  std::size_t find(Elem h, const std::string& x) const {
    const auto& c = carriers_.at(h);
    auto it = std::find(c.begin(), c.end(), x);
    if (it == c.end())
      throw error(errc::invalid_argument,
                  "'" + x + "' is not in " + name_ + "(" + algebra_->name(h) + ")");
    return static_cast<std::size_t>(it - c.begin());
  }

  bool has_restriction(Elem h, Elem k) const { return res_[slot(h, k)].has_value(); }

  /// x|_k for x ∈ F(h).
  std::size_t restrict(Elem h, Elem k, std::size_t x) const { return (*res_[slot(h, k)])[x]; }

  const std::vector<std::size_t>& restriction(Elem h, Elem k) const {
    if (!has_restriction(h, k))
      throw error(errc::invalid_argument, "no restriction " + algebra_->name(h) + "->" +
                                              algebra_->name(k) + " in " + name_);
    return *res_[slot(h, k)];
  }

  void set_restriction(Elem h, Elem k, std::vector<std::size_t> map) {
    if (!algebra_->leq(k, h))
      throw error(errc::order_error, algebra_->name(k) + " is not below " + algebra_->name(h));
    if (map.size() != carriers_[h].size())
      throw error(errc::invalid_argument, "restriction " + algebra_->name(h) + "->" +
                                              algebra_->name(k) + " has the wrong domain size");
    for (std::size_t v : map)
      if (v >= carriers_[k].size())
        throw error(errc::invalid_argument, "restriction " + algebra_->name(h) + "->" +
                                                algebra_->name(k) + " leaves the carrier");
    res_[slot(h, k)] = std::move(map);
  }

  /// Fills every missing restriction that is forced, either by composing
  /// known ones or because the target carrier has at most one element.
  void complete() {
    const std::size_t n = algebra_->size();
    for (bool changed = true; changed;) {
      changed = false;
      for (Elem h = 0; h < n; ++h)
        for (Elem k = 0; k < n; ++k) {
          if (!algebra_->leq(k, h) || has_restriction(h, k)) continue;
          if (carriers_[k].size() == 1 || carriers_[h].empty()) {
            res_[slot(h, k)] = std::vector<std::size_t>(carriers_[h].size(), 0);
            changed = true;
            continue;
          }
          for (Elem l = 0; l < n; ++l) {
            if (l == h || l == k || !algebra_->leq(k, l) || !algebra_->leq(l, h)) continue;
            if (!has_restriction(h, l) || !has_restriction(l, k)) continue;
            std::vector<std::size_t> map(carriers_[h].size());
            for (std::size_t x = 0; x < map.size(); ++x) map[x] = restrict(l, k, restrict(h, l, x));
            res_[slot(h, k)] = std::move(map);
            changed = true;
            break;
          }
        }
    }
    for (Elem h = 0; h < n; ++h)
      for (Elem k = 0; k < n; ++k)
        if (algebra_->leq(k, h) && !has_restriction(h, k))
          throw error(errc::invalid_argument, "restriction " + algebra_->name(h) + "->" +
                                                  algebra_->name(k) + " of " + name_ +
                                                  " is neither given nor derivable");
  }

  std::size_t total_size() const {
    std::size_t s = 0;
    for (const auto& c : carriers_) s += c.size();
    return s;
  }

  /// Same shape and restrictions; the name is ignored.
  friend bool operator==(const Presheaf& a, const Presheaf& b) {
    return same_algebra(a.algebra_, b.algebra_) && a.carriers_ == b.carriers_ && a.res_ == b.res_;
  }

 private:
  std::size_t slot(Elem h, Elem k) const { return h * algebra_->size() + k; }

  Algebra algebra_;
  std::string name_;
  std::vector<std::vector<std::string>> carriers_;
  std::vector<std::optional<std::vector<std::size_t>>> res_;
};

/// Checks identity and composition of restrictions exhaustively.
inline Verdict validate_presheaf(const Presheaf& f) {
  const auto& h = *f.algebra();
  const std::size_t n = h.size();
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      if (h.leq(b, a) && !f.has_restriction(a, b))
        return Verdict::fail("restriction-present", h.name(a) + "->" + h.name(b));
  for (Elem a = 0; a < n; ++a)
    for (std::size_t x = 0; x < f.carrier_size(a); ++x)
      if (f.restrict(a, a, x) != x)
        return Verdict::fail("identity", h.name(a) + ", x=" + f.carrier(a)[x]);
  for (Elem hi = 0; hi < n; ++hi)
    for (Elem mid = 0; mid < n; ++mid) {
      if (!h.leq(mid, hi)) continue;
      for (Elem lo = 0; lo < n; ++lo) {
        if (!h.leq(lo, mid)) continue;
        for (std::size_t x = 0; x < f.carrier_size(hi); ++x)
          if (f.restrict(mid, lo, f.restrict(hi, mid, x)) != f.restrict(hi, lo, x))
            return Verdict::fail("composition", "res_{" + h.name(lo) + "<=" + h.name(hi) +
                                                    "} != res_{" + h.name(lo) + "<=" + h.name(mid) +
                                                    "} . res_{" + h.name(mid) + "<=" + h.name(hi) +
                                                    "} at x=" + f.carrier(hi)[x]);
      }
    }
  return Verdict::pass();
}

/// A compatible choice x_k ∈ F(k) for k in `parts`; `choice[k]` is npos
/// outside `parts`.
struct MatchingFamily {
  Mask parts = 0;
  std::vector<std::size_t> choice;

  friend bool operator==(const MatchingFamily&, const MatchingFamily&) = default;
  friend auto operator<=>(const MatchingFamily&, const MatchingFamily&) = default;
};

inline std::string to_string(const Presheaf& f, const MatchingFamily& m) {
  std::string out = "{";
  bool first = true;
  for_each_elem(m.parts, [&](Elem k) {
    if (!first) out += ",";
    out += f.algebra()->name(k) + ":" + f.carrier(k)[m.choice[k]];
    first = false;
  });
  return out + "}";
}

/// All matching families of `f` over `parts`, in canonical order.
inline std::vector<MatchingFamily> matching_families(const Presheaf& f, Mask parts) {
  const auto& h = *f.algebra();
  std::vector<Elem> order;
  for_each_elem(parts, [&](Elem e) { order.push_back(e); });
  // maximal elements first so that restrictions prune the lower ones
  std::stable_sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    return popcount(h.down(a)) > popcount(h.down(b));
  });

  std::vector<MatchingFamily> out;
  MatchingFamily cur{parts, std::vector<std::size_t>(h.size(), npos)};

  auto compatible = [&](std::size_t depth, Elem k, std::size_t x) {
    for (std::size_t i = 0; i < depth; ++i) {
      const Elem l = order[i];
      const Elem m = h.meet(k, l);
      if (f.restrict(k, m, x) != f.restrict(l, m, cur.choice[l])) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      out.push_back(cur);
      return;
    }
    const Elem k = order[depth];
    for (std::size_t x = 0; x < f.carrier_size(k); ++x) {
      if (!compatible(depth, k, x)) continue;
      cur.choice[k] = x;
      self(self, depth + 1);
    }
    cur.choice[k] = npos;
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// All x ∈ F(h) with x|_k = x_k for every k in the family's parts.
inline std::vector<std::size_t> amalgamations(const Presheaf& f, const MatchingFamily& fam, Elem h) {
  const auto& alg = *f.algebra();
  if (alg.sup(fam.parts) != h)
    throw error(errc::not_a_cover, alg.format(fam.parts) + " does not cover " + alg.name(h));
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < f.carrier_size(h); ++x) {
    bool ok = true;
    for_each_elem(fam.parts, [&](Elem k) { ok = ok && f.restrict(h, k, x) == fam.choice[k]; });
    if (ok) out.push_back(x);
  }
  return out;
}

inline std::vector<std::size_t> amalgamations(const Presheaf& f, const MatchingFamily& fam) {
  return amalgamations(f, fam, f.algebra()->sup(fam.parts));
}

/// Every matching family over every subset (the empty one covering ⊥
/// included) has exactly one amalgamation.
inline Verdict is_sheaf(const Presheaf& f) {
  const auto& h = *f.algebra();
  if (h.size() > 20) throw error(errc::bounds_error, "sheaf check is limited to 20 elements");
  const Mask n = Mask{1} << h.size();
  for (Mask parts = 0; parts < n; ++parts) {
    const Elem top = h.sup(parts);
    for (const auto& fam : matching_families(f, parts)) {
      const auto am = amalgamations(f, fam, top);
      if (am.size() != 1)
        return Verdict::fail("unique-amalgamation",
                             "cover " + h.format(parts) + " of " + h.name(top) + ", family " +
                                 to_string(f, fam) + " has " + std::to_string(am.size()) +
                                 " amalgamations");
    }
  }
  return Verdict::pass();
}

/// x† : the family k ↦ x|_k over h†.
inline MatchingFamily element_dagger(const Presheaf& f, Elem h, std::size_t x) {
  const auto& alg = *f.algebra();
  MatchingFamily m{alg.down(h), std::vector<std::size_t>(alg.size(), npos)};
  for_each_elem(alg.down(h), [&](Elem k) { m.choice[k] = f.restrict(h, k, x); });
  return m;
}

/// A family of functions τ_h : F(h) → G(h).
class Transformation {
 public:
  Transformation(Presheaf dom, Presheaf cod, std::vector<std::vector<std::size_t>> components)
      : dom_(std::move(dom)), cod_(std::move(cod)), comp_(std::move(components)) {
    if (!same_algebra(dom_.algebra(), cod_.algebra()))
      throw error(errc::carrier_mismatch, "transformation between presheaves on different algebras");
    const auto n = dom_.algebra()->size();
    if (comp_.size() != n)
      throw error(errc::invalid_argument, "transformation needs one component per element");
    for (Elem h = 0; h < n; ++h) {
      if (comp_[h].size() != dom_.carrier_size(h))
        throw error(errc::invalid_argument, "component at " + dom_.algebra()->name(h) +
                                                " has the wrong domain size");
      for (std::size_t v : comp_[h])
        if (v >= cod_.carrier_size(h))
          throw error(errc::invalid_argument,
                      "component at " + dom_.algebra()->name(h) + " leaves the codomain");
    }
  }

  const Presheaf& dom() const noexcept { return dom_; }
  const Presheaf& cod() const noexcept { return cod_; }
  std::size_t apply(Elem h, std::size_t x) const { return comp_[h][x]; }
  const std::vector<std::size_t>& component(Elem h) const { return comp_.at(h); }
  const std::vector<std::vector<std::size_t>>& components() const noexcept { return comp_; }

  friend bool operator==(const Transformation&, const Transformation&) = default;

 private:
  Presheaf dom_;
  Presheaf cod_;
  std::vector<std::vector<std::size_t>> comp_;
};

/// Naturality: τ_k(x|_k) = τ_h(x)|_k.
inline Verdict validate_transformation(const Transformation& t) {
  const auto& h = *t.dom().algebra();
  for (Elem a = 0; a < h.size(); ++a)
    for (Elem b = 0; b < h.size(); ++b) {
      if (!h.leq(b, a)) continue;
      for (std::size_t x = 0; x < t.dom().carrier_size(a); ++x)
        if (t.apply(b, t.dom().restrict(a, b, x)) != t.cod().restrict(a, b, t.apply(a, x)))
          return Verdict::fail("naturality", h.name(b) + "<=" + h.name(a) +
                                                 ", x=" + t.dom().carrier(a)[x]);
    }
  return Verdict::pass();
}

inline void require_natural(const Transformation& t) {
  if (auto v = validate_transformation(t); !v) throw error(errc::naturality_violation, v.witness);
}

inline Transformation identity_transformation(const Presheaf& f) {
  std::vector<std::vector<std::size_t>> comp(f.algebra()->size());
  for (Elem h = 0; h < comp.size(); ++h) {
    comp[h].resize(f.carrier_size(h));
    for (std::size_t x = 0; x < comp[h].size(); ++x) comp[h][x] = x;
  }
  return Transformation(f, f, std::move(comp));
}

/// σ ∘ τ.
inline Transformation compose_transformations(const Transformation& s, const Transformation& t) {
  if (!(t.cod() == s.dom()))
    throw error(errc::carrier_mismatch, "compose_transformations: " + t.cod().name() +
                                            " is not " + s.dom().name());
  require_natural(s);
  require_natural(t);
  std::vector<std::vector<std::size_t>> comp(t.components().size());
  for (Elem h = 0; h < comp.size(); ++h)
    for (std::size_t x : t.component(h)) comp[h].push_back(s.apply(h, x));
  return Transformation(t.dom(), s.cod(), std::move(comp));
}

/// Natural and bijective at every level.
inline Verdict is_natural_iso(const Transformation& t) {
  if (auto v = validate_transformation(t); !v) return v;
  const auto& h = *t.dom().algebra();
  for (Elem a = 0; a < h.size(); ++a) {
    if (t.dom().carrier_size(a) != t.cod().carrier_size(a))
      return Verdict::fail("bijection", "carrier sizes differ at " + h.name(a) + ": " +
                                            std::to_string(t.dom().carrier_size(a)) + " vs " +
                                            std::to_string(t.cod().carrier_size(a)));
    std::vector<bool> hit(t.cod().carrier_size(a), false);
    for (std::size_t v : t.component(a)) {
      if (hit[v])
        return Verdict::fail("bijection", "not injective at " + h.name(a) + " (" +
                                              t.cod().carrier(a)[v] + " hit twice)");
      hit[v] = true;
    }
  }
  return Verdict::pass();
}

}  // namespace relsheaf
