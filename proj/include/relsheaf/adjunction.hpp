#pragma once

// Presheaves and relational sheaves: Δ_inf ⊣ Θ_inf, singleton morphisms,
// the unit η and the counit ε.

#include <algorithm>
#include <string>
#include <vector>

#include "relsheaf/presheaf.hpp"
#include "relsheaf/pretrans.hpp"

namespace relsheaf {

/// The disjoint union ∐_h F(h), ordered by level then by position.
struct TaggedUnion {
  FiniteSet set;
  std::vector<Elem> level;          // level of each member
  std::vector<std::size_t> local;   // position inside F(level)
  std::vector<std::size_t> offset;  // first member of each level

  std::size_t index(Elem h, std::size_t x) const { return offset.at(h) + x; }
};

inline TaggedUnion tagged_union(const Presheaf& f) {
  TaggedUnion u;
  u.set.label = "Δ(" + f.name() + ")";
  const auto& h = *f.algebra();
  for (Elem e = 0; e < h.size(); ++e) {
    u.offset.push_back(u.level.size());
    for (std::size_t x = 0; x < f.carrier_size(e); ++x) {
      u.set.members.push_back(f.carrier(e)[x] + "@" + h.name(e));
      u.level.push_back(e);
      u.local.push_back(x);
    }
  }
  return u;
}

namespace detail {

// ⋁{ m ≤ bound | pred(m) }
template <class Pred>
Elem sup_where(const HeytingAlgebra& h, Elem bound, Pred&& pred) {
  Elem acc = h.bottom();
  for_each_elem(h.down(bound), [&](Elem m) {
    if (pred(m)) acc = h.join(acc, m);
  });
  return acc;
}

}  // namespace detail

/// Δ_inf(F): Ê(b, a) = ⋁{ m ≤ level(a) ∧ level(b) | a|_m = b|_m }.
inline RelObject delta_inf_obj(const Presheaf& f) {
  const auto u = tagged_union(f);
  const auto& h = *f.algebra();
  FiberMatrix m(f.algebra(), u.set, u.set);
  for (std::size_t b = 0; b < u.level.size(); ++b)
    for (std::size_t a = 0; a < u.level.size(); ++a) {
      const Elem lb = u.level[b], la = u.level[a];
      m.set(b, a, detail::sup_where(h, h.meet(la, lb), [&](Elem k) {
              return f.restrict(la, k, u.local[a]) == f.restrict(lb, k, u.local[b]);
            }));
    }
  return RelObject(from_matrix(m), Mode::inf);
}

/// The reading that only compares a and b at level(a) ∧ level(b). Not a
/// relational sheaf in general; kept to exhibit why the wider reading is used.
inline PreTransformation delta_narrow(const Presheaf& f) {
  const auto u = tagged_union(f);
  const auto& h = *f.algebra();
  FiberMatrix m(f.algebra(), u.set, u.set);
  for (std::size_t b = 0; b < u.level.size(); ++b)
    for (std::size_t a = 0; a < u.level.size(); ++a) {
      const Elem la = u.level[a], lb = u.level[b], k = h.meet(la, lb);
      const bool agree = f.restrict(la, k, u.local[a]) == f.restrict(lb, k, u.local[b]);
      m.set(b, a, agree ? k : h.bottom());
    }
  return from_matrix(m);
}

/// Δ_inf(τ)(b, a) = ⋁{ m ≤ level(a) ∧ level(b) | b|_m = τ(a)|_m }.
inline RelMorphism delta_inf_mor(const Transformation& t) {
  const auto& f = t.dom();
  const auto& g = t.cod();
  const auto uf = tagged_union(f);
  const auto ug = tagged_union(g);
  const auto& h = *f.algebra();
  FiberMatrix m(f.algebra(), uf.set, ug.set);
  for (std::size_t b = 0; b < ug.level.size(); ++b)
    for (std::size_t a = 0; a < uf.level.size(); ++a) {
      const Elem la = uf.level[a], lb = ug.level[b];
      const std::size_t image = t.apply(la, uf.local[a]);
      m.set(b, a, detail::sup_where(h, h.meet(la, lb), [&](Elem k) {
              return g.restrict(la, k, image) == g.restrict(lb, k, ug.local[b]);
            }));
    }
  return RelMorphism(delta_inf_obj(f), delta_inf_obj(g), from_matrix(m));
}

/// A singleton morphism F_h → F in normal form: its extent x ↦ α(x).
struct SingletonMorphism {
  Elem level = 0;
  std::vector<Elem> extent;

  friend bool operator==(const SingletonMorphism&, const SingletonMorphism&) = default;
  friend auto operator<=>(const SingletonMorphism&, const SingletonMorphism&) = default;
};

inline const FiniteSet& point_set() {
  static const FiniteSet p{"1", {"*"}};
  return p;
}

/// The one-point relational sheaf F_h with F_h(*, *) = h.
inline RelObject singleton_object(const Algebra& h, Elem level) {
  FiberMatrix m(h, point_set(), point_set());
  m.set(0, 0, level);
  return RelObject(from_matrix(m), Mode::inf);
}

/// α as a pre-transformation {*} → A with fiber(x, *) = α(x)†.
inline PreTransformation singleton_pretrans(const Algebra& h, const FiniteSet& carrier,
                                            const SingletonMorphism& s) {
  FiberMatrix m(h, point_set(), carrier);
  for (std::size_t x = 0; x < carrier.size(); ++x) m.set(x, 0, s.extent.at(x));
  return from_matrix(m);
}

/// Singleton invariants against the matrix Ê of an inf object.
inline Verdict is_singleton(const FiberMatrix& e, const SingletonMorphism& s) {
  const auto& h = *e.algebra();
  const std::size_t n = e.source().size();
  if (s.extent.size() != n) return Verdict::fail("shape", "extent has the wrong length");
  Elem total = h.bottom();
  for (std::size_t x = 0; x < n; ++x) {
    const Elem ax = s.extent[x];
    if (!h.leq(ax, s.level)) return Verdict::fail("below-level", e.source().members[x]);
    if (!h.leq(ax, e.at(x, x))) return Verdict::fail("below-diagonal", e.source().members[x]);
    total = h.join(total, ax);
    for (std::size_t y = 0; y < n; ++y) {
      if (!h.leq(h.meet(e.at(y, x), ax), s.extent[y]))
        return Verdict::fail("closure", e.source().members[x] + "," + e.source().members[y]);
      if (!h.leq(h.meet(ax, s.extent[y]), e.at(x, y)))
        return Verdict::fail("map-lower", e.source().members[x] + "," + e.source().members[y]);
    }
  }
  if (total != s.level) return Verdict::fail("surjective-extent", "sup is " + h.name(total));
  return Verdict::pass();
}

/// Every singleton morphism F_h → F, in lexicographic order of extents.
inline std::vector<SingletonMorphism> enumerate_singletons(const FiberMatrix& e, Elem level) {
  const auto& h = *e.algebra();
  const std::size_t n = e.source().size();
  std::vector<Elem> cap(n);
  std::vector<Elem> reach(n + 1, h.bottom());  // join of caps of x, x+1, ...
  for (std::size_t x = 0; x < n; ++x) cap[x] = h.meet(level, e.at(x, x));
  for (std::size_t x = n; x-- > 0;) reach[x] = h.join(reach[x + 1], cap[x]);
  if (reach[0] != level) return {};

  std::vector<SingletonMorphism> out;
  SingletonMorphism cur{level, std::vector<Elem>(n, h.bottom())};
  auto rec = [&](auto&& self, std::size_t x, Elem so_far) -> void {
    if (x == n) {
      if (so_far == level) out.push_back(cur);
      return;
    }
    if (h.join(so_far, reach[x]) != level) return;
    for_each_elem(h.down(cap[x]), [&](Elem v) {
      for (std::size_t y = 0; y < x; ++y) {
        const Elem ay = cur.extent[y];
        if (!h.leq(h.meet(e.at(y, x), v), ay) || !h.leq(h.meet(e.at(x, y), ay), v) ||
            !h.leq(h.meet(v, ay), e.at(x, y)))
          return;
      }
      cur.extent[x] = v;
      self(self, x + 1, h.join(so_far, v));
    });
    cur.extent[x] = h.bottom();
  };
  rec(rec, 0, h.bottom());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<SingletonMorphism> enumerate_singletons(const RelObject& f, Elem level) {
  if (f.mode() != Mode::inf) throw error(errc::mode_error, "singletons need an inf object");
  return enumerate_singletons(f.matrix(), level);
}

/// α|_k = α ∘ α_{k,h}: extent x ↦ α(x) ∧ k.
inline SingletonMorphism restrict_singleton(const HeytingAlgebra& h, const SingletonMorphism& s, Elem k) {
  if (!h.leq(k, s.level))
    throw error(errc::order_error, h.name(k) + " is not below " + h.name(s.level));
  SingletonMorphism out{k, s.extent};
  for (auto& v : out.extent) v = h.meet(v, k);
  return out;
}

/// α_x with extent y ↦ Ê(y, x) at level Ê(x, x).
inline SingletonMorphism representable_singleton(const FiberMatrix& e, std::size_t x) {
  SingletonMorphism s{e.at(x, x), {}};
  for (std::size_t y = 0; y < e.target().size(); ++y) s.extent.push_back(e.at(y, x));
  return s;
}

inline SingletonMorphism representable_singleton(const RelObject& f, std::size_t x) {
  return representable_singleton(f.matrix(), x);
}

inline std::string to_string(const HeytingAlgebra& h, const SingletonMorphism& s) {
  std::string out = "<";
  for (std::size_t i = 0; i < s.extent.size(); ++i) {
    if (i) out += ",";
    out += h.name(s.extent[i]);
  }
  return out + ">";
}

/// Θ_inf(F)(h) listed level by level: element i of the returned vector is
/// enumerate_singletons(F, i).
inline std::vector<std::vector<SingletonMorphism>> singletons_by_level(const RelObject& f) {
  const auto e = f.matrix();
  std::vector<std::vector<SingletonMorphism>> out;
  for (Elem h = 0; h < f.algebra()->size(); ++h) out.push_back(enumerate_singletons(e, h));
  return out;
}

namespace detail {

inline std::size_t index_in(const std::vector<SingletonMorphism>& sorted, const SingletonMorphism& s) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), s);
  if (it == sorted.end() || !(*it == s))
    throw error(errc::law_violation, "result is not a singleton of the expected object");
  return static_cast<std::size_t>(it - sorted.begin());
}

inline Presheaf theta_from(const RelObject& f, const std::vector<std::vector<SingletonMorphism>>& levels) {
  const auto& h = *f.algebra();
  std::vector<std::vector<std::string>> carriers;
  for (const auto& list : levels) {
    std::vector<std::string> names;
    for (const auto& s : list) names.push_back(to_string(h, s));
    carriers.push_back(std::move(names));
  }
  Presheaf out(f.algebra(), "Θ(" + f.carrier().label + ")", std::move(carriers));
  for (Elem a = 0; a < h.size(); ++a)
    for (Elem b = 0; b < h.size(); ++b) {
      if (a == b || !h.leq(b, a)) continue;
      std::vector<std::size_t> map;
      for (const auto& s : levels[a]) map.push_back(index_in(levels[b], restrict_singleton(h, s, b)));
      out.set_restriction(a, b, std::move(map));
    }
  return out;
}

}  // namespace detail

/// Θ_inf(F): the presheaf of singleton morphisms, restricted by α ↦ α|_k.
inline Presheaf theta_inf_obj(const RelObject& f) {
  if (f.mode() != Mode::inf) throw error(errc::mode_error, "theta needs an inf object");
  return detail::theta_from(f, singletons_by_level(f));
}

/// Θ_inf(θ)_h(α) = θ ∘ α, computed on extents and re-validated.
inline Transformation theta_inf_mor(const RelMorphism& m) {
  if (m.mode() != Mode::inf) throw error(errc::mode_error, "theta needs an inf morphism");
  const auto& h = *m.domain().algebra();
  const auto src = singletons_by_level(m.domain());
  const auto dst = singletons_by_level(m.codomain());
  const auto mt = to_matrix(m.underlying());
  std::vector<std::vector<std::size_t>> comp(h.size());
  for (Elem lvl = 0; lvl < h.size(); ++lvl)
    for (const auto& s : src[lvl]) {
      SingletonMorphism img{lvl, {}};
      for (std::size_t x = 0; x < mt.target().size(); ++x) {
        Elem acc = h.bottom();
        for (std::size_t y = 0; y < mt.source().size(); ++y) acc = h.join(acc, h.meet(mt.at(x, y), s.extent[y]));
        img.extent.push_back(acc);
      }
      comp[lvl].push_back(detail::index_in(dst[lvl], img));
    }
  return Transformation(detail::theta_from(m.domain(), src), detail::theta_from(m.codomain(), dst),
                        std::move(comp));
}

/// η_{F,h}(x) = α_x, the representable singleton of x in Δ_inf(F).
inline Transformation eta(const Presheaf& f) {
  const auto d = delta_inf_obj(f);
  const auto e = d.matrix();
  const auto levels = singletons_by_level(d);
  const auto u = tagged_union(f);
  std::vector<std::vector<std::size_t>> comp(f.algebra()->size());
  for (Elem h = 0; h < comp.size(); ++h)
    for (std::size_t x = 0; x < f.carrier_size(h); ++x)
      comp[h].push_back(detail::index_in(levels[h], representable_singleton(e, u.index(h, x))));
  return Transformation(f, detail::theta_from(d, levels), std::move(comp));
}

inline std::vector<std::size_t> eta_component(const Presheaf& f, Elem h) { return eta(f).component(h); }

/// ε_F : Δ_inf Θ_inf(F) → F with ε(x, α) = α(x).
inline RelMorphism epsilon(const RelObject& f) {
  const auto levels = singletons_by_level(f);
  const auto theta = detail::theta_from(f, levels);
  const auto dt = delta_inf_obj(theta);
  const auto u = tagged_union(theta);
  FiberMatrix m(f.algebra(), u.set, f.carrier());
  for (std::size_t i = 0; i < u.level.size(); ++i) {
    const auto& s = levels[u.level[i]][u.local[i]];
    for (std::size_t x = 0; x < f.carrier().size(); ++x) m.set(x, i, s.extent[x]);
  }
  return RelMorphism(dt, f, from_matrix(m));
}

/// Inverse of a levelwise bijective transformation.
inline Transformation inverse(const Transformation& t) {
  if (auto v = is_natural_iso(t); !v) throw error(errc::law_violation, "inverse: " + v.witness);
  std::vector<std::vector<std::size_t>> comp(t.components().size());
  for (Elem h = 0; h < comp.size(); ++h) {
    comp[h].assign(t.component(h).size(), 0);
    for (std::size_t x = 0; x < t.component(h).size(); ++x) comp[h][t.apply(h, x)] = x;
  }
  return Transformation(t.cod(), t.dom(), std::move(comp));
}

struct SingletonAgreement {
  bool restrictions_agree;  // α|_l = β|_l
  bool composite_holds;     // (α°β)_l(*, *) = 1
  bool closed_form;         // l ≤ ⋁_x α(x) ∧ β(x)
};

/// Both sides of α|_l = β|_l ⟺ (α°β)_l(*, *) = 1, computed independently.
inline SingletonAgreement lemma_singleton_agreement(const RelObject& f, const SingletonMorphism& a,
                                                    const SingletonMorphism& b, Elem l) {
  const auto& h = *f.algebra();
  SingletonAgreement out{};
  out.restrictions_agree = h.leq(l, a.level) && h.leq(l, b.level) &&
                           restrict_singleton(h, a, l) == restrict_singleton(h, b, l);
  const auto pa = singleton_pretrans(f.algebra(), f.carrier(), a);
  const auto pb = singleton_pretrans(f.algebra(), f.carrier(), b);
  out.composite_holds = compose_inf(involution(pa), pb).holds(l, 0, 0);
  Elem acc = h.bottom();
  for (std::size_t x = 0; x < a.extent.size(); ++x) acc = h.join(acc, h.meet(a.extent[x], b.extent[x]));
  out.closed_form = h.leq(l, acc);
  return out;
}

}  // namespace relsheaf
