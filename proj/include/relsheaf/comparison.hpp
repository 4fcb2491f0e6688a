#pragma once

// Presheaves on H versus sheaves on D(H), and order-preserving
// pre-transformations on H versus infima-preserving ones on D(H).

#include <algorithm>
#include <string>
#include <vector>

#include "relsheaf/presheaf.hpp"
#include "relsheaf/pretrans.hpp"

namespace relsheaf {

namespace detail {

inline std::size_t index_in(const std::vector<MatchingFamily>& sorted, const MatchingFamily& m) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
  if (it == sorted.end() || !(*it == m))
    throw error(errc::law_violation, "matching family missing from its carrier");
  return static_cast<std::size_t>(it - sorted.begin());
}

inline std::vector<std::vector<MatchingFamily>> families_by_downset(const Presheaf& f,
                                                                    const DownsetAlgebra& d) {
  std::vector<std::vector<MatchingFamily>> out;
  out.reserve(d.sets.size());
  for (Mask a : d.sets) out.push_back(matching_families(f, a));
  return out;
}

}  // namespace detail

/// Γ(F): the presheaf on D(H) whose elements over A are the matching
/// families of F for A; restriction to B ⊆ A forgets the parts outside B.
inline Presheaf gamma(const Presheaf& f, const DownsetAlgebra& d) {
  if (!same_algebra(f.algebra(), d.base))
    throw error(errc::carrier_mismatch, "gamma: presheaf and down-set algebra disagree");
  const auto fams = detail::families_by_downset(f, d);
  std::vector<std::vector<std::string>> carriers;
  for (const auto& list : fams) {
    std::vector<std::string> names;
    for (const auto& m : list) names.push_back(to_string(f, m));
    carriers.push_back(std::move(names));
  }
  Presheaf g(d.algebra, "Γ(" + f.name() + ")", std::move(carriers));
  for (Elem a = 0; a < d.sets.size(); ++a)
    for (Elem b = 0; b < d.sets.size(); ++b) {
      if (a == b || !subset_of(d.sets[b], d.sets[a])) continue;
      std::vector<std::size_t> map;
      for (const auto& m : fams[a]) {
        MatchingFamily r{d.sets[b], m.choice};
        for (Elem k = 0; k < r.choice.size(); ++k)
          if (!contains(d.sets[b], k)) r.choice[k] = npos;
        map.push_back(detail::index_in(fams[b], r));
      }
      g.set_restriction(a, b, std::move(map));
    }
  return g;
}

inline Presheaf gamma(const Presheaf& f) { return gamma(f, downset_algebra(f.algebra())); }

/// Γ(τ)_A(X) = ⟨τ_k(x_k)⟩_{k∈A}.
inline Transformation gamma_mor(const Transformation& t, const DownsetAlgebra& d) {
  const auto src = detail::families_by_downset(t.dom(), d);
  const auto dst = detail::families_by_downset(t.cod(), d);
  std::vector<std::vector<std::size_t>> comp(d.sets.size());
  for (Elem a = 0; a < d.sets.size(); ++a)
    for (const auto& m : src[a]) {
      MatchingFamily img = m;
      for_each_elem(m.parts, [&](Elem k) { img.choice[k] = t.apply(k, m.choice[k]); });
      comp[a].push_back(detail::index_in(dst[a], img));
    }
  return Transformation(gamma(t.dom(), d), gamma(t.cod(), d), std::move(comp));
}

/// Λ(G)(h) = G(h†).
inline Presheaf lambda(const Presheaf& g, const DownsetAlgebra& d) {
  if (!same_algebra(g.algebra(), d.algebra))
    throw error(errc::carrier_mismatch, "lambda: presheaf does not live on D(H)");
  const auto& h = *d.base;
  std::vector<std::vector<std::string>> carriers;
  for (Elem e = 0; e < h.size(); ++e) carriers.push_back(g.carrier(d.principal(e)));
  Presheaf out(d.base, "Λ(" + g.name() + ")", std::move(carriers));
  for (Elem a = 0; a < h.size(); ++a)
    for (Elem b = 0; b < h.size(); ++b)
      if (a != b && h.leq(b, a)) out.set_restriction(a, b, g.restriction(d.principal(a), d.principal(b)));
  return out;
}

inline Transformation lambda_mor(const Transformation& t, const DownsetAlgebra& d) {
  std::vector<std::vector<std::size_t>> comp;
  for (Elem e = 0; e < d.base->size(); ++e) comp.push_back(t.component(d.principal(e)));
  return Transformation(lambda(t.dom(), d), lambda(t.cod(), d), std::move(comp));
}

/// σ_h : F(h) → ΛΓ(F)(h), x ↦ x†.
inline Transformation counit_dagger(const Presheaf& f, const DownsetAlgebra& d) {
  const auto lg = lambda(gamma(f, d), d);
  std::vector<std::vector<std::size_t>> comp(d.base->size());
  for (Elem h = 0; h < d.base->size(); ++h) {
    const auto fams = matching_families(f, d.base->down(h));
    for (std::size_t x = 0; x < f.carrier_size(h); ++x)
      comp[h].push_back(detail::index_in(fams, element_dagger(f, h, x)));
  }
  return Transformation(f, lg, std::move(comp));
}

/// τ_A : G(A) → ΓΛ(G)(A), x ↦ ⟨x|_{h†}⟩_{h∈A}.
inline Transformation unit_dagger(const Presheaf& g, const DownsetAlgebra& d) {
  const auto lg = lambda(g, d);
  const auto glg = gamma(lg, d);
  std::vector<std::vector<std::size_t>> comp(d.sets.size());
  for (Elem a = 0; a < d.sets.size(); ++a) {
    const auto fams = matching_families(lg, d.sets[a]);
    for (std::size_t x = 0; x < g.carrier_size(a); ++x) {
      MatchingFamily m{d.sets[a], std::vector<std::size_t>(d.base->size(), npos)};
      for_each_elem(d.sets[a], [&](Elem h) { m.choice[h] = g.restrict(a, d.principal(h), x); });
      comp[a].push_back(detail::index_in(fams, m));
    }
  }
  return Transformation(g, glg, std::move(comp));
}

struct ComparisonReport {
  Verdict counit;  // F ≅ ΛΓ(F)
  Verdict unit;    // G ≅ ΓΛ(G)
  bool holds() const { return counit.holds && unit.holds; }
};

/// Verifies that x ↦ x† gives natural bijections F ≅ ΛΓ(F) and G ≅ ΓΛ(G).
inline ComparisonReport comparison_check(const Presheaf& f, const Presheaf& g, const DownsetAlgebra& d) {
  if (auto v = is_sheaf(g); !v) throw error(errc::not_a_sheaf, v.witness);
  return {is_natural_iso(counit_dagger(f, d)), is_natural_iso(unit_dagger(g, d))};
}

/// Ψ(τ)_X(b, a) = 1 iff τ_h(b, a) = 1 for every h ∈ X.
inline PreTransformation psi(const PreTransformation& t, const DownsetAlgebra& d) {
  require_mode(t, Mode::ord, "psi");
  if (!same_algebra(t.algebra(), d.base)) throw error(errc::carrier_mismatch, "psi: wrong algebra");
  PreTransformation out(d.algebra, t.source(), t.target());
  for (std::size_t b = 0; b < t.target().size(); ++b)
    for (std::size_t a = 0; a < t.source().size(); ++a) {
      Mask fib = 0;
      for (Elem x = 0; x < d.sets.size(); ++x)
        if (subset_of(d.sets[x], t.fiber(b, a))) fib |= bit(x);
      out.set_fiber(b, a, fib);
    }
  return out;
}

/// Φ(τ)_h(b, a) = 1 iff τ_{h†}(b, a) = 1.
inline PreTransformation phi(const PreTransformation& t, const DownsetAlgebra& d) {
  require_mode(t, Mode::inf, "phi");
  if (!same_algebra(t.algebra(), d.algebra)) throw error(errc::carrier_mismatch, "phi: wrong algebra");
  PreTransformation out(d.base, t.source(), t.target());
  for (std::size_t b = 0; b < t.target().size(); ++b)
    for (std::size_t a = 0; a < t.source().size(); ++a) {
      Mask fib = 0;
      for (Elem h = 0; h < d.base->size(); ++h)
        if (t.holds(d.principal(h), b, a)) fib |= bit(h);
      out.set_fiber(b, a, fib);
    }
  return out;
}

}  // namespace relsheaf
