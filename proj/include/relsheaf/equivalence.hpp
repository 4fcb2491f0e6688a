#pragma once

// Sheaves versus relational sheaves, associated sheaf functors, and the
// equivalence of presheaves with relational presheaves through D(H).

#include <string>
#include <vector>

#include "relsheaf/adjunction.hpp"
#include "relsheaf/comparison.hpp"

namespace relsheaf {

struct SheafEtaReport {
  Verdict sheaf;   // is_sheaf(F)
  Verdict eta_iso; // every η_{F,h} is a bijection
  bool agree() const { return sheaf.holds == eta_iso.holds; }
};

/// Decides sheafhood twice, by covers and by bijectivity of η_F.
inline SheafEtaReport sheaf_iff_eta_iso(const Presheaf& f) {
  return {is_sheaf(f), is_natural_iso(eta(f))};
}

/// Given a singleton A on Δ_inf Θ_inf(F) at h, the singleton α on F with
/// α(x) = ⋁_γ γ(x) ∧ A(γ), γ ranging over all singletons of F.
inline SingletonMorphism flatten_singleton(const RelObject& f,
                                           const std::vector<std::vector<SingletonMorphism>>& levels,
                                           const SingletonMorphism& a) {
  const auto& h = *f.algebra();
  SingletonMorphism out{a.level, std::vector<Elem>(f.carrier().size(), h.bottom())};
  std::size_t i = 0;
  for (const auto& list : levels)
    for (const auto& gamma : list) {
      const Elem weight = a.extent.at(i++);
      for (std::size_t x = 0; x < out.extent.size(); ++x)
        out.extent[x] = h.join(out.extent[x], h.meet(gamma.extent[x], weight));
    }
  return out;
}

inline SingletonMorphism flatten_singleton(const RelObject& f, const SingletonMorphism& a) {
  return flatten_singleton(f, singletons_by_level(f), a);
}

/// Certifies that η_{Θ(F)} is an isomorphism, so Θ_inf(F) is a sheaf: it is
/// injective, and every singleton A on ΔΘ(F) is representable by
/// flatten_singleton(A).
inline Verdict theta_is_sheaf_certificate(const RelObject& f) {
  const auto& h = *f.algebra();
  const auto levels = singletons_by_level(f);
  const auto theta = detail::theta_from(f, levels);
  const auto dt = delta_inf_obj(theta);
  const auto e = dt.matrix();
  const auto u = tagged_union(theta);
  for (Elem lvl = 0; lvl < h.size(); ++lvl) {
    for (const auto& a : enumerate_singletons(e, lvl)) {
      const auto alpha = flatten_singleton(f, levels, a);
      if (auto v = is_singleton(f.matrix(), alpha); !v)
        return Verdict::fail("flatten-is-singleton", to_string(h, a) + ": " + v.law);
      auto it = std::lower_bound(levels[lvl].begin(), levels[lvl].end(), alpha);
      if (it == levels[lvl].end() || !(*it == alpha))
        return Verdict::fail("flatten-in-theta", to_string(h, alpha));
      const auto pos = u.index(lvl, static_cast<std::size_t>(it - levels[lvl].begin()));
      if (!(representable_singleton(e, pos) == a))
        return Verdict::fail("flatten-represents", to_string(h, a) + " vs " +
                                                       to_string(h, representable_singleton(e, pos)));
    }
  }
  return is_natural_iso(eta(theta));
}

/// a_Shv = Θ_inf ∘ Δ_inf.
inline Presheaf a_shv(const Presheaf& f) {
  auto out = theta_inf_obj(delta_inf_obj(f));
  out.rename("a(" + f.name() + ")");
  return out;
}

/// Δ_Pre = Φ ∘ Δ_Shv ∘ Γ, landing in relational presheaves on H.
inline RelObject delta_pre(const Presheaf& f, const DownsetAlgebra& d) {
  const auto rs = delta_inf_obj(gamma(f, d));
  return RelObject(phi(rs.underlying(), d), Mode::ord);
}

/// Θ_Pre = Λ ∘ Θ_Shv ∘ Ψ.
inline Presheaf theta_pre(const RelObject& r, const DownsetAlgebra& d) {
  if (r.mode() != Mode::ord) throw error(errc::mode_error, "theta_pre needs an ord object");
  return lambda(theta_inf_obj(RelObject(psi(r.underlying(), d), Mode::inf)), d);
}

/// a_Rel = Δ_inf ∘ Θ_Pre.
inline RelObject a_rel(const RelObject& r, const DownsetAlgebra& d) {
  return delta_inf_obj(theta_pre(r, d));
}

/// F ≅ Θ_Pre Δ_Pre(F): x ↦ Λ(η_{Γ F})(x†).
inline Verdict presheaf_roundtrip(const Presheaf& f, const DownsetAlgebra& d) {
  const auto g = gamma(f, d);
  const auto rs = delta_inf_obj(g);
  if (!(psi(phi(rs.underlying(), d), d) == rs.underlying()))
    return Verdict::fail("psi-phi", "ΨΦ changed Δ(Γ F)");
  const auto iso = compose_transformations(lambda_mor(eta(g), d), counit_dagger(f, d));
  if (!(iso.cod() == theta_pre(delta_pre(f, d), d)))
    return Verdict::fail("roundtrip-shape", "Λ Θ Δ Γ F differs from Θ_Pre Δ_Pre F");
  return is_natural_iso(iso);
}

/// R ≅ Δ_Pre Θ_Pre(R), exhibited by Φ(ε_{ΨR} ∘ Δ(τ⁻¹)) where τ : G ≅ ΓΛ(G)
/// for G = Θ_Shv(ΨR). Checks the morphism laws and both inverse laws.
inline Verdict relational_roundtrip(const RelObject& r, const DownsetAlgebra& d) {
  const RelObject pr(psi(r.underlying(), d), Mode::inf);
  const auto g = theta_inf_obj(pr);
  const auto back = delta_inf_mor(inverse(unit_dagger(g, d)));
  const auto eps = epsilon(pr);
  const auto iso_d = compose_morphisms(eps, back);
  const auto theta = phi(iso_d.underlying(), d);
  const auto dom = delta_pre(theta_pre(r, d), d);
  if (!(theta.source() == dom.carrier()))
    return Verdict::fail("roundtrip-shape", theta.source().label + " vs " + dom.carrier().label);
  if (auto v = is_rel_morphism(theta, dom.underlying(), r.underlying(), Mode::ord); !v) return v;
  const auto star = involution(theta);
  if (!(compose_ord(star, theta) == dom.underlying()))
    return Verdict::fail("iso-domain", detail::first_difference(compose_ord(star, theta), dom.underlying()));
  if (!(compose_ord(theta, star) == r.underlying()))
    return Verdict::fail("iso-codomain", detail::first_difference(compose_ord(theta, star), r.underlying()));
  return Verdict::pass();
}

}  // namespace relsheaf
