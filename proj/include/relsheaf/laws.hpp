#pragma once

// Law verifiers for the Δ_inf ⊣ Θ_inf adjunction and the two-point example.

#include <map>
#include <string>
#include <vector>

#include "relsheaf/adjunction.hpp"

namespace relsheaf {

/// Δ(σ ∘ τ) = Δ(σ) ∘ Δ(τ).
inline Verdict delta_functoriality(const Transformation& s, const Transformation& t) {
  const auto lhs = delta_inf_mor(compose_transformations(s, t)).underlying();
  const auto rhs = compose_inf(delta_inf_mor(s).underlying(), delta_inf_mor(t).underlying());
  if (!(lhs == rhs)) return Verdict::fail("delta-functoriality", detail::first_difference(lhs, rhs));
  return Verdict::pass();
}

/// Δ(G)(h)(b, τ_k(a)) = 1 ⟺ Δ(τ)_h(b, a) = 1 for a ∈ F(k).
inline Verdict delta_key_identity(const Transformation& t) {
  const auto eg = delta_inf_obj(t.cod()).matrix();
  const auto mt = to_matrix(delta_inf_mor(t).underlying());
  const auto uf = tagged_union(t.dom());
  const auto ug = tagged_union(t.cod());
  for (std::size_t a = 0; a < uf.level.size(); ++a) {
    const auto image = ug.index(uf.level[a], t.apply(uf.level[a], uf.local[a]));
    for (std::size_t b = 0; b < ug.level.size(); ++b)
      if (eg.at(b, image) != mt.at(b, a))
        return Verdict::fail("delta-key-identity", ug.set.members[b] + "," + uf.set.members[a]);
  }
  return Verdict::pass();
}

/// ε°ε = Δ_inf Θ_inf(F) and ε ε° = F.
inline Verdict epsilon_iso_laws(const RelObject& f) {
  const auto e = epsilon(f);
  const auto& th = e.underlying();
  const auto star = involution(th);
  const auto lhs = compose_inf(star, th);
  if (!(lhs == e.domain().underlying()))
    return Verdict::fail("epsilon-iso-domain", detail::first_difference(lhs, e.domain().underlying()));
  const auto rhs = compose_inf(th, star);
  if (!(rhs == f.underlying()))
    return Verdict::fail("epsilon-iso-codomain", detail::first_difference(rhs, f.underlying()));
  return Verdict::pass();
}

/// ΘΔ(τ) ∘ η_F = η_G ∘ τ.
inline Verdict eta_naturality(const Transformation& t) {
  const auto lhs = compose_transformations(theta_inf_mor(delta_inf_mor(t)), eta(t.dom()));
  const auto rhs = compose_transformations(eta(t.cod()), t);
  if (!(lhs.components() == rhs.components())) return Verdict::fail("eta-naturality", t.dom().name());
  return Verdict::pass();
}

/// θ ∘ ε_F = ε_G ∘ ΔΘ(θ).
inline Verdict epsilon_naturality(const RelMorphism& m) {
  const auto lhs = compose_inf(m.underlying(), epsilon(m.domain()).underlying());
  const auto rhs =
      compose_inf(epsilon(m.codomain()).underlying(), delta_inf_mor(theta_inf_mor(m)).underlying());
  if (!(lhs == rhs)) return Verdict::fail("epsilon-naturality", detail::first_difference(lhs, rhs));
  return Verdict::pass();
}

/// ε_{ΔF} ∘ Δ(η_F) = 1_{ΔF}.
inline Verdict triangle_presheaf(const Presheaf& f) {
  const auto d = delta_inf_obj(f);
  const auto lhs = compose_inf(epsilon(d).underlying(), delta_inf_mor(eta(f)).underlying());
  if (!(lhs == d.underlying()))
    return Verdict::fail("triangle-delta", detail::first_difference(lhs, d.underlying()));
  return Verdict::pass();
}

/// Θ(ε_G) ∘ η_{ΘG} = 1_{ΘG}.
inline Verdict triangle_relational(const RelObject& g) {
  const auto th = theta_inf_obj(g);
  const auto lhs = compose_transformations(theta_inf_mor(epsilon(g)), eta(th));
  if (!(lhs == identity_transformation(th))) return Verdict::fail("triangle-theta", g.carrier().label);
  return Verdict::pass();
}

/// Every singleton α at h satisfies α°α = F_h.
inline Verdict singleton_monic(const RelObject& f) {
  const auto& h = *f.algebra();
  for (Elem lvl = 0; lvl < h.size(); ++lvl) {
    const auto fh = singleton_object(f.algebra(), lvl);
    for (const auto& s : enumerate_singletons(f, lvl)) {
      const auto p = singleton_pretrans(f.algebra(), f.carrier(), s);
      if (!(compose_inf(involution(p), p) == fh.underlying()))
        return Verdict::fail("singleton-monic", to_string(h, s));
    }
  }
  return Verdict::pass();
}

struct AdjunctionReport {
  std::vector<std::pair<std::string, Verdict>> checks;

  bool holds() const {
    for (const auto& [name, v] : checks)
      if (!v.holds) return false;
    return true;
  }
};

/// Triangle identities, ε isomorphism laws and the object-level checks for
/// a sample of presheaves and inf objects.
inline AdjunctionReport adjunction_check(const std::vector<Presheaf>& presheaves,
                                         const std::vector<RelObject>& objects) {
  AdjunctionReport r;
  for (const auto& f : presheaves) {
    r.checks.emplace_back("triangle-delta " + f.name(), triangle_presheaf(f));
    r.checks.emplace_back("eta-naturality-identity " + f.name(), eta_naturality(identity_transformation(f)));
  }
  for (const auto& g : objects) {
    r.checks.emplace_back("triangle-theta " + g.carrier().label, triangle_relational(g));
    r.checks.emplace_back("epsilon-iso " + g.carrier().label, epsilon_iso_laws(g));
    r.checks.emplace_back("epsilon-naturality-identity " + g.carrier().label,
                          epsilon_naturality(identity_morphism(g)));
  }
  return r;
}

namespace detail {

// Classes of a PER given as an adjacency test; elements off the domain are
// skipped. Returns class id per element, npos off the domain.
template <class Rel>
std::vector<std::size_t> per_classes(std::size_t n, Rel&& rel, std::size_t& count) {
  std::vector<std::size_t> cls(n, npos);
  count = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (!rel(x, x) || cls[x] != npos) continue;
    for (std::size_t y = 0; y < n; ++y)
      if (rel(x, y)) cls[y] = count;
    ++count;
  }
  return cls;
}

}  // namespace detail

struct TwoPointReport {
  Verdict verdict;
  std::size_t objects = 0;
  std::size_t morphisms = 0;
};

/// Over the two-element algebra: inf objects on sets of size ≤ max_n are
/// exactly the partial equivalence relations, and morphisms between them
/// are exactly the functions between their sets of classes.
inline TwoPointReport example_two_point(const Algebra& h2, std::size_t max_n) {
  if (h2->size() != 2) throw error(errc::invalid_argument, "example needs the two-element algebra");
  const Elem top = h2->top(), bot = h2->bottom();
  TwoPointReport rep;

  auto make_set = [](std::string label, std::size_t n) {
    FiniteSet s{std::move(label), {}};
    for (std::size_t i = 0; i < n; ++i) s.members.push_back(std::to_string(i + 1));
    return s;
  };
  auto matrix_of = [&](const FiniteSet& src, const FiniteSet& dst, std::uint32_t bits) {
    FiberMatrix m(h2, src, dst);
    for (std::size_t b = 0; b < dst.size(); ++b)
      for (std::size_t a = 0; a < src.size(); ++a)
        m.set(b, a, (bits >> (b * src.size() + a)) & 1U ? top : bot);
    return m;
  };
  auto is_per = [](std::size_t n, std::uint32_t bits) {
    auto r = [&](std::size_t x, std::size_t y) { return ((bits >> (x * n + y)) & 1U) != 0; };
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        if (r(x, y) != r(y, x)) return false;
        for (std::size_t z = 0; z < n; ++z)
          if (r(x, y) && r(y, z) && !r(x, z)) return false;
      }
    return true;
  };

  // objects per size, as (bits, object)
  std::vector<std::vector<std::pair<std::uint32_t, RelObject>>> objects(max_n + 1);
  for (std::size_t n = 0; n <= max_n; ++n) {
    const auto set = make_set("A" + std::to_string(n), n);
    for (std::uint32_t bits = 0; bits < (1U << (n * n)); ++bits) {
      const auto t = from_matrix(matrix_of(set, set, bits));
      const bool obj = is_rel_object(t, Mode::inf).holds;
      if (obj != is_per(n, bits)) {
        rep.verdict = Verdict::fail("objects-are-pers", "size " + std::to_string(n) + ", bits " +
                                                            std::to_string(bits));
        return rep;
      }
      if (obj) objects[n].emplace_back(bits, RelObject(t, Mode::inf));
    }
    rep.objects += objects[n].size();
  }

  for (std::size_t n = 0; n <= max_n; ++n)
    for (std::size_t m = 0; m <= max_n; ++m)
      for (const auto& [pb, p] : objects[n])
        for (const auto& [qb, q] : objects[m]) {
          std::size_t np = 0, nq = 0;
          const auto cp = detail::per_classes(n, [&](auto x, auto y) { return (pb >> (x * n + y)) & 1U; }, np);
          const auto cq = detail::per_classes(m, [&](auto x, auto y) { return (qb >> (x * m + y)) & 1U; }, nq);
          std::map<std::vector<std::size_t>, int> seen;
          for (std::uint32_t bits = 0; bits < (1U << (n * m)); ++bits) {
            const auto theta = from_matrix(matrix_of(p.carrier(), q.carrier(), bits));
            if (!is_rel_morphism(theta, p.underlying(), q.underlying(), Mode::inf).holds) continue;
            // read off the class function and rebuild the relation from it
            std::vector<std::size_t> fn(np, npos);
            for (std::size_t b = 0; b < m; ++b)
              for (std::size_t a = 0; a < n; ++a)
                if ((bits >> (b * n + a)) & 1U) fn[cp[a]] = cq[b];
            std::uint32_t rebuilt = 0;
            for (std::size_t b = 0; b < m; ++b)
              for (std::size_t a = 0; a < n; ++a)
                if (cp[a] != npos && cq[b] != npos && fn[cp[a]] == cq[b]) rebuilt |= 1U << (b * n + a);
            if (rebuilt != bits || ++seen[fn] > 1) {
              rep.verdict = Verdict::fail("morphisms-are-functions",
                                          "sizes " + std::to_string(n) + "->" + std::to_string(m) +
                                              ", relation bits " + std::to_string(bits));
              return rep;
            }
            ++rep.morphisms;
          }
          std::size_t expected = 1;
          for (std::size_t i = 0; i < np; ++i) expected *= nq;
          if (seen.size() != expected) {
            rep.verdict = Verdict::fail("morphisms-are-functions",
                                        std::to_string(seen.size()) + " morphisms but " +
                                            std::to_string(expected) + " class functions");
            return rep;
          }
        }
  return rep;
}

}  // namespace relsheaf
