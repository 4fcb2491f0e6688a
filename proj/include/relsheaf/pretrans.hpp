#pragma once

#include <string>
#include <vector>

#include "relsheaf/heyting.hpp"
#include "relsheaf/relation.hpp"

namespace relsheaf {

/// Which composition a pre-transformation is used with: order-preserving
/// families compose levelwise, infima-preserving ones via their matrices.
enum class Mode { ord, inf };

inline const char* to_string(Mode m) { return m == Mode::ord ? "ord" : "inf"; }

/// An H-indexed family of relations A → B, stored by fibers:
/// fiber(b, a) = { h | τ_h(b, a) = 1 }.
class PreTransformation {
 public:
  PreTransformation(Algebra algebra, FiniteSet source, FiniteSet target)
      : algebra_(std::move(algebra)), source_(std::move(source)), target_(std::move(target)),
        fibers_(source_.size() * target_.size(), 0) {}

  const Algebra& algebra() const noexcept { return algebra_; }
  const FiniteSet& source() const noexcept { return source_; }
  const FiniteSet& target() const noexcept { return target_; }
  bool is_endo() const { return source_ == target_; }

  Mask fiber(std::size_t b, std::size_t a) const { return fibers_[b * source_.size() + a]; }

  void set_fiber(std::size_t b, std::size_t a, Mask m) {
    if (!subset_of(m, algebra_->all()))
      throw error(errc::invalid_argument, "fiber mentions elements outside the algebra");
    fibers_[b * source_.size() + a] = m;
  }

  bool holds(Elem h, std::size_t b, std::size_t a) const { return contains(fiber(b, a), h); }

  /// The relation τ_h.
  Relation level(Elem h) const {
    Relation r(source_, target_);
    for (std::size_t b = 0; b < target_.size(); ++b)
      for (std::size_t a = 0; a < source_.size(); ++a) r.set(b, a, holds(h, b, a));
    return r;
  }

  bool is_order_preserving() const {
    for (Mask f : fibers_)
      if (!algebra_->is_down_closed(f)) return false;
    return true;
  }

  bool is_infima_preserving() const {
    for (Mask f : fibers_)
      if (f == 0 || algebra_->down(algebra_->sup(f)) != f) return false;
    return true;
  }

  bool fits(Mode m) const { return m == Mode::ord ? is_order_preserving() : is_infima_preserving(); }

  friend bool operator==(const PreTransformation& x, const PreTransformation& y) {
    return x.source_ == y.source_ && x.target_ == y.target_ && x.fibers_ == y.fibers_ &&
           same_algebra(x.algebra_, y.algebra_);
  }

 private:
  Algebra algebra_;
  FiniteSet source_;
  FiniteSet target_;
  std::vector<Mask> fibers_;
};

struct Classification {
  bool order_preserving;
  bool infima_preserving;
};

inline Classification classify(const PreTransformation& t) {
  return {t.is_order_preserving(), t.is_infima_preserving()};
}

/// A total map M : B × A → H.
class FiberMatrix {
 public:
  FiberMatrix(Algebra algebra, FiniteSet source, FiniteSet target)
      : algebra_(std::move(algebra)), source_(std::move(source)), target_(std::move(target)),
        entries_(source_.size() * target_.size(), algebra_->bottom()) {}

  const Algebra& algebra() const noexcept { return algebra_; }
  const FiniteSet& source() const noexcept { return source_; }
  const FiniteSet& target() const noexcept { return target_; }

  Elem at(std::size_t b, std::size_t a) const { return entries_[b * source_.size() + a]; }
  void set(std::size_t b, std::size_t a, Elem e) { entries_[b * source_.size() + a] = e; }

  friend bool operator==(const FiberMatrix& x, const FiberMatrix& y) {
    return x.source_ == y.source_ && x.target_ == y.target_ && x.entries_ == y.entries_ &&
           same_algebra(x.algebra_, y.algebra_);
  }

 private:
  Algebra algebra_;
  FiniteSet source_;
  FiniteSet target_;
  std::vector<Elem> entries_;
};

inline void require_mode(const PreTransformation& t, Mode m, const char* op) {
  if (!t.fits(m))
    throw error(errc::mode_error, std::string(op) + ": input is not " +
                                      (m == Mode::ord ? "order-preserving" : "infima-preserving"));
}

inline void require_composable(const PreTransformation& s, const PreTransformation& t,
                               const char* op) {
  if (!same_algebra(s.algebra(), t.algebra()))
    throw error(errc::carrier_mismatch, std::string(op) + ": different algebras");
  require_same(s.source(), t.target(), op);
}

inline FiberMatrix to_matrix(const PreTransformation& t) {
  require_mode(t, Mode::inf, "to_matrix");
  FiberMatrix m(t.algebra(), t.source(), t.target());
  for (std::size_t b = 0; b < t.target().size(); ++b)
    for (std::size_t a = 0; a < t.source().size(); ++a) m.set(b, a, t.algebra()->sup(t.fiber(b, a)));
  return m;
}

/// τ_M with τ_{M,h}(b, a) = 1 iff h ≤ M(b, a).
inline PreTransformation from_matrix(const FiberMatrix& m) {
  PreTransformation t(m.algebra(), m.source(), m.target());
  for (std::size_t b = 0; b < m.target().size(); ++b)
    for (std::size_t a = 0; a < m.source().size(); ++a) t.set_fiber(b, a, m.algebra()->down(m.at(b, a)));
  return t;
}

/// Matrix product over (H, ∨, ∧): (N·M)(c, a) = ⋁_b N(c, b) ∧ M(b, a).
inline FiberMatrix multiply(const FiberMatrix& n, const FiberMatrix& m) {
  require_same(n.source(), m.target(), "multiply");
  const auto& h = *m.algebra();
  FiberMatrix out(m.algebra(), m.source(), n.target());
  for (std::size_t c = 0; c < n.target().size(); ++c)
    for (std::size_t a = 0; a < m.source().size(); ++a) {
      Elem acc = h.bottom();
      for (std::size_t b = 0; b < m.target().size(); ++b) acc = h.join(acc, h.meet(n.at(c, b), m.at(b, a)));
      out.set(c, a, acc);
    }
  return out;
}

/// Order-preserving composite. With down-closed fibers the definitional
/// "∃k,l: h ≤ k∧l" collapses to levelwise relational composition.
inline PreTransformation compose_ord(const PreTransformation& s, const PreTransformation& t) {
  require_composable(s, t, "compose_ord");
  require_mode(s, Mode::ord, "compose_ord");
  require_mode(t, Mode::ord, "compose_ord");
  PreTransformation out(t.algebra(), t.source(), s.target());
  for (std::size_t c = 0; c < s.target().size(); ++c)
    for (std::size_t a = 0; a < t.source().size(); ++a) {
      Mask acc = 0;
      for (std::size_t b = 0; b < t.target().size(); ++b) acc |= s.fiber(c, b) & t.fiber(b, a);
      out.set_fiber(c, a, acc);
    }
  return out;
}

/// Infima-preserving composite, computed through the matrix form.
inline PreTransformation compose_inf(const PreTransformation& s, const PreTransformation& t) {
  require_composable(s, t, "compose_inf");
  require_mode(s, Mode::inf, "compose_inf");
  require_mode(t, Mode::inf, "compose_inf");
  return from_matrix(multiply(to_matrix(s), to_matrix(t)));
}

inline PreTransformation compose(const PreTransformation& s, const PreTransformation& t, Mode m) {
  return m == Mode::ord ? compose_ord(s, t) : compose_inf(s, t);
}

/// τ* = ⟨τ_h⁻¹⟩.
inline PreTransformation involution(const PreTransformation& t) {
  PreTransformation out(t.algebra(), t.target(), t.source());
  for (std::size_t b = 0; b < t.target().size(); ++b)
    for (std::size_t a = 0; a < t.source().size(); ++a) out.set_fiber(a, b, t.fiber(b, a));
  return out;
}

/// Replaces every fiber by the principal down-set of its supremum.
inline PreTransformation inf_completion(const PreTransformation& t) {
  require_mode(t, Mode::ord, "inf_completion");
  PreTransformation out(t.algebra(), t.source(), t.target());
  const auto& h = *t.algebra();
  for (std::size_t b = 0; b < t.target().size(); ++b)
    for (std::size_t a = 0; a < t.source().size(); ++a) out.set_fiber(b, a, h.down(h.sup(t.fiber(b, a))));
  return out;
}

/// Fiberwise inclusion.
inline bool leq(const PreTransformation& x, const PreTransformation& y) {
  require_same(x.source(), y.source(), "leq");
  require_same(x.target(), y.target(), "leq");
  for (std::size_t b = 0; b < x.target().size(); ++b)
    for (std::size_t a = 0; a < x.source().size(); ++a)
      if (!subset_of(x.fiber(b, a), y.fiber(b, a))) return false;
  return true;
}

/// Fiberwise union of a non-empty family with common carriers.
inline PreTransformation fiber_union(const std::vector<PreTransformation>& family) {
  if (family.empty()) throw error(errc::invalid_argument, "fiber_union of an empty family");
  PreTransformation out = family.front();
  for (const auto& t : family) {
    require_same(t.source(), out.source(), "fiber_union");
    require_same(t.target(), out.target(), "fiber_union");
    for (std::size_t b = 0; b < t.target().size(); ++b)
      for (std::size_t a = 0; a < t.source().size(); ++a)
        out.set_fiber(b, a, out.fiber(b, a) | t.fiber(b, a));
  }
  return out;
}

/// The identity on A: the diagonal at every level.
inline PreTransformation identity(const Algebra& h, const FiniteSet& a) {
  PreTransformation out(h, a, a);
  for (std::size_t i = 0; i < a.size(); ++i) out.set_fiber(i, i, h->all());
  return out;
}

inline std::string to_string(const PreTransformation& t) {
  std::string out;
  for (std::size_t b = 0; b < t.target().size(); ++b)
    for (std::size_t a = 0; a < t.source().size(); ++a) {
      if (!out.empty()) out += " ";
      out += t.target().members[b] + "<-" + t.source().members[a] + ":" +
             t.algebra()->format(t.fiber(b, a));
    }
  return "[" + out + "]";
}

namespace detail {

// p_l ∘ q_k ≤ r_{l∧k} for every pair of levels, where q : A → B, p : B → C
// and r : A → C.
inline std::optional<std::string> lax_violation(const PreTransformation& p,
                                                const PreTransformation& q,
                                                const PreTransformation& r) {
  const auto& h = *r.algebra();
  for (std::size_t c = 0; c < p.target().size(); ++c)
    for (std::size_t a = 0; a < q.source().size(); ++a)
      for (std::size_t b = 0; b < q.target().size(); ++b) {
        std::optional<std::string> bad;
        for_each_elem(p.fiber(c, b), [&](Elem l) {
          for_each_elem(q.fiber(b, a), [&](Elem k) {
            if (!bad && !r.holds(h.meet(l, k), c, a))
              bad = "l=" + h.name(l) + ", k=" + h.name(k) + " at (" + p.target().members[c] + "," +
                    q.source().members[a] + ") via " + q.target().members[b];
          });
        });
        if (bad) return bad;
      }
  return std::nullopt;
}

inline std::string first_difference(const PreTransformation& x, const PreTransformation& y) {
  for (std::size_t b = 0; b < x.target().size(); ++b)
    for (std::size_t a = 0; a < x.source().size(); ++a)
      if (x.fiber(b, a) != y.fiber(b, a))
        return "(" + x.target().members[b] + "," + x.source().members[a] +
               "): " + x.algebra()->format(x.fiber(b, a)) + " vs " + y.algebra()->format(y.fiber(b, a));
  return "no difference";
}

inline std::string first_excess(const PreTransformation& x, const PreTransformation& y) {
  for (std::size_t b = 0; b < x.target().size(); ++b)
    for (std::size_t a = 0; a < x.source().size(); ++a)
      if (!subset_of(x.fiber(b, a), y.fiber(b, a)))
        return "(" + x.target().members[b] + "," + x.source().members[a] +
               "): " + x.algebra()->format(x.fiber(b, a)) + " not within " +
               y.algebra()->format(y.fiber(b, a));
  return "no excess";
}

}  // namespace detail

/// Checks the object laws of the symmetric Karoubi envelope: mode fit,
/// τ = τ*, τ∘τ = τ under the mode's composition, and τ_l∘τ_k ≤ τ_{l∧k}.
inline Verdict is_rel_object(const PreTransformation& t, Mode mode) {
  if (!t.is_endo()) return Verdict::fail("endo", t.source().label + " -> " + t.target().label);
  if (!t.fits(mode))
    return Verdict::fail("mode", std::string("fibers are not ") +
                                     (mode == Mode::ord ? "down-closed" : "principal"));
  if (!(involution(t) == t)) return Verdict::fail("symmetry", detail::first_difference(t, involution(t)));
  const auto tt = compose(t, t, mode);
  if (!(tt == t)) return Verdict::fail("idempotency", detail::first_difference(tt, t));
  if (auto bad = detail::lax_violation(t, t, t)) return Verdict::fail("lax", *bad);
  return Verdict::pass();
}

/// Checks that θ : τ → σ is a morphism of the symmetric Karoubi envelope
/// that is also a symmetric map.
inline Verdict is_rel_morphism(const PreTransformation& theta, const PreTransformation& tau,
                               const PreTransformation& sigma, Mode mode) {
  require_same(theta.source(), tau.target(), "is_rel_morphism");
  require_same(theta.target(), sigma.source(), "is_rel_morphism");
  if (!same_algebra(theta.algebra(), tau.algebra()) || !same_algebra(theta.algebra(), sigma.algebra()))
    throw error(errc::carrier_mismatch, "is_rel_morphism: different algebras");
  if (!theta.fits(mode) || !tau.fits(mode) || !sigma.fits(mode))
    return Verdict::fail("mode", std::string("a family is not ") +
                                     (mode == Mode::ord ? "order-preserving" : "infima-preserving"));
  if (auto bad = detail::lax_violation(theta, tau, theta)) return Verdict::fail("lax-domain", *bad);
  if (auto bad = detail::lax_violation(sigma, theta, theta)) return Verdict::fail("lax-codomain", *bad);
  const auto td = compose(theta, tau, mode);
  if (!(td == theta)) return Verdict::fail("absorb-domain", detail::first_difference(td, theta));
  const auto sd = compose(sigma, theta, mode);
  if (!(sd == theta)) return Verdict::fail("absorb-codomain", detail::first_difference(sd, theta));
  const auto star = involution(theta);
  const auto total = compose(star, theta, mode);
  if (!leq(tau, total)) return Verdict::fail("map-total", detail::first_excess(tau, total));
  const auto single = compose(theta, star, mode);
  if (!leq(single, sigma)) return Verdict::fail("map-single-valued", detail::first_excess(single, sigma));
  return Verdict::pass();
}

/// A symmetric idempotent pre-transformation: a relational presheaf (ord)
/// or relational sheaf (inf).
class RelObject {
 public:
  RelObject(PreTransformation underlying, Mode mode)
      : underlying_(std::move(underlying)), mode_(mode) {
    if (auto v = is_rel_object(underlying_, mode_); !v)
      throw error(errc::law_violation, "not a relational object (" + v.law + "): " + v.witness);
  }

  const PreTransformation& underlying() const noexcept { return underlying_; }
  Mode mode() const noexcept { return mode_; }
  const FiniteSet& carrier() const noexcept { return underlying_.source(); }
  const Algebra& algebra() const noexcept { return underlying_.algebra(); }

  /// Ê(b, a); only meaningful in inf mode.
  FiberMatrix matrix() const { return to_matrix(underlying_); }

  friend bool operator==(const RelObject&, const RelObject&) = default;

 private:
  PreTransformation underlying_;
  Mode mode_;
};

class RelMorphism {
 public:
  RelMorphism(RelObject domain, RelObject codomain, PreTransformation underlying)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), underlying_(std::move(underlying)) {
    if (domain_.mode() != codomain_.mode())
      throw error(errc::mode_error, "morphism between objects of different modes");
    if (auto v = is_rel_morphism(underlying_, domain_.underlying(), codomain_.underlying(), mode());
        !v)
      throw error(errc::law_violation, "not a relational morphism (" + v.law + "): " + v.witness);
  }

  const RelObject& domain() const noexcept { return domain_; }
  const RelObject& codomain() const noexcept { return codomain_; }
  const PreTransformation& underlying() const noexcept { return underlying_; }
  Mode mode() const noexcept { return domain_.mode(); }

  friend bool operator==(const RelMorphism&, const RelMorphism&) = default;

 private:
  RelObject domain_;
  RelObject codomain_;
  PreTransformation underlying_;
};

/// The identity on an object is the object itself.
inline RelMorphism identity_morphism(const RelObject& o) { return RelMorphism(o, o, o.underlying()); }

/// φ ∘ θ.
inline RelMorphism compose_morphisms(const RelMorphism& phi, const RelMorphism& theta) {
  if (!(theta.codomain() == phi.domain()))
    throw error(errc::carrier_mismatch, "compose_morphisms: codomain does not match domain");
  return RelMorphism(theta.domain(), phi.codomain(),
                     compose(phi.underlying(), theta.underlying(), theta.mode()));
}

}  // namespace relsheaf
