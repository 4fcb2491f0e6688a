#pragma once

// Definitional composites of pre-transformations, evaluated by search, and
// searches for the two idempotency failures that mode changes can cause.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relsheaf/generate.hpp"
#include "relsheaf/pretrans.hpp"

namespace relsheaf {

namespace detail {

inline bool relates(const PreTransformation& s, Elem k, const PreTransformation& t, Elem l, std::size_t c,
                    std::size_t a) {
  for (std::size_t b = 0; b < t.target().size(); ++b)
    if (s.holds(k, c, b) && t.holds(l, b, a)) return true;
  return false;
}

}  // namespace detail

/// h is in fiber(c,a) iff some k, l with h ≤ k∧l have σ_k∘τ_l(c,a) = 1.
inline PreTransformation compose_ord_by_search(const PreTransformation& s, const PreTransformation& t) {
  require_composable(s, t, "compose_ord_by_search");
  const auto& h = *s.algebra();
  PreTransformation out(s.algebra(), t.source(), s.target());
  for (std::size_t c = 0; c < s.target().size(); ++c)
    for (std::size_t a = 0; a < t.source().size(); ++a) {
      Mask fib = 0;
      for (Elem x = 0; x < h.size(); ++x)
        for (Elem k = 0; k < h.size() && !contains(fib, x); ++k)
          for (Elem l = 0; l < h.size(); ++l)
            if (h.leq(x, h.meet(k, l)) && detail::relates(s, k, t, l, c, a)) {
              fib |= bit(x);
              break;
            }
      out.set_fiber(c, a, fib);
    }
  return out;
}

/// h is in fiber(c,a) iff some family ⟨k_i,l_i⟩ of pairs with
/// σ_{k_i}∘τ_{l_i}(c,a) = 1 has h ≤ ⋁(k_i∧l_i). Families are subsets of the
/// admissible pairs, the empty family included.
inline PreTransformation compose_inf_by_search(const PreTransformation& s, const PreTransformation& t) {
  require_composable(s, t, "compose_inf_by_search");
  const auto& h = *s.algebra();
  PreTransformation out(s.algebra(), t.source(), s.target());
  for (std::size_t c = 0; c < s.target().size(); ++c)
    for (std::size_t a = 0; a < t.source().size(); ++a) {
      std::vector<Elem> pairs;
      for (Elem k = 0; k < h.size(); ++k)
        for (Elem l = 0; l < h.size(); ++l)
          if (detail::relates(s, k, t, l, c, a)) pairs.push_back(h.meet(k, l));
      if (pairs.size() > 20) throw error(errc::bounds_error, "family search needs at most 20 admissible pairs");
      Mask fib = 0;
      const std::uint64_t families = std::uint64_t{1} << pairs.size();
      for (std::uint64_t fam = 0; fam < families; ++fam) {
        Elem sup = h.bottom();
        for (std::size_t i = 0; i < pairs.size(); ++i)
          if ((fam >> i) & 1U) sup = h.join(sup, pairs[i]);
        fib |= h.down(sup);
        if (fib == h.all()) break;
      }
      out.set_fiber(c, a, fib);
    }
  return out;
}

/// Every pre-transformation src → dst whose fibers all come from `choices`,
/// in lexicographic order.
inline void for_each_pretrans(const Algebra& h, const FiniteSet& src, const FiniteSet& dst,
                              const std::vector<Mask>& choices,
                              const std::function<void(const PreTransformation&)>& visit) {
  const std::size_t cells = src.size() * dst.size();
  std::vector<std::size_t> idx(cells, 0);
  PreTransformation t(h, src, dst);
  auto apply = [&](std::size_t j) { t.set_fiber(j / src.size(), j % src.size(), choices[idx[j]]); };
  for (std::size_t i = 0; i < cells; ++i) apply(i);
  while (true) {
    visit(t);
    std::size_t i = 0;
    while (i < cells && ++idx[i] == choices.size()) idx[i++] = 0;
    if (i == cells) return;
    for (std::size_t j = 0; j <= i; ++j) apply(j);
  }
}

inline std::vector<Mask> principal_fibers(const HeytingAlgebra& h) {
  std::vector<Mask> out;
  for (Elem e = 0; e < h.size(); ++e) out.push_back(h.down(e));
  return out;
}

struct CaveatSearch {
  std::size_t examined = 0;       // candidates satisfying the hypothesis
  std::optional<std::string> found;  // first instance where the caveat bites
  std::optional<std::string> holding;  // an instance where it does not
};

namespace detail {

inline std::string describe(const PreTransformation& t) {
  return t.algebra()->label() + " on " + std::to_string(t.source().size()) + " points: " + to_string(t);
}

}  // namespace detail

/// Looks for an ord idempotent τ whose completion ⋁τ is not idempotent
/// under compose_inf. Exhausts every ord endo over H2, C3 and B4 on up to
/// two points, then samples closure-built idempotents on random lattices.
inline CaveatSearch search_completion_not_idempotent(const std::vector<Algebra>& small, std::uint64_t seed,
                                                     std::size_t samples, std::size_t max_h,
                                                     std::size_t max_points) {
  CaveatSearch r;
  auto test = [&](const PreTransformation& t) {
    if (r.found || !(compose_ord(t, t) == t)) return;
    ++r.examined;
    const auto c = inf_completion(t);
    if (compose_inf(c, c) == c) {
      if (!r.holding) r.holding = detail::describe(t);
    } else {
      r.found = detail::describe(t);
    }
  };
  Generator gen(seed);
  for (const auto& h : small)
    for (std::size_t n = 1; n <= 2 && !r.found; ++n) {
      const auto set = gen.finite_set("x", n);
      for_each_pretrans(h, set, set, enumerate_downsets(*h), test);
    }
  for (std::size_t i = 0; i < samples && !r.found; ++i) {
    const auto h = gen.lattice(max_h);
    const auto set = gen.finite_set("x", gen.uniform(1, max_points));
    test(gen.ord_idempotent(h, set, gen.coin()));
  }
  return r;
}

/// Looks for an inf object F with compose_ord(F, F) ≠ F. Exhausts every inf
/// endo over H2, C3 and B4 on up to three points, then samples random inf
/// objects.
inline CaveatSearch search_ord_not_idempotent(const std::vector<Algebra>& small, std::uint64_t seed,
                                              std::size_t samples, std::size_t max_h, std::size_t max_points) {
  CaveatSearch r;
  auto test = [&](const PreTransformation& t) {
    if (r.found || !is_rel_object(t, Mode::inf)) return;
    ++r.examined;
    const auto sq = compose_ord(t, t);
    if (!leq(sq, t)) throw error(errc::law_violation, "compose_ord(F,F) exceeds F for " + detail::describe(t));
    if (sq == t) {
      if (!r.holding) r.holding = detail::describe(t);
    } else {
      r.found = detail::describe(t);
    }
  };
  Generator gen(seed);
  for (const auto& h : small)
    for (std::size_t n = 1; n <= 3 && !r.found; ++n) {
      const auto set = gen.finite_set("x", n);
      for_each_pretrans(h, set, set, principal_fibers(*h), test);
    }
  for (std::size_t i = 0; i < samples && !r.found; ++i) {
    const auto h = gen.lattice(max_h);
    test(gen.inf_object(h, gen.finite_set("x", gen.uniform(1, max_points))).underlying());
  }
  return r;
}

}  // namespace relsheaf
