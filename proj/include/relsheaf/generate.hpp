#pragma once

// Seeded random instances: distributive lattices as sublattices of Boolean
// algebras, presheaves built from germs, natural transformations induced by
// maps of germs, and pre-transformations in either mode.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "relsheaf/presheaf.hpp"
#include "relsheaf/pretrans.hpp"

namespace relsheaf {

inline constexpr std::size_t max_generated_lattice = 8;
inline constexpr std::size_t max_generated_carrier = 4;
inline constexpr std::size_t max_generated_count = 10000;

struct GeneratorParams {
  std::uint64_t seed = 1;
  std::size_t count = 10;
  std::size_t max_h = 5;
  std::size_t max_carrier = 3;
};

inline void check_bounds(const GeneratorParams& p) {
  if (p.max_h < 1 || p.max_h > max_generated_lattice)
    throw error(errc::bounds_error, "max lattice size must lie in 1.." + std::to_string(max_generated_lattice));
  if (p.max_carrier > max_generated_carrier)
    throw error(errc::bounds_error, "max carrier size must lie in 0.." + std::to_string(max_generated_carrier));
  if (p.count > max_generated_count)
    throw error(errc::bounds_error, "count must not exceed " + std::to_string(max_generated_count));
}

/// A presheaf given by germs: germ g lives on the down-set extent[g], and
/// germs g, g' are identified at every level of agree[g][g'] (a down-set
/// inside both extents). F(h) is the set of germs living at h modulo the
/// equivalence generated at h; restriction sends a class to its class.
struct Germs {
  Algebra algebra;
  std::string name;
  std::vector<Mask> extent;
  std::vector<std::vector<Mask>> agree;

  std::size_t size() const { return extent.size(); }

  /// cls[h][g] is the index of g's class in F(h), npos if g is absent there.
  std::vector<std::vector<std::size_t>> classes() const {
    const auto& h = *algebra;
    std::vector<std::vector<std::size_t>> cls(h.size(), std::vector<std::size_t>(size(), npos));
    for (Elem e = 0; e < h.size(); ++e) {
      std::vector<std::size_t> parent(size());
      for (std::size_t g = 0; g < size(); ++g) parent[g] = g;
      auto root = [&](std::size_t g) {
        while (parent[g] != g) g = parent[g] = parent[parent[g]];
        return g;
      };
      for (std::size_t g = 0; g < size(); ++g)
        for (std::size_t k = g + 1; k < size(); ++k)
          if (contains(agree[g][k], e)) parent[root(k)] = root(g);
      std::size_t next = 0;
      std::vector<std::size_t> id(size(), npos);
      for (std::size_t g = 0; g < size(); ++g) {
        if (!contains(extent[g], e)) continue;
        const auto r = root(g);
        if (id[r] == npos) id[r] = next++;
        cls[e][g] = id[r];
      }
    }
    return cls;
  }

  Presheaf build() const {
    const auto& h = *algebra;
    const auto cls = classes();
    std::vector<std::vector<std::string>> carriers(h.size());
    for (Elem e = 0; e < h.size(); ++e)
      for (std::size_t g = 0; g < size(); ++g)
        if (cls[e][g] != npos && cls[e][g] == carriers[e].size()) carriers[e].push_back("g" + std::to_string(g));
    Presheaf f(algebra, name, std::move(carriers));
    for (Elem e = 0; e < h.size(); ++e)
      for (Elem k = 0; k < h.size(); ++k) {
        if (e == k || !h.leq(k, e)) continue;
        std::vector<std::size_t> map(f.carrier_size(e));
        for (std::size_t g = 0; g < size(); ++g)
          if (cls[e][g] != npos) map[cls[e][g]] = cls[k][g];
        f.set_restriction(e, k, std::move(map));
      }
    return f;
  }
};

struct GeneratedTransformation {
  Germs codomain;
  std::vector<std::size_t> germ_map;
  Transformation transformation;
};

class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// A distributive lattice with at most max_h elements.
  Algebra lattice(std::size_t max_h) {
    if (max_h < 1 || max_h > max_generated_lattice)
      throw error(errc::bounds_error, "lattice size bound out of range");
    const std::string label = "L" + std::to_string(++lattices_);
    const std::size_t target = uniform((max_h + 1) / 2, max_h);
    std::set<Mask> s;
    if (target == 1) {
      s.insert(0);
    } else {
      std::size_t least = 1;
      while ((std::size_t{1} << least) < target) ++least;
      const std::size_t atoms = uniform(least, std::max<std::size_t>(least, 4));
      const Mask full = bit(atoms) - 1;
      s = {0, full};
      for (int attempt = 0; attempt < 256 && s.size() < target; ++attempt) {
        auto next = s;
        next.insert(uniform(0, full));
        for (bool grew = true; grew;) {
          grew = false;
          std::vector<Mask> v(next.begin(), next.end());
          for (Mask x : v)
            for (Mask y : v) grew |= next.insert(x | y).second | next.insert(x & y).second;
        }
        if (next.size() <= target) s = std::move(next);
      }
    }
    std::vector<Mask> members(s.begin(), s.end());
    std::stable_sort(members.begin(), members.end(),
                     [](Mask a, Mask b) { return popcount(a) < popcount(b); });
    std::vector<std::string> names;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i == 0) names.push_back("⊥");
      else if (i + 1 == members.size()) names.push_back("⊤");
      else names.push_back(std::string(1, static_cast<char>('a' + i - 1)));
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = 0; j < members.size(); ++j)
        if (i != j && subset_of(members[i], members[j])) pairs.emplace_back(names[i], names[j]);
    return build_algebra(label, std::move(names), pairs);
  }

  Mask downset(const Algebra& h) {
    const auto& list = downsets(h);
    return list[uniform(0, list.size() - 1)];
  }

  Germs germs(const Algebra& h, std::size_t max_carrier, std::size_t min_size = 0) {
    Germs g{h, "P" + std::to_string(++presheaves_), {}, {}};
    const std::size_t lo = std::min(std::max<std::size_t>(min_size, coin(0.1) ? 0 : 1), max_carrier);
    const std::size_t n = uniform(lo, max_carrier);
    for (std::size_t i = 0; i < n; ++i) {
      Mask e = coin(0.3) ? h->all() : downset(h);
      if (e == 0 && coin(0.8)) e = h->down(uniform(0, h->size() - 1));
      g.extent.push_back(e);
    }
    g.agree.assign(n, std::vector<Mask>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      g.agree[i][i] = g.extent[i];
      for (std::size_t j = i + 1; j < n; ++j) {
        const Mask both = g.extent[i] & g.extent[j];
        g.agree[i][j] = g.agree[j][i] = coin(0.3) ? both : (downset(h) & both);
      }
    }
    return g;
  }

  Presheaf presheaf(const Algebra& h, std::size_t max_carrier) { return germs(h, max_carrier).build(); }

  /// τ : F → G induced by a random map of germs; G's extents and
  /// agreements are enlarged so that the map is well defined and natural.
  GeneratedTransformation transformation(const Germs& src, std::size_t max_carrier) {
    const auto& h = src.algebra;
    Germs dst = germs(h, max_carrier, src.size() == 0 ? 0 : 1);
    if (dst.size() == 0 && src.size() > 0) dst = germs(h, std::max<std::size_t>(max_carrier, 1), 1);
    std::vector<std::size_t> f(src.size());
    for (auto& x : f) x = uniform(0, dst.size() - 1);
    for (std::size_t g = 0; g < src.size(); ++g) dst.extent[f[g]] |= src.extent[g];
    for (std::size_t i = 0; i < dst.size(); ++i) dst.agree[i][i] = dst.extent[i];
    for (std::size_t g = 0; g < src.size(); ++g)
      for (std::size_t k = 0; k < src.size(); ++k)
        if (f[g] != f[k]) dst.agree[f[g]][f[k]] |= src.agree[g][k];
    const auto cf = src.classes(), cg = dst.classes();
    std::vector<std::vector<std::size_t>> comp(h->size());
    for (Elem e = 0; e < h->size(); ++e) {
      std::size_t count = 0;
      for (std::size_t g = 0; g < src.size(); ++g) count = std::max(count, cf[e][g] == npos ? 0 : cf[e][g] + 1);
      comp[e].assign(count, 0);
      for (std::size_t g = 0; g < src.size(); ++g)
        if (cf[e][g] != npos) comp[e][cf[e][g]] = cg[e][f[g]];
    }
    Transformation t(src.build(), dst.build(), std::move(comp));
    return {std::move(dst), std::move(f), std::move(t)};
  }

  FiniteSet finite_set(const std::string& label, std::size_t n) {
    FiniteSet s{label, {}};
    for (std::size_t i = 0; i < n; ++i) s.members.push_back(label + std::to_string(i));
    return s;
  }

  PreTransformation pretrans(const Algebra& h, const FiniteSet& src, const FiniteSet& dst, Mode mode) {
    PreTransformation t(h, src, dst);
    for (std::size_t b = 0; b < dst.size(); ++b)
      for (std::size_t a = 0; a < src.size(); ++a)
        t.set_fiber(b, a, mode == Mode::ord ? downset(h) : h->down(uniform(0, h->size() - 1)));
    return t;
  }

  /// A symmetric idempotent inf object: a random symmetric matrix closed
  /// under E ↦ E ∨ E·E.
  RelObject inf_object(const Algebra& h, const FiniteSet& carrier) {
    FiberMatrix m(h, carrier, carrier);
    for (std::size_t b = 0; b < carrier.size(); ++b)
      for (std::size_t a = b; a < carrier.size(); ++a) {
        const Elem e = uniform(0, h->size() - 1);
        m.set(b, a, e);
        m.set(a, b, e);
      }
    for (bool changed = true; changed;) {
      const auto sq = multiply(m, m);
      changed = false;
      for (std::size_t b = 0; b < carrier.size(); ++b)
        for (std::size_t a = 0; a < carrier.size(); ++a) {
          const Elem j = h->join(m.at(b, a), sq.at(b, a));
          if (j != m.at(b, a)) {
            m.set(b, a, j);
            changed = true;
          }
        }
    }
    return RelObject(from_matrix(m), Mode::inf);
  }

  /// An ord idempotent: each level is a preorder, or a partial equivalence
  /// relation when `symmetric` is set, containing the levels above it.
  PreTransformation ord_idempotent(const Algebra& h, const FiniteSet& carrier, bool symmetric) {
    const auto seed = pretrans(h, carrier, carrier, Mode::ord);
    const std::size_t n = carrier.size();
    std::vector<Elem> order(h->size());
    for (Elem e = 0; e < order.size(); ++e) order[e] = e;
    std::stable_sort(order.begin(), order.end(),
                     [&](Elem x, Elem y) { return popcount(h->down(x)) > popcount(h->down(y)); });
    std::vector<std::vector<char>> rel(h->size());
    for (Elem e : order) {
      auto& r = rel[e];
      r.assign(n * n, 0);
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t a = 0; a < n; ++a)
          r[b * n + a] = seed.holds(e, b, a) || (symmetric ? seed.holds(e, a, b) : a == b);
      for_each_elem(h->up(e) & ~bit(e), [&](Elem k) {
        for (std::size_t i = 0; i < n * n; ++i) r[i] |= rel[k][i];
      });
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t a = 0; a < n; ++a)
            if (r[b * n + k] && r[k * n + a]) r[b * n + a] = 1;
    }
    PreTransformation t(h, carrier, carrier);
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t a = 0; a < n; ++a) {
        Mask fib = 0;
        for (Elem e = 0; e < h->size(); ++e)
          if (rel[e][b * n + a]) fib |= bit(e);
        t.set_fiber(b, a, fib);
      }
    return t;
  }

 private:
  const std::vector<Mask>& downsets(const Algebra& h) {
    if (cached_ != h) {
      cached_ = h;
      cached_sets_ = enumerate_downsets(*h);
    }
    return cached_sets_;
  }

  std::mt19937_64 rng_;
  std::size_t lattices_ = 0;
  std::size_t presheaves_ = 0;
  Algebra cached_;
  std::vector<Mask> cached_sets_;
};

}  // namespace relsheaf
