#include <catch_amalgamated.hpp>

#include "relsheaf/adjunction.hpp"
#include "relsheaf/generate.hpp"
#include "relsheaf/oracle.hpp"
#include "support.hpp"

using namespace relsheaf;
using support::code_of;

namespace {

PreTransformation constant(const Algebra& h, const FiniteSet& a, const FiniteSet& b, Mask fib) {
  PreTransformation t(h, a, b);
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < a.size(); ++i) t.set_fiber(j, i, fib);
  return t;
}

PreTransformation diagonal_matrix(const Algebra& h, const FiniteSet& a) {
  FiberMatrix m(h, a, a);
  for (std::size_t i = 0; i < a.size(); ++i) m.set(i, i, h->top());
  return from_matrix(m);
}

FiberMatrix join(const FiberMatrix& x, const FiberMatrix& y) {
  FiberMatrix out = x;
  for (std::size_t b = 0; b < x.target().size(); ++b)
    for (std::size_t a = 0; a < x.source().size(); ++a) out.set(b, a, x.algebra()->join(x.at(b, a), y.at(b, a)));
  return out;
}

Algebra small_lattice(Generator& gen) {
  switch (gen.uniform(0, 3)) {
    case 0: return support::H2();
    case 1: return support::C3();
    case 2: return support::B4();
    default: return gen.lattice(4);
  }
}

}  // namespace

TEST_CASE("classification") {
  const auto h = support::B4();
  const auto a = support::points("a", 2);
  auto c = classify(constant(h, a, a, 0));
  CHECK(c.order_preserving);
  CHECK_FALSE(c.infima_preserving);
  c = classify(constant(h, a, a, h->all()));
  CHECK(c.order_preserving);
  CHECK(c.infima_preserving);
  const auto one = support::points("x", 1);
  c = classify(constant(h, one, one, h->all() & ~bit(h->top())));
  CHECK(c.order_preserving);
  CHECK_FALSE(c.infima_preserving);
}

TEST_CASE("ord composition") {
  Generator gen(21);
  for (int i = 0; i < 200; ++i) {
    const auto h = small_lattice(gen);
    const auto a = gen.finite_set("a", gen.uniform(0, 3)), b = gen.finite_set("b", gen.uniform(0, 3)),
               c = gen.finite_set("c", gen.uniform(0, 3)), d = gen.finite_set("d", gen.uniform(0, 3));
    const auto t = gen.pretrans(h, a, b, Mode::ord), s = gen.pretrans(h, b, c, Mode::ord),
               r = gen.pretrans(h, c, d, Mode::ord);
    const auto st = compose_ord(s, t);
    CHECK(st == compose_ord_by_search(s, t));
    CHECK(st.is_order_preserving());
    for (Elem e = 0; e < h->size(); ++e) CHECK(st.level(e) == compose(s.level(e), t.level(e)));
    CHECK(compose_ord(identity(h, b), t) == t);
    CHECK(compose_ord(t, identity(h, a)) == t);
    CHECK(compose_ord(r, st) == compose_ord(compose_ord(r, s), t));
    CHECK(involution(st) == compose_ord(involution(t), involution(s)));
  }
}

TEST_CASE("inf composition") {
  Generator gen(22);
  for (int i = 0; i < 200; ++i) {
    const auto h = small_lattice(gen);
    const auto a = gen.finite_set("a", gen.uniform(0, 3)), b = gen.finite_set("b", gen.uniform(0, 3)),
               c = gen.finite_set("c", gen.uniform(0, 3)), d = gen.finite_set("d", gen.uniform(0, 3));
    const auto t = gen.pretrans(h, a, b, Mode::inf), s = gen.pretrans(h, b, c, Mode::inf),
               r = gen.pretrans(h, c, d, Mode::inf);
    const auto st = compose_inf(s, t);
    CHECK(st == compose_inf_by_search(s, t));
    CHECK(st.is_infima_preserving());
    for (std::size_t y = 0; y < c.size(); ++y)
      for (std::size_t x = 0; x < a.size(); ++x) {
        Elem acc = h->bottom();
        for (std::size_t m = 0; m < b.size(); ++m)
          acc = h->join(acc, h->meet(h->sup(s.fiber(y, m)), h->sup(t.fiber(m, x))));
        CHECK(st.fiber(y, x) == h->down(acc));
        CHECK(st.holds(h->bottom(), y, x));
      }
    CHECK(compose_inf(r, st) == compose_inf(compose_inf(r, s), t));
    CHECK(involution(st) == compose_inf(involution(t), involution(s)));
    const auto bottoms = constant(h, b, c, bit(h->bottom()));
    CHECK(compose_inf(bottoms, t) == constant(h, a, c, bit(h->bottom())));
  }
}

TEST_CASE("inf composition distributes over joins") {
  Generator gen(23);
  for (int i = 0; i < 200; ++i) {
    const auto h = gen.lattice(6);
    const auto a = gen.finite_set("a", gen.uniform(0, 3)), b = gen.finite_set("b", gen.uniform(0, 3)),
               c = gen.finite_set("c", gen.uniform(0, 3));
    const auto s = to_matrix(gen.pretrans(h, b, c, Mode::inf));
    std::vector<FiberMatrix> family;
    for (std::size_t k = 0, n = gen.uniform(1, 4); k < n; ++k) family.push_back(to_matrix(gen.pretrans(h, a, b, Mode::inf)));
    FiberMatrix sup = family.front(), lhs_parts = multiply(s, family.front());
    for (const auto& m : family) {
      sup = join(sup, m);
      lhs_parts = join(lhs_parts, multiply(s, m));
    }
    CHECK(multiply(s, sup) == lhs_parts);
  }
}

TEST_CASE("mode mismatches are rejected") {
  const auto h = support::B4();
  const auto a = support::points("a", 1);
  const auto hole = constant(h, a, a, bit(h->at("a")));
  const auto empty = constant(h, a, a, 0);
  CHECK(code_of([&] { compose_ord(hole, empty); }) == errc::mode_error);
  CHECK(code_of([&] { compose_inf(empty, empty); }) == errc::mode_error);
  CHECK(code_of([&] { to_matrix(empty); }) == errc::mode_error);
  CHECK(code_of([&] { inf_completion(hole); }) == errc::mode_error);
  const auto b = support::points("b", 2);
  CHECK(code_of([&] { compose_ord(empty, constant(h, a, b, 0)); }) == errc::carrier_mismatch);
}

TEST_CASE("involution") {
  const auto h = support::C3();
  const auto a = support::points("a", 2), b = support::points("b", 1);
  CHECK(involution(identity(h, a)) == identity(h, a));
  PreTransformation t(h, a, b);
  t.set_fiber(0, 1, h->down(h->at("m")));
  const auto s = involution(t);
  CHECK(s.source() == b);
  CHECK(s.fiber(1, 0) == h->down(h->at("m")));
  CHECK(s.fiber(0, 0) == 0);
  CHECK(involution(s) == t);
}

TEST_CASE("matrix form") {
  const auto h = support::B4();
  const auto a = support::points("a", 2);
  FiberMatrix bottoms(h, a, a), tops(h, a, a);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < 2; ++i) tops.set(j, i, h->top());
  CHECK(from_matrix(bottoms) == constant(h, a, a, bit(h->bottom())));
  CHECK(from_matrix(tops) == constant(h, a, a, h->all()));
  Generator gen(24);
  for (int i = 0; i < 100; ++i) {
    const auto g = gen.lattice(8);
    const auto t = gen.pretrans(g, gen.finite_set("a", gen.uniform(0, 3)), gen.finite_set("b", gen.uniform(0, 3)), Mode::inf);
    CHECK(from_matrix(to_matrix(t)) == t);
  }
}

TEST_CASE("inf completion") {
  const auto h = support::B4();
  const auto a = support::points("a", 1);
  const auto p = constant(h, a, a, h->down(h->at("a")));
  CHECK(inf_completion(p) == p);
  const auto q = constant(h, a, a, h->all() & ~bit(h->top()));
  CHECK(inf_completion(q) == constant(h, a, a, h->all()));
  CHECK(inf_completion(constant(h, a, a, 0)) == constant(h, a, a, bit(h->bottom())));
}

TEST_CASE("object predicate") {
  for (const auto& h : {support::H2(), support::B4()}) {
    const auto a = support::points("a", 3);
    CHECK(is_rel_object(identity(h, a), Mode::ord));
    CHECK(is_rel_object(diagonal_matrix(h, a), Mode::ord));
    CHECK(is_rel_object(diagonal_matrix(h, a), Mode::inf));
  }
  for (auto n : {"SEP", "NSH", "MIS"}) CHECK(is_rel_object(delta_inf_obj(fixture_presheaf(n)).underlying(), Mode::inf));
  Generator gen(25);
  int asymmetric = 0;
  for (int i = 0; i < 200; ++i) {
    const auto h = gen.lattice(6);
    const auto a = gen.finite_set("a", gen.uniform(2, 3));
    const auto t = gen.pretrans(h, a, a, Mode::inf);
    if (involution(t) == t) continue;
    ++asymmetric;
    const auto v = is_rel_object(t, Mode::inf);
    CHECK_FALSE(v.holds);
    CHECK(v.law == "symmetry");
  }
  CHECK(asymmetric > 100);
}

TEST_CASE("morphism predicate") {
  const auto sep = fixture_presheaf("SEP"), nsh = fixture_presheaf("NSH");
  const auto d = delta_inf_obj(nsh);
  CHECK(is_rel_morphism(d.underlying(), d.underlying(), d.underlying(), Mode::inf));
  std::vector<std::vector<std::size_t>> comp;
  for (Elem e = 0; e < nsh.algebra()->size(); ++e) comp.emplace_back(nsh.carrier_size(e), 0);
  const auto collapse = delta_inf_mor(Transformation(nsh, sep, comp));
  const auto& theta = collapse.underlying();
  CHECK(is_rel_morphism(theta, collapse.domain().underlying(), collapse.codomain().underlying(), Mode::inf));
  auto bigger = theta;
  bigger.set_fiber(0, 0, nsh.algebra()->all());
  const auto v = is_rel_morphism(bigger, collapse.domain().underlying(), collapse.codomain().underlying(), Mode::inf);
  CHECK_FALSE(v.holds);
  CHECK_THROWS_AS(RelMorphism(collapse.domain(), collapse.codomain(), bigger), error);
}

TEST_CASE("morphism composition") {
  Generator gen(26);
  for (int i = 0; i < 50; ++i) {
    auto g = gen.germs(gen.lattice(5), 3);
    auto t = gen.transformation(g, 3);
    auto s = gen.transformation(t.codomain, 3);
    auto r = gen.transformation(s.codomain, 3);
    const auto dt = delta_inf_mor(t.transformation), ds = delta_inf_mor(s.transformation),
               dr = delta_inf_mor(r.transformation);
    CHECK(compose_morphisms(dt, identity_morphism(dt.domain())) == dt);
    CHECK(compose_morphisms(identity_morphism(dt.codomain()), dt) == dt);
    CHECK(compose_morphisms(dr, compose_morphisms(ds, dt)) == compose_morphisms(compose_morphisms(dr, ds), dt));
    CHECK_THROWS_AS(compose_morphisms(dt, dr), error);
  }
}

TEST_CASE("comparable morphisms are equal") {
  Generator gen(27);
  for (int i = 0; i < 30; ++i) {
    const auto h = small_lattice(gen);
    const auto tau = gen.inf_object(h, gen.finite_set("x", gen.uniform(1, 2)));
    const auto sigma = gen.inf_object(h, gen.finite_set("y", gen.uniform(1, 2)));
    std::vector<PreTransformation> morphisms;
    for_each_pretrans(h, tau.carrier(), sigma.carrier(), principal_fibers(*h), [&](const PreTransformation& t) {
      if (is_rel_morphism(t, tau.underlying(), sigma.underlying(), Mode::inf)) morphisms.push_back(t);
    });
    for (const auto& f : morphisms)
      for (const auto& g : morphisms)
        if (leq(f, g)) CHECK(f == g);
  }
  for (int i = 0; i < 30; ++i) {
    const auto h = small_lattice(gen);
    const auto tau = gen.ord_idempotent(h, gen.finite_set("x", gen.uniform(1, 2)), true);
    const auto sigma = gen.ord_idempotent(h, gen.finite_set("y", gen.uniform(1, 2)), true);
    REQUIRE(is_rel_object(tau, Mode::ord));
    REQUIRE(is_rel_object(sigma, Mode::ord));
    std::vector<PreTransformation> morphisms;
    for_each_pretrans(h, tau.source(), sigma.source(), enumerate_downsets(*h), [&](const PreTransformation& t) {
      if (is_rel_morphism(t, tau, sigma, Mode::ord)) morphisms.push_back(t);
    });
    for (const auto& f : morphisms)
      for (const auto& g : morphisms)
        if (leq(f, g)) CHECK(f == g);
  }
}

TEST_CASE("ord square of an inf object stays below it") {
  Generator gen(28);
  for (int i = 0; i < 300; ++i) {
    const auto f = gen.inf_object(gen.lattice(8), gen.finite_set("x", gen.uniform(0, 4))).underlying();
    CHECK(leq(compose_ord(f, f), f));
  }
  const auto r = search_ord_not_idempotent({support::H2(), support::C3()}, 1, 50, 6, 3);
  CHECK(r.holding.has_value());
  CHECK(r.examined > 0);
}
