#include <catch_amalgamated.hpp>

#include "relsheaf/generate.hpp"
#include "support.hpp"

using namespace relsheaf;
using support::code_of;

namespace {

// Lattice operations recomputed from the order alone.
struct OrderOracle {
  const HeytingAlgebra& h;

  std::optional<Elem> greatest(const std::vector<Elem>& xs) const {
    for (Elem g : xs) {
      bool top = true;
      for (Elem x : xs) top &= h.leq(x, g);
      if (top) return g;
    }
    return std::nullopt;
  }

  Elem meet(Elem x, Elem y) const {
    std::vector<Elem> lower;
    for (Elem e = 0; e < h.size(); ++e)
      if (h.leq(e, x) && h.leq(e, y)) lower.push_back(e);
    return *greatest(lower);
  }

  Elem implies(Elem x, Elem z) const {
    std::vector<Elem> ys;
    for (Elem y = 0; y < h.size(); ++y)
      if (h.leq(meet(y, x), z)) ys.push_back(y);
    return *greatest(ys);
  }

  std::size_t count_downsets() const {
    std::size_t n = 0;
    for (Mask s = 0; s < (Mask{1} << h.size()); ++s) {
      bool closed = true;
      for (Elem a = 0; a < h.size(); ++a)
        for (Elem b = 0; b < h.size(); ++b)
          if (contains(s, a) && h.leq(b, a) && !contains(s, b)) closed = false;
      n += closed;
    }
    return n;
  }
};

Elem at(const Algebra& h, const char* n) { return h->at(n); }

}  // namespace

TEST_CASE("two-chain builds") {
  auto h = build_algebra("H2", {"⊥", "⊤"}, {{"⊥", "⊤"}});
  CHECK(h->size() == 2);
  CHECK(h->name(h->bottom()) == "⊥");
  CHECK(h->name(h->top()) == "⊤");
  CHECK(h->leq(h->bottom(), h->top()));
}

TEST_CASE("pentagon is rejected with a witness triple") {
  try {
    build_algebra("N5", {"⊥", "a", "b", "c", "⊤"},
                  {{"⊥", "a"}, {"a", "c"}, {"c", "⊤"}, {"⊥", "b"}, {"b", "⊤"}});
    FAIL("N5 accepted");
  } catch (const error& e) {
    CHECK(e.code() == errc::not_heyting);
    CHECK_THAT(std::string(e.what()), Catch::Matchers::ContainsSubstring("c∧(a∨b)=c but (c∧a)∨(c∧b)=a"));
  }
}

TEST_CASE("diamond is Boolean") {
  const auto h = support::B4();
  CHECK(implication_adjunction(*h));
  for (Elem x = 0; x < h->size(); ++x)
    CHECK(h->join(x, h->implies(x, h->bottom())) == h->top());
}

TEST_CASE("structural errors") {
  CHECK(code_of([] { build_algebra("P", {"a", "b"}, {{"a", "b"}, {"b", "a"}}); }) == errc::not_a_poset);
  CHECK(code_of([] { build_algebra("P", {"a", "b"}, {}); }) == errc::no_bounds);
  CHECK(code_of([] {
          build_algebra("W", {"⊥", "a", "b", "c", "d", "⊤"},
                        {{"⊥", "a"}, {"⊥", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "⊤"}, {"d", "⊤"}});
        }) == errc::not_a_lattice);
  CHECK(code_of([] { build_algebra("E", {}, {}); }) == errc::invalid_argument);
  CHECK(code_of([] { build_algebra("U", {"a"}, {{"a", "z"}}); }).has_value());
}

TEST_CASE("implication examples") {
  const auto c3 = support::C3(), b4 = support::B4();
  for (const auto& h : {support::H2(), c3, b4})
    for (Elem x = 0; x < h->size(); ++x) CHECK(implication(*h, x, x) == h->top());
  CHECK(implication(*c3, at(c3, "m"), at(c3, "⊥")) == at(c3, "⊥"));
  CHECK(implication(*b4, at(b4, "a"), at(b4, "⊥")) == at(b4, "b"));
  CHECK(bi_implication(*b4, at(b4, "a"), at(b4, "b")) == at(b4, "⊥"));
  CHECK(bi_implication(*c3, at(c3, "m"), at(c3, "⊤")) == at(c3, "m"));
}

TEST_CASE("implication table matches the sup formula") {
  Generator gen(11);
  std::vector<Algebra> lats{support::H2(), support::C3(), support::B4()};
  for (int i = 0; i < 40; ++i) lats.push_back(gen.lattice(8));
  for (const auto& h : lats) {
    OrderOracle o{*h};
    for (Elem x = 0; x < h->size(); ++x)
      for (Elem z = 0; z < h->size(); ++z) {
        REQUIRE(h->meet(x, z) == o.meet(x, z));
        REQUIRE(h->implies(x, z) == o.implies(x, z));
      }
  }
}

TEST_CASE("down-closure examples") {
  const auto c3 = support::C3(), b4 = support::B4();
  CHECK(down_closure(c3, bit(at(c3, "m"))).members() == (bit(0) | bit(1)));
  CHECK(down_closure(b4, 0).members() == 0);
  CHECK(down_closure(b4, bit(at(b4, "a")) | bit(at(b4, "b"))).members() ==
        (bit(at(b4, "⊥")) | bit(at(b4, "a")) | bit(at(b4, "b"))));
}

TEST_CASE("principal down-sets") {
  const auto b4 = support::B4();
  CHECK(is_principal(DownSet(b4, bit(b4->bottom()))));
  CHECK_FALSE(is_principal(DownSet(b4, 0)));
  CHECK_FALSE(is_principal(DownSet(b4, b4->all() & ~bit(b4->top()))));
  CHECK(is_principal(DownSet(b4, b4->all())));
}

TEST_CASE("down-set algebra sizes") {
  for (const auto& [n, size] : std::vector<std::pair<const char*, std::size_t>>{{"H2", 3}, {"C3", 4}, {"B4", 6}}) {
    const auto h = fixture_algebra(n);
    const auto d = downset_algebra(h);
    CHECK(d.sets.size() == size);
    CHECK(OrderOracle{*h}.count_downsets() == size);
    CHECK(d.algebra->size() == size);
    CHECK(d.sets[d.algebra->bottom()] == 0);
    CHECK(d.sets[d.algebra->top()] == h->all());
  }
}

TEST_CASE("sup-dagger adjunction on small fixtures") {
  for (const auto& h : {support::H2(), support::C3(), support::B4()}) CHECK(sup_dagger_adjunction(*h));
  const auto h = support::C3();
  CHECK(h->sup(0) == h->bottom());
  for (Elem e = 0; e < h->size(); ++e) CHECK(subset_of(0, h->down(e)));
}

TEST_CASE("generated lattices satisfy the Heyting laws") {
  Generator gen(5);
  for (int i = 0; i < 60; ++i) {
    const auto h = gen.lattice(8);
    INFO(print_lattice(*h));
    CHECK(implication_adjunction(*h));
    CHECK(frame_law(*h));
    CHECK(sup_dagger_adjunction(*h));
    const auto d = downset_algebra(h);
    CHECK(implication_adjunction(*d.algebra));
    for (Elem e = 0; e < h->size(); ++e) CHECK(is_principal(down_closure(h, bit(e))));
  }
}

TEST_CASE("down-closure is a closure operator") {
  Generator gen(6);
  for (int i = 0; i < 200; ++i) {
    const auto h = gen.lattice(8);
    const Mask x = gen.uniform(0, h->all()), y = gen.uniform(0, h->all());
    const Mask cx = h->down_closure(x);
    CHECK(subset_of(x, cx));
    CHECK(h->down_closure(cx) == cx);
    CHECK(subset_of(cx, h->down_closure(x | y)));
  }
}
