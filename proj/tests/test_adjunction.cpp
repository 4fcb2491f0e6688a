#include <catch_amalgamated.hpp>

#include <set>

#include "relsheaf/generate.hpp"
#include "relsheaf/laws.hpp"
#include "relsheaf/oracle.hpp"
#include "support.hpp"

using namespace relsheaf;
using support::code_of;

namespace {

// Singletons at `level` found by testing every inf pre-transformation
// {*} → A against the morphism laws.
std::vector<SingletonMorphism> singletons_by_search(const RelObject& f, Elem level) {
  const auto& h = *f.algebra();
  const auto point = singleton_object(f.algebra(), level);
  std::vector<SingletonMorphism> out;
  for_each_pretrans(f.algebra(), point_set(), f.carrier(), principal_fibers(h), [&](const PreTransformation& t) {
    if (!is_rel_morphism(t, point.underlying(), f.underlying(), Mode::inf)) return;
    SingletonMorphism s{level, {}};
    for (std::size_t x = 0; x < f.carrier().size(); ++x) s.extent.push_back(h.sup(t.fiber(x, 0)));
    out.push_back(s);
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Every presheaf over H2 with carriers of size at most two.
std::vector<Presheaf> all_over_h2() {
  const auto h = support::H2();
  std::vector<Presheaf> out;
  const std::vector<std::string> names{"u", "v"};
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 2; ++n) {
      std::size_t maps = 1;
      for (std::size_t i = 0; i < n; ++i) maps *= m;
      for (std::size_t code = 0; code < maps; ++code) {
        Presheaf f(h, "F" + std::to_string(out.size()),
                   {std::vector<std::string>(names.begin(), names.begin() + m),
                    std::vector<std::string>(names.begin(), names.begin() + n)});
        std::vector<std::size_t> r(n);
        for (std::size_t i = 0, c = code; i < n; ++i, c /= m) r[i] = c % m;
        f.set_restriction(1, 0, r);
        f.complete();
        out.push_back(f);
      }
    }
  return out;
}

std::size_t member(const RelObject& d, const std::string& name) { return d.carrier().index_of(name); }

}  // namespace

TEST_CASE("delta of the fixtures") {
  const auto sep = fixture_presheaf("SEP"), nsh = fixture_presheaf("NSH");
  const auto& h = *sep.algebra();
  const auto ds = delta_inf_obj(sep);
  const auto m = ds.matrix();
  const auto u = tagged_union(sep);
  for (std::size_t b = 0; b < u.level.size(); ++b)
    for (std::size_t a = 0; a < u.level.size(); ++a) CHECK(m.at(b, a) == h.meet(u.level[a], u.level[b]));
  const auto dn = delta_inf_obj(nsh);
  CHECK(dn.matrix().at(member(dn, "x@⊤"), member(dn, "y@⊤")) == h.top());
  CHECK(dn.matrix().at(member(dn, "x@⊤"), member(dn, "x@⊤")) == h.top());
  CHECK(dn.matrix().at(member(dn, "p@a"), member(dn, "q@b")) == h.bottom());
  CHECK_FALSE(is_rel_object(delta_narrow(nsh), Mode::inf));
}

TEST_CASE("delta records where sections agree") {
  Generator gen(51);
  for (int i = 0; i < 200; ++i) {
    const auto f = gen.presheaf(gen.lattice(6), 3);
    const auto& h = *f.algebra();
    const auto e = delta_inf_obj(f).matrix();
    const auto u = tagged_union(f);
    const bool sheaf = is_sheaf(f).holds;
    for (std::size_t b = 0; b < u.level.size(); ++b)
      for (std::size_t a = 0; a < u.level.size(); ++a) {
        const Elem la = u.level[a], lb = u.level[b];
        CHECK(e.at(a, a) == la);
        Mask agree = 0;
        for (Elem k = 0; k < h.size(); ++k)
          if (h.leq(k, la) && h.leq(k, lb) && f.restrict(la, k, u.local[a]) == f.restrict(lb, k, u.local[b]))
            agree |= bit(k);
        CHECK(e.at(b, a) == h.sup(agree));
        if (sheaf) CHECK(agree == h.down(e.at(b, a)));
      }
  }
}

TEST_CASE("delta on morphisms") {
  const auto nsh = fixture_presheaf("NSH"), sep = fixture_presheaf("SEP");
  CHECK(delta_inf_mor(identity_transformation(nsh)).underlying() == delta_inf_obj(nsh).underlying());
  std::vector<std::vector<std::size_t>> comp;
  for (Elem e = 0; e < 4; ++e) comp.emplace_back(nsh.carrier_size(e), 0);
  const Transformation collapse(nsh, sep, comp);
  const auto dc = delta_inf_mor(collapse);
  CHECK(is_rel_morphism(dc.underlying(), dc.domain().underlying(), dc.codomain().underlying(), Mode::inf));
  Generator gen(52);
  for (int i = 0; i < 60; ++i) {
    const auto g = gen.germs(support::B4(), 3);
    const auto t = gen.transformation(g, 3);
    const auto s = gen.transformation(t.codomain, 3);
    CHECK(delta_functoriality(s.transformation, t.transformation));
    CHECK(delta_key_identity(t.transformation));
  }
}

TEST_CASE("singleton examples") {
  const auto h2 = support::H2();
  const RelObject per(fixture_reltrans("PER"), Mode::inf);
  CHECK(enumerate_singletons(per, h2->top()).size() == 2);
  CHECK(enumerate_singletons(per, h2->bottom()).size() == 1);
  const auto dm = delta_inf_obj(fixture_presheaf("MIS"));
  const auto& b4 = *dm.algebra();
  const auto top = enumerate_singletons(dm, b4.top());
  REQUIRE(top.size() == 1);
  CHECK(top[0].extent == std::vector<Elem>{b4.bottom(), b4.at("a"), b4.at("b")});
  CHECK(to_string(b4, top[0]) == "<⊥,a,b>");
}

TEST_CASE("singleton enumeration matches the definition") {
  std::vector<RelObject> objects;
  for (auto n : {"SEP", "NSH", "MIS"}) objects.push_back(delta_inf_obj(fixture_presheaf(n)));
  objects.emplace_back(fixture_reltrans("PER"), Mode::inf);
  Generator gen(53);
  for (int i = 0; i < 30; ++i) {
    const Algebra h = i % 3 == 0 ? support::H2() : i % 3 == 1 ? support::C3() : gen.lattice(4);
    objects.push_back(gen.inf_object(h, gen.finite_set("x", gen.uniform(0, 3))));
  }
  for (const auto& f : objects)
    for (Elem l = 0; l < f.algebra()->size(); ++l) {
      const auto fast = enumerate_singletons(f, l);
      CHECK(fast == singletons_by_search(f, l));
      for (const auto& s : fast) CHECK(is_singleton(f.matrix(), s));
    }
}

TEST_CASE("restriction of singletons") {
  const auto dn = delta_inf_obj(fixture_presheaf("NSH"));
  const auto& h = *dn.algebra();
  CHECK(code_of([&] { restrict_singleton(h, enumerate_singletons(dn, h.at("a")).front(), h.top()); }) ==
        errc::order_error);
  Generator gen(54);
  for (int i = 0; i < 40; ++i) {
    const auto f = delta_inf_obj(gen.presheaf(gen.lattice(6), 3));
    const auto& g = *f.algebra();
    for (Elem lvl = 0; lvl < g.size(); ++lvl)
      for (const auto& s : enumerate_singletons(f, lvl)) {
        CHECK(restrict_singleton(g, s, lvl) == s);
        const auto bot = restrict_singleton(g, s, g.bottom());
        CHECK(bot.extent == std::vector<Elem>(s.extent.size(), g.bottom()));
        for_each_elem(g.down(lvl), [&](Elem k) {
          const auto sk = restrict_singleton(g, s, k);
          CHECK(is_singleton(f.matrix(), sk));
          for_each_elem(g.down(k), [&](Elem j) { CHECK(restrict_singleton(g, sk, j) == restrict_singleton(g, s, j)); });
        });
      }
  }
}

TEST_CASE("representable singletons") {
  const auto ds = delta_inf_obj(fixture_presheaf("SEP"));
  const auto& h = *ds.algebra();
  const auto u = tagged_union(fixture_presheaf("SEP"));
  for (std::size_t x = 0; x < u.level.size(); ++x) {
    const auto a = representable_singleton(ds, x);
    CHECK(a.level == ds.matrix().at(x, x));
    for (std::size_t y = 0; y < u.level.size(); ++y) CHECK(a.extent[y] == h.meet(u.level[x], u.level[y]));
  }
  const RelObject per(fixture_reltrans("PER"), Mode::inf);
  CHECK(representable_singleton(per, 0) == representable_singleton(per, 1));
  CHECK_FALSE(representable_singleton(per, 0) == representable_singleton(per, 2));
}

TEST_CASE("theta of the fixtures") {
  const auto& b4 = *support::B4();
  CHECK(theta_inf_obj(delta_inf_obj(fixture_presheaf("NSH"))).carrier_size(b4.top()) == 1);
  CHECK(theta_inf_obj(delta_inf_obj(fixture_presheaf("MIS"))).carrier_size(b4.top()) == 1);
  for (auto n : {"SEP", "NSH", "MIS"}) {
    const auto t = theta_inf_obj(delta_inf_obj(fixture_presheaf(n)));
    CHECK(t.carrier_size(b4.bottom()) == 1);
    CHECK(validate_presheaf(t));
  }
}

TEST_CASE("unit components") {
  const auto& b4 = *support::B4();
  const auto sep = fixture_presheaf("SEP");
  for (Elem h = 0; h < 4; ++h) CHECK(eta(sep).component(h) == std::vector<std::size_t>{0});
  CHECK(is_natural_iso(eta(sep)));
  const auto nsh = eta(fixture_presheaf("NSH"));
  CHECK(nsh.component(b4.top()) == std::vector<std::size_t>{0, 0});
  CHECK_FALSE(is_natural_iso(nsh));
  const auto mis = eta(fixture_presheaf("MIS"));
  CHECK(mis.component(b4.top()).empty());
  CHECK(mis.cod().carrier_size(b4.top()) == 1);
  CHECK_FALSE(is_natural_iso(mis));
  CHECK(eta_component(fixture_presheaf("NSH"), b4.top()) == std::vector<std::size_t>{0, 0});
}

TEST_CASE("counit") {
  for (auto n : {"SEP", "NSH", "MIS"}) CHECK(epsilon_iso_laws(delta_inf_obj(fixture_presheaf(n))));
  const auto point = singleton_object(support::B4(), support::B4()->top());
  CHECK(epsilon_iso_laws(point));
  const auto e = epsilon(point);
  CHECK(to_matrix(e.underlying()).at(0, e.domain().carrier().size() - 1) == support::B4()->top());
  CHECK(epsilon_iso_laws(RelObject(fixture_reltrans("PER"), Mode::inf)));
}

TEST_CASE("triangle identities") {
  std::vector<Presheaf> fs;
  for (auto n : {"SEP", "NSH", "MIS"}) fs.push_back(fixture_presheaf(n));
  for (const auto& f : all_over_h2()) fs.push_back(f);
  Presheaf empty(support::B4(), "E", std::vector<std::vector<std::string>>(4));
  empty.complete();
  fs.push_back(empty);
  CHECK(fs.size() == 3 + 11 + 1);
  std::vector<RelObject> objects;
  for (const auto& f : fs) objects.push_back(delta_inf_obj(f));
  const auto r = adjunction_check(fs, objects);
  for (const auto& [name, v] : r.checks) {
    INFO(name << ": " << v.witness);
    CHECK(v.holds);
  }
  CHECK(r.holds());
}

TEST_CASE("naturality of unit and counit") {
  Generator gen(55);
  for (int i = 0; i < 40; ++i) {
    const auto g = gen.germs(gen.lattice(6), 3);
    const auto t = gen.transformation(g, 3);
    CHECK(eta_naturality(t.transformation));
    CHECK(epsilon_naturality(delta_inf_mor(t.transformation)));
  }
  for (int i = 0; i < 20; ++i) {
    const Algebra h = i % 2 ? support::C3() : support::H2();
    const auto tau = gen.inf_object(h, gen.finite_set("x", gen.uniform(1, 2)));
    const auto sigma = gen.inf_object(h, gen.finite_set("y", gen.uniform(1, 2)));
    for_each_pretrans(h, tau.carrier(), sigma.carrier(), principal_fibers(*h), [&](const PreTransformation& t) {
      if (!is_rel_morphism(t, tau.underlying(), sigma.underlying(), Mode::inf)) return;
      const RelMorphism m(tau, sigma, t);
      CHECK(validate_transformation(theta_inf_mor(m)));
      CHECK(epsilon_naturality(m));
    });
  }
}

TEST_CASE("singleton agreement") {
  const RelObject per(fixture_reltrans("PER"), Mode::inf);
  const auto& h = *per.algebra();
  const auto top = enumerate_singletons(per, h.top());
  REQUIRE(top.size() == 2);
  auto r = lemma_singleton_agreement(per, top[0], top[0], h.top());
  CHECK((r.restrictions_agree && r.composite_holds && r.closed_form));
  r = lemma_singleton_agreement(per, top[0], top[1], h.top());
  CHECK_FALSE(r.restrictions_agree);
  CHECK_FALSE(r.composite_holds);
  r = lemma_singleton_agreement(per, top[0], top[1], h.bottom());
  CHECK((r.restrictions_agree && r.composite_holds));
  Generator gen(56);
  for (int i = 0; i < 30; ++i) {
    const auto f = gen.inf_object(gen.lattice(5), gen.finite_set("x", gen.uniform(0, 3)));
    const auto levels = singletons_by_level(f);
    for (const auto& la : levels)
      for (const auto& a : la)
        for (const auto& lb : levels)
          for (const auto& b : lb)
            for (Elem l = 0; l < f.algebra()->size(); ++l) {
              const auto q = lemma_singleton_agreement(f, a, b, l);
              CHECK(q.restrictions_agree == q.composite_holds);
              CHECK(q.composite_holds == q.closed_form);
            }
    CHECK(singleton_monic(f));
  }
}
