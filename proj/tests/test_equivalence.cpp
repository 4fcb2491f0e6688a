#include <catch_amalgamated.hpp>

#include "relsheaf/equivalence.hpp"
#include "relsheaf/generate.hpp"
#include "support.hpp"

using namespace relsheaf;
using support::code_of;

namespace {

std::vector<std::size_t> sizes(const Presheaf& f) {
  std::vector<std::size_t> out;
  for (Elem h = 0; h < f.algebra()->size(); ++h) out.push_back(f.carrier_size(h));
  return out;
}

// flatten(α_γ) = γ for every singleton γ of f.
void check_flatten_inverts(const RelObject& f) {
  const auto& h = *f.algebra();
  const auto levels = singletons_by_level(f);
  const auto theta = theta_inf_obj(f);
  const auto e = delta_inf_obj(theta).matrix();
  const auto u = tagged_union(theta);
  for (Elem lvl = 0; lvl < h.size(); ++lvl)
    for (std::size_t i = 0; i < levels[lvl].size(); ++i) {
      const auto a = representable_singleton(e, u.index(lvl, i));
      CHECK(flatten_singleton(f, a) == levels[lvl][i]);
    }
  for (const auto& a : enumerate_singletons(e, h.bottom()))
    CHECK(flatten_singleton(f, a).extent == std::vector<Elem>(f.carrier().size(), h.bottom()));
}

}  // namespace

TEST_CASE("sheaf iff unit is iso on the fixtures") {
  const auto sep = sheaf_iff_eta_iso(fixture_presheaf("SEP"));
  CHECK(sep.sheaf.holds);
  CHECK(sep.eta_iso.holds);
  for (auto n : {"NSH", "MIS"}) {
    const auto r = sheaf_iff_eta_iso(fixture_presheaf(n));
    CHECK_FALSE(r.sheaf.holds);
    CHECK_FALSE(r.eta_iso.holds);
  }
}

TEST_CASE("sheaf iff unit is iso on generated presheaves") {
  Generator gen(61);
  int sheaves = 0;
  for (int i = 0; i < 300; ++i) {
    const auto f = gen.presheaf(gen.lattice(7), 3);
    const auto r = sheaf_iff_eta_iso(f);
    INFO(print_presheaf(f));
    CHECK(r.agree());
    sheaves += r.sheaf.holds;
  }
  CHECK(sheaves > 0);
}

TEST_CASE("flattening inverts representables") {
  for (auto n : {"SEP", "NSH", "MIS"}) check_flatten_inverts(delta_inf_obj(fixture_presheaf(n)));
  check_flatten_inverts(RelObject(fixture_reltrans("PER"), Mode::inf));
  Generator gen(62);
  for (int i = 0; i < 40; ++i) check_flatten_inverts(gen.inf_object(gen.lattice(6), gen.finite_set("x", gen.uniform(0, 3))));
}

TEST_CASE("theta lands in sheaves") {
  for (auto n : {"SEP", "NSH", "MIS"}) CHECK(theta_is_sheaf_certificate(delta_inf_obj(fixture_presheaf(n))));
  CHECK(theta_is_sheaf_certificate(RelObject(fixture_reltrans("PER"), Mode::inf)));
  Generator gen(63);
  for (int i = 0; i < 60; ++i) {
    const auto f = gen.inf_object(gen.lattice(6), gen.finite_set("x", gen.uniform(0, 3)));
    CHECK(theta_is_sheaf_certificate(f));
    CHECK(is_sheaf(theta_inf_obj(f)));
  }
}

TEST_CASE("associated sheaf") {
  const auto& b4 = *support::B4();
  const auto mis = a_shv(fixture_presheaf("MIS"));
  CHECK(mis.carrier_size(b4.top()) == 1);
  CHECK(mis.name() == "a(MIS)");
  CHECK(a_shv(fixture_presheaf("NSH")).carrier_size(b4.top()) == 1);
  const auto sep = fixture_presheaf("SEP");
  CHECK(sizes(a_shv(sep)) == sizes(sep));
  CHECK(is_natural_iso(eta(sep)));
  Generator gen(64);
  for (int i = 0; i < 100; ++i) {
    const auto f = gen.presheaf(gen.lattice(7), 3);
    const auto a = a_shv(f);
    CHECK(is_sheaf(a));
    CHECK(sizes(a_shv(a)) == sizes(a));
    if (is_sheaf(f)) CHECK(sizes(a) == sizes(f));
  }
}

TEST_CASE("presheaf and relational roundtrips") {
  for (auto n : {"SEP", "NSH", "MIS"}) {
    const auto f = fixture_presheaf(n);
    const auto d = downset_algebra(f.algebra());
    CHECK(presheaf_roundtrip(f, d));
    const auto r = delta_pre(f, d);
    CHECK(is_rel_object(r.underlying(), Mode::ord));
    CHECK(relational_roundtrip(r, d));
    CHECK(is_rel_object(a_rel(r, d).underlying(), Mode::inf));
  }
  const auto d = downset_algebra(support::H2());
  CHECK(code_of([&] { theta_pre(RelObject(fixture_reltrans("PER"), Mode::inf), d); }) == errc::mode_error);
  Generator gen(65);
  for (int i = 0; i < 40; ++i) {
    const auto f = gen.presheaf(gen.lattice(4), 3);
    const auto dd = downset_algebra(f.algebra());
    CHECK(presheaf_roundtrip(f, dd));
    CHECK(relational_roundtrip(delta_pre(f, dd), dd));
  }
  for (int i = 0; i < 40; ++i) {
    const auto h = gen.lattice(4);
    const auto t = gen.ord_idempotent(h, gen.finite_set("x", gen.uniform(0, 3)), true);
    const RelObject r(t, Mode::ord);
    const auto dd = downset_algebra(h);
    INFO(to_string(t));
    CHECK(relational_roundtrip(r, dd));
  }
}
