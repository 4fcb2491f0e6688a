#pragma once

// Named theorem suites run over fixtures, files or generated instances.

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relsheaf/comparison.hpp"
#include "relsheaf/equivalence.hpp"
#include "relsheaf/generate.hpp"
#include "relsheaf/io.hpp"
#include "relsheaf/laws.hpp"
#include "relsheaf/oracle.hpp"

namespace relsheaf {

struct CheckResult {
  std::string instance;
  std::string law;
  bool pass = true;
  std::string counterexample;
};

/// Where a suite draws its instances from. With `fixtures` set the built-in
/// fixtures are used and the generator parameters only drive the random
/// parts a suite needs on top of them; with `path` set the instances come
/// from that file; otherwise everything is generated.
struct InstanceSource {
  bool fixtures = false;
  std::optional<std::filesystem::path> path;
  GeneratorParams params;

  std::string describe() const {
    std::string p = "seed " + std::to_string(params.seed) + ", count " + std::to_string(params.count) +
                    ", max-h " + std::to_string(params.max_h) + ", max-carrier " +
                    std::to_string(params.max_carrier);
    if (path) return "file " + path->string() + " (" + p + ")";
    return (fixtures ? "fixtures (" : "generated (") + p + ")";
  }
};

struct SuiteReport {
  std::string suite;
  std::string source;
  std::vector<CheckResult> checks;
  double millis = 0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.pass ? 0 : 1;
    return n;
  }
};

inline const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names{
      "heyting",    "comparison", "pt-comparison", "composition", "adjunction",
      "singletons", "sheaf-iff",  "equivalence",   "example-2pt", "caveats",
  };
  return names;
}

/// The presheaf with one element everywhere.
inline Presheaf terminal_presheaf(const Algebra& h) {
  Presheaf f(h, "1", std::vector<std::vector<std::string>>(h->size(), {"*"}));
  f.complete();
  return f;
}

inline Transformation to_terminal(const Presheaf& f) {
  std::vector<std::vector<std::size_t>> comp(f.algebra()->size());
  for (Elem h = 0; h < comp.size(); ++h) comp[h].assign(f.carrier_size(h), 0);
  return Transformation(f, terminal_presheaf(f.algebra()), std::move(comp));
}

namespace detail {

/// A presheaf with a composable pair s∘t starting at it.
struct PresheafCase {
  Presheaf f;
  Transformation t;  // F → G
  Transformation s;  // G → K
};

class SuiteRun {
 public:
  SuiteRun(std::string suite, const InstanceSource& src) : src_(src), gen_(src.params.seed) {
    report_.suite = std::move(suite);
    report_.source = src.describe();
  }

  SuiteReport& report() { return report_; }
  Generator& gen() { return gen_; }
  const InstanceSource& source() const { return src_; }

  void record(const std::string& instance, const std::string& law, const Verdict& v) {
    report_.checks.push_back({instance, law, v.holds,
                              v.holds ? std::string() : (v.law.empty() ? v.witness : v.law + ": " + v.witness)});
  }

  void record(const std::string& instance, const std::string& law, bool ok, const std::string& witness) {
    report_.checks.push_back({instance, law, ok, ok ? std::string() : witness});
  }

  // Runs f, turning a library exception into a failed check.
  template <class F>
  void guarded(const std::string& instance, const std::string& law, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      record(instance, law, false, e.what());
    }
  }

  std::vector<Algebra> lattices() {
    std::vector<Algebra> out;
    if (src_.path) {
      for (const auto& h : load(*src_.path).lattices) out.push_back(h);
    } else if (src_.fixtures) {
      for (auto n : {"H2", "C3", "B4", "D(C3)"}) out.push_back(fixture_algebra(n));
    } else {
      for (std::size_t i = 0; i < src_.params.count; ++i) out.push_back(gen_.lattice(src_.params.max_h));
    }
    return out;
  }

  std::vector<PresheafCase> presheaves() {
    std::vector<PresheafCase> out;
    auto plain = [&](const Presheaf& f) {
      auto t = to_terminal(f);
      out.push_back({f, t, identity_transformation(t.cod())});
    };
    if (src_.path) {
      for (const auto& f : load(*src_.path).presheaves) plain(f);
    } else if (src_.fixtures) {
      for (auto n : {"SEP", "NSH", "MIS"}) plain(fixture_presheaf(n));
    } else {
      for (std::size_t i = 0; i < src_.params.count; ++i) {
        const auto h = gen_.lattice(src_.params.max_h);
        const auto g = gen_.germs(h, src_.params.max_carrier);
        auto t = gen_.transformation(g, src_.params.max_carrier);
        auto s = gen_.transformation(t.codomain, src_.params.max_carrier);
        out.push_back({g.build(), std::move(t.transformation), std::move(s.transformation)});
      }
    }
    return out;
  }

  std::vector<std::pair<std::string, RelObject>> inf_objects() {
    std::vector<std::pair<std::string, RelObject>> out;
    if (src_.path) {
      const auto d = load(*src_.path);
      for (const auto& r : d.reltrans)
        if (r.is_infima_preserving() && is_rel_object(r, Mode::inf)) out.emplace_back(r.source().label, RelObject(r, Mode::inf));
      for (const auto& f : d.presheaves) out.emplace_back("Δ(" + f.name() + ")", delta_inf_obj(f));
    } else if (src_.fixtures) {
      for (auto n : {"SEP", "NSH", "MIS"}) out.emplace_back(std::string("Δ(") + n + ")", delta_inf_obj(fixture_presheaf(n)));
      out.emplace_back("PER", RelObject(fixture_reltrans("PER"), Mode::inf));
    } else {
      for (std::size_t i = 0; i < src_.params.count; ++i) {
        const auto h = gen_.lattice(src_.params.max_h);
        const auto set = gen_.finite_set("x", gen_.uniform(0, src_.params.max_carrier));
        out.emplace_back("R" + std::to_string(i + 1) + " over " + h->label(), gen_.inf_object(h, set));
      }
    }
    return out;
  }

 private:
  const InstanceSource& src_;
  Generator gen_;
  SuiteReport report_;
};

inline std::string label_of(const Presheaf& f) { return f.name() + " over " + f.algebra()->label(); }

inline void suite_heyting(SuiteRun& run) {
  for (const auto& h : run.lattices()) {
    const auto name = h->label();
    run.record(name, "implication-adjunction", implication_adjunction(*h));
    run.record(name, "frame-law", frame_law(*h));
    run.record(name, "sup-dagger-adjunction", sup_dagger_adjunction(*h));
    run.guarded(name, "downset-algebra", [&] {
      const auto d = downset_algebra(h);
      run.record(name, "downset-algebra", implication_adjunction(*d.algebra));
    });
    bool principal = true;
    for (Elem e = 0; e < h->size(); ++e) principal &= is_principal(down_closure(h, bit(e)));
    run.record(name, "principal-closure", principal, "some a† is not principal");
  }
  if (run.source().fixtures) {
    try {
      fixture_algebra("N5");
      run.record("N5", "rejected-with-witness", false, "N5 was accepted");
    } catch (const error& e) {
      const std::string what = e.what();
      run.record("N5", "rejected-with-witness",
                 e.code() == errc::not_heyting && what.find("witness") != std::string::npos, what);
    }
  }
}

inline void suite_comparison(SuiteRun& run) {
  for (const auto& c : run.presheaves()) {
    const auto name = label_of(c.f);
    run.guarded(name, "comparison", [&] {
      const auto d = downset_algebra(c.f.algebra());
      const auto g = gamma(c.f, d);
      run.record(name, "gamma-is-sheaf", is_sheaf(g));
      const auto r = comparison_check(c.f, g, d);
      run.record(name, "counit-dagger-iso", r.counit);
      run.record(name, "unit-dagger-iso", r.unit);
      const auto gt = gamma_mor(c.t, d);
      run.record(name, "gamma-mor-natural", validate_transformation(gt));
      const auto lhs = gamma_mor(compose_transformations(c.s, c.t), d);
      const auto rhs = compose_transformations(gamma_mor(c.s, d), gt);
      run.record(name, "gamma-functorial", lhs.components() == rhs.components(), "Γ(s∘t) differs from Γs∘Γt");
      const auto lg = lambda_mor(gamma_mor(identity_transformation(c.f), d), d);
      run.record(name, "lambda-identity", lg == identity_transformation(lambda(g, d)), "Λ(Γ(id)) is not id");
    });
  }
}

inline void suite_pt_comparison(SuiteRun& run) {
  auto& gen = run.gen();
  const auto& p = run.source().params;
  std::vector<Algebra> lats;
  if (run.source().fixtures) lats = {fixture_algebra("C3"), fixture_algebra("B4")};
  for (std::size_t i = 0; i < p.count; ++i) {
    const auto h = lats.empty() ? gen.lattice(p.max_h) : lats[i % lats.size()];
    const auto name = "#" + std::to_string(i + 1) + " over " + h->label();
    run.guarded(name, "pt-comparison", [&] {
      const auto d = downset_algebra(h);
      const auto cmax = std::max<std::size_t>(p.max_carrier, 1);
      const auto a = gen.finite_set("a", gen.uniform(1, cmax));
      const auto b = gen.finite_set("b", gen.uniform(1, cmax));
      const auto c = gen.finite_set("c", gen.uniform(1, cmax));
      const auto t = gen.pretrans(h, a, b, Mode::ord);
      const auto s = gen.pretrans(h, b, c, Mode::ord);
      run.record(name, "psi-is-inf", psi(t, d).is_infima_preserving(), to_string(psi(t, d)));
      run.record(name, "phi-psi-identity", phi(psi(t, d), d) == t, detail::first_difference(phi(psi(t, d), d), t));
      const auto u = gen.pretrans(d.algebra, a, b, Mode::inf);
      const auto v = gen.pretrans(d.algebra, b, c, Mode::inf);
      run.record(name, "phi-is-ord", phi(u, d).is_order_preserving(), to_string(phi(u, d)));
      run.record(name, "psi-phi-identity", psi(phi(u, d), d) == u, detail::first_difference(psi(phi(u, d), d), u));
      const auto l1 = psi(compose_ord(s, t), d), r1 = compose_inf(psi(s, d), psi(t, d));
      run.record(name, "psi-preserves-composition", l1 == r1, detail::first_difference(l1, r1));
      const auto l2 = phi(compose_inf(v, u), d), r2 = compose_ord(phi(v, d), phi(u, d));
      run.record(name, "phi-preserves-composition", l2 == r2, detail::first_difference(l2, r2));
    });
  }
}

inline void composition_case(SuiteRun& run, const std::string& name, const PreTransformation& s,
                             const PreTransformation& t, Mode mode) {
  if (mode == Mode::ord) {
    const auto fast = compose_ord(s, t), slow = compose_ord_by_search(s, t);
    if (!(fast == slow)) run.record(name, "ord-oracle", false, detail::first_difference(fast, slow));
    for (Elem h = 0; h < s.algebra()->size(); ++h)
      if (!(fast.level(h) == compose(s.level(h), t.level(h)))) {
        run.record(name, "ord-levelwise", false, "level " + s.algebra()->name(h));
        return;
      }
  } else {
    const auto fast = compose_inf(s, t), slow = compose_inf_by_search(s, t);
    if (!(fast == slow)) run.record(name, "inf-oracle", false, detail::first_difference(fast, slow));
    if (!(to_matrix(fast) == multiply(to_matrix(s), to_matrix(t))))
      run.record(name, "inf-matrix", false, to_string(fast));
  }
}

inline void suite_composition(SuiteRun& run) {
  auto& gen = run.gen();
  const auto& p = run.source().params;
  const auto before = run.report().checks.size();
  std::size_t cases = 0;
  if (run.source().fixtures) {
    for (auto n : {"H2", "C3"}) {
      const auto h = fixture_algebra(n);
      const std::vector<Mask> ord = enumerate_downsets(*h);
      const std::vector<Mask> inf = principal_fibers(*h);
      for (std::size_t na = 1; na <= 2; ++na)
        for (std::size_t nb = 1; nb <= 2; ++nb)
          for (std::size_t nc = 1; nc <= 2; ++nc) {
            const auto a = gen.finite_set("a", na), b = gen.finite_set("b", nb), c = gen.finite_set("c", nc);
            for (Mode m : {Mode::ord, Mode::inf}) {
              const auto& choices = m == Mode::ord ? ord : inf;
              for_each_pretrans(h, b, c, choices, [&](const PreTransformation& s) {
                for_each_pretrans(h, a, b, choices, [&](const PreTransformation& t) {
                  ++cases;
                  composition_case(run, std::string("exhaustive over ") + n, s, t, m);
                });
              });
            }
          }
    }
  }
  for (std::size_t i = 0; i < p.count; ++i) {
    const auto h = run.source().fixtures ? fixture_algebra(i % 2 ? "B4" : "C3") : gen.lattice(std::min<std::size_t>(p.max_h, 4));
    const auto cmax = std::clamp<std::size_t>(p.max_carrier, 1, 3);
    const auto a = gen.finite_set("a", gen.uniform(1, cmax));
    const auto b = gen.finite_set("b", gen.uniform(1, cmax));
    const auto c = gen.finite_set("c", gen.uniform(1, cmax));
    const Mode m = i % 2 ? Mode::inf : Mode::ord;
    const auto s = gen.pretrans(h, b, c, m), t = gen.pretrans(h, a, b, m);
    ++cases;
    composition_case(run, "random #" + std::to_string(i + 1), s, t, m);
    const auto r = gen.pretrans(h, c, a, m);
    const auto l = compose(r, compose(s, t, m), m), rr = compose(compose(r, s, m), t, m);
    if (!(l == rr)) run.record("random #" + std::to_string(i + 1), "associativity", false, detail::first_difference(l, rr));
  }
  if (run.report().checks.size() == before)
    run.record(std::to_string(cases) + " composable pairs", "composition-oracles", true, "");
}

inline void suite_adjunction(SuiteRun& run) {
  for (const auto& c : run.presheaves()) {
    const auto name = label_of(c.f);
    run.guarded(name, "adjunction", [&] {
      const auto d = delta_inf_obj(c.f);
      run.record(name, "delta-is-inf-object", is_rel_object(d.underlying(), Mode::inf));
      const auto dt = delta_inf_mor(c.t);
      run.record(name, "delta-mor-is-morphism",
                 is_rel_morphism(dt.underlying(), dt.domain().underlying(), dt.codomain().underlying(), Mode::inf));
      run.record(name, "delta-identity", delta_inf_mor(identity_transformation(c.f)).underlying() == d.underlying(),
                 "Δ(id) differs from Δ(F)");
      run.record(name, "delta-functoriality", delta_functoriality(c.s, c.t));
      run.record(name, "delta-key-identity", delta_key_identity(c.t));
      run.record(name, "epsilon-iso", epsilon_iso_laws(d));
      run.record(name, "eta-naturality", eta_naturality(c.t));
      run.record(name, "epsilon-naturality", epsilon_naturality(dt));
      run.record(name, "triangle-delta", triangle_presheaf(c.f));
      run.record(name, "triangle-theta", triangle_relational(d));
    });
  }
  if (run.source().fixtures || !run.source().path) {
    for (const auto& [name, g] : run.inf_objects()) {
      run.guarded(name, "adjunction", [&, &name = name, &g = g] {
        run.record(name, "epsilon-iso", epsilon_iso_laws(g));
        run.record(name, "epsilon-naturality", epsilon_naturality(identity_morphism(g)));
        run.record(name, "triangle-theta", triangle_relational(g));
      });
    }
  }
}

inline void suite_singletons(SuiteRun& run) {
  for (const auto& [name, f] : run.inf_objects()) {
    run.guarded(name, "singletons", [&, &name = name, &f = f] {
      const auto& h = *f.algebra();
      const auto levels = singletons_by_level(f);
      std::size_t pairs = 0;
      std::optional<std::string> bad;
      for (const auto& la : levels)
        for (const auto& a : la)
          for (const auto& lb : levels)
            for (const auto& b : lb)
              for (Elem l = 0; l < h.size() && !bad; ++l) {
                ++pairs;
                const auto r = lemma_singleton_agreement(f, a, b, l);
                if (r.restrictions_agree != r.composite_holds || r.composite_holds != r.closed_form)
                  bad = to_string(h, a) + "@" + h.name(a.level) + ", " + to_string(h, b) + "@" + h.name(b.level) +
                        ", l=" + h.name(l);
              }
      run.record(name, "singleton-agreement", !bad, bad.value_or(""));
      run.record(name, "singleton-monic", singleton_monic(f));
      for (std::size_t x = 0; x < f.carrier().size(); ++x)
        if (auto v = is_singleton(f.matrix(), representable_singleton(f, x)); !v) {
          run.record(name, "representable-is-singleton", v);
          return;
        }
    });
  }
}

inline void suite_sheaf_iff(SuiteRun& run) {
  for (const auto& c : run.presheaves()) {
    const auto name = label_of(c.f);
    run.guarded(name, "sheaf-iff-eta-iso", [&] {
      const auto r = sheaf_iff_eta_iso(c.f);
      run.record(name, "sheaf-iff-eta-iso", r.agree(),
                 std::string("is_sheaf=") + (r.sheaf.holds ? "yes" : "no") + " (" + r.sheaf.witness +
                     "), eta iso=" + (r.eta_iso.holds ? "yes" : "no") + " (" + r.eta_iso.witness + ")");
    });
  }
}

inline void suite_equivalence(SuiteRun& run) {
  for (const auto& c : run.presheaves()) {
    const auto name = label_of(c.f);
    run.guarded(name, "equivalence", [&] {
      const auto d = delta_inf_obj(c.f);
      run.record(name, "theta-is-sheaf", theta_is_sheaf_certificate(d));
      const auto a = a_shv(c.f);
      run.record(name, "a-shv-is-sheaf", is_sheaf(a));
      if (is_sheaf(c.f)) run.record(name, "sheaf-eta-iso", is_natural_iso(eta(c.f)));
      const auto da = downset_algebra(c.f.algebra());
      run.record(name, "presheaf-roundtrip", presheaf_roundtrip(c.f, da));
      const auto r = delta_pre(c.f, da);
      run.record(name, "relational-roundtrip", relational_roundtrip(r, da));
      if (run.source().fixtures && (c.f.name() == "MIS" || c.f.name() == "NSH")) {
        const auto top = a.algebra()->top();
        run.record(name, "a-shv-top-size", a.carrier_size(top) == 1,
                   std::to_string(a.carrier_size(top)) + " elements at the top");
      }
    });
  }
  if (run.source().fixtures) {
    for (auto n : {"PER"}) {
      run.guarded(n, "equivalence", [&] {
        run.record(n, "theta-is-sheaf", theta_is_sheaf_certificate(RelObject(fixture_reltrans(n), Mode::inf)));
      });
    }
  }
}

inline void suite_example_2pt(SuiteRun& run) {
  const auto h2 = run.source().path ? load(*run.source().path).lattices.at(0) : fixture_algebra("H2");
  const std::size_t n = run.source().fixtures ? 3 : std::min<std::size_t>(run.source().params.max_carrier, 3);
  const auto r = example_two_point(h2, n);
  run.record("H2, carriers <= " + std::to_string(n), "pers-and-class-functions", r.verdict);
  run.record("H2, carriers <= " + std::to_string(n), "counts",
             r.objects > 0 && r.morphisms > 0,
             std::to_string(r.objects) + " objects, " + std::to_string(r.morphisms) + " morphisms");
}

inline void suite_caveats(SuiteRun& run) {
  const auto& p = run.source().params;
  const std::vector<Algebra> small{fixture_algebra("H2"), fixture_algebra("C3"), fixture_algebra("B4")};
  const std::size_t samples = std::max<std::size_t>(p.count, 1) * 100;
  const auto cmax = std::clamp<std::size_t>(p.max_carrier, 1, 4);
  const auto a = search_completion_not_idempotent(small, p.seed, samples, p.max_h, cmax);
  const auto sa = std::to_string(a.examined) + " ord idempotents examined";
  run.record("search", "completion-not-idempotent", a.found.has_value(),
             "none found, " + sa + (a.holding ? "; e.g. " + *a.holding : std::string()));
  const auto b = search_ord_not_idempotent(small, p.seed, samples, p.max_h, cmax);
  const auto sb = std::to_string(b.examined) + " inf objects examined";
  run.record("search", "ord-square-holds", b.holding.has_value(), "no inf object with compose_ord(F,F) = F, " + sb);
  run.record("search", "ord-square-fails", b.found.has_value(), "none found, " + sb);
  // the narrow reading of Δ_inf fails idempotency on NSH
  const auto narrow = delta_narrow(fixture_presheaf("NSH"));
  const auto v = is_rel_object(narrow, Mode::inf);
  run.record("NSH", "narrow-delta-not-idempotent", !v.holds, "the narrow Δ_inf(NSH) is an inf object");
}

}  // namespace detail

/// Runs the named suite. Throws UnknownSuite for an unknown name and
/// BoundsError for generator parameters out of range.
inline SuiteReport run_suite(std::string_view name, const InstanceSource& src) {
  check_bounds(src.params);
  const auto start = std::chrono::steady_clock::now();
  detail::SuiteRun run(std::string(name), src);
  if (name == "heyting") detail::suite_heyting(run);
  else if (name == "comparison") detail::suite_comparison(run);
  else if (name == "pt-comparison") detail::suite_pt_comparison(run);
  else if (name == "composition") detail::suite_composition(run);
  else if (name == "adjunction") detail::suite_adjunction(run);
  else if (name == "singletons") detail::suite_singletons(run);
  else if (name == "sheaf-iff") detail::suite_sheaf_iff(run);
  else if (name == "equivalence") detail::suite_equivalence(run);
  else if (name == "example-2pt") detail::suite_example_2pt(run);
  else if (name == "caveats") detail::suite_caveats(run);
  else throw error(errc::unknown_suite, std::string(name));
  auto report = std::move(run.report());
  report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Human readable summary, every line starting with '#'.
inline std::string format_text(const SuiteReport& r) {
  std::string out = "# suite " + r.suite + " on " + r.source + "\n";
  for (const auto& c : r.checks)
    if (!c.pass) out += "# FAIL " + c.instance + ": " + c.law + ": " + c.counterexample + "\n";
  out += "# " + std::to_string(r.checks.size()) + " checks, " + std::to_string(r.failures()) + " failed\n";
  return out;
}

/// One line per check: suite, law, verdict, counterexample (tab separated).
inline std::string format_machine(const SuiteReport& r) {
  std::string out;
  for (const auto& c : r.checks)
    out += r.suite + "\t" + c.instance + "/" + c.law + "\t" + (c.pass ? "PASS" : "FAIL") + "\t" +
           (c.pass ? "-" : c.counterexample) + "\n";
  return out;
}

}  // namespace relsheaf
