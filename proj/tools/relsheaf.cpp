// Command line front end: validate files, compute down-sets, check and
// sheafify presheaves, apply Δ and Θ, and run the theorem suites.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "relsheaf/equivalence.hpp"
#include "relsheaf/io.hpp"
#include "relsheaf/suites.hpp"

using namespace relsheaf;

namespace {

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string verdict_text(const Verdict& v) {
  if (v) return "yes";
  return "no (" + v.law + ": " + v.witness + ")";
}

int cmd_validate(const std::string& path) {
  const auto doc = load(path);
  for (const auto& h : doc.lattices)
    std::cout << "lattice " << h->label() << ": " << h->size() << " elements, Heyting algebra\n";
  for (const auto& f : doc.presheaves)
    std::cout << "presheaf " << f.name() << " over " << f.algebra()->label() << ": " << f.total_size()
              << " elements, functorial\n";
  for (const auto& t : doc.reltrans) {
    const auto c = classify(t);
    std::cout << "reltrans " << t.source().label << " over " << t.algebra()->label() << ": order-preserving "
              << yes_no(c.order_preserving) << ", infima-preserving " << yes_no(c.infima_preserving) << "\n";
    if (c.order_preserving) std::cout << "  ord object: " << verdict_text(is_rel_object(t, Mode::ord)) << "\n";
    if (c.infima_preserving) std::cout << "  inf object: " << verdict_text(is_rel_object(t, Mode::inf)) << "\n";
  }
  return 0;
}

Algebra first_lattice(const std::string& path) {
  auto doc = load(path);
  if (doc.lattices.empty()) throw error(errc::invalid_argument, path + " defines no lattice");
  return doc.lattices.front();
}

std::vector<Presheaf> presheaves_of(const std::string& path) {
  auto doc = load(path);
  if (doc.presheaves.empty()) throw error(errc::invalid_argument, path + " defines no presheaf");
  return doc.presheaves;
}

int cmd_downsets(const std::string& path) {
  const auto h = first_lattice(path);
  const auto d = downset_algebra(h);
  std::cout << "# " << d.sets.size() << " down-sets of " << h->label() << "\n";
  for (Mask m : d.sets)
    std::cout << "# " << h->format(m) << (is_principal(DownSet(h, m)) ? " principal" : "") << "\n";
  std::cout << print_lattice(*d.algebra);
  return 0;
}

int cmd_sheaf_check(const std::string& path) {
  int status = 0;
  for (const auto& f : presheaves_of(path)) {
    const auto v = is_sheaf(f);
    std::cout << f.name() << ": " << (v ? "sheaf" : "not a sheaf: " + v.witness) << "\n";
    if (!v) status = 1;
  }
  return status;
}

int cmd_sheafify(const std::string& path) {
  int status = 0;
  bool first = true;
  for (const auto& f : presheaves_of(path)) {
    const auto a = a_shv(f);
    const auto v = is_sheaf(a);
    if (!first) std::cout << "\n";
    first = false;
    std::cout << print_presheaf(a) << "# sheaf: " << verdict_text(v) << "\n";
    if (!v) status = 1;
  }
  return status;
}

int cmd_delta(const std::string& path) {
  bool first = true;
  for (const auto& f : presheaves_of(path)) {
    if (!first) std::cout << "\n";
    first = false;
    std::cout << print_reltrans(delta_inf_obj(f).underlying());
  }
  return 0;
}

int cmd_theta(const std::string& path) {
  auto doc = load(path);
  if (doc.reltrans.empty()) throw error(errc::invalid_argument, path + " defines no pre-transformation");
  bool first = true;
  for (const auto& t : doc.reltrans) {
    if (!first) std::cout << "\n";
    first = false;
    std::cout << print_presheaf(theta_inf_obj(RelObject(t, Mode::inf)));
  }
  return 0;
}

int cmd_suite(const std::string& name, const InstanceSource& src) {
  const auto r = run_suite(name, src);
  std::cout << format_text(r) << format_machine(r);
  std::cerr << "# " << r.suite << ": " << static_cast<long long>(r.millis) << " ms\n";
  return r.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite Heyting algebras, presheaves and relational sheaves"};
  app.require_subcommand(1);

  std::string file;
  auto add_file_cmd = [&](const char* name, const char* desc) {
    auto* c = app.add_subcommand(name, desc);
    c->add_option("file", file, "input file")->required();
    return c;
  };
  auto* validate = add_file_cmd("validate", "load a file and report what it contains");
  auto* downsets = add_file_cmd("downsets", "list the down-sets of a lattice and print D(H)");
  auto* sheaf_check = add_file_cmd("sheaf-check", "decide whether each presheaf is a sheaf");
  auto* sheafify = add_file_cmd("sheafify", "print the associated sheaf of each presheaf");
  auto* delta = add_file_cmd("delta", "print the relational sheaf of each presheaf");
  auto* theta = add_file_cmd("theta", "print the presheaf of singletons of a relational sheaf");

  std::string suite;
  InstanceSource src;
  auto* check = app.add_subcommand("check-suite", "run a theorem suite");
  std::string names;
  for (auto n : suite_names()) names += (names.empty() ? "" : ", ") + std::string(n);
  check->add_option("name", suite, "one of: " + names)->required();
  check->add_option("--seed", src.params.seed, "generator seed")->capture_default_str();
  check->add_option("--count", src.params.count, "number of generated instances")->capture_default_str();
  check->add_option("--max-h", src.params.max_h, "largest generated lattice")->capture_default_str();
  check->add_option("--max-carrier", src.params.max_carrier, "largest generated carrier")->capture_default_str();
  check->add_flag("--fixtures", src.fixtures, "use the built-in fixtures");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*downsets) return cmd_downsets(file);
    if (*sheaf_check) return cmd_sheaf_check(file);
    if (*sheafify) return cmd_sheafify(file);
    if (*delta) return cmd_delta(file);
    if (*theta) return cmd_theta(file);
    if (*check) return cmd_suite(suite, src);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
