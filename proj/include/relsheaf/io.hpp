#pragma once

// Line-oriented text formats for lattices, presheaves and pre-transformations.
//
//   [lattice]                [presheaf]                  [reltrans]
//   name = B4                name = NSH                  name = PER
//   elements = ⊥ a b ⊤       lattice = B4                lattice = H2
//   leq = ⊥<=a ⊥<=b ...      carrier ⊤ = x y             carrier = 1 2 3
//                            restrict ⊤->a : x=p y=p     M: 1 2 = ⊤
//                                                        fiber: 1 2 = ⊥ ⊤
//
// Blank lines and lines starting with '#' are ignored. A lattice name is
// resolved against earlier sections of the same file, then the built-in
// fixtures, then as a path relative to the file.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "relsheaf/fixtures.hpp"
#include "relsheaf/presheaf.hpp"
#include "relsheaf/pretrans.hpp"

namespace relsheaf {

struct Document {
  std::vector<Algebra> lattices;
  std::vector<Presheaf> presheaves;
  std::vector<PreTransformation> reltrans;
};

inline Document parse_document(std::string_view text, const std::filesystem::path& base_dir = {});

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

struct SectionLine {
  std::size_t number;
  std::vector<std::string> tokens;
};

struct Section {
  std::string kind;
  std::size_t header;
  std::vector<SectionLine> lines;
};

// Splits "lhs<sep>rhs" at the first occurrence of sep.
inline std::pair<std::string, std::string> split_at(const std::string& tok, std::string_view sep,
                                                    std::size_t line) {
  const auto pos = tok.find(sep);
  if (pos == std::string::npos || pos == 0 || pos + sep.size() == tok.size())
    throw parse_error(line, "expected x" + std::string(sep) + "y, got '" + tok + "'");
  return {tok.substr(0, pos), tok.substr(pos + sep.size())};
}

inline void expect(const SectionLine& l, std::size_t i, std::string_view tok) {
  if (l.tokens.size() <= i || l.tokens[i] != tok)
    throw parse_error(l.number, "expected '" + std::string(tok) + "'");
}

inline std::string single_value(const SectionLine& l) {
  expect(l, 1, "=");
  if (l.tokens.size() != 3) throw parse_error(l.number, "expected exactly one value after '='");
  return l.tokens[2];
}

inline void check_distinct(const std::vector<std::string>& names, std::size_t line) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw parse_error(line, "duplicate name '" + names[i] + "'");
}

// Re-raises a validation failure from the core modules with its position.
template <class F>
auto positioned(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const parse_error&) {
    throw;
  } catch (const error& e) {
    throw error(e.code(), "line " + std::to_string(line) + ": " + e.detail());
  }
}

inline Elem element(const HeytingAlgebra& h, const std::string& name, std::size_t line) {
  auto e = h.find(name);
  if (!e) throw parse_error(line, "'" + name + "' is not an element of " + h.label());
  return *e;
}

inline std::size_t member(const std::vector<std::string>& c, const std::string& name, std::size_t line,
                          const std::string& where) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == name) return i;
  throw parse_error(line, "'" + name + "' is not in " + where);
}

class Parser {
 public:
  explicit Parser(std::filesystem::path base) : base_(std::move(base)) {}

  Document run(std::string_view text) {
    auto sections = split(text);
    if (sections.empty()) throw parse_error(1, "no section found");
    for (const auto& s : sections) {
      if (s.kind == "lattice") doc_.lattices.push_back(lattice(s));
      else if (s.kind == "presheaf") doc_.presheaves.push_back(presheaf(s));
      else if (s.kind == "reltrans") doc_.reltrans.push_back(reltrans(s));
      else throw parse_error(s.header, "unknown section [" + s.kind + "]");
    }
    return std::move(doc_);
  }

 private:
  static std::vector<Section> split(std::string_view text) {
    std::vector<Section> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++number;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      auto tokens = split_ws(line);
      if (tokens.empty() || tokens[0][0] == '#') continue;
      if (tokens[0].front() == '[') {
        if (tokens.size() != 1 || tokens[0].back() != ']' || tokens[0].size() < 3)
          throw parse_error(number, "malformed section header");
        out.push_back({tokens[0].substr(1, tokens[0].size() - 2), number, {}});
        continue;
      }
      if (out.empty()) throw parse_error(number, "content before the first section header");
      out.back().lines.push_back({number, std::move(tokens)});
    }
    return out;
  }

  Algebra resolve(const std::string& name, std::size_t line) {
    for (auto it = doc_.lattices.rbegin(); it != doc_.lattices.rend(); ++it)
      if ((*it)->label() == name) return *it;
    if (auto t = fixtures::text(name)) {
      auto d = parse_document(*t);
      if (!d.lattices.empty()) return d.lattices.front();
    }
    const auto path = base_ / name;
    std::ifstream in(path);
    if (!in) throw parse_error(line, "unknown lattice '" + name + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    auto d = parse_document(buf.str(), path.parent_path());
    if (d.lattices.size() == 1) return d.lattices.front();
    for (const auto& l : d.lattices)
      if (l->label() == name || path.stem() == l->label()) return l;
    throw parse_error(line, "file '" + name + "' does not define exactly one lattice");
  }

  Algebra lattice(const Section& s) {
    std::string name = "L";
    std::optional<std::vector<std::string>> elements;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& l : s.lines) {
      const auto& key = l.tokens[0];
      if (key == "name") {
        name = single_value(l);
      } else if (key == "elements") {
        expect(l, 1, "=");
        if (elements) throw parse_error(l.number, "elements declared twice");
        elements.emplace(l.tokens.begin() + 2, l.tokens.end());
        if (elements->empty()) throw parse_error(l.number, "a lattice needs at least one element");
        check_distinct(*elements, l.number);
      } else if (key == "leq") {
        expect(l, 1, "=");
        for (std::size_t i = 2; i < l.tokens.size(); ++i) pairs.push_back(split_at(l.tokens[i], "<=", l.number));
      } else {
        throw parse_error(l.number, "unexpected key '" + key + "' in [lattice]");
      }
    }
    if (!elements) throw parse_error(s.header, "[lattice] without elements");
    return positioned(s.header, [&] { return build_algebra(name, *elements, pairs); });
  }

  Presheaf presheaf(const Section& s) {
    std::string name = "F";
    Algebra h;
    std::map<Elem, std::vector<std::string>> carriers;
    std::vector<const SectionLine*> restricts;
    for (const auto& l : s.lines) {
      const auto& key = l.tokens[0];
      if (key == "name") {
        name = single_value(l);
      } else if (key == "lattice") {
        if (h) throw parse_error(l.number, "lattice declared twice");
        h = resolve(single_value(l), l.number);
      } else if (key == "carrier") {
        if (!h) throw parse_error(l.number, "carrier before lattice");
        if (l.tokens.size() < 3) throw parse_error(l.number, "expected 'carrier h = x y ...'");
        const Elem e = element(*h, l.tokens[1], l.number);
        expect(l, 2, "=");
        std::vector<std::string> members(l.tokens.begin() + 3, l.tokens.end());
        check_distinct(members, l.number);
        if (!carriers.emplace(e, std::move(members)).second)
          throw parse_error(l.number, "carrier of " + l.tokens[1] + " declared twice");
      } else if (key == "restrict") {
        restricts.push_back(&l);
      } else {
        throw parse_error(l.number, "unexpected key '" + key + "' in [presheaf]");
      }
    }
    if (!h) throw parse_error(s.header, "[presheaf] without lattice");
    std::vector<std::vector<std::string>> cs;
    for (Elem e = 0; e < h->size(); ++e) {
      auto it = carriers.find(e);
      if (it == carriers.end()) throw parse_error(s.header, "no carrier for " + h->name(e));
      cs.push_back(it->second);
    }
    Presheaf f(h, name, std::move(cs));
    for (const auto* l : restricts) {
      if (l->tokens.size() < 3) throw parse_error(l->number, "expected 'restrict h->k : x=p ...'");
      const auto [hs, ks] = split_at(l->tokens[1], "->", l->number);
      expect(*l, 2, ":");
      const Elem from = element(*h, hs, l->number), to = element(*h, ks, l->number);
      if (f.has_restriction(from, to) && from != to)
        throw parse_error(l->number, "restriction " + hs + "->" + ks + " given twice");
      std::vector<std::size_t> map(f.carrier_size(from), npos);
      for (std::size_t i = 3; i < l->tokens.size(); ++i) {
        const auto [x, p] = split_at(l->tokens[i], "=", l->number);
        const auto xi = member(f.carrier(from), x, l->number, name + "(" + hs + ")");
        if (map[xi] != npos) throw parse_error(l->number, "'" + x + "' restricted twice");
        map[xi] = member(f.carrier(to), p, l->number, name + "(" + ks + ")");
      }
      for (std::size_t xi = 0; xi < map.size(); ++xi)
        if (map[xi] == npos) throw parse_error(l->number, "no image for '" + f.carrier(from)[xi] + "'");
      positioned(l->number, [&] { f.set_restriction(from, to, std::move(map)); });
    }
    positioned(s.header, [&] { f.complete(); });
    if (auto v = validate_presheaf(f); !v)
      throw error(errc::law_violation, "line " + std::to_string(s.header) + ": " + v.law + " fails at " + v.witness);
    return f;
  }

  PreTransformation reltrans(const Section& s) {
    std::string name = "R";
    Algebra h;
    std::optional<std::vector<std::string>> carrier;
    std::vector<const SectionLine*> entries;
    for (const auto& l : s.lines) {
      const auto& key = l.tokens[0];
      if (key == "name") {
        name = single_value(l);
      } else if (key == "lattice") {
        if (h) throw parse_error(l.number, "lattice declared twice");
        h = resolve(single_value(l), l.number);
      } else if (key == "carrier") {
        expect(l, 1, "=");
        if (carrier) throw parse_error(l.number, "carrier declared twice");
        carrier.emplace(l.tokens.begin() + 2, l.tokens.end());
        check_distinct(*carrier, l.number);
      } else if (key == "M:" || key == "fiber:") {
        entries.push_back(&l);
      } else {
        throw parse_error(l.number, "unexpected key '" + key + "' in [reltrans]");
      }
    }
    if (!h) throw parse_error(s.header, "[reltrans] without lattice");
    if (!carrier) throw parse_error(s.header, "[reltrans] without carrier");
    const FiniteSet set{name, *carrier};
    std::optional<bool> matrix_form;
    FiberMatrix m(h, set, set);
    PreTransformation t(h, set, set);
    std::vector<bool> seen(set.size() * set.size(), false);
    for (const auto* l : entries) {
      const bool is_m = l->tokens[0] == "M:";
      if (matrix_form && *matrix_form != is_m)
        throw parse_error(l->number, "cannot mix 'M:' and 'fiber:' entries");
      matrix_form = is_m;
      if (l->tokens.size() < 4) throw parse_error(l->number, "expected '" + l->tokens[0] + " b a = ...'");
      const auto b = member(set.members, l->tokens[1], l->number, "the carrier");
      const auto a = member(set.members, l->tokens[2], l->number, "the carrier");
      expect(*l, 3, "=");
      if (seen[b * set.size() + a]) throw parse_error(l->number, "entry given twice");
      seen[b * set.size() + a] = true;
      if (is_m) {
        if (l->tokens.size() != 5) throw parse_error(l->number, "expected exactly one element after '='");
        m.set(b, a, element(*h, l->tokens[4], l->number));
      } else {
        Mask fib = 0;
        for (std::size_t i = 4; i < l->tokens.size(); ++i) fib |= bit(element(*h, l->tokens[i], l->number));
        t.set_fiber(b, a, fib);
      }
    }
    if (!matrix_form || *matrix_form) return from_matrix(m);
    return t;
  }

  std::filesystem::path base_;
  Document doc_;
};

}  // namespace detail

inline Document parse_document(std::string_view text, const std::filesystem::path& base_dir) {
  return detail::Parser(base_dir).run(text);
}

inline Document load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw error(errc::invalid_argument, "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path.parent_path());
}

inline Algebra fixture_algebra(std::string_view name) {
  auto t = fixtures::text(name);
  if (!t) throw error(errc::invalid_argument, "no fixture named " + std::string(name));
  auto d = parse_document(*t);
  if (d.lattices.empty()) throw error(errc::invalid_argument, std::string(name) + " is not a lattice");
  return d.lattices.front();
}

inline Presheaf fixture_presheaf(std::string_view name) {
  auto t = fixtures::text(name);
  if (!t) throw error(errc::invalid_argument, "no fixture named " + std::string(name));
  auto d = parse_document(*t);
  if (d.presheaves.empty()) throw error(errc::invalid_argument, std::string(name) + " is not a presheaf");
  return d.presheaves.front();
}

inline PreTransformation fixture_reltrans(std::string_view name) {
  auto t = fixtures::text(name);
  if (!t) throw error(errc::invalid_argument, "no fixture named " + std::string(name));
  auto d = parse_document(*t);
  if (d.reltrans.empty()) throw error(errc::invalid_argument, std::string(name) + " is not a pre-transformation");
  return d.reltrans.front();
}

/// True when `h` is one of the built-in lattices, so printed files can
/// refer to it by name alone.
inline bool is_fixture_algebra(const Algebra& h) {
  auto t = fixtures::text(h->label());
  if (!t) return false;
  auto d = parse_document(*t);
  return !d.lattices.empty() && same_algebra(d.lattices.front(), h);
}

inline std::string print_lattice(const HeytingAlgebra& h) {
  std::string out = "[lattice]\nname = " + h.label() + "\nelements =";
  for (const auto& n : h.names()) out += " " + n;
  out += "\nleq =";
  for (const auto& [x, y] : h.covers()) out += " " + h.name(x) + "<=" + h.name(y);
  return out + "\n";
}

namespace detail {

inline std::string lattice_prefix(const Algebra& h, bool embed) {
  if (!embed || is_fixture_algebra(h)) return {};
  return print_lattice(*h) + "\n";
}

}  // namespace detail

/// Canonical text: every carrier, then the restrictions along covering
/// pairs; the rest is derived on load. The lattice section is included
/// when `embed_lattice` is set and the algebra is not a fixture.
inline std::string print_presheaf(const Presheaf& f, bool embed_lattice = true) {
  const auto& h = *f.algebra();
  std::string out = detail::lattice_prefix(f.algebra(), embed_lattice);
  out += "[presheaf]\nname = " + f.name() + "\nlattice = " + h.label() + "\n";
  for (Elem e = 0; e < h.size(); ++e) {
    out += "carrier " + h.name(e) + " =";
    for (const auto& x : f.carrier(e)) out += " " + x;
    out += "\n";
  }
  for (const auto& [k, e] : h.covers()) {
    out += "restrict " + h.name(e) + "->" + h.name(k) + " :";
    for (std::size_t x = 0; x < f.carrier_size(e); ++x)
      out += " " + f.carrier(e)[x] + "=" + f.carrier(k)[f.restrict(e, k, x)];
    out += "\n";
  }
  return out;
}

/// Canonical text of an endo pre-transformation: the matrix form when every
/// fiber is principal (entries equal to ⊥ omitted), the fiber form
/// otherwise (empty fibers omitted).
inline std::string print_reltrans(const PreTransformation& t, bool embed_lattice = true) {
  if (!t.is_endo()) throw error(errc::carrier_mismatch, "only endo pre-transformations have a text form");
  const auto& h = *t.algebra();
  const auto& c = t.source();
  std::string out = detail::lattice_prefix(t.algebra(), embed_lattice);
  out += "[reltrans]\nname = " + c.label + "\nlattice = " + h.label() + "\ncarrier =";
  for (const auto& x : c.members) out += " " + x;
  out += "\n";
  const bool matrix = t.is_infima_preserving();
  bool printed = false;
  for (std::size_t b = 0; b < c.size(); ++b)
    for (std::size_t a = 0; a < c.size(); ++a) {
      const Mask fib = t.fiber(b, a);
      if (matrix) {
        const Elem e = h.sup(fib);
        if (e != h.bottom()) out += "M: " + c.members[b] + " " + c.members[a] + " = " + h.name(e) + "\n";
      } else if (fib != 0 || (!printed && b + 1 == c.size() && a + 1 == c.size())) {
        printed = true;
        out += "fiber: " + c.members[b] + " " + c.members[a] + " =";
        for_each_elem(fib, [&](Elem e) { out += " " + h.name(e); });
        out += "\n";
      }
    }
  return out;
}

}  // namespace relsheaf
