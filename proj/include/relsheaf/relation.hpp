#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "relsheaf/error.hpp"

namespace relsheaf {

/// A finite set of named members. Carriers are nominal: two sets with the
/// same members but different labels are different objects.
struct FiniteSet {
  std::string label;
  std::vector<std::string> members;

  std::size_t size() const noexcept { return members.size(); }

  std::size_t index_of(const std::string& m) const {
    auto it = std::find(members.begin(), members.end(), m);
    if (it == members.end())
      throw error(errc::invalid_argument, "'" + m + "' is not a member of " + label);
    return static_cast<std::size_t>(it - members.begin());
  }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;
};

/// A relation R : A → B, stored as a subset of B × A. Pairs are always
/// addressed target first: contains(b, a).
class Relation {
 public:
  Relation(FiniteSet source, FiniteSet target)
      : source_(std::move(source)), target_(std::move(target)),
        pairs_(source_.size() * target_.size(), false) {}

  const FiniteSet& source() const noexcept { return source_; }
  const FiniteSet& target() const noexcept { return target_; }

  bool contains(std::size_t b, std::size_t a) const { return pairs_[b * source_.size() + a]; }
  void set(std::size_t b, std::size_t a, bool v = true) { pairs_[b * source_.size() + a] = v; }

  std::size_t count() const {
    return static_cast<std::size_t>(std::count(pairs_.begin(), pairs_.end(), true));
  }

  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  FiniteSet source_;
  FiniteSet target_;
  std::vector<bool> pairs_;
};

inline void require_same(const FiniteSet& a, const FiniteSet& b, const char* what) {
  if (!(a == b))
    throw error(errc::carrier_mismatch,
                std::string(what) + ": carrier " + a.label + " does not match " + b.label);
}

/// S ∘ R for R : A → B and S : B → C.
inline Relation compose(const Relation& s, const Relation& r) {
  require_same(s.source(), r.target(), "compose");
  Relation out(r.source(), s.target());
  const std::size_t nb = r.target().size();
  for (std::size_t c = 0; c < s.target().size(); ++c)
    for (std::size_t a = 0; a < r.source().size(); ++a)
      for (std::size_t b = 0; b < nb; ++b)
        if (s.contains(c, b) && r.contains(b, a)) {
          out.set(c, a);
          break;
        }
  return out;
}

inline Relation converse(const Relation& r) {
  Relation out(r.target(), r.source());
  for (std::size_t b = 0; b < r.target().size(); ++b)
    for (std::size_t a = 0; a < r.source().size(); ++a)
      if (r.contains(b, a)) out.set(a, b);
  return out;
}

inline Relation diagonal(const FiniteSet& a) {
  Relation out(a, a);
  for (std::size_t i = 0; i < a.size(); ++i) out.set(i, i);
  return out;
}

/// Inclusion order on Rel(A, B).
inline bool leq(const Relation& r, const Relation& s) {
  require_same(r.source(), s.source(), "leq");
  require_same(r.target(), s.target(), "leq");
  for (std::size_t b = 0; b < r.target().size(); ++b)
    for (std::size_t a = 0; a < r.source().size(); ++a)
      if (r.contains(b, a) && !s.contains(b, a)) return false;
  return true;
}

inline std::string to_string(const Relation& r) {
  std::string out = "{";
  bool first = true;
  for (std::size_t b = 0; b < r.target().size(); ++b)
    for (std::size_t a = 0; a < r.source().size(); ++a)
      if (r.contains(b, a)) {
        if (!first) out += ",";
        out += "(" + r.target().members[b] + "," + r.source().members[a] + ")";
        first = false;
      }
  return out + "}";
}

}  // namespace relsheaf
