#pragma once

#include <optional>

#include "relsheaf/io.hpp"

namespace support {

using namespace relsheaf;

template <class F>
std::optional<errc> code_of(F&& f) {
  try {
    f();
  } catch (const error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline Algebra H2() { return fixture_algebra("H2"); }
inline Algebra C3() { return fixture_algebra("C3"); }
inline Algebra B4() { return fixture_algebra("B4"); }

inline FiniteSet points(const std::string& label, std::size_t n) {
  FiniteSet s{label, {}};
  for (std::size_t i = 0; i < n; ++i) s.members.push_back(label + std::to_string(i));
  return s;
}

// elements of h below every member of m, by scanning
inline bool below_all(const HeytingAlgebra& h, Elem x, Mask m) {
  for (Elem e = 0; e < h.size(); ++e)
    if (contains(m, e) && !h.leq(x, e)) return false;
  return true;
}

}  // namespace support
