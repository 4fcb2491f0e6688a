#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace relsheaf {

enum class errc {
  not_a_poset,
  not_a_lattice,
  no_bounds,
  not_heyting,
  carrier_mismatch,
  mode_error,
  not_a_cover,
  naturality_violation,
  order_error,
  not_a_sheaf,
  parse_error,
  bounds_error,
  unknown_suite,
  invalid_argument,
  law_violation,
};

inline constexpr std::string_view to_string(errc e) {
  switch (e) {
    case errc::not_a_poset: return "NotAPoset";
    case errc::not_a_lattice: return "NotALattice";
    case errc::no_bounds: return "NoBounds";
    case errc::not_heyting: return "NotHeyting";
    case errc::carrier_mismatch: return "CarrierMismatch";
    case errc::mode_error: return "ModeError";
    case errc::not_a_cover: return "NotACover";
    case errc::naturality_violation: return "NaturalityViolation";
    case errc::order_error: return "OrderError";
    case errc::not_a_sheaf: return "NotASheaf";
    case errc::parse_error: return "ParseError";
    case errc::bounds_error: return "BoundsError";
    case errc::unknown_suite: return "UnknownSuite";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::law_violation: return "LawViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library. `code()` identifies the failure
/// class; `what()` carries a human readable description with the witness.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code), detail_(detail) {}

  errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  errc code_;
  std::string detail_;
};

class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& reason)
      : error(errc::parse_error, "line " + std::to_string(line) + ": " + reason), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Outcome of a law check. A failing verdict names the violated law and
/// always carries a counterexample.
struct Verdict {
  bool holds = true;
  std::string law;
  std::string witness;

  static Verdict pass() { return {}; }
  static Verdict fail(std::string law, std::string witness) {
    return {false, std::move(law), std::move(witness)};
  }

  explicit operator bool() const noexcept { return holds; }
};

}  // namespace relsheaf
