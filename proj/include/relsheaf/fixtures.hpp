#pragma once

// Texts of the built-in fixtures. The same files live under data/fixtures.

#include <array>
#include <optional>
#include <string_view>
#include <utility>

namespace relsheaf::fixtures {

inline constexpr std::string_view h2 = R"([lattice]
name = H2
elements = ⊥ ⊤
leq = ⊥<=⊤
)";

inline constexpr std::string_view c3 = R"([lattice]
name = C3
elements = ⊥ m ⊤
leq = ⊥<=m m<=⊤
)";

inline constexpr std::string_view b4 = R"([lattice]
name = B4
elements = ⊥ a b ⊤
leq = ⊥<=a ⊥<=b a<=⊤ b<=⊤
)";

inline constexpr std::string_view n5 = R"([lattice]
name = N5
elements = ⊥ a b c ⊤
leq = ⊥<=a ⊥<=b a<=c b<=⊤ c<=⊤
)";

inline constexpr std::string_view dc3 = R"([lattice]
name = D(C3)
elements = {} {⊥} {⊥,m} {⊥,m,⊤}
leq = {}<={⊥} {⊥}<={⊥,m} {⊥,m}<={⊥,m,⊤}
)";

inline constexpr std::string_view sep = R"([presheaf]
name = SEP
lattice = B4
carrier ⊥ = *
carrier a = *
carrier b = *
carrier ⊤ = *
restrict a->⊥ : *=*
restrict b->⊥ : *=*
restrict ⊤->a : *=*
restrict ⊤->b : *=*
)";

inline constexpr std::string_view nsh = R"([presheaf]
name = NSH
lattice = B4
carrier ⊥ = s
carrier a = p
carrier b = q
carrier ⊤ = x y
restrict a->⊥ : p=s
restrict b->⊥ : q=s
restrict ⊤->a : x=p y=p
restrict ⊤->b : x=q y=q
)";

inline constexpr std::string_view mis = R"([presheaf]
name = MIS
lattice = B4
carrier ⊥ = s
carrier a = p
carrier b = q
carrier ⊤ =
restrict a->⊥ : p=s
restrict b->⊥ : q=s
restrict ⊤->a :
restrict ⊤->b :
)";

inline constexpr std::string_view per = R"([reltrans]
name = PER
lattice = H2
carrier = 1 2 3
M: 1 1 = ⊤
M: 1 2 = ⊤
M: 2 1 = ⊤
M: 2 2 = ⊤
M: 3 3 = ⊤
)";

inline constexpr std::array<std::pair<std::string_view, std::string_view>, 9> all{{
    {"H2", h2},
    {"C3", c3},
    {"B4", b4},
    {"N5", n5},
    {"D(C3)", dc3},
    {"SEP", sep},
    {"NSH", nsh},
    {"MIS", mis},
    {"PER", per},
}};

inline std::optional<std::string_view> text(std::string_view name) {
  for (const auto& [n, t] : all)
    if (n == name) return t;
  return std::nullopt;
}

}  // namespace relsheaf::fixtures
