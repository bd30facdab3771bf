#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace intfac {

// Position of a symbol in the fixed alphabet
//   x < y0 < y1 < ... < y{kMaxJet-1} < c < a1 < a2 < ...
// Larger ids are larger variables in the graded-lex term order.
class VarId {
public:
    static constexpr std::uint16_t kMaxJet = 48;
    static constexpr std::uint16_t kMaxAux = 256;

    constexpr VarId() = default;
    constexpr explicit VarId(std::uint16_t index) : index_(index) {}

    static constexpr VarId x() { return VarId(0); }
    static constexpr VarId y(unsigned j) { return VarId(static_cast<std::uint16_t>(1 + j)); }
    static constexpr VarId c() { return VarId(1 + kMaxJet); }
    // a1, a2, ...: auxiliary indeterminates (exponents, generic symbols)
    static constexpr VarId aux(unsigned i) { return VarId(static_cast<std::uint16_t>(1 + kMaxJet + i)); }

    constexpr std::uint16_t index() const { return index_; }

    constexpr bool is_x() const { return index_ == 0; }
    constexpr bool is_jet() const { return index_ >= 1 && index_ <= kMaxJet; }
    constexpr unsigned jet_order() const { return index_ - 1u; }
    constexpr bool is_c() const { return index_ == 1 + kMaxJet; }
    constexpr bool is_aux() const { return index_ > 1 + kMaxJet; }
    constexpr unsigned aux_index() const { return index_ - (1u + kMaxJet); }
    // x and the y_j: the coordinates of jet space.
    constexpr bool is_space() const { return index_ <= kMaxJet; }

    std::string name() const;
    static std::optional<VarId> from_name(std::string_view name);

    friend constexpr auto operator<=>(VarId, VarId) = default;

private:
    std::uint16_t index_ = 0;
};

} // namespace intfac
