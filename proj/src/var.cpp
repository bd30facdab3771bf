#include "intfac/var.hpp"

#include <charconv>

namespace intfac {

std::string VarId::name() const
{
    if (is_x()) return "x";
    if (is_jet()) return "y" + std::to_string(jet_order());
    if (is_c()) return "c";
    return "a" + std::to_string(aux_index());
}

std::optional<VarId> VarId::from_name(std::string_view name)
{
    if (name == "x") return x();
    if (name == "c") return c();
    if (name.size() < 2 || (name[0] != 'y' && name[0] != 'a')) return std::nullopt;
    unsigned value = 0;
    auto digits = name.substr(1);
    if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return std::nullopt;
    if (name[0] == 'y') {
        if (value >= kMaxJet) return std::nullopt;
        return y(value);
    }
    if (value == 0 || value >= kMaxAux) return std::nullopt;
    return aux(value);
}

} // namespace intfac
