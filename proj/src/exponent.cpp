#include "intfac/exponent.hpp"

#include "intfac/errors.hpp"

#include <cctype>

namespace intfac {

ExponentVal ExponentVal::param(const std::string& name, const Rational& coeff)
{
    ExponentVal e;
    if (coeff != 0) e.params_[name] = coeff;
    return e;
}

ExponentVal ExponentVal::operator+(const ExponentVal& o) const
{
    ExponentVal r = *this;
    r.constant_ += o.constant_;
    for (const auto& [name, c] : o.params_) {
        Rational& slot = r.params_[name];
        slot += c;
        if (slot == 0) r.params_.erase(name);
    }
    return r;
}

ExponentVal ExponentVal::operator-() const
{
    ExponentVal r = *this;
    r.constant_ = -r.constant_;
    for (auto& [name, c] : r.params_) c = -c;
    return r;
}

ExponentVal ExponentVal::operator*(const Rational& k) const
{
    if (k == 0) return ExponentVal();
    ExponentVal r = *this;
    r.constant_ *= k;
    for (auto& [name, c] : r.params_) c *= k;
    return r;
}

ExponentVal ExponentVal::bind(const std::map<std::string, Rational>& values) const
{
    ExponentVal r(constant_);
    for (const auto& [name, c] : params_) {
        auto it = values.find(name);
        if (it != values.end()) {
            r.constant_ += c * it->second;
        } else {
            r.params_[name] = c;
        }
    }
    return r;
}

std::string ExponentVal::to_string() const
{
    std::string out;
    auto emit = [&out](const Rational& c, const std::string& sym) {
        Rational a = c < 0 ? Rational(-c) : c;
        if (c < 0) out += '-';
        else if (!out.empty()) out += '+';
        if (sym.empty()) {
            out += a.get_str();
        } else {
            if (a != 1) out += a.get_str() + "*";
            out += sym;
        }
    };
    for (const auto& [name, c] : params_) emit(c, name);
    if (constant_ != 0 || out.empty()) emit(constant_, "");
    return out;
}

ExponentVal ExponentVal::parse(const std::string& text)
{
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& what) -> ExponentVal {
        throw SyntaxError("exponent '" + text + "': " + what);
    };
    auto read_int = [&]() -> std::optional<Integer> {
        skip();
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) return std::nullopt;
        return Integer(text.substr(start, i - start));
    };
    auto read_ident = [&]() -> std::string {
        skip();
        std::size_t start = i;
        if (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
            ++i;
            while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
        }
        return text.substr(start, i - start);
    };

    ExponentVal result;
    bool first = true;
    for (;;) {
        skip();
        if (i >= text.size()) {
            if (first) return fail("empty");
            break;
        }
        Rational sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            return fail("expected '+' or '-'");
        }
        first = false;
        skip();
        if (auto num = read_int()) {
            Rational value(*num);
            skip();
            if (i < text.size() && text[i] == '/') {
                ++i;
                auto den = read_int();
                if (!den || *den == 0) return fail("bad denominator");
                value = Rational(*num, *den);
                value.canonicalize();
            }
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                std::string name = read_ident();
                if (name.empty()) return fail("expected parameter name");
                result = result + param(name, sign * value);
            } else {
                result = result + ExponentVal(sign * value);
            }
        } else {
            std::string name = read_ident();
            if (name.empty()) return fail("unexpected character");
            result = result + param(name, sign);
        }
    }
    return result;
}

std::string exponent_text(const ExponentVal& e)
{
    std::string s = e.to_string();
    if (e.is_integer() && e.constant() >= 0) return s;
    if (e.constant() == 0 && e.params().size() == 1 && e.params().begin()->second == 1) return s;
    return "(" + s + ")";
}

} // namespace intfac
