#include "isofill/rational.hpp"

#include <cctype>

#include "isofill/errors.hpp"

namespace isofill {

std::string to_string(const Rational& q)
{
    return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

Integer parse_integer(std::string_view s, std::string_view whole)
{
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
        digits.remove_prefix(1);
    if (digits.empty())
        throw ParseError("bad rational '" + std::string(whole) + "'");
    for (char c : digits)
    {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("bad rational '" + std::string(whole) + "'");
    }
    std::string text(s);
    if (text.front() == '+')
        text.erase(0, 1);
    return Integer(text);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    const Integer num = parse_integer(text.substr(0, slash), text);
    const std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+'))
        throw ParseError("denominator must be unsigned in '" + std::string(text) + "'");
    const Integer den = parse_integer(den_text, text);
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

}  // namespace isofill
