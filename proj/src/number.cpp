#include <skolem/number.hpp>

#include <cctype>

namespace skolem {

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Rational& value)
{
    const Integer num = boost::multiprecision::numerator(value);
    const Integer den = boost::multiprecision::denominator(value);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (! std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text)
{
    bool negative = false;
    if (! text.empty() && text.front() == '-') {
        negative = true;
        text.remove_prefix(1);
    }
    auto slash = text.find('/');
    std::string_view num_text = text.substr(0, slash);
    if (! all_digits(num_text))
        return std::nullopt;
    Integer num{std::string(num_text)};
    Integer den = 1;
    if (slash != std::string_view::npos) {
        std::string_view den_text = text.substr(slash + 1);
        if (! all_digits(den_text))
            return std::nullopt;
        den = Integer{std::string(den_text)};
        if (den == 0)
            return std::nullopt;
    }
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

bool is_integral(const Rational& value) { return boost::multiprecision::denominator(value) == 1; }

Integer floor_div(const Integer& a, const Integer& b)
{
    Integer q = a / b;
    Integer r = a % b;
    if (r != 0 && ((r < 0) != (b < 0)))
        --q;
    return q;
}

Integer mod_floor(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0)
        r += m;
    return r;
}

Integer gcd(const Integer& a, const Integer& b)
{
    Integer x = abs(a), y = abs(b);
    while (y != 0) {
        Integer t = x % y;
        x = y;
        y = t;
    }
    return x;
}

Integer lcm(const Integer& a, const Integer& b)
{
    if (a == 0 || b == 0)
        return 0;
    return abs(a / gcd(a, b) * b);
}

}  // namespace skolem
