#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace skolem {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Renders `p` for integral values and `p/q` otherwise, with a leading `-` when negative.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/// Accepts `-?[0-9]+` and `-?[0-9]+/[0-9]+` (nonzero denominator). Result is normalized.
std::optional<Rational> parse_rational(std::string_view text);

bool is_integral(const Rational& value);

/// Floor division for integers, rounding toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);
/// Least nonnegative residue of `a` modulo positive `m`.
Integer mod_floor(const Integer& a, const Integer& m);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace skolem
