#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <string_view>

namespace tightham {

// Exact arithmetic for every threshold comparison; floats never decide a verdict.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational ratio(std::int64_t num, std::int64_t den) { return Rational(num, den); }

// Parses "0.799", ".33", "1/3", "2", "-0.5e-1" is not accepted (no exponents).
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);

double to_double(const Rational& r);

BigInt floor(const Rational& r);
BigInt ceil(const Rational& r);

}  // namespace tightham
