#include "tightham/rational.hpp"

#include <cctype>

#include "tightham/error.hpp"

namespace tightham {

namespace {

BigInt parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) fail(ErrorCode::Parse, "malformed number '" + std::string(whole) + "'");
  BigInt v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) fail(ErrorCode::Parse, "malformed number '" + std::string(whole) + "'");
    v = v * 10 + (ch - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_digits(s.substr(0, slash), text);
    BigInt den = parse_digits(s.substr(slash + 1), text);
    if (den == 0) fail(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
    r = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail(ErrorCode::Parse, "malformed number '" + std::string(text) + "'");
    BigInt whole = ip.empty() ? BigInt(0) : parse_digits(ip, text);
    BigInt frac = fp.empty() ? BigInt(0) : parse_digits(fp, text);
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    r = Rational(whole * scale + frac, scale);
  } else {
    r = Rational(parse_digits(s, text));
  }
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BigInt floor(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num < 0) q -= 1;
  return q;
}

BigInt ceil(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (num % den != 0 && num > 0) q += 1;
  return q;
}

}  // namespace tightham
