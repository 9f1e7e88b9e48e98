#include "tropcram/rational.hpp"

#include <algorithm>

#include "tropcram/error.hpp"

namespace tropcram {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](std::string_view part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw ParseError("malformed rational literal '" + s + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

std::string to_decimal(const Rational& value, int digits) {
  mpz_class scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  mpz_class num = abs(value.get_num()) * scale * 2 + value.get_den();
  mpz_class den = value.get_den() * 2;
  mpz_class scaled = num / den;  // floor(|v|*scale + 1/2)
  std::string digits_str = scaled.get_str();
  if (static_cast<int>(digits_str.size()) <= digits) {
    digits_str.insert(0, static_cast<std::size_t>(digits + 1) - digits_str.size(), '0');
  }
  std::string out = digits_str.substr(0, digits_str.size() - static_cast<std::size_t>(digits));
  if (digits > 0) out += "." + digits_str.substr(digits_str.size() - static_cast<std::size_t>(digits));
  if (value < 0 && scaled != 0) out.insert(0, "-");
  return out;
}

Rational min_of(const RationalVector& values) {
  return *std::min_element(values.begin(), values.end());
}

Rational max_of(const RationalVector& values) {
  return *std::max_element(values.begin(), values.end());
}

}  // namespace tropcram
