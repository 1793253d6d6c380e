#include "cubictsp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cubictsp {
namespace {

bool is_integer_text(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_text(num_text, true)) {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class den = 1;
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_text(den_text, false)) {
      throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    }
    den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  }
  Rational r(parse_integer(num_text), den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

}  // namespace cubictsp
