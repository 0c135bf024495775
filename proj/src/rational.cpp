#include "vass_asym/rational.hpp"

#include <cctype>
#include <limits>

#include "vass_asym/errors.hpp"

namespace vass {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_integer_literal(text)) {
    throw SchemaError("not an integer literal: '" + std::string(text) + "'");
  }
  return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(text));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-') {
    throw SchemaError("not a rational literal 'a/b': '" + std::string(text) + "'");
  }
  Integer d(std::string(den), 10);
  if (d == 0) throw SchemaError("zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(std::string(num), 10), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

bool fits_int64(const Integer& z) {
  static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()), 10);
  static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()), 10);
  return z >= lo && z <= hi;
}

std::int64_t to_int64(const Integer& z) {
  if (!fits_int64(z)) throw ValidationError("integer does not fit in 64 bits: " + z.get_str());
  return std::stoll(z.get_str());
}

std::uint64_t scaled_threshold_2_64(const Rational& q) {
  if (q >= 1) return std::numeric_limits<std::uint64_t>::max();
  if (q <= 0) return 0;
  Integer scaled = q.get_num();
  scaled <<= 64;
  scaled /= q.get_den();  // floor for nonnegative operands
  return std::stoull(scaled.get_str());
}

Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

}  // namespace vass
