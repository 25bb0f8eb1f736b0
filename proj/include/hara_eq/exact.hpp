#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace hara_eq {

// GMP requires canonical operands; the two-argument mpq_class constructor
// does not canonicalize on its own.
inline mpq_class make_rational(const mpz_class& num, const mpz_class& den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline mpq_class make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
}

inline mpq_class pow_int(const mpq_class& base, long exponent) {
  mpq_class result = 1;
  mpq_class b = base;
  unsigned long k = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  while (k > 0) {
    if (k & 1UL) result *= b;
    b *= b;
    k >>= 1U;
  }
  return exponent < 0 ? mpq_class(1 / result) : result;
}

// Accepts "p/q", "p" or a decimal literal (parsed as the exact binary double).
inline mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (text.find('.') != std::string::npos || text.find('e') != std::string::npos ||
      text.find('E') != std::string::npos) {
    q = mpq_class(std::stod(text));
  } else {
    q.set_str(text, 10);
    q.canonicalize();
  }
  return q;
}

}  // namespace hara_eq
