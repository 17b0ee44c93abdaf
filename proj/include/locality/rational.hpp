#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "locality/error.hpp"

namespace locality {

using Rational = mpq_class;
using BigInt = mpz_class;

/// "num/den" (or just "num" when den == 1).
inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) {
    throw FormatError("invalid rational literal '" + s + "'");
  }
  if (q.get_den() == 0) throw FormatError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Rational rpow(const Rational& base, unsigned long exp) {
  BigInt num = ipow(base.get_num(), exp);
  BigInt den = ipow(base.get_den(), exp);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// Exact test of value <= offset + root^(1/k) for root >= 0, k >= 1.
inline bool at_most_offset_plus_root(const Rational& value, const Rational& offset,
                                     const Rational& root, unsigned long k) {
  if (value <= offset) return true;
  return rpow(value - offset, k) <= root;
}

inline Rational ceil(const Rational& q) {
  BigInt out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(out);
}

inline Rational floor(const Rational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(out);
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace locality
