#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "vancycle/errors.hpp"

namespace vancycle {

/// Exact rational. GMP keeps it canonical (gcd 1, positive denominator).
using Rat = mpq_class;
using BigInt = mpz_class;

inline Rat make_rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline int sign(const Rat& r) { return sgn(r); }
inline int sign(const BigInt& z) { return sgn(z); }

/// "p/q", "-p", or plain integers. Returns nullopt on anything else.
inline std::optional<Rat> try_parse_rat(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
  s = s.substr(b);
  if (s.empty()) return std::nullopt;
  auto digits_ok = [](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
  if (num[0] == '+') num.erase(0, 1);
  BigInt d(den);
  if (d == 0) return std::nullopt;
  Rat r{BigInt(num), d};
  r.canonicalize();
  return r;
}

inline Rat parse_rat(std::string_view text) {
  auto r = try_parse_rat(text);
  if (!r) throw InputError("not a rational number: '" + std::string(text) + "'");
  return *r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline BigInt floor_rat(const Rat& r) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline BigInt ceil_rat(const Rat& r) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// The rational with the smallest denominator in the closed interval [lo, hi]
/// (Stern-Brocot descent via continued fractions).
inline Rat simplest_between(Rat lo, Rat hi) {
  if (lo > hi) std::swap(lo, hi);
  if (lo <= 0 && hi >= 0) return Rat(0);
  if (hi < 0) return -simplest_between(-hi, -lo);
  BigInt fl = floor_rat(lo);
  if (Rat(fl) == lo) return lo;
  if (Rat(fl + 1) <= hi) return Rat(fl + 1);
  // lo and hi share the integer part; recurse on reciprocals of fractional parts.
  Rat inner = simplest_between(1 / (hi - fl), 1 / (lo - fl));
  Rat out = Rat(fl) + 1 / inner;
  out.canonicalize();
  return out;
}

}  // namespace vancycle
