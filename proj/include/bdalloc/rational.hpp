#ifndef BDALLOC_RATIONAL_HPP
#define BDALLOC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "bdalloc/errors.hpp"

namespace bdalloc {

// Exact fraction. mpq_class keeps every value canonical (gcd 1, positive
// denominator) as long as results come from its own arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw InvariantError("rational with zero denominator");
  Rational r{Integer{static_cast<long>(num)}, Integer{static_cast<long>(den)}};
  r.canonicalize();
  return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvariantError("rational with zero denominator");
  Rational r{num, den};
  r.canonicalize();
  return r;
}

/// Canonical "p/q" text; integers print without a denominator ("1", "-3").
inline std::string to_string(const Rational& r) { return r.get_str(10); }

/// Decimal approximation for human-readable output only.
inline std::string to_approx_string(const Rational& r, int digits = 6) {
  mpf_class f(r, 128);
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
  if (mant.empty()) return "0";
  bool neg = mant.front() == '-';
  if (neg) mant.erase(0, 1);
  std::string out;
  if (exp <= 0) {
    out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + mant;
  } else if (static_cast<std::size_t>(exp) >= mant.size()) {
    out = mant + std::string(static_cast<std::size_t>(exp) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<std::size_t>(exp)) + "." +
          mant.substr(static_cast<std::size_t>(exp));
  }
  return neg ? "-" + out : out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

/// Parses "p", "p/q" or a plain decimal "d.ddd" into an exact value.
/// Throws InputError on anything else (including a zero denominator).
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
      throw InputError("malformed rational '" + std::string(text) + "'");
    Integer n{std::string(num), 10}, d{std::string(den), 10};
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    r = make_rational(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !detail::all_digits(whole)) ||
        (!frac.empty() && !detail::all_digits(frac)))
      throw InputError("malformed decimal '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer n{std::string(whole) + std::string(frac), 10};
    r = make_rational(n, scale);
  } else {
    if (!detail::all_digits(s))
      throw InputError("malformed rational '" + std::string(text) + "'");
    r = Rational{Integer{std::string(s), 10}};
  }
  return neg ? Rational{-r} : r;
}

}  // namespace bdalloc

#endif  // BDALLOC_RATIONAL_HPP
