#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ptolemy_lab {

/// Arbitrary-precision rational used by exact mode.
using Rational = mpq_class;

enum class Mode { exact, floating };

inline std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

inline Mode parse_mode(std::string_view s) {
  if (s == "exact") return Mode::exact;
  if (s == "float" || s == "floating") return Mode::floating;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "' (expected exact|float)");
}

/// Relative tolerance for float-mode comparisons. Exact mode ignores it.
struct Tolerance {
  double tau = 1e-9;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

// "-12.5e-3" -> exact rational; returns false when the text is not a plain decimal.
inline bool parse_decimal_exact(const std::string& s, Rational& out) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool seen_digit = false, seen_dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) --exp10;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(s.substr(i), &used);
    } catch (const std::exception&) {
      return false;
    }
    i += used;
    exp10 += e;
  }
  if (i != s.size()) return false;
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  out = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
  out.canonicalize();
  if (neg) out = -out;
  return true;
}

}  // namespace detail

/// Mode-specific arithmetic and comparison policy.
template <typename T>
struct NumericTraits;

template <>
struct NumericTraits<Rational> {
  static constexpr Mode mode = Mode::exact;
  static constexpr bool exact = true;

  static Rational zero() { return Rational(0); }
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_double(double v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.get_d(); }

  static bool leq(const Rational& a, const Rational& b, const Tolerance&) { return a <= b; }
  static bool equal(const Rational& a, const Rational& b, const Tolerance&) { return a == b; }

  /// Accepts "p/q", integers and plain decimals ("0.25", "1e-3"), all exactly.
  static Rational parse(std::string_view text) {
    std::string s = detail::trim(text);
    if (s.empty()) throw ParseError("empty numeric entry");
    Rational r;
    if (s.find('/') != std::string::npos) {
      auto slash = s.find('/');
      std::string num = detail::trim(s.substr(0, slash));
      std::string den = detail::trim(s.substr(slash + 1));
      if (!num.empty() && num[0] == '+') num.erase(0, 1);
      if (num.empty() || den.empty() || den[0] == '-' || den[0] == '+')
        throw ParseError("unparseable rational '" + s + "'");
      try {
        mpz_class n(num, 10), d(den, 10);
        if (d == 0) throw ParseError("zero denominator in '" + s + "'");
        r = Rational(n, d);
        r.canonicalize();
      } catch (const std::invalid_argument&) {
        throw ParseError("unparseable rational '" + s + "'");
      }
      return r;
    }
    if (!detail::parse_decimal_exact(s, r)) throw ParseError("unparseable rational '" + s + "'");
    return r;
  }

  static std::string format(const Rational& v) { return v.get_str(); }
};

template <>
struct NumericTraits<double> {
  static constexpr Mode mode = Mode::floating;
  static constexpr bool exact = false;

  static double zero() { return 0.0; }
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }

  // a <= b accepted when a <= b(1+tau) + tau
  static bool leq(double a, double b, const Tolerance& tol) { return a <= b * (1.0 + tol.tau) + tol.tau; }
  static bool equal(double a, double b, const Tolerance& tol) { return leq(a, b, tol) && leq(b, a, tol); }

  static double parse(std::string_view text) {
    std::string s = detail::trim(text);
    if (s.empty()) throw ParseError("empty numeric entry");
    if (auto slash = s.find('/'); slash != std::string::npos) {
      return NumericTraits<Rational>::parse(s).get_d();
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw ParseError("unparseable number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw ParseError("unparseable number '" + s + "'");
    return v;
  }

  static std::string format(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }
};

template <typename T>
concept MetricScalar = requires { NumericTraits<T>::mode; };

}  // namespace ptolemy_lab
