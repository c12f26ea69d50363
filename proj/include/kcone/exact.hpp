#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kcone {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Base of all errors raised by the library. Subclasses map onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: unknown type labels, bad weights, bad JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Orbit data for a type is not shipped with the library.
class TableUnavailable : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured resource cap.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A class reaches outside the window of a truncated computation.
class BoundTooSmall : public Error {
 public:
  using Error::Error;
};

/// Arguments are individually valid but do not fit together.
class InconsistentInput : public Error {
 public:
  using Error::Error;
};

/// Something that cannot happen did; indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

inline std::string to_string(Rational const& q) {
  return q.str();
}

/// Parses "p" or "p/q" into a rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      if (s.empty()) throw std::invalid_argument("empty");
      return Rational(Integer(s));
    }
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (std::exception const&) {
    throw ParseError("not a rational number: '" + s + "'");
  }
}

/// Exact integer quotient; throws if `den` does not divide `num`.
inline Integer exact_div(Integer const& num, Integer const& den) {
  Integer q, r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0) throw InternalError("inexact integer division");
  return q;
}

inline bool fits_int64(Integer const& v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace kcone
