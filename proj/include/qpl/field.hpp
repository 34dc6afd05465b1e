#pragma once

// Prime fields, exact rationals and the library's exception types.

#include <boost/rational.hpp>

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qpl {

/// Malformed arguments: shape mismatches, singular matrices, bad denominators.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A text file could not be parsed. Line and column are 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An enumeration would exceed its configured budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// An operation was called on data that does not satisfy its precondition.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Residue = std::uint32_t;
using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Parses "p/r" or "p". The result is reduced; zero denominators are rejected.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> std::int64_t {
    if (s.empty()) throw InputError("malformed rational '" + std::string(text) + "'");
    std::int64_t value = 0;
    std::size_t i = 0;
    bool negative = false;
    if (s[0] == '-') {
      negative = true;
      i = 1;
    }
    if (i == s.size()) throw InputError("malformed rational '" + std::string(text) + "'");
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw InputError("malformed rational '" + std::string(text) + "'");
      value = value * 10 + (s[i] - '0');
      if (value > (std::int64_t{1} << 40)) throw InputError("rational out of range '" + std::string(text) + "'");
    }
    return negative ? -value : value;
  };
  const auto slash = text.find('/');
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = slash == std::string_view::npos ? 1 : parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

inline bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// The field F_q of residues modulo a prime q.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw InputError("field order " + std::to_string(q) + " is not prime");
  }

  std::uint32_t order() const noexcept { return q_; }

  Residue reduce(std::int64_t x) const noexcept {
    const auto q = static_cast<std::int64_t>(q_);
    x %= q;
    return static_cast<Residue>(x < 0 ? x + q : x);
  }
  Residue add(Residue a, Residue b) const noexcept {
    const Residue s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept { return a >= b ? a - b : a + q_ - b; }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : q_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>((std::uint64_t{a} * b) % q_);
  }
  Residue pow(Residue a, std::uint64_t e) const noexcept {
    Residue result = 1 % q_;
    while (e > 0) {
      if (e & 1) result = mul(result, a);
      a = mul(a, a);
      e >>= 1;
    }
    return result;
  }
  /// Multiplicative inverse; a must be nonzero.
  Residue inv(Residue a) const {
    if (a == 0) throw InputError("inverse of zero");
    return pow(a, q_ - 2);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t q_;
};

/// q^e with overflow detection; returns false on overflow.
inline bool checked_pow(std::uint64_t q, std::size_t e, std::uint64_t& out) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, q, &r)) return false;
  }
  out = r;
  return true;
}

}  // namespace qpl
