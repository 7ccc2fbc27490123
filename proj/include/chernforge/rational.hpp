#pragma once

// Exact scalars: arbitrary-precision rationals (GMP) and Gaussian rationals.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace chernforge {

using Rational = mpq_class;
using Integer = mpz_class;

/// Thrown when an operation's precondition is violated by caller input.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when two routes that must agree do not. Never expected; signals a bug.
struct DefectError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Malformed textual input, with a 1-based line/column position.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Canonical text of a rational: "a" or "a/b" with b > 0.
std::string to_string(const Rational& q);

/// Parses "a" or "a/b" (optional sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Representative of q mod 1 in [0, 1).
Rational mod_one(const Rational& q);

bool is_integer(const Rational& q);

Rational factorial(unsigned n);

/// a + b i with a, b rational.
class Gauss {
 public:
  Gauss() = default;
  Gauss(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gauss(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  Gauss(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)

  static Gauss i() { return Gauss(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Gauss conj() const { return Gauss(re_, -im_); }
  /// Multiplication by the imaginary unit.
  Gauss times_i() const { return Gauss(-im_, re_); }

  Gauss& operator+=(const Gauss& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gauss& operator-=(const Gauss& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gauss& operator*=(const Gauss& o) {
    Rational r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  Gauss& operator*=(const Rational& q) {
    re_ *= q;
    im_ *= q;
    return *this;
  }

  friend Gauss operator+(Gauss a, const Gauss& b) { return a += b; }
  friend Gauss operator-(Gauss a, const Gauss& b) { return a -= b; }
  friend Gauss operator*(Gauss a, const Gauss& b) { return a *= b; }
  friend Gauss operator*(Gauss a, const Rational& q) { return a *= q; }
  friend Gauss operator-(const Gauss& a) { return Gauss(-a.re_, -a.im_); }
  friend bool operator==(const Gauss& a, const Gauss& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Canonical text "(a+bi)" / "(a-bi)".
std::string to_string(const Gauss& z);

/// Parses the canonical "(a+bi)" shape. Throws std::invalid_argument.
Gauss parse_gauss(std::string_view text);

}  // namespace chernforge
