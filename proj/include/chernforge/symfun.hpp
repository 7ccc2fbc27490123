#pragma once

// Exact graded polynomial algebra for the universal Chern polynomials.
//
// A GradedPoly lives in Q[s1, s2, ..., s1', s2', ...] with deg(s_j) = deg(s_j') = j.
// The unprimed variables stand for Chern character components ch_j (or for
// elementary symmetric functions, depending on context); the primed alphabet is
// a second copy used by the Whitney-sum identity.

#include "chernforge/rational.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chernforge {

struct Var {
  int index = 1;  // j >= 1
  bool primed = false;

  friend auto operator<=>(const Var& a, const Var& b) {
    if (a.primed != b.primed) return a.primed <=> b.primed;
    return a.index <=> b.index;
  }
  friend bool operator==(const Var&, const Var&) = default;
};

/// Sorted (variable, exponent) pairs; exponents positive.
using Monomial = std::vector<std::pair<Var, int>>;

int weighted_degree(const Monomial& m);

/// Graded order: weighted degree ascending, then higher powers of earlier
/// variables first (s1^3 < s1*s2 < s3).
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class GradedPoly {
 public:
  using Terms = std::map<Monomial, Rational, MonomialLess>;

  GradedPoly() = default;
  static GradedPoly constant(const Rational& c);
  static GradedPoly variable(int index, bool primed = false);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;

  /// Truncation bound, when this polynomial is marked truncated.
  std::optional<int> truncation() const { return trunc_; }
  GradedPoly truncated(int bound) const;

  bool is_homogeneous(int degree) const;
  bool uses_primed() const;
  int max_degree() const;

  GradedPoly& operator+=(const GradedPoly& o);
  GradedPoly& operator-=(const GradedPoly& o);
  GradedPoly& operator*=(const Rational& q);
  friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
  friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
  friend GradedPoly operator-(GradedPoly a) { return a *= Rational(-1); }
  friend GradedPoly operator*(GradedPoly a, const Rational& q) { return a *= q; }
  friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
  friend bool operator==(const GradedPoly& a, const GradedPoly& b) { return a.terms_ == b.terms_; }

  /// Debug rendering, e.g. "1/6*s1^3 - s1*s2 + 2*s3"; "0" for the zero polynomial.
  std::string to_string() const;

  void add_term(const Monomial& m, const Rational& c);

 private:
  Terms terms_;
  std::optional<int> trunc_;

  friend GradedPoly poly_mul(const GradedPoly&, const GradedPoly&, std::optional<int>);
};

GradedPoly poly_add(const GradedPoly& a, const GradedPoly& b);

/// Product; terms of weighted degree above trunc are dropped when a bound is given.
GradedPoly poly_mul(const GradedPoly& a, const GradedPoly& b, std::optional<int> trunc = std::nullopt);

/// Replaces each variable by the given polynomial (ring homomorphism).
GradedPoly substitute(const GradedPoly& p, const std::function<GradedPoly(Var)>& image,
                      std::optional<int> trunc = std::nullopt);

/// C_i with C_i(ch_1, ..., ch_i) = sigma_i, via Newton's identities. Throws for i <= 0.
GradedPoly chern_polynomial(int i);

/// ch_j as a polynomial in the elementary symmetric functions (s_k read as sigma_k).
GradedPoly ch_from_chern(int j);

/// Power sum p_j as a polynomial in the elementary symmetric functions.
GradedPoly power_sum_from_elementary(int j);

enum class Alphabet { unprimed, primed, sum };

/// 1 + C_1 + ... + C_N in the requested alphabet; `sum` substitutes s_j -> s_j + s_j'.
GradedPoly total_chern_truncated(int bound, Alphabet alphabet);

struct SumIdentityResult {
  bool holds = false;
  GradedPoly discrepancy;
};

/// C(s + s') - C(s) C(s') truncated at N.
SumIdentityResult verify_sum_identity(int bound);

/// Truncated polynomial in root variables x_1..x_k, total degree <= D.
/// Supports k <= 16 and D <= 15.
class RootPoly {
 public:
  RootPoly(int variables, int degree_bound);

  int variables() const { return k_; }
  int degree_bound() const { return bound_; }

  static RootPoly constant(int k, int bound, const Rational& c);
  /// x_1^e_1 ... x_k^e_k; dropped if above the bound.
  static RootPoly monomial(int k, int bound, const std::vector<int>& exponents, const Rational& c);

  Rational coefficient(const std::vector<int>& exponents) const;
  std::vector<std::pair<std::vector<int>, Rational>> terms() const;
  std::size_t size() const { return terms_.size(); }

  RootPoly& operator+=(const RootPoly& o);
  RootPoly& operator*=(const Rational& q);
  friend RootPoly operator+(RootPoly a, const RootPoly& b) { return a += b; }
  friend RootPoly operator*(const RootPoly& a, const RootPoly& b);
  friend bool operator==(const RootPoly& a, const RootPoly& b) {
    return a.k_ == b.k_ && a.bound_ == b.bound_ && a.terms_ == b.terms_;
  }

 private:
  using Key = std::uint64_t;
  static int degree_of(Key key, int k);
  Key pack(const std::vector<int>& exponents) const;
  std::vector<int> unpack(Key key) const;

  int k_;
  int bound_;
  std::map<Key, Rational> terms_;
};

/// Image of p under s_j -> ch_j = sum_{i <= k} x_i^j / j!, truncated at D. p must be unprimed.
RootPoly expand_in_roots(const GradedPoly& p, int k, int bound);

}  // namespace chernforge
