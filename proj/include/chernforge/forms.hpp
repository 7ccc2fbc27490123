#pragma once

// Exact differential forms on flat tori T^n = (R/Z)^n, optionally times [0,1].
//
// A term c * t^m * E_k * dx_I denotes the Fourier mode E_k(x) = exp(2 pi i <k,x>).
// Forms are stored in Chern-normalized units: the exterior derivative acts on
// stored data by d E_k = i * sum_j k_j E_k dx_j (the factor 2 pi is absorbed into
// the normalization of dx), and every integral over a p-dimensional coordinate
// subtorus is normalized so that the integral of dx_I over T_I is 1. With this
// normalization the Chern form of a line bundle has integer periods.
//
// Coordinates are 0-based in the API; the text grammar numbers them from 1.

#include "chernforge/rational.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chernforge {

inline constexpr int kMaxTorusDim = 15;

/// Wedge factors of a term: bit 0 is dt, bit c+1 is dx_c.
using IndexMask = std::uint32_t;
inline constexpr IndexMask kDtBit = 1u;

constexpr IndexMask dx_bit(int coord) { return IndexMask{1} << (coord + 1); }

/// Mask of dx_c for the given coordinates.
IndexMask coords_mask(const std::vector<int>& coords);

/// 0-based coordinates named by a mask (dt excluded).
std::vector<int> mask_coords(IndexMask mask);

int mask_degree(IndexMask mask);

/// All coordinate masks of size p in T^n, in increasing mask order.
std::vector<IndexMask> coordinate_subsets(int n, int p);

/// Sign of dx_A ^ dx_B relative to dx_{A u B} in increasing order; 0 if A and B meet.
int koszul_sign(IndexMask a, IndexMask b);

using Frequency = std::array<std::int32_t, kMaxTorusDim>;

struct TermKey {
  IndexMask mask = 0;
  int t_exp = 0;
  Frequency freq{};

  friend auto operator<=>(const TermKey&, const TermKey&) = default;
  friend bool operator==(const TermKey&, const TermKey&) = default;

  bool zero_frequency() const;
};

/// Integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), 0) {}
  IntMatrix(int rows, int cols, std::vector<std::int64_t> data);
  static IntMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  std::int64_t operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

 private:
  int rows_;
  int cols_;
  std::vector<std::int64_t> data_;
};

class TorusForm {
 public:
  using Terms = std::map<TermKey, Gauss>;

  explicit TorusForm(int n = 0, bool has_t = false);

  static TorusForm constant(int n, const Gauss& c, bool has_t = false);
  /// c * t^t_exp * E_freq * dx_mask. freq must have length n (or be empty for zero frequency).
  static TorusForm term(int n, const Gauss& c, IndexMask mask, const std::vector<int>& freq = {}, int t_exp = 0,
                        bool has_t = false);
  static TorusForm dx(int n, int coord);
  /// dt on [0,1] x T^n.
  static TorusForm dt(int n);
  /// The function t^m on [0,1] x T^n.
  static TorusForm t_power(int n, int m);
  /// Sum of coefficients[I] dx_I over all coordinate sets with a nonzero coefficient.
  static TorusForm harmonic(int n, const std::map<IndexMask, Rational>& coefficients);

  int dimension() const { return n_; }
  bool has_t() const { return has_t_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const TermKey& key, const Gauss& c);
  Gauss coefficient(const TermKey& key) const;

  /// Homogeneous of degree p (vacuously true for the zero form). Degree counts dt.
  bool is_homogeneous(int p) const;
  /// Degree-p part.
  TorusForm component(int p) const;
  /// Largest degree present, -1 for zero.
  int max_degree() const;
  bool only_odd_degrees() const;
  bool only_even_degrees() const;

  /// Conjugation symmetry: coefficient at -k is the conjugate of the coefficient at k.
  bool is_real() const;
  bool is_closed() const;
  /// Translation-invariant (all frequencies zero), real rational coefficients, no t.
  bool is_harmonic() const;

  /// Pullback along [0,1] x T^n -> T^n.
  TorusForm with_t() const;
  /// Restriction to {t = value} x T^n.
  TorusForm restrict_t(const Rational& value) const;
  /// Value of a function (degree-0 form) at the basepoint 0.
  Gauss value_at_origin() const;

  TorusForm& operator+=(const TorusForm& o);
  TorusForm& operator-=(const TorusForm& o);
  TorusForm& operator*=(const Gauss& c);
  friend TorusForm operator+(TorusForm a, const TorusForm& b) { return a += b; }
  friend TorusForm operator-(TorusForm a, const TorusForm& b) { return a -= b; }
  friend TorusForm operator-(TorusForm a) { return a *= Gauss(-1); }
  friend TorusForm operator*(TorusForm a, const Gauss& c) { return a *= c; }
  friend TorusForm operator*(const Gauss& c, TorusForm a) { return a *= c; }
  friend bool operator==(const TorusForm& a, const TorusForm& b) {
    return a.n_ == b.n_ && a.has_t_ == b.has_t_ && a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const TorusForm& o) const;

  int n_;
  bool has_t_;
  Terms terms_;
};

/// Graded-commutative product; the result has t when either factor has.
TorusForm wedge(const TorusForm& a, const TorusForm& b);

TorusForm exterior_d(const TorusForm& a);

/// Integral over T^n of a top-degree form without t.
Gauss integrate_torus(const TorusForm& a);

/// Integral over the coordinate subtorus T_I through 0 (other coordinates set to 0).
/// No closedness check; only degree-|I| terms on exactly dx_I contribute.
Gauss integrate_subtorus(const TorusForm& a, IndexMask coords);

/// Period of a closed homogeneous form over T_I through 0. Rejects non-closed input
/// and degree mismatch.
Gauss period(const TorusForm& a, IndexMask coords);

/// Integration over the [0,1] factor: dt ^ t^m eta -> eta / (m + 1); terms without dt drop.
TorusForm fiber_integrate_t(const TorusForm& a);

/// Integration along the circle in coordinate `axis`: dx_axis is moved to the front
/// (Koszul sign) and removed; terms oscillating along the axis drop. Result lives
/// on T^{n-1}. Satisfies fiber_integrate_circle(d a) = -d fiber_integrate_circle(a).
TorusForm fiber_integrate_circle(const TorusForm& a, int axis);

/// Pullback along y -> A y, T^m -> T^n, where A has n rows (one per coordinate of
/// a's torus) and m columns: frequencies k -> A^T k, dx_j -> sum_l A_jl dy_l.
TorusForm pullback_linear(const TorusForm& a, const IntMatrix& matrix);

/// Homogeneous components omega_0, omega_2, ... of an even form.
class EvenFormBundle {
 public:
  /// All components zero; ambient dimension n (+1 when has_t).
  explicit EvenFormBundle(int n = 0, bool has_t = false);
  /// Splits an even form into components. Rejects odd-degree terms.
  static EvenFormBundle from_form(const TorusForm& even);
  static EvenFormBundle unit(int n, bool has_t = false);

  int dimension() const { return n_; }
  bool has_t() const { return has_t_; }
  /// Number of components: floor(ambient / 2) + 1.
  int size() const { return static_cast<int>(components_.size()); }
  const TorusForm& operator[](int k) const { return components_.at(static_cast<std::size_t>(k)); }
  /// Sets omega_{2k}; rejects a form that is not homogeneous of degree 2k.
  void set(int k, TorusForm form);

  TorusForm total() const;

  EvenFormBundle& operator+=(const EvenFormBundle& o);
  friend EvenFormBundle operator+(EvenFormBundle a, const EvenFormBundle& b) { return a += b; }
  friend bool operator==(const EvenFormBundle& a, const EvenFormBundle& b) {
    return a.n_ == b.n_ && a.has_t_ == b.has_t_ && a.components_ == b.components_;
  }

 private:
  int n_;
  bool has_t_;
  std::vector<TorusForm> components_;
};

/// Product of two even forms, truncated at the ambient dimension.
EvenFormBundle wedge(const EvenFormBundle& a, const EvenFormBundle& b);

/// C_i(omega_2, ..., omega_2i). Requires 2i <= ambient dimension.
TorusForm apply_Ci(const EvenFormBundle& omega, int i);

/// 1 + sum_i C_i(omega).
EvenFormBundle apply_total_C(const EvenFormBundle& omega);

EvenFormBundle pullback_linear(const EvenFormBundle& omega, const IntMatrix& matrix);

// Text grammar: one term per line, "(a+bi) t^m exp[k1,...,kn] d{t,1,3}".
// t^m is printed only for forms with t; exp[...] and d{...} are always printed.
// When parsing, t^m, exp[...] and d{...} are each optional.

std::string to_text(const TorusForm& a);
/// Parses a term list; line numbers in errors are offset by first_line.
TorusForm parse_form(std::string_view text, int n, bool has_t = false, int first_line = 1, int first_column = 1);
/// Human-readable rendering, e.g. "3·dx1∧dx2 + (0+1/2i)·e[1,0]·dx1"; "0" for zero.
std::string to_pretty(const TorusForm& a);

}  // namespace chernforge
