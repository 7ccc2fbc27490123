#pragma once

// Differential characters on T^n.
//
// A character of degree d is stored as a pair (harmonic, trans): a translation-
// invariant d-form with rational coefficients and a global (d-1)-form. Its
// curvature is R = harmonic + d(trans). The harmonic part stands for the
// standard character with that curvature whose holonomy vanishes on every
// coordinate subtorus through 0, so the holonomy over the coordinate (d-1)-subtorus
// T_I is the integral of trans over T_I, mod 1.
//
// Two characters are equal iff they have the same curvature and the same
// holonomy on every coordinate (d-1)-subtorus. On tori this is faithful because
// cohomology is torsion-free and coordinate subtori span homology.
//
// Characters with non-integral harmonic part are rational characters; they form
// a ring with the same operations and host the differential Chern character.

#include "chernforge/forms.hpp"

#include <map>

namespace chernforge {

class DiffChar {
 public:
  /// Validates: harmonic is translation-invariant, real and of degree d; trans is
  /// real, t-free and of degree d-1 (zero when d = 0).
  DiffChar(int n, int degree, TorusForm harmonic, TorusForm trans);

  static DiffChar zero(int n, int degree);
  /// The degree-0 unit, the constant function 1.
  static DiffChar unit(int n);

  int dimension() const { return n_; }
  int degree() const { return degree_; }
  const TorusForm& harmonic() const { return harmonic_; }
  const TorusForm& trans() const { return trans_; }
  /// All harmonic coefficients are integers.
  bool is_integral() const;

  DiffChar& operator+=(const DiffChar& o);
  DiffChar& operator-=(const DiffChar& o);
  friend DiffChar operator+(DiffChar a, const DiffChar& b) { return a += b; }
  friend DiffChar operator-(DiffChar a, const DiffChar& b) { return a -= b; }
  /// Rational multiple; leaves the integral lattice in general.
  DiffChar scaled(const Rational& q) const;

 private:
  void check_compatible(const DiffChar& o) const;

  int n_;
  int degree_;
  TorusForm harmonic_;
  TorusForm trans_;
};

/// Curvature harmonic + d(trans).
TorusForm R_map(const DiffChar& x);

/// Curvature periods over every coordinate d-subtorus.
std::map<IndexMask, Rational> curvature_periods(const DiffChar& x);

/// Integer period table of the curvature. Rejects non-integral characters.
std::map<IndexMask, Integer> I_map(const DiffChar& x);

/// a(rho) for a homogeneous real form rho of degree d-1; `degree` fixes d when rho is zero.
DiffChar a_map(const TorusForm& rho, int degree);
DiffChar a_map(const TorusForm& rho);

/// Holonomy over the coordinate subtorus T_I (|I| = d - 1), in [0, 1).
Rational holonomy(const DiffChar& x, IndexMask coords);

/// Holonomies over all coordinate (d-1)-subtori.
std::map<IndexMask, Rational> holonomy_table(const DiffChar& x);

/// Product of even-degree characters with degree sum <= n:
/// harmonic = hx ^ hy, trans = tx ^ hy + hx ^ ty + tx ^ d(ty). Checks R(x u y) = R(x) ^ R(y).
DiffChar cup(const DiffChar& x, const DiffChar& y);

/// Integration along the circle in coordinate `axis`, T^n -> T^{n-1}. The curvature
/// transforms by fiber_integrate_circle; because that operation anticommutes with d,
/// the transgression form picks up a sign: (h, tau) -> (int h, -int tau).
DiffChar integrate_circle_char(const DiffChar& x, int axis = 0);

/// Pullback along y -> A y (A has one row per coordinate of x's torus).
DiffChar pullback_char(const DiffChar& x, const IntMatrix& matrix);

struct CharDiscrepancy {
  TorusForm curvature;                          // R(x) - R(y)
  std::map<IndexMask, Rational> holonomy;       // nonzero (hol x - hol y) mod 1
  bool shape_mismatch = false;

  bool empty() const { return !shape_mismatch && curvature.is_zero() && holonomy.empty(); }
};

CharDiscrepancy compare(const DiffChar& x, const DiffChar& y);

/// Character equality: same curvature and same coordinate holonomies mod 1.
bool same_class(const DiffChar& x, const DiffChar& y);

/// Total class 1 + c_1 + c_2 + ... as even-degree components (index k is degree 2k).
struct TotalChar {
  std::vector<DiffChar> components;

  int dimension() const { return components.front().dimension(); }
};

TotalChar cup(const TotalChar& x, const TotalChar& y);

/// Subtorus label "{1,3}" (1-based).
std::string subtorus_label(IndexMask coords);

}  // namespace chernforge
