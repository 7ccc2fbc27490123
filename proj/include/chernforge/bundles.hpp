#pragma once

// Hermitian line bundles with connection on T^n and their diagonal direct sums.
//
// A line bundle is described by (K, theta, beta): an antisymmetric integer matrix
// with the harmonic curvature sum_{j<l} K_jl dx_j ^ dx_l, holonomy shifts theta_l
// along the coordinate loops, and a periodic real 1-form beta perturbing the
// connection. All data are Chern-normalized: K is the first Chern class.

#include "chernforge/character.hpp"
#include "chernforge/forms.hpp"

#include <cstdint>
#include <vector>

namespace chernforge {

class LineBundle {
 public:
  /// Flat trivial line.
  explicit LineBundle(int n);
  /// K is n x n row-major; theta has n entries; beta is a real 1-form (or zero).
  LineBundle(int n, std::vector<std::int64_t> K, std::vector<Rational> theta, TorusForm beta);

  int dimension() const { return n_; }
  std::int64_t K(int j, int l) const { return K_[static_cast<std::size_t>(j * n_ + l)]; }
  const std::vector<std::int64_t>& K_matrix() const { return K_; }
  const std::vector<Rational>& theta() const { return theta_; }
  const TorusForm& beta() const { return beta_; }

  /// sum_{j<l} K_jl dx_j ^ dx_l.
  TorusForm harmonic_curvature() const;
  /// harmonic_curvature() + d(beta); closed with integer periods K_jl.
  TorusForm curvature() const;

  friend bool operator==(const LineBundle&, const LineBundle&) = default;

 private:
  int n_;
  std::vector<std::int64_t> K_;
  std::vector<Rational> theta_;
  TorusForm beta_;
};

/// Diagonal bundle: a nonempty direct sum of line bundles of the same dimension.
class DiagBundle {
 public:
  explicit DiagBundle(std::vector<LineBundle> lines);
  static DiagBundle trivial(int n, int rank = 1);

  int dimension() const { return lines_.front().dimension(); }
  int rank() const { return static_cast<int>(lines_.size()); }
  const std::vector<LineBundle>& lines() const { return lines_; }

  friend bool operator==(const DiagBundle&, const DiagBundle&) = default;

 private:
  std::vector<LineBundle> lines_;
};

/// Line curvatures F_j.
std::vector<TorusForm> curvature_form(const DiagBundle& bundle);

/// Chern character form: omega_0 = rank, omega_2k = sum_j F_j^k / k!.
EvenFormBundle chern_character_form(const DiagBundle& bundle);

/// Same, built from the harmonic curvatures only (the topological data).
EvenFormBundle harmonic_chern_character_form(const DiagBundle& bundle);

/// Elementary symmetric polynomial sigma_i of a list of commuting even forms.
TorusForm elementary_symmetric(const std::vector<TorusForm>& forms, int i);

/// i-th Chern form. Computes C_i(ch) and sigma_i(F_j) and requires them to agree.
TorusForm chern_form(const DiagBundle& bundle, int i);

/// Total Chern form 1 + c_1 + ... via C applied to the Chern character form.
EvenFormBundle total_chern_form(const DiagBundle& bundle);

/// Cheeger-Simons first Chern class: harmonic K, trans sum_l theta_l dx_l + beta.
DiffChar cs_class(const LineBundle& line);

DiagBundle direct_sum(const DiagBundle& a, const DiagBundle& b);
LineBundle tensor(const LineBundle& a, const LineBundle& b);
LineBundle dual(const LineBundle& line);

/// Pullback along y -> A y (A has one row per coordinate of the bundle's torus).
LineBundle pullback(const LineBundle& line, const IntMatrix& matrix);
DiagBundle pullback(const DiagBundle& bundle, const IntMatrix& matrix);

/// Pullback along the projection T^{m+n} -> T^m onto the first m coordinates.
LineBundle pullback_first(const LineBundle& line, int extra);
/// Pullback along the projection T^{m+n} -> T^n onto the last n coordinates.
LineBundle pullback_last(const LineBundle& line, int extra);

/// Lines L_j (x) L'_k on T^{m+n}, ordered j-major.
DiagBundle external_product(const DiagBundle& a, const DiagBundle& b);

/// Odd K-theory cycle: the diagonal unitary diag(exp(2 pi i (<m_j, x> + phi_j))).
struct OddComponent {
  std::vector<std::int64_t> winding;
  TorusForm phase;  // real function with phase(0) = 0

  friend bool operator==(const OddComponent&, const OddComponent&) = default;
};

class OddKCycle {
 public:
  OddKCycle(int n, std::vector<OddComponent> components);

  int dimension() const { return n_; }
  const std::vector<OddComponent>& components() const { return components_; }

  /// Odd Chern character form sum_j (<m_j, dx> + d phi_j).
  TorusForm odd_chern_form() const;

  friend bool operator==(const OddKCycle&, const OddKCycle&) = default;

 private:
  int n_;
  std::vector<OddComponent> components_;
};

/// The circle generator: winding 1 on T^1, zero phase.
OddKCycle circle_generator();

struct Suspension {
  DiagBundle bundle;     // on T^{1+n}; coordinate 0 is the suspension circle
  TorusForm correction;  // sum_j (-phi_j) dx_0
};

/// Realizes e x x as an even cycle on T^{1+n}: line j has K_{0,l} = (m_j)_l.
Suspension suspend(const OddKCycle& x);

}  // namespace chernforge
