#pragma once

// Differential Chern classes of K-theory cycles on tori.

#include "chernforge/bundles.hpp"
#include "chernforge/character.hpp"

#include <map>
#include <vector>

namespace chernforge {

/// Cycle (bundle, rho) with rho a real odd form. R(w) = ch-form(bundle) + d(rho).
struct KCycle {
  DiagBundle bundle;
  TorusForm rho;

  KCycle(DiagBundle b, TorusForm r);
  int dimension() const { return bundle.dimension(); }
};

/// Even curvature form of the cycle, split into components.
EvenFormBundle cycle_curvature(const KCycle& w);

/// Bundle direct sum with the odd forms added.
KCycle cycle_sum(const KCycle& w, const KCycle& v);

KCycle pullback(const KCycle& w, const IntMatrix& matrix);

/// Polynomial path q(t) = sum coeff * t^exp with q(0) = 0 and q(1) = 1.
using PathPoly = std::map<int, Rational>;

/// q(t) = t.
PathPoly linear_path();

/// Validates q(0) = 0 and q(1) = 1.
void check_path(const PathPoly& q);

/// sigma_i of the Cheeger-Simons classes of the lines, under cup.
DiffChar cs_chern_class(const DiagBundle& bundle, int i);

/// c_i(w) = sigma_i(cs classes) + a( int_0^1 C_i(R(w~)) ) where w~ on [0,1] x T^n
/// carries q(t) rho. Checks R(c_i) = C_i(R(w)) and the integer period table.
DiffChar chern_hat(const KCycle& w, int i, const PathPoly& path = linear_path());

/// Rational differential Chern character components ch_k, k = 0..n/2:
/// sum_j cs_j^k / k! + a(rho_{2k-1}).
std::vector<DiffChar> chern_character_hat(const KCycle& w);

/// C_i evaluated on chern_character_hat under cup. Throws DefectError if not integral.
DiffChar chern_hat_via_ch(const KCycle& w, int i);

/// 1 + c_1 + ... + c_{n/2}.
TotalChar total_chern_hat(const KCycle& w);

struct GroupHomReport {
  bool holds = false;
  std::vector<CharDiscrepancy> per_degree;  // index k is degree 2k
};

/// Compares c(w + v) with c(w) u c(v) componentwise.
GroupHomReport verify_group_hom(const KCycle& w, const KCycle& v);

/// Integer period table expected for the curvature of chern_hat(w, i).
std::map<IndexMask, Rational> expected_chern_periods(const DiagBundle& bundle, int i);

/// Odd class: suspend, take c_{(i+1)/2} on T^{1+n} and integrate over the suspension
/// circle. Requires i odd and i <= n. Checks the integer period table.
DiffChar chern_hat_odd(const OddKCycle& x, int i);

/// Periods of the odd topological class: the circle integral of c_{(i+1)/2} of the
/// suspended harmonic data.
std::map<IndexMask, Rational> expected_odd_periods(const OddKCycle& x, int i);

/// chern_hat along q equals chern_hat along the linear path.
bool path_independence_check(const KCycle& w, int i, const PathPoly& path);

/// A valid shift: t-free, real, odd degrees only, closed, integer periods.
bool is_integral_closed_odd(const TorusForm& shift);

/// chern_hat((bundle, rho + shift), i) equals chern_hat(w, i). Rejects invalid shifts.
bool rho_gauge_check(const KCycle& w, int i, const TorusForm& shift);

/// c_i(A* w) equals A* c_i(w).
bool naturality_check(const KCycle& w, int i, const IntMatrix& matrix);

}  // namespace chernforge
