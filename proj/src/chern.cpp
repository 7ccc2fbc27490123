#include "chernforge/chern.hpp"

#include "chernforge/symfun.hpp"

namespace chernforge {

KCycle::KCycle(DiagBundle b, TorusForm r) : bundle(std::move(b)), rho(std::move(r)) {
  if (rho.dimension() != bundle.dimension()) throw PreconditionError("KCycle: rho dimension mismatch");
  if (rho.has_t()) throw PreconditionError("KCycle: rho depends on t");
  if (!rho.only_odd_degrees()) throw PreconditionError("KCycle: rho must be odd");
  if (!rho.is_real()) throw PreconditionError("KCycle: rho must be real");
}

EvenFormBundle cycle_curvature(const KCycle& w) {
  return chern_character_form(w.bundle) + EvenFormBundle::from_form(exterior_d(w.rho));
}

KCycle cycle_sum(const KCycle& w, const KCycle& v) {
  return KCycle(direct_sum(w.bundle, v.bundle), w.rho + v.rho);
}

KCycle pullback(const KCycle& w, const IntMatrix& matrix) {
  return KCycle(pullback(w.bundle, matrix), pullback_linear(w.rho, matrix));
}

PathPoly linear_path() { return PathPoly{{1, Rational(1)}}; }

void check_path(const PathPoly& q) {
  Rational at_one(0);
  for (const auto& [e, c] : q) {
    if (e < 0) throw PreconditionError("path: negative exponent");
    if (e == 0 && sgn(c) != 0) throw PreconditionError("path: q(0) must be 0");
    at_one += c;
  }
  if (at_one != 1) throw PreconditionError("path: q(1) must be 1");
}

DiffChar cs_chern_class(const DiagBundle& bundle, int i) {
  const int n = bundle.dimension();
  if (i < 0 || 2 * i > n) throw PreconditionError("cs_chern_class: need 0 <= 2i <= n");
  std::vector<DiffChar> e;
  e.push_back(DiffChar::unit(n));
  for (int k = 1; k <= i; ++k) e.push_back(DiffChar::zero(n, 2 * k));
  for (const auto& line : bundle.lines()) {
    DiffChar c = cs_class(line);
    for (int k = i; k >= 1; --k) e[static_cast<std::size_t>(k)] += cup(e[static_cast<std::size_t>(k - 1)], c);
  }
  return e[static_cast<std::size_t>(i)];
}

std::map<IndexMask, Rational> expected_chern_periods(const DiagBundle& bundle, int i) {
  TorusForm h = apply_Ci(harmonic_chern_character_form(bundle), i);
  std::map<IndexMask, Rational> table;
  for (IndexMask I : coordinate_subsets(bundle.dimension(), 2 * i)) table.emplace(I, period(h, I).re());
  return table;
}

DiffChar chern_hat(const KCycle& w, int i, const PathPoly& path) {
  const int n = w.dimension();
  if (i < 1 || 2 * i > n) throw PreconditionError("chern_hat: need 1 <= i and 2i <= n");
  check_path(path);

  DiffChar base = cs_chern_class(w.bundle, i);

  TorusForm q(n, true);
  for (const auto& [e, c] : path) q += TorusForm::t_power(n, e) * Gauss(c);
  TorusForm rho_t = wedge(q, w.rho.with_t());
  TorusForm curvature_t = chern_character_form(w.bundle).total().with_t() + exterior_d(rho_t);
  TorusForm transgression = fiber_integrate_t(apply_Ci(EvenFormBundle::from_form(curvature_t), i));

  DiffChar out = base + a_map(transgression, 2 * i);

  if (!(R_map(out) == apply_Ci(cycle_curvature(w), i)))
    throw DefectError("chern_hat: curvature differs from C_i of the cycle curvature");
  if (curvature_periods(out) != expected_chern_periods(w.bundle, i))
    throw DefectError("chern_hat: period table differs from the topological class");
  return out;
}

std::vector<DiffChar> chern_character_hat(const KCycle& w) {
  const int n = w.dimension();
  const int top = n / 2;
  std::vector<DiffChar> out;
  out.emplace_back(n, 0, TorusForm::constant(n, Gauss(w.bundle.rank())), TorusForm(n));
  for (int k = 1; k <= top; ++k) out.push_back(a_map(w.rho.component(2 * k - 1), 2 * k));
  for (const auto& line : w.bundle.lines()) {
    DiffChar c = cs_class(line);
    DiffChar power = c;
    for (int k = 1; k <= top; ++k) {
      if (k > 1) power = cup(power, c);
      out[static_cast<std::size_t>(k)] += power.scaled(Rational(1) / factorial(static_cast<unsigned>(k)));
    }
  }
  return out;
}

DiffChar chern_hat_via_ch(const KCycle& w, int i) {
  const int n = w.dimension();
  if (i < 1 || 2 * i > n) throw PreconditionError("chern_hat_via_ch: need 1 <= i and 2i <= n");
  std::vector<DiffChar> ch = chern_character_hat(w);
  std::map<int, std::vector<DiffChar>> powers;
  auto power = [&](int j, int e) -> const DiffChar& {
    auto& list = powers[j];
    if (list.empty()) list.push_back(ch[static_cast<std::size_t>(j)]);
    while (static_cast<int>(list.size()) < e) list.push_back(cup(list.back(), list.front()));
    return list[static_cast<std::size_t>(e - 1)];
  };
  DiffChar out = DiffChar::zero(n, 2 * i);
  const GradedPoly ci = chern_polynomial(i);
  for (const auto& [mono, coeff] : ci.terms()) {
    DiffChar term = DiffChar::unit(n);
    for (const auto& [v, e] : mono) term = cup(term, power(v.index, e));
    out += term.scaled(coeff);
  }
  if (!out.is_integral()) throw DefectError("chern_hat_via_ch: result is not integral");
  return out;
}

TotalChar total_chern_hat(const KCycle& w) {
  TotalChar out;
  out.components.push_back(DiffChar::unit(w.dimension()));
  for (int k = 1; 2 * k <= w.dimension(); ++k) out.components.push_back(chern_hat(w, k));
  return out;
}

GroupHomReport verify_group_hom(const KCycle& w, const KCycle& v) {
  if (w.dimension() != v.dimension()) throw PreconditionError("verify_group_hom: dimension mismatch");
  TotalChar lhs = total_chern_hat(cycle_sum(w, v));
  TotalChar rhs = cup(total_chern_hat(w), total_chern_hat(v));
  GroupHomReport report;
  report.holds = true;
  for (std::size_t k = 0; k < lhs.components.size(); ++k) {
    report.per_degree.push_back(compare(lhs.components[k], rhs.components[k]));
    if (!report.per_degree.back().empty()) report.holds = false;
  }
  return report;
}

namespace {

void check_odd_index(const OddKCycle& x, int i) {
  if (i < 1 || i % 2 == 0) throw PreconditionError("odd Chern class: index must be odd and positive");
  if (i > x.dimension()) throw PreconditionError("odd Chern class: index exceeds the dimension");
}

}  // namespace

std::map<IndexMask, Rational> expected_odd_periods(const OddKCycle& x, int i) {
  check_odd_index(x, i);
  Suspension s = suspend(x);
  TorusForm h = fiber_integrate_circle(apply_Ci(harmonic_chern_character_form(s.bundle), (i + 1) / 2), 0);
  std::map<IndexMask, Rational> table;
  for (IndexMask I : coordinate_subsets(x.dimension(), i)) table.emplace(I, period(h, I).re());
  return table;
}

DiffChar chern_hat_odd(const OddKCycle& x, int i) {
  check_odd_index(x, i);
  Suspension s = suspend(x);
  DiffChar even = chern_hat(KCycle(s.bundle, s.correction), (i + 1) / 2);
  DiffChar out = integrate_circle_char(even, 0);
  if (curvature_periods(out) != expected_odd_periods(x, i))
    throw DefectError("chern_hat_odd: period table differs from the odd topological class");
  return out;
}

bool path_independence_check(const KCycle& w, int i, const PathPoly& path) {
  return same_class(chern_hat(w, i, path), chern_hat(w, i));
}

bool is_integral_closed_odd(const TorusForm& shift) {
  if (shift.has_t() || !shift.is_real() || !shift.only_odd_degrees() || !shift.is_closed()) return false;
  const int n = shift.dimension();
  for (int p = 1; p <= n; p += 2) {
    TorusForm part = shift.component(p);
    if (part.is_zero()) continue;
    for (IndexMask I : coordinate_subsets(n, p)) {
      Gauss v = period(part, I);
      if (!v.is_real() || !is_integer(v.re())) return false;
    }
  }
  return true;
}

bool rho_gauge_check(const KCycle& w, int i, const TorusForm& shift) {
  if (shift.dimension() != w.dimension() || !is_integral_closed_odd(shift))
    throw PreconditionError("rho_gauge_check: shift must be a closed real odd form with integer periods");
  return same_class(chern_hat(KCycle(w.bundle, w.rho + shift), i), chern_hat(w, i));
}

bool naturality_check(const KCycle& w, int i, const IntMatrix& matrix) {
  return same_class(chern_hat(pullback(w, matrix), i), pullback_char(chern_hat(w, i), matrix));
}

}  // namespace chernforge
