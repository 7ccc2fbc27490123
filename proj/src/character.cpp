#include "chernforge/character.hpp"

namespace chernforge {

DiffChar::DiffChar(int n, int degree, TorusForm harmonic, TorusForm trans)
    : n_(n), degree_(degree), harmonic_(std::move(harmonic)), trans_(std::move(trans)) {
  if (degree < 0 || degree > n + 1) throw PreconditionError("DiffChar: degree out of range");
  if (harmonic_.dimension() != n || trans_.dimension() != n) throw PreconditionError("DiffChar: dimension mismatch");
  if (!harmonic_.is_harmonic() || !harmonic_.is_homogeneous(degree))
    throw PreconditionError("DiffChar: harmonic part must be translation-invariant, real, of the character degree");
  if (trans_.has_t()) throw PreconditionError("DiffChar: transgression form depends on t");
  if (degree == 0 && !trans_.is_zero()) throw PreconditionError("DiffChar: degree-0 character with a transgression form");
  if (!trans_.is_homogeneous(degree - 1)) throw PreconditionError("DiffChar: transgression form has the wrong degree");
  if (!trans_.is_real()) throw PreconditionError("DiffChar: transgression form is not real");
}

DiffChar DiffChar::zero(int n, int degree) { return DiffChar(n, degree, TorusForm(n), TorusForm(n)); }

DiffChar DiffChar::unit(int n) { return DiffChar(n, 0, TorusForm::constant(n, Gauss(1)), TorusForm(n)); }

bool DiffChar::is_integral() const {
  for (const auto& [key, c] : harmonic_.terms())
    if (!is_integer(c.re())) return false;
  return true;
}

void DiffChar::check_compatible(const DiffChar& o) const {
  if (o.n_ != n_ || o.degree_ != degree_) throw PreconditionError("DiffChar: dimension or degree mismatch");
}

DiffChar& DiffChar::operator+=(const DiffChar& o) {
  check_compatible(o);
  harmonic_ += o.harmonic_;
  trans_ += o.trans_;
  return *this;
}

DiffChar& DiffChar::operator-=(const DiffChar& o) {
  check_compatible(o);
  harmonic_ -= o.harmonic_;
  trans_ -= o.trans_;
  return *this;
}

DiffChar DiffChar::scaled(const Rational& q) const {
  return DiffChar(n_, degree_, harmonic_ * Gauss(q), trans_ * Gauss(q));
}

TorusForm R_map(const DiffChar& x) { return x.harmonic() + exterior_d(x.trans()); }

std::map<IndexMask, Rational> curvature_periods(const DiffChar& x) {
  TorusForm r = R_map(x);
  std::map<IndexMask, Rational> table;
  for (IndexMask I : coordinate_subsets(x.dimension(), x.degree())) {
    Gauss p = period(r, I);
    if (!p.is_real()) throw DefectError("curvature period is not real");
    table.emplace(I, p.re());
  }
  return table;
}

std::map<IndexMask, Integer> I_map(const DiffChar& x) {
  if (!x.is_integral()) throw PreconditionError("I_map: character is not integral");
  std::map<IndexMask, Integer> table;
  for (const auto& [I, p] : curvature_periods(x)) {
    if (!is_integer(p)) throw DefectError("integral character with a non-integral period");
    table.emplace(I, p.get_num());
  }
  return table;
}

DiffChar a_map(const TorusForm& rho, int degree) {
  if (rho.has_t()) throw PreconditionError("a_map: form depends on t");
  return DiffChar(rho.dimension(), degree, TorusForm(rho.dimension()), rho);
}

DiffChar a_map(const TorusForm& rho) {
  int d = rho.max_degree();
  if (d < 0) throw PreconditionError("a_map: degree of the zero form is ambiguous");
  return a_map(rho, d + 1);
}

Rational holonomy(const DiffChar& x, IndexMask coords) {
  if (mask_degree(coords) != x.degree() - 1) throw PreconditionError("holonomy: subtorus dimension must be degree - 1");
  Gauss v = integrate_subtorus(x.trans(), coords);
  if (!v.is_real()) throw DefectError("holonomy is not real");
  return mod_one(v.re());
}

std::map<IndexMask, Rational> holonomy_table(const DiffChar& x) {
  std::map<IndexMask, Rational> table;
  if (x.degree() == 0) return table;
  for (IndexMask I : coordinate_subsets(x.dimension(), x.degree() - 1)) table.emplace(I, holonomy(x, I));
  return table;
}

DiffChar cup(const DiffChar& x, const DiffChar& y) {
  if (x.dimension() != y.dimension()) throw PreconditionError("cup: dimension mismatch");
  if (x.degree() % 2 || y.degree() % 2) throw PreconditionError("cup: only even-degree characters are supported");
  if (x.degree() + y.degree() > x.dimension()) throw PreconditionError("cup: degree sum exceeds the dimension");
  TorusForm h = wedge(x.harmonic(), y.harmonic());
  TorusForm dty = exterior_d(y.trans());
  TorusForm t = wedge(x.trans(), y.harmonic()) + wedge(x.harmonic(), y.trans()) + wedge(x.trans(), dty);
  DiffChar out(x.dimension(), x.degree() + y.degree(), std::move(h), std::move(t));
  if (!(R_map(out) == wedge(R_map(x), y.harmonic() + dty))) throw DefectError("cup: curvature is not multiplicative");
  return out;
}

DiffChar integrate_circle_char(const DiffChar& x, int axis) {
  if (x.degree() < 1) throw PreconditionError("integrate_circle_char: degree must be >= 1");
  return DiffChar(x.dimension() - 1, x.degree() - 1, fiber_integrate_circle(x.harmonic(), axis),
                  -fiber_integrate_circle(x.trans(), axis));
}

DiffChar pullback_char(const DiffChar& x, const IntMatrix& matrix) {
  return DiffChar(matrix.cols(), x.degree(), pullback_linear(x.harmonic(), matrix),
                  pullback_linear(x.trans(), matrix));
}

CharDiscrepancy compare(const DiffChar& x, const DiffChar& y) {
  CharDiscrepancy out;
  if (x.dimension() != y.dimension() || x.degree() != y.degree()) {
    out.shape_mismatch = true;
    return out;
  }
  out.curvature = R_map(x) - R_map(y);
  if (x.degree() == 0) return out;
  for (IndexMask I : coordinate_subsets(x.dimension(), x.degree() - 1)) {
    Rational diff = mod_one(holonomy(x, I) - holonomy(y, I));
    if (sgn(diff) != 0) out.holonomy.emplace(I, diff);
  }
  return out;
}

bool same_class(const DiffChar& x, const DiffChar& y) { return compare(x, y).empty(); }

TotalChar cup(const TotalChar& x, const TotalChar& y) {
  if (x.components.size() != y.components.size() || x.dimension() != y.dimension())
    throw PreconditionError("cup: total classes of different shape");
  const int n = x.dimension();
  TotalChar out;
  for (std::size_t k = 0; k < x.components.size(); ++k) {
    DiffChar acc = DiffChar::zero(n, static_cast<int>(2 * k));
    for (std::size_t p = 0; p <= k; ++p) acc += cup(x.components[p], y.components[k - p]);
    out.components.push_back(std::move(acc));
  }
  return out;
}

std::string subtorus_label(IndexMask coords) {
  std::string s = "{";
  bool first = true;
  for (int c : mask_coords(coords)) {
    s += (first ? "" : ",") + std::to_string(c + 1);
    first = false;
  }
  return s + "}";
}

}  // namespace chernforge
