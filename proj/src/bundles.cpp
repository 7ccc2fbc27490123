#include "chernforge/bundles.hpp"

namespace chernforge {

LineBundle::LineBundle(int n)
    : LineBundle(n, std::vector<std::int64_t>(static_cast<std::size_t>(n * n), 0),
                 std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)), TorusForm(n)) {}

LineBundle::LineBundle(int n, std::vector<std::int64_t> K, std::vector<Rational> theta, TorusForm beta)
    : n_(n), K_(std::move(K)), theta_(std::move(theta)), beta_(std::move(beta)) {
  if (n < 0 || n > kMaxTorusDim) throw PreconditionError("LineBundle: dimension out of range");
  if (K_.size() != static_cast<std::size_t>(n * n)) throw PreconditionError("LineBundle: K must be n x n");
  for (int j = 0; j < n; ++j)
    for (int l = 0; l < n; ++l)
      if (this->K(j, l) != -this->K(l, j)) throw PreconditionError("LineBundle: K must be antisymmetric");
  if (theta_.size() != static_cast<std::size_t>(n)) throw PreconditionError("LineBundle: theta must have n entries");
  for (auto& q : theta_) q = mod_one(q);
  if (beta_.dimension() != n) throw PreconditionError("LineBundle: beta dimension mismatch");
  if (beta_.has_t() || !beta_.is_homogeneous(1)) throw PreconditionError("LineBundle: beta must be a 1-form");
  if (!beta_.is_real()) throw PreconditionError("LineBundle: beta must be real");
}

TorusForm LineBundle::harmonic_curvature() const {
  std::map<IndexMask, Rational> coeffs;
  for (int j = 0; j < n_; ++j)
    for (int l = j + 1; l < n_; ++l)
      if (K(j, l) != 0) coeffs[dx_bit(j) | dx_bit(l)] = Rational(static_cast<long>(K(j, l)));
  return TorusForm::harmonic(n_, coeffs);
}

TorusForm LineBundle::curvature() const { return harmonic_curvature() + exterior_d(beta_); }

DiagBundle::DiagBundle(std::vector<LineBundle> lines) : lines_(std::move(lines)) {
  if (lines_.empty()) throw PreconditionError("DiagBundle: rank must be at least 1");
  for (const auto& l : lines_)
    if (l.dimension() != lines_.front().dimension()) throw PreconditionError("DiagBundle: dimension mismatch");
}

DiagBundle DiagBundle::trivial(int n, int rank) {
  return DiagBundle(std::vector<LineBundle>(static_cast<std::size_t>(rank), LineBundle(n)));
}

std::vector<TorusForm> curvature_form(const DiagBundle& bundle) {
  std::vector<TorusForm> out;
  for (const auto& l : bundle.lines()) out.push_back(l.curvature());
  return out;
}

namespace {

EvenFormBundle exp_sum(int n, int rank, const std::vector<TorusForm>& curvatures) {
  EvenFormBundle out(n);
  out.set(0, TorusForm::constant(n, Gauss(rank)));
  std::vector<TorusForm> powers;
  powers.assign(curvatures.size(), TorusForm::constant(n, Gauss(1)));
  for (int k = 1; k < out.size(); ++k) {
    TorusForm acc(n);
    for (std::size_t j = 0; j < curvatures.size(); ++j) {
      powers[j] = wedge(powers[j], curvatures[j]);
      acc += powers[j];
    }
    out.set(k, acc * Gauss(Rational(1) / factorial(static_cast<unsigned>(k))));
  }
  return out;
}

}  // namespace

EvenFormBundle chern_character_form(const DiagBundle& bundle) {
  return exp_sum(bundle.dimension(), bundle.rank(), curvature_form(bundle));
}

EvenFormBundle harmonic_chern_character_form(const DiagBundle& bundle) {
  std::vector<TorusForm> curvatures;
  for (const auto& l : bundle.lines()) curvatures.push_back(l.harmonic_curvature());
  return exp_sum(bundle.dimension(), bundle.rank(), curvatures);
}

TorusForm elementary_symmetric(const std::vector<TorusForm>& forms, int i) {
  if (forms.empty()) throw PreconditionError("elementary_symmetric: no forms");
  const int n = forms.front().dimension();
  const bool has_t = forms.front().has_t();
  // e[k] accumulates sigma_k of the forms processed so far.
  std::vector<TorusForm> e(static_cast<std::size_t>(i + 1), TorusForm(n, has_t));
  e[0] = TorusForm::constant(n, Gauss(1), has_t);
  for (const auto& f : forms)
    for (int k = i; k >= 1; --k) e[static_cast<std::size_t>(k)] += wedge(e[static_cast<std::size_t>(k - 1)], f);
  return e[static_cast<std::size_t>(i)];
}

TorusForm chern_form(const DiagBundle& bundle, int i) {
  if (i < 1 || 2 * i > bundle.dimension()) throw PreconditionError("chern_form: need 1 <= i and 2i <= n");
  TorusForm via_ch = apply_Ci(chern_character_form(bundle), i);
  TorusForm via_roots = elementary_symmetric(curvature_form(bundle), i);
  if (!(via_ch == via_roots)) throw DefectError("chern_form: C_i(ch) and sigma_i(F) disagree");
  return via_ch;
}

EvenFormBundle total_chern_form(const DiagBundle& bundle) { return apply_total_C(chern_character_form(bundle)); }

DiffChar cs_class(const LineBundle& line) {
  const int n = line.dimension();
  TorusForm trans = line.beta();
  for (int l = 0; l < n; ++l) trans += TorusForm::dx(n, l) * Gauss(line.theta()[static_cast<std::size_t>(l)]);
  return DiffChar(n, 2, line.harmonic_curvature(), trans);
}

DiagBundle direct_sum(const DiagBundle& a, const DiagBundle& b) {
  if (a.dimension() != b.dimension()) throw PreconditionError("direct_sum: dimension mismatch");
  std::vector<LineBundle> lines = a.lines();
  lines.insert(lines.end(), b.lines().begin(), b.lines().end());
  return DiagBundle(std::move(lines));
}

LineBundle tensor(const LineBundle& a, const LineBundle& b) {
  if (a.dimension() != b.dimension()) throw PreconditionError("tensor: dimension mismatch");
  std::vector<std::int64_t> K = a.K_matrix();
  for (std::size_t k = 0; k < K.size(); ++k) K[k] += b.K_matrix()[k];
  std::vector<Rational> theta = a.theta();
  for (std::size_t k = 0; k < theta.size(); ++k) theta[k] += b.theta()[k];
  return LineBundle(a.dimension(), std::move(K), std::move(theta), a.beta() + b.beta());
}

LineBundle dual(const LineBundle& line) {
  std::vector<std::int64_t> K = line.K_matrix();
  for (auto& v : K) v = -v;
  std::vector<Rational> theta = line.theta();
  for (auto& q : theta) q = -q;
  return LineBundle(line.dimension(), std::move(K), std::move(theta), -line.beta());
}

LineBundle pullback(const LineBundle& line, const IntMatrix& matrix) {
  const int n = line.dimension();
  const int m = matrix.cols();
  if (matrix.rows() != n) throw PreconditionError("pullback: matrix must have one row per coordinate");
  // K' = A^T K A, theta' = A^T theta.
  std::vector<std::int64_t> K(static_cast<std::size_t>(m * m), 0);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) s += matrix(j, a) * line.K(j, l) * matrix(l, b);
      K[static_cast<std::size_t>(a * m + b)] = s;
    }
  std::vector<Rational> theta(static_cast<std::size_t>(m), Rational(0));
  for (int a = 0; a < m; ++a)
    for (int j = 0; j < n; ++j) theta[static_cast<std::size_t>(a)] += line.theta()[static_cast<std::size_t>(j)] * static_cast<long>(matrix(j, a));
  return LineBundle(m, std::move(K), std::move(theta), pullback_linear(line.beta(), matrix));
}

DiagBundle pullback(const DiagBundle& bundle, const IntMatrix& matrix) {
  std::vector<LineBundle> lines;
  for (const auto& l : bundle.lines()) lines.push_back(pullback(l, matrix));
  return DiagBundle(std::move(lines));
}

LineBundle pullback_first(const LineBundle& line, int extra) {
  const int m = line.dimension();
  IntMatrix p(m, m + extra);
  for (int j = 0; j < m; ++j) p(j, j) = 1;
  return pullback(line, p);
}

LineBundle pullback_last(const LineBundle& line, int extra) {
  const int n = line.dimension();
  IntMatrix p(n, extra + n);
  for (int j = 0; j < n; ++j) p(j, extra + j) = 1;
  return pullback(line, p);
}

DiagBundle external_product(const DiagBundle& a, const DiagBundle& b) {
  std::vector<LineBundle> lines;
  for (const auto& la : a.lines())
    for (const auto& lb : b.lines())
      lines.push_back(tensor(pullback_first(la, b.dimension()), pullback_last(lb, a.dimension())));
  return DiagBundle(std::move(lines));
}

// ---------------------------------------------------------------------------

OddKCycle::OddKCycle(int n, std::vector<OddComponent> components) : n_(n), components_(std::move(components)) {
  if (n < 0 || n > kMaxTorusDim) throw PreconditionError("OddKCycle: dimension out of range");
  for (const auto& c : components_) {
    if (c.winding.size() != static_cast<std::size_t>(n)) throw PreconditionError("OddKCycle: winding length must be n");
    if (c.phase.dimension() != n || c.phase.has_t() || !c.phase.is_homogeneous(0))
      throw PreconditionError("OddKCycle: phase must be a function on T^n");
    if (!c.phase.is_real()) throw PreconditionError("OddKCycle: phase must be real");
    if (!c.phase.value_at_origin().is_zero()) throw PreconditionError("OddKCycle: phase must vanish at the basepoint");
  }
}

TorusForm OddKCycle::odd_chern_form() const {
  TorusForm out(n_);
  for (const auto& c : components_) {
    for (int l = 0; l < n_; ++l)
      out += TorusForm::dx(n_, l) * Gauss(static_cast<long>(c.winding[static_cast<std::size_t>(l)]));
    out += exterior_d(c.phase);
  }
  return out;
}

OddKCycle circle_generator() {
  return OddKCycle(1, {OddComponent{{1}, TorusForm(1)}});
}

Suspension suspend(const OddKCycle& x) {
  const int n = x.dimension();
  const int m = n + 1;
  IntMatrix shift(n, m);
  for (int j = 0; j < n; ++j) shift(j, j + 1) = 1;
  std::vector<LineBundle> lines;
  TorusForm correction(m);
  TorusForm dx0 = TorusForm::dx(m, 0);
  for (const auto& c : x.components()) {
    std::vector<std::int64_t> K(static_cast<std::size_t>(m * m), 0);
    for (int l = 0; l < n; ++l) {
      K[static_cast<std::size_t>(l + 1)] = c.winding[static_cast<std::size_t>(l)];
      K[static_cast<std::size_t>((l + 1) * m)] = -c.winding[static_cast<std::size_t>(l)];
    }
    lines.emplace_back(m, std::move(K), std::vector<Rational>(static_cast<std::size_t>(m), Rational(0)), TorusForm(m));
    correction -= wedge(pullback_linear(c.phase, shift), dx0);
  }
  if (lines.empty()) lines.emplace_back(m);
  return Suspension{DiagBundle(std::move(lines)), std::move(correction)};
}

}  // namespace chernforge
