#include "chernforge/forms.hpp"

#include "chernforge/symfun.hpp"

#include <bit>
#include <limits>

namespace chernforge {

IndexMask coords_mask(const std::vector<int>& coords) {
  IndexMask m = 0;
  for (int c : coords) {
    if (c < 0 || c >= kMaxTorusDim) throw PreconditionError("coordinate out of range");
    m |= dx_bit(c);
  }
  return m;
}

std::vector<int> mask_coords(IndexMask mask) {
  std::vector<int> out;
  for (int c = 0; c < kMaxTorusDim; ++c)
    if (mask & dx_bit(c)) out.push_back(c);
  return out;
}

int mask_degree(IndexMask mask) { return std::popcount(mask); }

std::vector<IndexMask> coordinate_subsets(int n, int p) {
  std::vector<IndexMask> out;
  if (p < 0 || p > n) return out;
  for (IndexMask bits = 0; bits < (IndexMask{1} << n); ++bits)
    if (std::popcount(bits) == p) out.push_back(bits << 1);
  return out;
}

int koszul_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int swaps = 0;
  for (IndexMask rest = b; rest; rest &= rest - 1) {
    int bit = std::countr_zero(rest);
    swaps += std::popcount(a >> (bit + 1));
  }
  return swaps % 2 ? -1 : 1;
}

bool TermKey::zero_frequency() const {
  for (auto k : freq)
    if (k != 0) return false;
  return true;
}

IntMatrix::IntMatrix(int rows, int cols, std::vector<std::int64_t> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0 || data_.size() != static_cast<std::size_t>(rows * cols))
    throw PreconditionError("IntMatrix: data size does not match shape");
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

// ---------------------------------------------------------------------------

TorusForm::TorusForm(int n, bool has_t) : n_(n), has_t_(has_t) {
  if (n < 0 || n > kMaxTorusDim) throw PreconditionError("torus dimension out of range");
}

TorusForm TorusForm::constant(int n, const Gauss& c, bool has_t) {
  TorusForm f(n, has_t);
  f.add_term(TermKey{}, c);
  return f;
}

TorusForm TorusForm::term(int n, const Gauss& c, IndexMask mask, const std::vector<int>& freq, int t_exp,
                          bool has_t) {
  TorusForm f(n, has_t);
  TermKey key;
  key.mask = mask;
  key.t_exp = t_exp;
  if (!freq.empty()) {
    if (static_cast<int>(freq.size()) != n) throw PreconditionError("frequency vector length must equal dimension");
    for (int j = 0; j < n; ++j) key.freq[static_cast<std::size_t>(j)] = freq[static_cast<std::size_t>(j)];
  }
  f.add_term(key, c);
  return f;
}

TorusForm TorusForm::dx(int n, int coord) {
  if (coord < 0 || coord >= n) throw PreconditionError("dx: coordinate out of range");
  return term(n, Gauss(1), dx_bit(coord));
}

TorusForm TorusForm::dt(int n) { return term(n, Gauss(1), kDtBit, {}, 0, true); }

TorusForm TorusForm::t_power(int n, int m) { return term(n, Gauss(1), 0, {}, m, true); }

TorusForm TorusForm::harmonic(int n, const std::map<IndexMask, Rational>& coefficients) {
  TorusForm f(n);
  for (const auto& [mask, c] : coefficients) {
    TermKey key;
    key.mask = mask;
    f.add_term(key, Gauss(c));
  }
  return f;
}

void TorusForm::add_term(const TermKey& key, const Gauss& c) {
  if (c.is_zero()) return;
  IndexMask allowed = 0;
  for (int j = 0; j < n_; ++j) allowed |= dx_bit(j);
  if (has_t_) allowed |= kDtBit;
  if (key.mask & ~allowed) throw PreconditionError("term uses a differential outside the torus");
  if (key.t_exp < 0 || (!has_t_ && key.t_exp != 0)) throw PreconditionError("t exponent not allowed");
  for (int j = n_; j < kMaxTorusDim; ++j)
    if (key.freq[static_cast<std::size_t>(j)] != 0) throw PreconditionError("frequency outside the torus");
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Gauss TorusForm::coefficient(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Gauss() : it->second;
}

bool TorusForm::is_homogeneous(int p) const {
  for (const auto& [key, c] : terms_)
    if (mask_degree(key.mask) != p) return false;
  return true;
}

TorusForm TorusForm::component(int p) const {
  TorusForm out(n_, has_t_);
  for (const auto& [key, c] : terms_)
    if (mask_degree(key.mask) == p) out.terms_.emplace(key, c);
  return out;
}

int TorusForm::max_degree() const {
  int d = -1;
  for (const auto& [key, c] : terms_) d = std::max(d, mask_degree(key.mask));
  return d;
}

bool TorusForm::only_odd_degrees() const {
  for (const auto& [key, c] : terms_)
    if (mask_degree(key.mask) % 2 == 0) return false;
  return true;
}

bool TorusForm::only_even_degrees() const {
  for (const auto& [key, c] : terms_)
    if (mask_degree(key.mask) % 2 == 1) return false;
  return true;
}

bool TorusForm::is_real() const {
  for (const auto& [key, c] : terms_) {
    TermKey mirror = key;
    for (auto& k : mirror.freq) k = -k;
    if (!(coefficient(mirror) == c.conj())) return false;
  }
  return true;
}

bool TorusForm::is_closed() const { return exterior_d(*this).is_zero(); }

bool TorusForm::is_harmonic() const {
  if (has_t_) return false;
  for (const auto& [key, c] : terms_)
    if (!key.zero_frequency() || !c.is_real()) return false;
  return true;
}

TorusForm TorusForm::with_t() const {
  TorusForm out(n_, true);
  out.terms_ = terms_;
  return out;
}

TorusForm TorusForm::restrict_t(const Rational& value) const {
  TorusForm out(n_, false);
  for (const auto& [key, c] : terms_) {
    if (key.mask & kDtBit) continue;
    Rational scale(1);
    for (int m = 0; m < key.t_exp; ++m) scale *= value;
    TermKey k = key;
    k.t_exp = 0;
    out.add_term(k, c * scale);
  }
  return out;
}

Gauss TorusForm::value_at_origin() const {
  Gauss v;
  for (const auto& [key, c] : terms_) {
    if (key.mask != 0) throw PreconditionError("value_at_origin: not a function");
    if (key.t_exp == 0) v += c;
  }
  return v;
}

void TorusForm::check_compatible(const TorusForm& o) const {
  if (o.n_ != n_) throw PreconditionError("form dimension mismatch");
}

TorusForm& TorusForm::operator+=(const TorusForm& o) {
  check_compatible(o);
  if (o.has_t_) has_t_ = true;
  for (const auto& [key, c] : o.terms_) add_term(key, c);
  return *this;
}

TorusForm& TorusForm::operator-=(const TorusForm& o) {
  check_compatible(o);
  if (o.has_t_) has_t_ = true;
  for (const auto& [key, c] : o.terms_) add_term(key, -c);
  return *this;
}

TorusForm& TorusForm::operator*=(const Gauss& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

// ---------------------------------------------------------------------------

TorusForm wedge(const TorusForm& a, const TorusForm& b) {
  if (a.dimension() != b.dimension()) throw PreconditionError("wedge: dimension mismatch");
  TorusForm out(a.dimension(), a.has_t() || b.has_t());
  const int n = a.dimension();
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      int sign = koszul_sign(ka.mask, kb.mask);
      if (sign == 0) continue;
      TermKey key;
      key.mask = ka.mask | kb.mask;
      key.t_exp = ka.t_exp + kb.t_exp;
      for (int j = 0; j < n; ++j) {
        auto s = static_cast<std::int64_t>(ka.freq[static_cast<std::size_t>(j)]) + kb.freq[static_cast<std::size_t>(j)];
        if (s > std::numeric_limits<std::int32_t>::max() || s < std::numeric_limits<std::int32_t>::min())
          throw PreconditionError("wedge: frequency overflow");
        key.freq[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(s);
      }
      Gauss c = ca * cb;
      if (sign < 0) c = -c;
      out.add_term(key, c);
    }
  }
  return out;
}

TorusForm exterior_d(const TorusForm& a) {
  TorusForm out(a.dimension(), a.has_t());
  for (const auto& [key, c] : a.terms()) {
    // t-derivative: m t^{m-1} dt ^ (...); dt already sits first.
    if (key.t_exp > 0 && !(key.mask & kDtBit)) {
      TermKey k = key;
      k.t_exp -= 1;
      k.mask |= kDtBit;
      out.add_term(k, c * Rational(key.t_exp));
    }
    // x-derivatives: i k_j E_k dx_j ^ dx_I.
    for (int j = 0; j < a.dimension(); ++j) {
      auto kj = key.freq[static_cast<std::size_t>(j)];
      if (kj == 0) continue;
      int sign = koszul_sign(dx_bit(j), key.mask);
      if (sign == 0) continue;
      TermKey k = key;
      k.mask |= dx_bit(j);
      Gauss v = c.times_i() * Rational(kj);
      if (sign < 0) v = -v;
      out.add_term(k, v);
    }
  }
  return out;
}

Gauss integrate_torus(const TorusForm& a) {
  if (a.has_t()) throw PreconditionError("integrate_torus: form depends on t");
  if (!a.is_homogeneous(a.dimension())) throw PreconditionError("integrate_torus: degree mismatch");
  TermKey top;
  for (int j = 0; j < a.dimension(); ++j) top.mask |= dx_bit(j);
  return a.coefficient(top);
}

Gauss integrate_subtorus(const TorusForm& a, IndexMask coords) {
  if (coords & kDtBit) throw PreconditionError("integrate_subtorus: dt is not a torus direction");
  Gauss sum;
  for (const auto& [key, c] : a.terms()) {
    if (key.mask != coords || key.t_exp != 0) continue;
    bool oscillates = false;
    for (int j : mask_coords(coords))
      if (key.freq[static_cast<std::size_t>(j)] != 0) oscillates = true;
    if (!oscillates) sum += c;
  }
  return sum;
}

Gauss period(const TorusForm& a, IndexMask coords) {
  if (a.has_t()) throw PreconditionError("period: form depends on t");
  if (!a.is_homogeneous(mask_degree(coords))) throw PreconditionError("period: degree mismatch");
  if (!a.is_closed()) throw PreconditionError("period: form is not closed");
  return integrate_subtorus(a, coords);
}

TorusForm fiber_integrate_t(const TorusForm& a) {
  if (!a.has_t()) throw PreconditionError("fiber_integrate_t: form has no interval factor");
  TorusForm out(a.dimension(), false);
  for (const auto& [key, c] : a.terms()) {
    if (!(key.mask & kDtBit)) continue;
    TermKey k = key;
    k.mask &= ~kDtBit;
    k.t_exp = 0;
    out.add_term(k, c * Rational(1, key.t_exp + 1));
  }
  return out;
}

TorusForm fiber_integrate_circle(const TorusForm& a, int axis) {
  if (a.has_t()) throw PreconditionError("fiber_integrate_circle: form depends on t");
  if (axis < 0 || axis >= a.dimension()) throw PreconditionError("fiber_integrate_circle: axis out of range");
  TorusForm out(a.dimension() - 1, false);
  const IndexMask axis_bit = dx_bit(axis);
  const IndexMask below = axis_bit - 1;
  for (const auto& [key, c] : a.terms()) {
    if (!(key.mask & axis_bit) || key.freq[static_cast<std::size_t>(axis)] != 0) continue;
    int sign = std::popcount(key.mask & below) % 2 ? -1 : 1;
    TermKey k;
    k.mask = (key.mask & below) | ((key.mask & ~(below | axis_bit)) >> 1);
    for (int j = 0, r = 0; j < a.dimension(); ++j) {
      if (j == axis) continue;
      k.freq[static_cast<std::size_t>(r++)] = key.freq[static_cast<std::size_t>(j)];
    }
    out.add_term(k, sign < 0 ? -c : c);
  }
  return out;
}

TorusForm pullback_linear(const TorusForm& a, const IntMatrix& matrix) {
  const int n = a.dimension();
  const int m = matrix.cols();
  if (matrix.rows() != n) throw PreconditionError("pullback_linear: matrix must have one row per coordinate");
  TorusForm out(m, a.has_t());
  std::map<IndexMask, std::map<IndexMask, std::int64_t>> expansions;
  auto expand = [&](IndexMask mask) -> const std::map<IndexMask, std::int64_t>& {
    auto it = expansions.find(mask);
    if (it != expansions.end()) return it->second;
    std::map<IndexMask, std::int64_t> acc{{mask & kDtBit, 1}};
    for (int j : mask_coords(mask)) {
      std::map<IndexMask, std::int64_t> next;
      for (const auto& [cur, coeff] : acc) {
        for (int l = 0; l < m; ++l) {
          std::int64_t ajl = matrix(j, l);
          if (ajl == 0 || (cur & dx_bit(l))) continue;
          // dy_l is appended at the end and moved past the larger factors.
          int sign = std::popcount(cur >> (l + 2)) % 2 ? -1 : 1;
          next[cur | dx_bit(l)] += sign * coeff * ajl;
        }
      }
      acc.clear();
      for (auto& [k, v] : next)
        if (v != 0) acc.emplace(k, v);
    }
    return expansions.emplace(mask, std::move(acc)).first->second;
  };
  for (const auto& [key, c] : a.terms()) {
    TermKey base;
    base.t_exp = key.t_exp;
    for (int l = 0; l < m; ++l) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += matrix(j, l) * key.freq[static_cast<std::size_t>(j)];
      if (s > std::numeric_limits<std::int32_t>::max() || s < std::numeric_limits<std::int32_t>::min())
        throw PreconditionError("pullback_linear: frequency overflow");
      base.freq[static_cast<std::size_t>(l)] = static_cast<std::int32_t>(s);
    }
    for (const auto& [mask, coeff] : expand(key.mask)) {
      TermKey k = base;
      k.mask = mask;
      out.add_term(k, c * Rational(static_cast<long>(coeff)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

EvenFormBundle::EvenFormBundle(int n, bool has_t) : n_(n), has_t_(has_t) {
  int ambient = n + (has_t ? 1 : 0);
  components_.assign(static_cast<std::size_t>(ambient / 2 + 1), TorusForm(n, has_t));
}

EvenFormBundle EvenFormBundle::from_form(const TorusForm& even) {
  EvenFormBundle out(even.dimension(), even.has_t());
  for (const auto& [key, c] : even.terms()) {
    int p = mask_degree(key.mask);
    if (p % 2) throw PreconditionError("EvenFormBundle: odd-degree term");
    out.components_[static_cast<std::size_t>(p / 2)].add_term(key, c);
  }
  return out;
}

EvenFormBundle EvenFormBundle::unit(int n, bool has_t) {
  EvenFormBundle out(n, has_t);
  out.components_[0] = TorusForm::constant(n, Gauss(1), has_t);
  return out;
}

void EvenFormBundle::set(int k, TorusForm form) {
  if (k < 0 || k >= size()) throw PreconditionError("EvenFormBundle: component above the dimension");
  if (form.dimension() != n_) throw PreconditionError("EvenFormBundle: dimension mismatch");
  if (!form.is_homogeneous(2 * k)) throw PreconditionError("EvenFormBundle: component has the wrong degree");
  if (has_t_ && !form.has_t()) form = form.with_t();
  if (!has_t_ && form.has_t()) throw PreconditionError("EvenFormBundle: unexpected t dependence");
  components_[static_cast<std::size_t>(k)] = std::move(form);
}

TorusForm EvenFormBundle::total() const {
  TorusForm out(n_, has_t_);
  for (const auto& c : components_) out += c;
  return out;
}

EvenFormBundle& EvenFormBundle::operator+=(const EvenFormBundle& o) {
  if (o.n_ != n_ || o.has_t_ != has_t_) throw PreconditionError("EvenFormBundle: shape mismatch");
  for (std::size_t k = 0; k < components_.size(); ++k) components_[k] += o.components_[k];
  return *this;
}

EvenFormBundle wedge(const EvenFormBundle& a, const EvenFormBundle& b) {
  if (a.dimension() != b.dimension() || a.has_t() != b.has_t())
    throw PreconditionError("EvenFormBundle: shape mismatch");
  EvenFormBundle out(a.dimension(), a.has_t());
  for (int k = 0; k < out.size(); ++k) {
    TorusForm acc(a.dimension(), a.has_t());
    for (int p = 0; p <= k; ++p) acc += wedge(a[p], b[k - p]);
    out.set(k, acc);
  }
  return out;
}

TorusForm apply_Ci(const EvenFormBundle& omega, int i) {
  if (i < 1) throw PreconditionError("apply_Ci: index must be positive");
  int ambient = omega.dimension() + (omega.has_t() ? 1 : 0);
  if (2 * i > ambient) throw PreconditionError("apply_Ci: 2i exceeds the dimension");
  GradedPoly ci = chern_polynomial(i);
  std::map<int, std::vector<TorusForm>> powers;
  auto power = [&](int j, int e) -> const TorusForm& {
    auto& list = powers[j];
    if (list.empty()) list.push_back(omega[j]);
    while (static_cast<int>(list.size()) < e) list.push_back(wedge(list.back(), list.front()));
    return list[static_cast<std::size_t>(e - 1)];
  };
  TorusForm out(omega.dimension(), omega.has_t());
  for (const auto& [mono, coeff] : ci.terms()) {
    TorusForm term = TorusForm::constant(omega.dimension(), Gauss(coeff), omega.has_t());
    for (const auto& [v, e] : mono) {
      term = wedge(term, power(v.index, e));
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

EvenFormBundle apply_total_C(const EvenFormBundle& omega) {
  EvenFormBundle out = EvenFormBundle::unit(omega.dimension(), omega.has_t());
  for (int i = 1; i < out.size(); ++i) out.set(i, apply_Ci(omega, i));
  return out;
}

EvenFormBundle pullback_linear(const EvenFormBundle& omega, const IntMatrix& matrix) {
  EvenFormBundle out(matrix.cols(), omega.has_t());
  for (int k = 0; k < std::min(out.size(), omega.size()); ++k) out.set(k, pullback_linear(omega[k], matrix));
  for (int k = out.size(); k < omega.size(); ++k)
    if (!pullback_linear(omega[k], matrix).is_zero()) throw DefectError("pullback produced a form above the dimension");
  return out;
}

}  // namespace chernforge
