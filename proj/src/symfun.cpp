#include "chernforge/symfun.hpp"

#include <sstream>

namespace chernforge {

int weighted_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += v.index * e;
  return d;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = weighted_degree(a), db = weighted_degree(b);
  if (da != db) return da < db;
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k].first != b[k].first) return a[k].first < b[k].first;
    if (a[k].second != b[k].second) return a[k].second > b[k].second;
  }
  return a.size() < b.size();
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

GradedPoly GradedPoly::constant(const Rational& c) {
  GradedPoly p;
  p.add_term({}, c);
  return p;
}

GradedPoly GradedPoly::variable(int index, bool primed) {
  if (index < 1) throw PreconditionError("variable index must be >= 1");
  GradedPoly p;
  p.add_term({{Var{index, primed}, 1}}, Rational(1));
  return p;
}

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
  if (sgn(c) == 0) return;
  if (trunc_ && weighted_degree(m) > *trunc_) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Rational GradedPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

GradedPoly GradedPoly::truncated(int bound) const {
  GradedPoly out;
  out.trunc_ = bound;
  for (const auto& [m, c] : terms_) out.add_term(m, c);
  return out;
}

bool GradedPoly::is_homogeneous(int degree) const {
  for (const auto& [m, c] : terms_)
    if (weighted_degree(m) != degree) return false;
  return true;
}

bool GradedPoly::uses_primed() const {
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m)
      if (v.primed) return true;
  return false;
}

int GradedPoly::max_degree() const {
  return terms_.empty() ? -1 : weighted_degree(terms_.rbegin()->first);
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& q) {
  if (sgn(q) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= q;
  return *this;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) { return poly_mul(a, b); }

std::string GradedPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (!unit || m.empty()) os << chernforge::to_string(mag);
    bool need_star = !unit;
    for (const auto& [v, e] : m) {
      if (need_star) os << "*";
      os << "s" << v.index << (v.primed ? "'" : "");
      if (e != 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

GradedPoly poly_add(const GradedPoly& a, const GradedPoly& b) { return a + b; }

GradedPoly poly_mul(const GradedPoly& a, const GradedPoly& b, std::optional<int> trunc) {
  GradedPoly out;
  if (trunc) out.trunc_ = trunc;
  else if (a.trunc_ || b.trunc_) out.trunc_ = std::min(a.trunc_.value_or(INT32_MAX), b.trunc_.value_or(INT32_MAX));
  for (const auto& [ma, ca] : a.terms_) {
    int da = weighted_degree(ma);
    if (out.trunc_ && da > *out.trunc_) continue;
    for (const auto& [mb, cb] : b.terms_) {
      if (out.trunc_ && da + weighted_degree(mb) > *out.trunc_) continue;
      out.add_term(multiply(ma, mb), ca * cb);
    }
  }
  return out;
}

GradedPoly substitute(const GradedPoly& p, const std::function<GradedPoly(Var)>& image, std::optional<int> trunc) {
  std::map<Var, std::vector<GradedPoly>> powers;  // powers[v][e-1] = image(v)^e
  auto power = [&](Var v, int e) -> const GradedPoly& {
    auto& list = powers[v];
    if (list.empty()) list.push_back(trunc ? image(v).truncated(*trunc) : image(v));
    while (static_cast<int>(list.size()) < e) list.push_back(poly_mul(list.back(), list.front(), trunc));
    return list[e - 1];
  };
  GradedPoly out;
  for (const auto& [m, c] : p.terms()) {
    GradedPoly term = GradedPoly::constant(c);
    for (const auto& [v, e] : m) term = poly_mul(term, power(v, e), trunc);
    out += term;
  }
  if (trunc) out = out.truncated(*trunc);
  return out;
}

GradedPoly chern_polynomial(int i) {
  if (i <= 0) throw PreconditionError("chern_polynomial: index must be positive");
  // p_j = j! s_j, since ch_j = p_j / j!.
  std::vector<GradedPoly> p(i + 1);
  for (int j = 1; j <= i; ++j) p[j] = GradedPoly::variable(j) * factorial(j);
  // Newton: k e_k = sum_{j=1}^k (-1)^{j-1} e_{k-j} p_j.
  std::vector<GradedPoly> e(i + 1);
  e[0] = GradedPoly::constant(1);
  for (int k = 1; k <= i; ++k) {
    GradedPoly acc;
    for (int j = 1; j <= k; ++j) {
      GradedPoly t = poly_mul(e[k - j], p[j]);
      if (j % 2 == 0) acc -= t;
      else acc += t;
    }
    e[k] = acc * Rational(1, k);
  }
  return e[i];
}

GradedPoly power_sum_from_elementary(int j) {
  if (j <= 0) throw PreconditionError("power_sum_from_elementary: index must be positive");
  // p_k = (-1)^{k-1} k e_k + sum_{m=1}^{k-1} (-1)^{m-1} e_m p_{k-m}
  std::vector<GradedPoly> p(j + 1);
  for (int k = 1; k <= j; ++k) {
    GradedPoly acc = GradedPoly::variable(k) * Rational(k % 2 == 1 ? k : -k);
    for (int m = 1; m < k; ++m) {
      GradedPoly t = poly_mul(GradedPoly::variable(m), p[k - m]);
      if (m % 2 == 0) acc -= t;
      else acc += t;
    }
    p[k] = acc;
  }
  return p[j];
}

GradedPoly ch_from_chern(int j) {
  if (j <= 0) throw PreconditionError("ch_from_chern: index must be positive");
  return power_sum_from_elementary(j) * (Rational(1) / factorial(j));
}

GradedPoly total_chern_truncated(int bound, Alphabet alphabet) {
  if (bound < 0) throw PreconditionError("total_chern_truncated: bound must be >= 0");
  GradedPoly total = GradedPoly::constant(1);
  for (int i = 1; i <= bound; ++i) total += chern_polynomial(i);
  total = total.truncated(bound);
  switch (alphabet) {
    case Alphabet::unprimed:
      return total;
    case Alphabet::primed:
      return substitute(total, [](Var v) { return GradedPoly::variable(v.index, true); }, bound);
    case Alphabet::sum:
      return substitute(
          total,
          [](Var v) { return GradedPoly::variable(v.index) + GradedPoly::variable(v.index, true); },
          bound);
  }
  return total;
}

SumIdentityResult verify_sum_identity(int bound) {
  if (bound < 1) throw PreconditionError("verify_sum_identity: bound must be >= 1");
  GradedPoly lhs = total_chern_truncated(bound, Alphabet::sum);
  GradedPoly rhs = poly_mul(total_chern_truncated(bound, Alphabet::unprimed),
                            total_chern_truncated(bound, Alphabet::primed), bound);
  SumIdentityResult r;
  r.discrepancy = (lhs - rhs).truncated(bound);
  r.holds = r.discrepancy.is_zero();
  return r;
}

// ---------------------------------------------------------------------------

RootPoly::RootPoly(int variables, int degree_bound) : k_(variables), bound_(degree_bound) {
  if (k_ < 1 || k_ > 16) throw PreconditionError("RootPoly supports 1..16 variables");
  if (bound_ < 0 || bound_ > 15) throw PreconditionError("RootPoly supports degree bounds 0..15");
}

RootPoly RootPoly::constant(int k, int bound, const Rational& c) {
  RootPoly r(k, bound);
  if (sgn(c) != 0) r.terms_[0] = c;
  return r;
}

RootPoly RootPoly::monomial(int k, int bound, const std::vector<int>& exponents, const Rational& c) {
  RootPoly r(k, bound);
  int d = 0;
  for (int e : exponents) d += e;
  if (d <= bound && sgn(c) != 0) r.terms_[r.pack(exponents)] = c;
  return r;
}

int RootPoly::degree_of(Key key, int k) {
  int d = 0;
  for (int i = 0; i < k; ++i) d += static_cast<int>((key >> (4 * i)) & 0xF);
  return d;
}

RootPoly::Key RootPoly::pack(const std::vector<int>& exponents) const {
  if (static_cast<int>(exponents.size()) != k_) throw PreconditionError("RootPoly: exponent vector length mismatch");
  Key key = 0;
  for (int i = 0; i < k_; ++i) {
    if (exponents[i] < 0 || exponents[i] > 15) throw PreconditionError("RootPoly: exponent out of range");
    key |= static_cast<Key>(exponents[i]) << (4 * i);
  }
  return key;
}

std::vector<int> RootPoly::unpack(Key key) const {
  std::vector<int> e(k_);
  for (int i = 0; i < k_; ++i) e[i] = static_cast<int>((key >> (4 * i)) & 0xF);
  return e;
}

Rational RootPoly::coefficient(const std::vector<int>& exponents) const {
  auto it = terms_.find(pack(exponents));
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<std::pair<std::vector<int>, Rational>> RootPoly::terms() const {
  std::vector<std::pair<std::vector<int>, Rational>> out;
  out.reserve(terms_.size());
  for (const auto& [key, c] : terms_) out.emplace_back(unpack(key), c);
  return out;
}

RootPoly& RootPoly::operator+=(const RootPoly& o) {
  if (o.k_ != k_ || o.bound_ != bound_) throw PreconditionError("RootPoly: shape mismatch");
  for (const auto& [key, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

RootPoly& RootPoly::operator*=(const Rational& q) {
  if (sgn(q) == 0) terms_.clear();
  for (auto& [key, c] : terms_) c *= q;
  return *this;
}

RootPoly operator*(const RootPoly& a, const RootPoly& b) {
  if (a.k_ != b.k_ || a.bound_ != b.bound_) throw PreconditionError("RootPoly: shape mismatch");
  RootPoly out(a.k_, a.bound_);
  std::vector<std::pair<int, const std::pair<const RootPoly::Key, Rational>*>> bs;
  bs.reserve(b.terms_.size());
  for (const auto& t : b.terms_) bs.emplace_back(RootPoly::degree_of(t.first, b.k_), &t);
  Rational prod;
  for (const auto& [ka, ca] : a.terms_) {
    int da = RootPoly::degree_of(ka, a.k_);
    for (const auto& [db, tb] : bs) {
      if (da + db > a.bound_) continue;
      // Total degree <= 15 keeps each nibble from overflowing.
      RootPoly::Key key = ka + tb->first;
      prod = ca * tb->second;
      auto [it, inserted] = out.terms_.try_emplace(key, prod);
      if (!inserted) {
        it->second += prod;
        if (sgn(it->second) == 0) out.terms_.erase(it);
      }
    }
  }
  return out;
}

RootPoly expand_in_roots(const GradedPoly& p, int k, int bound) {
  if (p.uses_primed()) throw PreconditionError("expand_in_roots: primed variables are not supported");
  std::map<int, std::vector<RootPoly>> powers;  // powers[j][e-1] = ch_j^e
  auto ch = [&](int j) {
    RootPoly r(k, bound);
    Rational inv = Rational(1) / factorial(j);
    for (int i = 0; i < k; ++i) {
      std::vector<int> e(k, 0);
      e[i] = j;
      r += RootPoly::monomial(k, bound, e, inv);
    }
    return r;
  };
  auto power = [&](int j, int e) -> const RootPoly& {
    auto& list = powers[j];
    if (list.empty()) list.push_back(ch(j));
    while (static_cast<int>(list.size()) < e) list.push_back(list.back() * list.front());
    return list[e - 1];
  };
  RootPoly out(k, bound);
  for (const auto& [m, c] : p.terms()) {
    if (weighted_degree(m) > bound) continue;
    RootPoly term = RootPoly::constant(k, bound, c);
    for (const auto& [v, e] : m) term = term * power(v.index, e);
    out += term;
  }
  return out;
}

}  // namespace chernforge
