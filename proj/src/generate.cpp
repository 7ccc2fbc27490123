#include "chernforge/generate.hpp"

#include <numeric>

namespace chernforge {

std::int64_t CaseGenerator::uniform(std::int64_t lo, std::int64_t hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng_() % range);
}

Rational CaseGenerator::rational(int bound) {
  const long q = static_cast<long>(uniform(1, 12));
  const long p = static_cast<long>(uniform(-q * bound, q * bound));
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Gauss CaseGenerator::gauss(int bound) { return Gauss(rational(bound), rational(bound)); }

std::vector<int> CaseGenerator::frequency(int n) {
  std::vector<int> k(static_cast<std::size_t>(n));
  for (auto& v : k) v = static_cast<int>(uniform(-2, 2));
  return k;
}

IndexMask CaseGenerator::random_mask(int n, int p) {
  std::vector<int> coords(static_cast<std::size_t>(n));
  std::iota(coords.begin(), coords.end(), 0);
  for (int j = 0; j < p; ++j) {
    auto pick = static_cast<std::size_t>(uniform(j, n - 1));
    std::swap(coords[static_cast<std::size_t>(j)], coords[pick]);
  }
  coords.resize(static_cast<std::size_t>(p));
  return coords_mask(coords);
}

TorusForm CaseGenerator::real_form(int n, int p, int modes, bool has_t) {
  TorusForm out(n, has_t);
  const int ambient = n + (has_t ? 1 : 0);
  if (p < 0 || p > ambient) return out;
  const auto count = uniform(1, modes);
  for (std::int64_t m = 0; m < count; ++m) {
    IndexMask mask;
    if (has_t && p >= 1 && (p > n || coin()))
      mask = kDtBit | random_mask(n, p - 1);
    else
      mask = random_mask(n, p);
    std::vector<int> k = frequency(n);
    const int t_exp = has_t ? static_cast<int>(uniform(0, 2)) : 0;
    bool zero = true;
    for (int v : k) zero = zero && v == 0;
    if (zero) {
      out += TorusForm::term(n, Gauss(rational()), mask, k, t_exp, has_t);
    } else {
      Gauss c = gauss();
      std::vector<int> minus(k);
      for (auto& v : minus) v = -v;
      out += TorusForm::term(n, c, mask, k, t_exp, has_t);
      out += TorusForm::term(n, c.conj(), mask, minus, t_exp, has_t);
    }
  }
  return out;
}

TorusForm CaseGenerator::any_form(int n, int terms, bool has_t) {
  TorusForm out(n, has_t);
  const auto count = uniform(1, terms);
  for (std::int64_t m = 0; m < count; ++m) {
    const int ambient = n + (has_t ? 1 : 0);
    const int p = static_cast<int>(uniform(0, ambient));
    IndexMask mask;
    if (has_t && p >= 1 && (p > n || coin()))
      mask = kDtBit | random_mask(n, p - 1);
    else
      mask = random_mask(n, p);
    const int t_exp = has_t ? static_cast<int>(uniform(0, 2)) : 0;
    out += TorusForm::term(n, gauss(), mask, frequency(n), t_exp, has_t);
  }
  return out;
}

TorusForm CaseGenerator::based_function(int n, int modes) {
  TorusForm f = real_form(n, 0, modes);
  return f - TorusForm::constant(n, f.value_at_origin());
}

TorusForm CaseGenerator::odd_form(int n, int modes) {
  TorusForm out(n);
  const auto count = uniform(1, modes);
  for (std::int64_t m = 0; m < count; ++m) {
    const int p = 2 * static_cast<int>(uniform(0, (n - 1) / 2)) + 1;
    out += real_form(n, p, 1);
  }
  return out;
}

LineBundle CaseGenerator::line(int n) {
  std::vector<std::int64_t> K(static_cast<std::size_t>(n * n), 0);
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l)
      if (coin()) {
        const auto v = uniform(-3, 3);
        K[static_cast<std::size_t>(j * n + l)] = v;
        K[static_cast<std::size_t>(l * n + j)] = -v;
      }
  std::vector<Rational> theta(static_cast<std::size_t>(n));
  for (auto& q : theta) q = mod_one(rational());
  TorusForm beta = coin() ? real_form(n, 1, 2) : TorusForm(n);
  return LineBundle(n, std::move(K), std::move(theta), std::move(beta));
}

DiagBundle CaseGenerator::bundle(int n, int max_rank) {
  const auto rank = uniform(1, max_rank);
  std::vector<LineBundle> lines;
  for (std::int64_t r = 0; r < rank; ++r) lines.push_back(line(n));
  return DiagBundle(std::move(lines));
}

KCycle CaseGenerator::cycle(int n, bool nonzero_rho) {
  DiagBundle b = bundle(n);
  TorusForm rho(n);
  if (nonzero_rho || coin()) {
    do rho = odd_form(n); while (nonzero_rho && rho.is_zero());
  }
  return KCycle(std::move(b), std::move(rho));
}

OddKCycle CaseGenerator::odd_cycle(int n, int max_components) {
  const auto count = uniform(1, max_components);
  std::vector<OddComponent> components;
  for (std::int64_t c = 0; c < count; ++c) {
    OddComponent comp;
    for (int l = 0; l < n; ++l) comp.winding.push_back(uniform(-3, 3));
    comp.phase = coin() ? based_function(n) : TorusForm(n);
    components.push_back(std::move(comp));
  }
  return OddKCycle(n, std::move(components));
}

TorusForm CaseGenerator::gauge_shift(int n) {
  std::map<IndexMask, Rational> integral;
  const auto count = uniform(0, 2);
  for (std::int64_t m = 0; m < count; ++m) {
    const int p = 2 * static_cast<int>(uniform(0, (n - 1) / 2)) + 1;
    integral[random_mask(n, p)] += Rational(static_cast<long>(uniform(-2, 2)));
  }
  std::erase_if(integral, [](const auto& kv) { return sgn(kv.second) == 0; });
  TorusForm out = TorusForm::harmonic(n, integral);
  if (count == 0 || coin()) {
    const int p = 2 * static_cast<int>(uniform(0, (n - 1) / 2));
    out += exterior_d(real_form(n, p, 2));
  }
  return out;
}

IntMatrix CaseGenerator::matrix(int rows, int cols) {
  IntMatrix a(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a(r, c) = uniform(-2, 2);
  return a;
}

PathPoly CaseGenerator::path() {
  switch (uniform(0, 2)) {
    case 0:
      return PathPoly{{2, Rational(1)}};
    case 1:
      return PathPoly{{2, Rational(3)}, {3, Rational(-2)}};
    default: {
      Rational a = rational(2), b = rational(2);
      PathPoly q{{1, a}, {2, b}, {3, Rational(1) - a - b}};
      std::erase_if(q, [](const auto& kv) { return sgn(kv.second) == 0; });
      return q;
    }
  }
}

}  // namespace chernforge
