#include "chernforge/forms.hpp"
#include "chernforge/generate.hpp"

#include <doctest.h>

#include <algorithm>

using namespace chernforge;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

TorusForm dx(int n, int c) { return TorusForm::dx(n, c); }

TorusForm mode(int n, const Gauss& c, IndexMask mask, std::vector<int> k, int t_exp = 0, bool has_t = false) {
  return TorusForm::term(n, c, mask, k, t_exp, has_t);
}

// Parity of the permutation sorting the concatenation of A and B, by counting inversions.
int inversion_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  std::vector<int> seq;
  for (int j = 0; j < 32; ++j)
    if (a >> j & 1u) seq.push_back(j);
  for (int j = 0; j < 32; ++j)
    if (b >> j & 1u) seq.push_back(j);
  int inv = 0;
  for (std::size_t x = 0; x < seq.size(); ++x)
    for (std::size_t y = x + 1; y < seq.size(); ++y)
      if (seq[x] > seq[y]) ++inv;
  return inv % 2 ? -1 : 1;
}

int degree_of(const TorusForm& a) { return std::max(a.max_degree(), 0); }

}  // namespace

TEST_SUITE("forms") {
  TEST_CASE("wedge examples") {
    CHECK(wedge(dx(2, 0), dx(2, 1)) == TorusForm::term(2, Gauss(1), dx_bit(0) | dx_bit(1)));
    CHECK(wedge(dx(2, 1), dx(2, 0)) == TorusForm::term(2, Gauss(-1), dx_bit(0) | dx_bit(1)));
    CHECK(wedge(mode(2, Gauss(1), dx_bit(0), {1, 0}), mode(2, Gauss(1), dx_bit(1), {0, 1})) ==
          mode(2, Gauss(1), dx_bit(0) | dx_bit(1), {1, 1}));
    CHECK(wedge(dx(2, 0), dx(2, 0)).is_zero());
    CHECK_THROWS_AS(wedge(dx(2, 0), dx(3, 0)), PreconditionError);
  }

  TEST_CASE("koszul sign agrees with inversion counting") {
    for (IndexMask a = 0; a < 64; ++a)
      for (IndexMask b = 0; b < 64; ++b) CHECK(koszul_sign(a << 1, b << 1) == inversion_sign(a << 1, b << 1));
  }

  TEST_CASE("exterior_d examples and normalization") {
    CHECK(exterior_d(TorusForm::constant(3, Gauss(1))).is_zero());
    TorusForm t_dx1 = wedge(TorusForm::t_power(2, 1), dx(2, 0).with_t());
    CHECK(exterior_d(t_dx1) == wedge(TorusForm::dt(2), dx(2, 0).with_t()));
    // d E_k = i k_j E_k dx_j
    TorusForm e = mode(2, Gauss(1), 0, {3, -2});
    TorusForm expected = mode(2, Gauss(0, 3), dx_bit(0), {3, -2}) + mode(2, Gauss(0, -2), dx_bit(1), {3, -2});
    CHECK(exterior_d(e) == expected);
    // t^3 -> 3 t^2 dt
    CHECK(exterior_d(TorusForm::t_power(1, 3)) == TorusForm::term(1, Gauss(3), kDtBit, {}, 2, true));
  }

  TEST_CASE("integrate_torus examples") {
    TorusForm vol = wedge(dx(2, 0), dx(2, 1));
    CHECK(integrate_torus(vol) == Gauss(1));
    CHECK(integrate_torus(mode(2, Gauss(1), dx_bit(0) | dx_bit(1), {1, 0})) == Gauss(0));
    CHECK(integrate_torus(vol * Gauss(3)) == Gauss(3));
    CHECK_THROWS_AS(integrate_torus(dx(2, 0)), PreconditionError);
    CHECK(integrate_torus(TorusForm::constant(0, Gauss(q(5, 2)))) == Gauss(q(5, 2)));
  }

  TEST_CASE("period examples") {
    CHECK(period(dx(1, 0), dx_bit(0)) == Gauss(1));
    CHECK(period(dx(2, 0), dx_bit(1)) == Gauss(0));
    CaseGenerator gen(3);
    for (int k = -3; k <= 3; ++k) {
      TorusForm beta = gen.real_form(2, 1, 3);
      TorusForm form = wedge(dx(2, 0), dx(2, 1)) * Gauss(k) + exterior_d(beta);
      CHECK(period(form, dx_bit(0) | dx_bit(1)) == Gauss(k));
    }
    CHECK_THROWS_AS(period(mode(2, Gauss(1), dx_bit(0), {0, 1}), dx_bit(0)), PreconditionError);
    CHECK_THROWS_AS(period(dx(2, 0), dx_bit(0) | dx_bit(1)), PreconditionError);
  }

  TEST_CASE("period of an exact form vanishes") {
    CaseGenerator gen(11);
    for (int c = 0; c < 100; ++c) {
      const int n = static_cast<int>(gen.uniform(1, 5));
      const int p = static_cast<int>(gen.uniform(0, n - 1));
      TorusForm da = exterior_d(gen.real_form(n, p, 4));
      for (IndexMask I : coordinate_subsets(n, p + 1)) CHECK(period(da, I) == Gauss(0));
    }
  }

  TEST_CASE("fiber_integrate_t examples") {
    TorusForm dt_dx1 = wedge(TorusForm::dt(2), dx(2, 0).with_t());
    CHECK(fiber_integrate_t(dt_dx1) == dx(2, 0));
    CHECK(fiber_integrate_t(wedge(TorusForm::t_power(2, 1), dt_dx1)) == dx(2, 0) * Gauss(q(1, 2)));
    CHECK(fiber_integrate_t(dx(2, 0).with_t()).is_zero());
    CHECK_THROWS_AS(fiber_integrate_t(dx(2, 0)), PreconditionError);
  }

  TEST_CASE("fiber_integrate_circle examples") {
    CHECK(fiber_integrate_circle(wedge(dx(2, 0), dx(2, 1)), 0) == dx(1, 0));
    CHECK(fiber_integrate_circle(dx(2, 1), 0).is_zero());
    CHECK(fiber_integrate_circle(mode(2, Gauss(1), dx_bit(0) | dx_bit(1), {1, 0}), 0).is_zero());
    // frequency along the other axes is kept and reindexed
    CHECK(fiber_integrate_circle(mode(3, Gauss(2), dx_bit(0) | dx_bit(2), {0, 1, -1}), 0) ==
          mode(2, Gauss(2), dx_bit(1), {1, -1}));
    // moving dx_2 to the front past dx_1 costs a sign
    CHECK(fiber_integrate_circle(wedge(dx(2, 0), dx(2, 1)), 1) == -dx(1, 0));
  }

  TEST_CASE("apply_Ci examples") {
    const int n = 4;
    TorusForm eta = wedge(dx(n, 0), dx(n, 1)) + wedge(dx(n, 2), dx(n, 3)) * Gauss(2);
    TorusForm zeta = wedge(wedge(dx(n, 0), dx(n, 1)), wedge(dx(n, 2), dx(n, 3))) * Gauss(q(1, 3));
    EvenFormBundle w(n);
    w.set(1, eta);
    CHECK(apply_Ci(w, 1) == eta);
    w.set(2, zeta);
    CHECK(apply_Ci(w, 2) == wedge(eta, eta) * Gauss(q(1, 2)) - zeta);
    CHECK(apply_Ci(EvenFormBundle(n), 2).is_zero());
    CHECK_THROWS_AS(apply_Ci(w, 3), PreconditionError);
    CHECK_THROWS_AS(apply_Ci(w, 0), PreconditionError);
  }

  TEST_CASE("apply_total_C examples") {
    const int n = 4;
    EvenFormBundle zero(n);
    CHECK(apply_total_C(zero) == EvenFormBundle::unit(n));
    TorusForm eta = wedge(dx(n, 0), dx(n, 1)) + wedge(dx(n, 2), dx(n, 3));
    EvenFormBundle w(n);
    w.set(1, eta);
    EvenFormBundle expected = EvenFormBundle::unit(n);
    expected.set(1, eta);
    expected.set(2, wedge(eta, eta) * Gauss(q(1, 2)));
    CHECK(apply_total_C(w) == expected);
  }

  TEST_CASE("apply_total_C is multiplicative on sums of generated even forms") {
    CaseGenerator gen(5);
    for (int c = 0; c < 40; ++c) {
      const int n = static_cast<int>(gen.uniform(2, 6));
      EvenFormBundle a(n), b(n);
      for (int k = 1; 2 * k <= n; ++k) {
        a.set(k, gen.real_form(n, 2 * k, 2));
        b.set(k, gen.real_form(n, 2 * k, 2));
      }
      CHECK(apply_total_C(a + b) == wedge(apply_total_C(a), apply_total_C(b)));
    }
  }

  TEST_CASE("pullback examples") {
    CHECK(pullback_linear(dx(2, 0), IntMatrix::identity(2)) == dx(2, 0));
    CHECK(pullback_linear(dx(1, 0), IntMatrix(1, 1, {2})) == dx(1, 0) * Gauss(2));
    // doubling on T^2 multiplies the area form by 4
    IntMatrix twice(2, 2, {2, 0, 0, 2});
    CHECK(pullback_linear(wedge(dx(2, 0), dx(2, 1)), twice) == wedge(dx(2, 0), dx(2, 1)) * Gauss(4));
    // frequency k -> A^T k
    IntMatrix a(2, 3, {1, 2, 0, 0, 1, -1});
    CHECK(pullback_linear(mode(2, Gauss(1), 0, {1, 1}), a) == mode(3, Gauss(1), 0, {1, 3, -1}));
    // projection T^3 -> T^2 onto the first two coordinates
    IntMatrix proj(2, 3, {1, 0, 0, 0, 1, 0});
    CHECK(pullback_linear(wedge(dx(2, 0), dx(2, 1)), proj) == wedge(dx(3, 0), dx(3, 1)));
  }

  TEST_CASE("pullback is functorial and commutes with d and wedge") {
    CaseGenerator gen(9);
    for (int c = 0; c < 100; ++c) {
      const int n = static_cast<int>(gen.uniform(1, 4));
      const int m = static_cast<int>(gen.uniform(1, 4));
      const int l = static_cast<int>(gen.uniform(1, 4));
      TorusForm f = gen.any_form(n, 3), g = gen.any_form(n, 3);
      IntMatrix a = gen.matrix(n, m), b = gen.matrix(m, l);
      CHECK(pullback_linear(exterior_d(f), a) == exterior_d(pullback_linear(f, a)));
      CHECK(pullback_linear(wedge(f, g), a) == wedge(pullback_linear(f, a), pullback_linear(g, a)));
      IntMatrix ab(n, l);
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < l; ++s)
          for (int k = 0; k < m; ++k) ab(r, s) += a(r, k) * b(k, s);
      CHECK(pullback_linear(pullback_linear(f, a), b) == pullback_linear(f, ab));
    }
  }

  TEST_CASE("calculus identities on generated forms") {
    CaseGenerator gen(21);
    for (int c = 0; c < 300; ++c) {
      const int n = static_cast<int>(gen.uniform(1, 5));
      const bool has_t = gen.coin();
      const int ambient = n + (has_t ? 1 : 0);
      TorusForm a = gen.real_form(n, static_cast<int>(gen.uniform(0, ambient)), 3, has_t);
      TorusForm b = gen.any_form(n, 3, has_t);
      TorusForm e = gen.real_form(n, static_cast<int>(gen.uniform(0, ambient)), 3, has_t);
      CHECK(exterior_d(exterior_d(b)).is_zero());
      Gauss sa(degree_of(a) % 2 ? -1 : 1);
      CHECK(exterior_d(wedge(a, b)) == wedge(exterior_d(a), b) + sa * wedge(a, exterior_d(b)));
      Gauss sae((degree_of(a) * degree_of(e)) % 2 ? -1 : 1);
      CHECK(wedge(a, e) == sae * wedge(e, a));
      CHECK(a.is_real());
      CHECK(exterior_d(a).is_real());
      if (has_t) {
        CHECK(exterior_d(fiber_integrate_t(b)) + fiber_integrate_t(exterior_d(b)) ==
              b.restrict_t(Rational(1)) - b.restrict_t(Rational(0)));
      } else {
        const int axis = static_cast<int>(gen.uniform(0, n - 1));
        CHECK(fiber_integrate_circle(exterior_d(b), axis) == -exterior_d(fiber_integrate_circle(b, axis)));
      }
    }
  }

  TEST_CASE("restriction of t") {
    TorusForm f = TorusForm::term(1, Gauss(3), dx_bit(0), {}, 2, true) + TorusForm::term(1, Gauss(1), kDtBit, {}, 0, true);
    CHECK(f.restrict_t(q(1, 2)) == dx(1, 0) * Gauss(q(3, 4)));
    CHECK(f.restrict_t(Rational(0)).is_zero());
  }

  TEST_CASE("realness predicate") {
    TorusForm cos_mode = mode(1, Gauss(q(1, 2)), 0, {1}) + mode(1, Gauss(q(1, 2)), 0, {-1});
    CHECK(cos_mode.is_real());
    CHECK_FALSE(mode(1, Gauss(1), 0, {1}).is_real());
    CHECK_FALSE(TorusForm::constant(1, Gauss(0, 1)).is_real());
    CHECK(TorusForm(1).is_real());
  }

  TEST_CASE("even form bundles reject wrong degrees") {
    EvenFormBundle w(4);
    CHECK(w.size() == 3);
    CHECK_THROWS_AS(w.set(1, dx(4, 0)), PreconditionError);
    CHECK_THROWS_AS(EvenFormBundle::from_form(dx(4, 0)), PreconditionError);
    EvenFormBundle wt(3, true);
    CHECK(wt.size() == 3);
  }

  TEST_CASE("dimension zero") {
    TorusForm c = TorusForm::constant(0, Gauss(q(2, 3)));
    CHECK(exterior_d(c).is_zero());
    CHECK(integrate_torus(c) == Gauss(q(2, 3)));
    CHECK(wedge(c, c) == TorusForm::constant(0, Gauss(q(4, 9))));
  }

  TEST_CASE("text grammar golden and round trip") {
    TorusForm f = mode(3, Gauss(q(1, 2), q(-1, 3)), dx_bit(0) | dx_bit(2), {1, 0, -2});
    CHECK(to_text(f) == "(1/2-1/3i) exp[1,0,-2] d{1,3}\n");
    TorusForm g = TorusForm::term(2, Gauss(4), kDtBit | dx_bit(1), {}, 2, true);
    CHECK(to_text(g) == "(4+0i) t^2 exp[0,0] d{t,2}\n");
    CHECK(parse_form("(4+0i) t^2 exp[0,0] d{t,2}", 2, true) == g);
    CHECK(parse_form("(1+0i) d{1}\n# comment\n\n(1+0i) d{1}", 2) == dx(2, 0) * Gauss(2));
    CHECK(parse_form("(3+0i)", 2) == TorusForm::constant(2, Gauss(3)));
    CaseGenerator gen(4);
    for (int c = 0; c < 200; ++c) {
      const int n = static_cast<int>(gen.uniform(0, 5));
      const bool has_t = gen.coin();
      TorusForm a = n == 0 ? TorusForm::constant(0, gen.gauss(), has_t) : gen.any_form(n, 5, has_t);
      std::string text = to_text(a);
      TorusForm back = parse_form(text, n, has_t);
      CHECK(back == a);
      CHECK(to_text(back) == text);
    }
  }

  TEST_CASE("text grammar diagnostics") {
    auto error_at = [](std::string_view text, int n, bool has_t = false) -> std::pair<int, int> {
      try {
        parse_form(text, n, has_t);
      } catch (const ParseError& e) {
        return {e.line, e.column};
      }
      return {0, 0};
    };
    CHECK(error_at("(1+0i) d{3}", 2) == std::pair{1, 10});
    CHECK(error_at("(1+0i) d{1}\n  (1+0i) exp[1] d{1}", 2) == std::pair{2, 10});
    CHECK(error_at("1 d{1}", 2) == std::pair{1, 1});
    CHECK(error_at("(1+0i) t^1 d{1}", 2) == std::pair{1, 8});
    CHECK(error_at("(1+0i) d{2,1}", 2) == std::pair{1, 12});
    CHECK(error_at("(1/0+0i) d{1}", 2).first == 1);
    CHECK(error_at("(1+0i) d{1} junk", 2) == std::pair{1, 13});
  }

  TEST_CASE("pretty rendering") {
    CHECK(to_pretty(wedge(dx(2, 0), dx(2, 1)) * Gauss(3)) == "3·dx1∧dx2");
    CHECK(to_pretty(TorusForm(2)) == "0");
  }
}
