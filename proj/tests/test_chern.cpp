#include "chernforge/chern.hpp"
#include "chernforge/generate.hpp"

#include <doctest.h>

using namespace chernforge;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

TorusForm dx(int n, int c) { return TorusForm::dx(n, c); }

using Table = std::map<IndexMask, Rational>;

int shuffle_sign(IndexMask a, IndexMask b) {
  int inv = 0;
  for (int x = 0; x < 32; ++x)
    if (a >> x & 1u)
      for (int y = 0; y < x; ++y)
        if (b >> y & 1u) ++inv;
  return inv % 2 ? -1 : 1;
}

Table cup_tables(const Table& x, const Table& y) {
  Table out;
  for (const auto& [A, va] : x)
    for (const auto& [B, vb] : y)
      if (!(A & B)) out[A | B] += shuffle_sign(A, B) * va * vb;
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

// First Chern period table read directly off the K matrix.
Table line_table(const LineBundle& L) {
  Table t;
  const int n = L.dimension();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (L.K(a, b) != 0) t[dx_bit(a) | dx_bit(b)] = Rational(static_cast<long>(L.K(a, b)));
  return t;
}

// sigma_i of the line tables by subset enumeration.
Table sigma_tables(const std::vector<LineBundle>& lines, int i) {
  Table total;
  const int r = static_cast<int>(lines.size());
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) != i) continue;
    Table prod{{0, Rational(1)}};
    for (int j = 0; j < r; ++j)
      if (mask >> j & 1u) prod = cup_tables(prod, line_table(lines[static_cast<std::size_t>(j)]));
    for (const auto& [I, v] : prod) total[I] += v;
  }
  std::erase_if(total, [](const auto& kv) { return sgn(kv.second) == 0; });
  return total;
}

Table nonzero(const Table& t) {
  Table out = t;
  std::erase_if(out, [](const auto& kv) { return sgn(kv.second) == 0; });
  return out;
}

// Integral of a real form along coordinate loop c through the origin.
Rational loop_integral(const TorusForm& f, int c) {
  Gauss total;
  for (const auto& [key, coeff] : f.terms())
    if (key.mask == dx_bit(c) && key.freq[static_cast<std::size_t>(c)] == 0) total += coeff;
  REQUIRE(total.is_real());
  return total.re();
}

LineBundle line_with(int n, std::vector<std::pair<std::pair<int, int>, long>> entries, std::vector<Rational> theta = {},
                     TorusForm beta = TorusForm()) {
  std::vector<std::int64_t> K(static_cast<std::size_t>(n * n), 0);
  for (const auto& [ab, v] : entries) {
    K[static_cast<std::size_t>(ab.first * n + ab.second)] = v;
    K[static_cast<std::size_t>(ab.second * n + ab.first)] = -v;
  }
  if (theta.empty()) theta.assign(static_cast<std::size_t>(n), Rational(0));
  if (beta.dimension() != n) beta = TorusForm(n);
  return LineBundle(n, std::move(K), std::move(theta), std::move(beta));
}

}  // namespace

TEST_SUITE("chern") {
  TEST_CASE("cycle validation") {
    DiagBundle b = DiagBundle::trivial(2);
    CHECK_THROWS_AS(KCycle(b, TorusForm(3)), PreconditionError);
    CHECK_THROWS_AS(KCycle(b, TorusForm::constant(2, Gauss(1))), PreconditionError);
    CHECK_THROWS_AS(KCycle(b, dx(2, 0) * Gauss(0, 1)), PreconditionError);
    CHECK_THROWS_AS(KCycle(b, TorusForm::dt(2)), PreconditionError);
    CHECK_NOTHROW(KCycle(b, dx(2, 0)));
  }

  TEST_CASE("chern_hat preconditions") {
    KCycle w(DiagBundle::trivial(2), TorusForm(2));
    CHECK_THROWS_AS(chern_hat(w, 2), PreconditionError);
    CHECK_THROWS_AS(chern_hat(w, 0), PreconditionError);
    CHECK_THROWS_AS(chern_hat_via_ch(w, 2), PreconditionError);
    CHECK_THROWS_AS(chern_hat(w, 1, PathPoly{{1, q(1, 2)}}), PreconditionError);
    CHECK_THROWS_AS(check_path(PathPoly{{0, q(1)}}), PreconditionError);
    CHECK_NOTHROW(check_path(PathPoly{{2, q(3)}, {3, q(-2)}}));
  }

  TEST_CASE("rho = 0 gives the Cheeger-Simons class") {
    CaseGenerator gen(11);
    for (int c = 0; c < 20; ++c) {
      LineBundle L = gen.line(static_cast<int>(gen.uniform(2, 5)));
      KCycle w(DiagBundle({L}), TorusForm(L.dimension()));
      CHECK(same_class(chern_hat(w, 1), cs_class(L)));
    }
  }

  TEST_CASE("flat line with rho = dx1/3 shifts the holonomy") {
    KCycle w(DiagBundle::trivial(2), dx(2, 0) * Gauss(q(1, 3)));
    DiffChar c1 = chern_hat(w, 1);
    CHECK(R_map(c1).is_zero());
    CHECK(holonomy(c1, dx_bit(0)) == q(1, 3));
    CHECK(holonomy(c1, dx_bit(1)) == 0);
    CHECK(same_class(c1, a_map(dx(2, 0) * Gauss(q(1, 3)))));
  }

  TEST_CASE("Chern number of K12 = k") {
    for (long k = -3; k <= 3; ++k) {
      KCycle w(DiagBundle({line_with(2, {{{0, 1}, k}})}), TorusForm(2));
      DiffChar c1 = chern_hat(w, 1);
      CHECK(R_map(c1) == wedge(dx(2, 0), dx(2, 1)) * Gauss(k));
      CHECK(nonzero(curvature_periods(c1)) == nonzero(Table{{dx_bit(0) | dx_bit(1), Rational(k)}}));
      CHECK(nonzero(holonomy_table(c1)).empty());
    }
  }

  TEST_CASE("holonomy of c1 for flat lines against loop integrals") {
    CaseGenerator gen(12);
    for (int c = 0; c < 40; ++c) {
      const int n = static_cast<int>(gen.uniform(2, 5));
      std::vector<LineBundle> lines;
      const int rank = static_cast<int>(gen.uniform(1, 3));
      for (int j = 0; j < rank; ++j) {
        std::vector<Rational> theta;
        for (int l = 0; l < n; ++l) theta.push_back(gen.rational(1));
        lines.push_back(line_with(n, {}, theta, gen.real_form(n, 1, 3)));
      }
      TorusForm rho = gen.odd_form(n, 3);
      KCycle w(DiagBundle(lines), rho);
      DiffChar c1 = chern_hat(w, 1);
      for (int l = 0; l < n; ++l) {
        Rational expected = loop_integral(rho, l);
        for (const auto& L : lines) expected += L.theta()[static_cast<std::size_t>(l)] + loop_integral(L.beta(), l);
        CHECK(holonomy(c1, dx_bit(l)) == mod_one(expected));
      }
    }
  }

  TEST_CASE("diagram: curvature and integer periods") {
    CaseGenerator gen(13);
    for (int c = 0; c < 60; ++c) {
      const int n = static_cast<int>(gen.uniform(2, 6));
      KCycle w = gen.cycle(n);
      for (int i = 1; 2 * i <= n; ++i) {
        DiffChar ci = chern_hat(w, i);
        CHECK(ci.degree() == 2 * i);
        CHECK(R_map(ci) == apply_Ci(cycle_curvature(w), i));
        CHECK(nonzero(curvature_periods(ci)) == sigma_tables(w.bundle.lines(), i));
        CHECK(ci.is_integral());
      }
    }
  }

  TEST_CASE("via_ch agrees with chern_hat") {
    CaseGenerator gen(14);
    for (int c = 0; c < 40; ++c) {
      const int n = static_cast<int>(gen.uniform(2, 6));
      KCycle w = gen.cycle(n, c % 2 == 0);
      for (int i = 1; 2 * i <= n; ++i) CHECK(same_class(chern_hat_via_ch(w, i), chern_hat(w, i)));
    }
  }

  TEST_CASE("chern character components") {
    CaseGenerator gen(15);
    KCycle w = gen.cycle(4, true);
    std::vector<DiffChar> ch = chern_character_hat(w);
    REQUIRE(ch.size() == 3);
    CHECK(same_class(ch[0], DiffChar::unit(4).scaled(Rational(w.bundle.rank()))));
    EvenFormBundle R = cycle_curvature(w);
    for (int k = 1; k <= 2; ++k) CHECK(R_map(ch[static_cast<std::size_t>(k)]) == R[k]);
    CHECK(same_class(ch[1], chern_hat(w, 1)));
  }

  TEST_CASE("rank-1 cycle in degree 4: non-integral parts cancel") {
    LineBundle L = line_with(4, {{{0, 1}, 1}, {{2, 3}, 2}, {{0, 2}, -1}});
    CaseGenerator gen(16);
    for (int c = 0; c < 10; ++c) {
      KCycle w(DiagBundle({L}), gen.odd_form(4, 3));
      DiffChar viach = chern_hat_via_ch(w, 2);
      CHECK(viach.is_integral());
      CHECK(same_class(viach, chern_hat(w, 2)));
      CHECK(nonzero(curvature_periods(viach)).empty());
      // half c1 u c1 minus ch2
      std::vector<DiffChar> ch = chern_character_hat(w);
      DiffChar c1 = chern_hat(w, 1);
      DiffChar half = cup(c1, c1).scaled(q(1, 2));
      CHECK(same_class(half - ch[2], viach));
    }
  }

  TEST_CASE("i beyond the rank with trivial rho is trivial") {
    CaseGenerator gen(17);
    for (int c = 0; c < 20; ++c) {
      LineBundle L = gen.line(4);
      KCycle w(DiagBundle({L}), TorusForm(4));
      CHECK(same_class(chern_hat(w, 2), DiffChar::zero(4, 4)));
    }
    KCycle w2(DiagBundle({gen.line(6), gen.line(6)}), TorusForm(6));
    CHECK(same_class(chern_hat(w2, 3), DiffChar::zero(6, 6)));
  }

  TEST_CASE("two lines on T4 give ab in degree 4") {
    KCycle w(DiagBundle({line_with(4, {{{0, 1}, 3}}), line_with(4, {{{2, 3}, -2}})}), TorusForm(4));
    DiffChar c2 = chern_hat(w, 2);
    CHECK(R_map(c2) == wedge(wedge(dx(4, 0), dx(4, 1)), wedge(dx(4, 2), dx(4, 3))) * Gauss(-6));
    CHECK(same_class(c2, chern_hat_via_ch(w, 2)));
  }

  TEST_CASE("total class") {
    KCycle zero(DiagBundle::trivial(4), TorusForm(4));
    TotalChar t = total_chern_hat(zero);
    REQUIRE(t.components.size() == 3);
    CHECK(same_class(t.components[0], DiffChar::unit(4)));
    CHECK(same_class(t.components[1], DiffChar::zero(4, 2)));
    CHECK(same_class(t.components[2], DiffChar::zero(4, 4)));
    KCycle k(DiagBundle({line_with(2, {{{0, 1}, 5}})}), TorusForm(2));
    TotalChar tk = total_chern_hat(k);
    REQUIRE(tk.components.size() == 2);
    CHECK(same_class(tk.components[1], chern_hat(k, 1)));
  }

  TEST_CASE("group homomorphism") {
    CaseGenerator gen(18);
    KCycle zero(DiagBundle::trivial(4), TorusForm(4));
    KCycle w = gen.cycle(4, true);
    CHECK(verify_group_hom(w, zero).holds);
    CHECK(verify_group_hom(zero, w).holds);
    KCycle f1(DiagBundle({line_with(4, {}, {q(1, 3), q(1, 2), 0, q(2, 5)})}), dx(4, 2) * Gauss(q(1, 7)));
    KCycle f2(DiagBundle({line_with(4, {}, {q(3, 4), 0, q(1, 6), q(1, 2)})}), TorusForm(4));
    GroupHomReport flat = verify_group_hom(f1, f2);
    CHECK(flat.holds);
    for (const auto& d : flat.per_degree) CHECK(d.empty());
    for (int c = 0; c < 10; ++c) CHECK(verify_group_hom(gen.cycle(6, true), gen.cycle(6, true)).holds);
  }

  TEST_CASE("group homomorphism report flags a broken sum") {
    KCycle w(DiagBundle({line_with(4, {{{0, 1}, 1}})}), TorusForm(4));
    KCycle v(DiagBundle({line_with(4, {{{2, 3}, 1}})}), TorusForm(4));
    TotalChar lhs = total_chern_hat(KCycle(DiagBundle({line_with(4, {{{0, 1}, 1}})}), TorusForm(4)));
    TotalChar rhs = cup(total_chern_hat(w), total_chern_hat(v));
    CHECK_FALSE(same_class(lhs.components[2], rhs.components[2]));
    CHECK(verify_group_hom(w, v).holds);
  }

  TEST_CASE("path independence") {
    CaseGenerator gen(19);
    const PathPoly square{{2, q(1)}};
    const PathPoly smooth{{2, q(3)}, {3, q(-2)}};
    for (int c = 0; c < 20; ++c) {
      KCycle w = gen.cycle(4, true);
      CHECK(path_independence_check(w, 1, linear_path()));
      CHECK(path_independence_check(w, 2, square));
      CHECK(path_independence_check(w, 1, smooth));
      CHECK(path_independence_check(w, 2, gen.path()));
    }
  }

  TEST_CASE("rho gauge invariance") {
    CaseGenerator gen(20);
    for (int c = 0; c < 20; ++c) {
      KCycle w = gen.cycle(4, true);
      TorusForm beta = gen.real_form(4, 0, 3) + gen.real_form(4, 2, 2);
      CHECK(rho_gauge_check(w, 1, exterior_d(beta)));
      CHECK(rho_gauge_check(w, 1, dx(4, 0)));
      CHECK(rho_gauge_check(w, 2, dx(4, 1) * Gauss(3) + exterior_d(beta)));
      CHECK(rho_gauge_check(w, 2, gen.gauge_shift(4)));
    }
    KCycle w = gen.cycle(4, true);
    CHECK_THROWS_AS(rho_gauge_check(w, 1, dx(4, 0) * Gauss(q(1, 2))), PreconditionError);
    CHECK_THROWS_AS(rho_gauge_check(w, 1, gen.real_form(4, 1, 2) + dx(4, 3) * Gauss(0) + gen.real_form(4, 1, 2)),
                    PreconditionError);
    CHECK_FALSE(is_integral_closed_odd(TorusForm::constant(4, Gauss(1))));
    CHECK(is_integral_closed_odd(TorusForm(4)));
  }

  TEST_CASE("naturality") {
    CaseGenerator gen(21);
    KCycle w = gen.cycle(3, true);
    CHECK(naturality_check(w, 1, IntMatrix::identity(3)));
    for (int c = 0; c < 30; ++c) {
      const int n = static_cast<int>(gen.uniform(2, 5)), m = static_cast<int>(gen.uniform(2, 5));
      KCycle v = gen.cycle(n, true);
      IntMatrix A = gen.matrix(n, m);
      for (int i = 1; 2 * i <= std::min(n, m); ++i) CHECK(naturality_check(v, i, A));
      CHECK(cycle_curvature(pullback(v, A)) == pullback_linear(cycle_curvature(v), A));
    }
  }

  TEST_CASE("odd classes: winding and phase") {
    for (long m = -3; m <= 3; ++m) {
      OddKCycle x(1, {OddComponent{{m}, TorusForm(1)}});
      DiffChar c = chern_hat_odd(x, 1);
      CHECK(c.degree() == 1);
      CHECK(same_class(c, DiffChar(1, 1, dx(1, 0) * Gauss(m), TorusForm(1))));
      CHECK(nonzero(curvature_periods(c)) == nonzero(Table{{dx_bit(0), Rational(m)}}));
    }
    DiffChar e = chern_hat_odd(circle_generator(), 1);
    CHECK(R_map(e) == dx(1, 0));
    CaseGenerator gen(22);
    TorusForm phi = gen.based_function(2, 3);
    OddKCycle p(2, {OddComponent{{0, 0}, phi}});
    DiffChar cp = chern_hat_odd(p, 1);
    CHECK(R_map(cp) == exterior_d(phi));
    CHECK(holonomy(cp, 0) == 0);
    CHECK(nonzero(curvature_periods(cp)).empty());
  }

  TEST_CASE("odd preconditions") {
    OddKCycle x(2, {OddComponent{{1, 0}, TorusForm(2)}});
    CHECK_THROWS_AS(chern_hat_odd(x, 2), PreconditionError);
    CHECK_THROWS_AS(chern_hat_odd(x, 3), PreconditionError);
    CHECK_THROWS_AS(chern_hat_odd(x, -1), PreconditionError);
  }

  TEST_CASE("odd classes on generated cycles") {
    CaseGenerator gen(23);
    for (int c = 0; c < 30; ++c) {
      const int n = static_cast<int>(gen.uniform(1, 4));
      OddKCycle x = gen.odd_cycle(n);
      DiffChar c1 = chern_hat_odd(x, 1);
      CHECK(R_map(c1) == x.odd_chern_form());
      Suspension s = suspend(x);
      for (int i = 1; i <= n; i += 2) {
        DiffChar ci = chern_hat_odd(x, i);
        CHECK(ci.is_integral());
        // oracle: sigma of suspended K tables, coordinate 0 stripped from the front
        Table lifted = sigma_tables(s.bundle.lines(), (i + 1) / 2);
        Table expected;
        for (const auto& [I, v] : lifted)
          if (I & dx_bit(0)) expected[(I & ~dx_bit(0)) >> 1] += v;
        CHECK(nonzero(curvature_periods(ci)) == nonzero(expected));
        CHECK(R_map(ci) == fiber_integrate_circle(apply_Ci(cycle_curvature(KCycle(s.bundle, s.correction)), (i + 1) / 2), 0));
      }
    }
  }
}
