#include "chernforge/suites.hpp"

#include "chernforge/config.hpp"
#include "chernforge/generate.hpp"
#include "chernforge/symfun.hpp"

#include <functional>
#include <sstream>

namespace chernforge {

namespace {

struct CaseFailure {
  std::string instance;
  std::string detail;
};

using CaseResult = std::optional<CaseFailure>;

std::string render_periods(const std::map<IndexMask, Rational>& table) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [I, v] : table) {
    os << (first ? "" : " ") << subtorus_label(I) << "=" << to_string(v);
    first = false;
  }
  return os.str();
}

std::string render(const CharDiscrepancy& d) {
  if (d.shape_mismatch) return "shape mismatch";
  std::ostringstream os;
  os << "curvature difference: " << to_pretty(d.curvature);
  if (!d.holonomy.empty()) os << "; holonomy difference: " << render_periods(d.holonomy);
  return os.str();
}

std::string render_matrix(const IntMatrix& a) {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < a.rows(); ++r) {
    os << (r ? "; " : "");
    for (int c = 0; c < a.cols(); ++c) os << (c ? " " : "") << a(r, c);
  }
  return os.str() + "]";
}

std::string render_path(const PathPoly& q) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : q) {
    os << (first ? "" : " + ") << to_string(c) << "*t^" << e;
    first = false;
  }
  return os.str();
}

SuiteReport run_cases(const std::string& name, const SuiteOptions& options, int count,
                      const std::function<CaseResult(int)>& body) {
  SuiteReport report;
  report.suite = name;
  report.seed = options.seed;
  report.cases = count;
  for (int index = 0; index < count; ++index) {
    CaseResult result;
    try {
      result = body(index);
    } catch (const std::exception& e) {
      result = CaseFailure{"", std::string("exception: ") + e.what()};
    }
    if (result) {
      ++report.failed;
      if (!report.first_failure) report.first_failure = Counterexample{index, result->instance, result->detail};
    } else {
      ++report.passed;
    }
  }
  return report;
}

// Elementary symmetric polynomial in k roots from the product of (1 + x_j).
RootPoly elementary_from_product(int k, int i) {
  RootPoly prod = RootPoly::constant(k, i, Rational(1));
  for (int j = 0; j < k; ++j) {
    std::vector<int> e(static_cast<std::size_t>(k), 0);
    e[static_cast<std::size_t>(j)] = 1;
    prod = prod * (RootPoly::constant(k, i, Rational(1)) + RootPoly::monomial(k, i, e, Rational(1)));
  }
  RootPoly out(k, i);
  for (const auto& [e, c] : prod.terms()) {
    int deg = 0;
    for (int v : e) deg += v;
    if (deg == i) out += RootPoly::monomial(k, i, e, c);
  }
  return out;
}

SuiteReport newton(const SuiteOptions& o) {
  return run_cases("newton", o, o.degree, [&](int index) -> CaseResult {
    const int i = index + 1;
    std::string inst = "i=" + std::to_string(i);
    if (!(expand_in_roots(chern_polynomial(i), i + 2, i) == elementary_from_product(i + 2, i)))
      return CaseFailure{inst, "C_i(ch) differs from sigma_i in " + std::to_string(i + 2) + " roots"};
    GradedPoly round = substitute(chern_polynomial(i), [](Var v) { return ch_from_chern(v.index); });
    if (!(round == GradedPoly::variable(i)))
      return CaseFailure{inst, "C_i(ch(s)) = " + round.to_string() + ", expected s" + std::to_string(i)};
    GradedPoly back = substitute(ch_from_chern(i), [](Var v) { return chern_polynomial(v.index); });
    if (!(back == GradedPoly::variable(i)))
      return CaseFailure{inst, "ch_i(C(s)) = " + back.to_string() + ", expected s" + std::to_string(i)};
    return std::nullopt;
  });
}

SuiteReport multiplicativity(const SuiteOptions& o) {
  return run_cases("multiplicativity", o, o.degree, [&](int index) -> CaseResult {
    SumIdentityResult r = verify_sum_identity(index + 1);
    if (r.holds) return std::nullopt;
    return CaseFailure{"N=" + std::to_string(index + 1), "discrepancy " + r.discrepancy.to_string()};
  });
}

SuiteReport whitney(const SuiteOptions& o) {
  CaseGenerator gen(o.seed);
  return run_cases("whitney", o, o.cases, [&](int index) -> CaseResult {
    const int n = index % 5 == 4 ? 6 : 4;
    KCycle w = gen.cycle(n), v = gen.cycle(n);
    std::string inst = describe(w) + "--\n" + describe(v);
    EvenFormBundle sum_form = total_chern_form(direct_sum(w.bundle, v.bundle));
    if (!(sum_form == wedge(total_chern_form(w.bundle), total_chern_form(v.bundle))))
      return CaseFailure{inst, "total Chern form of the sum is not the product"};
    GroupHomReport r = verify_group_hom(w, v);
    for (std::size_t k = 0; k < r.per_degree.size(); ++k)
      if (!r.per_degree[k].empty())
        return CaseFailure{inst, "degree " + std::to_string(2 * k) + ": " + render(r.per_degree[k])};
    return std::nullopt;
  });
}

SuiteReport diagram(const SuiteOptions& o) {
  CaseGenerator gen(o.seed);
  return run_cases("diagram", o, o.cases, [&](int) -> CaseResult {
    const int n = static_cast<int>(gen.uniform(2, 6));
    KCycle w = gen.cycle(n);
    for (int i = 1; 2 * i <= n; ++i) {
      std::string inst = describe(w) + "chern " + std::to_string(i) + "\n";
      DiffChar c = chern_hat(w, i);
      TorusForm gap = R_map(c) - apply_Ci(cycle_curvature(w), i);
      if (!gap.is_zero()) return CaseFailure{inst, "R(c_i) - C_i(R(w)) = " + to_pretty(gap)};
      auto periods = curvature_periods(c);
      auto expected = expected_chern_periods(w.bundle, i);
      if (periods != expected)
        return CaseFailure{inst, "periods " + render_periods(periods) + ", expected " + render_periods(expected)};
      CharDiscrepancy d = compare(c, chern_hat_via_ch(w, i));
      if (!d.empty()) return CaseFailure{inst, "routes disagree: " + render(d)};
    }
    return std::nullopt;
  });
}

SuiteReport paths(const SuiteOptions& o) {
  CaseGenerator gen(o.seed);
  return run_cases("paths", o, o.cases, [&](int) -> CaseResult {
    const int n = static_cast<int>(gen.uniform(2, 6));
    KCycle w = gen.cycle(n, true);
    const int i = static_cast<int>(gen.uniform(1, n / 2));
    DiffChar linear = chern_hat(w, i);
    for (const PathPoly& q : {PathPoly{{2, Rational(1)}}, PathPoly{{2, Rational(3)}, {3, Rational(-2)}}, gen.path()}) {
      CharDiscrepancy d = compare(chern_hat(w, i, q), linear);
      if (!d.empty())
        return CaseFailure{describe(w) + "chern " + std::to_string(i) + "\n", "path " + render_path(q) + ": " + render(d)};
    }
    return std::nullopt;
  });
}

SuiteReport gauge(const SuiteOptions& o) {
  CaseGenerator gen(o.seed);
  return run_cases("gauge", o, o.cases, [&](int) -> CaseResult {
    const int n = static_cast<int>(gen.uniform(2, 6));
    KCycle w = gen.cycle(n);
    const int i = static_cast<int>(gen.uniform(1, n / 2));
    TorusForm shift = gen.gauge_shift(n);
    KCycle shifted(w.bundle, w.rho + shift);
    CharDiscrepancy d = compare(chern_hat(shifted, i), chern_hat(w, i));
    if (d.empty()) return std::nullopt;
    return CaseFailure{describe(w) + "chern " + std::to_string(i) + "\n", "shift " + to_pretty(shift) + ": " + render(d)};
  });
}

SuiteReport odd(const SuiteOptions& o) {
  CaseGenerator gen(o.seed);
  return run_cases("odd", o, o.cases, [&](int) -> CaseResult {
    const int n = static_cast<int>(gen.uniform(1, 4));
    OddKCycle x = gen.odd_cycle(n);
    std::string inst = describe(x);
    Suspension s = suspend(x);
    TorusForm circle = fiber_integrate_circle(cycle_curvature(KCycle(s.bundle, s.correction)).total(), 0);
    if (!(circle == x.odd_chern_form()))
      return CaseFailure{inst, "circle integral of the suspension curvature is " + to_pretty(circle)};
    for (int i = 1; i <= n; i += 2) {
      DiffChar c = chern_hat_odd(x, i);
      if (i == 1 && !(R_map(c) == x.odd_chern_form()))
        return CaseFailure{inst, "R(c_1 odd) = " + to_pretty(R_map(c))};
    }
    return std::nullopt;
  });
}

SuiteReport naturality(const SuiteOptions& o) {
  CaseGenerator gen(o.seed);
  return run_cases("naturality", o, o.cases, [&](int) -> CaseResult {
    const int n = static_cast<int>(gen.uniform(2, 5));
    const int m = static_cast<int>(gen.uniform(2, 5));
    KCycle w = gen.cycle(n);
    IntMatrix a = gen.matrix(n, m);
    std::string inst = describe(w) + "matrix " + render_matrix(a) + "\n";
    EvenFormBundle omega = cycle_curvature(w);
    EvenFormBundle pulled = pullback_linear(omega, a);
    for (int i = 1; 2 * i <= std::min(n, m); ++i) {
      if (!(pullback_linear(apply_Ci(omega, i), a) == apply_Ci(pulled, i)))
        return CaseFailure{inst, "apply_Ci does not commute with pullback for i=" + std::to_string(i)};
      CharDiscrepancy d = compare(chern_hat(pullback(w, a), i), pullback_char(chern_hat(w, i), a));
      if (!d.empty()) return CaseFailure{inst, "i=" + std::to_string(i) + ": " + render(d)};
    }
    return std::nullopt;
  });
}

int form_degree(const TorusForm& a) { return a.max_degree() < 0 ? 0 : a.max_degree(); }

SuiteReport calculus(const SuiteOptions& o) {
  CaseGenerator gen(o.seed);
  return run_cases("calculus", o, o.cases, [&](int) -> CaseResult {
    const int n = static_cast<int>(gen.uniform(1, 5));
    const bool has_t = gen.coin();
    const int ambient = n + (has_t ? 1 : 0);
    const int p = static_cast<int>(gen.uniform(0, ambient));
    const int q = static_cast<int>(gen.uniform(0, ambient));
    TorusForm a = gen.real_form(n, p, 3, has_t), b = gen.any_form(n, 3, has_t);
    TorusForm c = gen.real_form(n, q, 3, has_t);
    std::string inst = "a:\n" + to_text(a) + "b:\n" + to_text(b) + "c:\n" + to_text(c);
    if (!exterior_d(exterior_d(b)).is_zero()) return CaseFailure{inst, "d(d b) != 0"};
    Gauss sign_a(form_degree(a) % 2 ? -1 : 1);
    if (!(exterior_d(wedge(a, b)) == wedge(exterior_d(a), b) + sign_a * wedge(a, exterior_d(b))))
      return CaseFailure{inst, "Leibniz rule fails"};
    Gauss sign_ac((form_degree(a) * form_degree(c)) % 2 ? -1 : 1);
    if (!(wedge(a, c) == sign_ac * wedge(c, a))) return CaseFailure{inst, "graded commutativity fails"};
    if (!a.is_zero() && (!a.is_real() || !exterior_d(a).is_real())) return CaseFailure{inst, "d does not preserve reality"};
    if (has_t) {
      TorusForm lhs = exterior_d(fiber_integrate_t(b)) + fiber_integrate_t(exterior_d(b));
      TorusForm rhs = b.restrict_t(Rational(1)) - b.restrict_t(Rational(0));
      if (!(lhs == rhs)) return CaseFailure{inst, "Stokes on [0,1] fails"};
    } else {
      const int axis = static_cast<int>(gen.uniform(0, n - 1));
      if (!(fiber_integrate_circle(exterior_d(b), axis) == -exterior_d(fiber_integrate_circle(b, axis))))
        return CaseFailure{inst, "circle integration does not anticommute with d"};
    }
    return std::nullopt;
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"newton", "multiplicativity", "whitney",    "diagram", "paths",
                                              "gauge",  "odd",              "naturality", "calculus"};
  return names;
}

bool is_suite(const std::string& name) {
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  if (name == "newton") return newton(options);
  if (name == "multiplicativity") return multiplicativity(options);
  if (name == "whitney") return whitney(options);
  if (name == "diagram") return diagram(options);
  if (name == "paths") return paths(options);
  if (name == "gauge") return gauge(options);
  if (name == "odd") return odd(options);
  if (name == "naturality") return naturality(options);
  if (name == "calculus") return calculus(options);
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace chernforge
