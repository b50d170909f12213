#include "nlcs/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "nlcs/errors.hpp"
#include "nlcs/fock.hpp"
#include "nlcs/nonclassicality.hpp"
#include "nlcs/nonlinearity.hpp"
#include "nlcs/numerics.hpp"
#include "nlcs/states.hpp"

namespace nlcs {

VerifyLevel parse_verify_level(std::string_view text) {
  if (text == "quick") return VerifyLevel::quick;
  if (text == "full") return VerifyLevel::full;
  throw InvalidParameter("verify level must be quick or full, got '" + std::string(text) + "'");
}

namespace {

const Complex kI(0.0, 1.0);

class Suite {
 public:
  void record(std::string name, double measured, double tolerance) {
    const bool ok = std::isfinite(measured) && measured <= tolerance;
    results_.push_back({std::move(name), measured, tolerance, ok});
  }

  // Runs `body`; a thrown error is a failed check rather than an abort.
  template <class Fn>
  void guarded(const std::string& name, double tolerance, Fn&& body) {
    try {
      record(name, body(), tolerance);
    } catch (const std::exception& e) {
      results_.push_back({name + " [" + e.what() + "]", std::nan(""), tolerance, false});
    }
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

// Residual of [A, B] = C relative to the size of C on the interior box, so
// fast-growing spectra are held to the same number of correct digits.
double relative_commutator(const OperatorExpr& a, const OperatorExpr& b, const OperatorExpr& c, int cutoff,
                           int margin) {
  const double scale = operator_residual(c, Complex(0.0) * OperatorExpr::identity(), cutoff, margin);
  return commutator_residual(a, b, c, cutoff, margin) / std::max(1.0, scale);
}

// C_i = e(n_i + 1) - e(n_i), the diagonal of [A_i, A_i^dagger].
OperatorExpr spectrum_step(const NonlinearityModel& f, int mode) {
  return OperatorExpr::diagonal([f, mode](int n1, int n2) -> Complex {
    const int n = mode == 1 ? n1 : n2;
    return f.spectrum(n + 1) - f.spectrum(n);
  });
}

void algebra_checks(Suite& suite, const NonlinearityModel& f, int cutoff, double k0_offset) {
  constexpr int margin = 3;
  constexpr double tol = 1e-9;
  const std::string tag = " " + f.label();
  const OperatorExpr km = build_K_minus(f);
  const OperatorExpr kp = build_K_plus(f);
  const OperatorExpr k0 = build_K0(f) + Complex(k0_offset) * OperatorExpr::identity();
  const OperatorExpr g = build_g(f);
  const OperatorExpr half_i = (0.5 * kI) * OperatorExpr::identity();

  suite.guarded("[K-,K+]=2K0" + tag, tol, [&] { return relative_commutator(km, kp, Complex(2.0) * k0, cutoff, margin); });
  suite.guarded("[K0,K-]=-K-g" + tag, tol, [&] { return relative_commutator(k0, km, Complex(-1.0) * (km * g), cutoff, margin); });
  suite.guarded("[K0,K+]=gK+" + tag, tol, [&] { return relative_commutator(k0, kp, g * kp, cutoff, margin); });
  suite.guarded("[Q,K-]=0" + tag, tol, [&] {
    return relative_commutator(charge_operator(), km, Complex(0.0) * OperatorExpr::identity(), cutoff, margin);
  });
  suite.guarded("K0 hermitian" + tag, tol, [&] { return hermiticity_residual(k0, cutoff, margin); });
  suite.guarded("K+=(K-)^dagger" + tag, tol, [&] { return adjoint_residual(kp, km, cutoff, margin); });

  const OperatorExpr c1 = spectrum_step(f, 1);
  const OperatorExpr c2 = spectrum_step(f, 2);
  suite.guarded("[y1,y2]=i/2" + tag, tol, [&] { return relative_commutator(quadrature_y(1), quadrature_y(2), half_i, cutoff, margin); });
  suite.guarded("[z1,z2]=i/2" + tag, tol, [&] { return relative_commutator(quadrature_z(1), quadrature_z(2), half_i, cutoff, margin); });
  suite.guarded("[Y1,Y2]=(i/2)C1" + tag, tol, [&] {
    return relative_commutator(quadrature_Y(f, 1), quadrature_Y(f, 2), (0.5 * kI) * c1, cutoff, margin);
  });
  suite.guarded("[Z1,Z2]=(i/2)C2" + tag, tol, [&] {
    return relative_commutator(quadrature_Z(f, 1), quadrature_Z(f, 2), (0.5 * kI) * c2, cutoff, margin);
  });
  suite.guarded("[w1,w2]=i/2" + tag, tol, [&] { return relative_commutator(quadrature_w(1), quadrature_w(2), half_i, cutoff, margin); });
  suite.guarded("[W1,W2]=(i/4)(C1+C2)" + tag, tol, [&] {
    return relative_commutator(quadrature_W(f, 1), quadrature_W(f, 2), (0.25 * kI) * (c1 + c2), cutoff, margin);
  });
  suite.guarded("[x1,x2]=ik0" + tag, tol, [&] {
    return relative_commutator(quadrature_x(1), quadrature_x(2), kI * build_k0(), cutoff, margin);
  });
  suite.guarded("[X1,X2]=iK0" + tag, tol, [&] {
    return relative_commutator(quadrature_X(f, 1), quadrature_X(f, 2), kI * k0, cutoff, margin);
  });
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

std::string xi_label(Complex xi) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "xi=%g%+gi", xi.real(), xi.imag());
  return buf;
}

void state_checks(Suite& suite, const NonlinearityModel& f, int q) {
  const std::string tag = " " + f.label() + " q=" + std::to_string(q);
  for (const Complex xi : {Complex(0.3, 0.0), Complex(0.3, 0.4)}) {
    const std::string where = tag + " " + xi_label(xi);
    suite.guarded("eigen residual A1A2" + where, 1e-10, [&] {
      return eigen_residual(build_state(xi, q, f, Parity::full), false);
    });
    for (const Parity p : {Parity::even, Parity::odd}) {
      const std::string pname(to_string(p));
      suite.guarded("eigen residual (A1A2)^2 " + pname + where, 1e-10, [&] {
        return eigen_residual(build_state(xi, q, f, p), true);
      });
      suite.guarded("parity zeros " + pname + where, 0.0, [&] {
        const ChargeState s = build_state(xi, q, f, p);
        double worst = 0.0;
        const auto& c = s.coefficients();
        for (Eigen::Index n = (p == Parity::even ? 1 : 0); n < c.size(); n += 2) worst = std::max(worst, std::abs(c[n]));
        return worst;
      });
    }
    for (const Parity p : {Parity::full, Parity::even, Parity::odd}) {
      suite.guarded("sum P = 1 " + std::string(to_string(p)) + where, 1e-12, [&] {
        return std::abs(build_state(xi, q, f, p).probabilities().sum() - 1.0);
      });
    }
    suite.guarded("<even|odd>=0" + where, 1e-14, [&] {
      return std::abs(overlap(build_state(xi, q, f, Parity::even), build_state(xi, q, f, Parity::odd)).value);
    });
  }
}

void oracle_checks(Suite& suite, const NonlinearityModel& f, int q, double x) {
  char where[64];
  std::snprintf(where, sizeof where, " q=%d x=%g", q, x);
  const std::string tag = " " + f.label() + where;
  suite.guarded("analytic vs Fock measures" + tag, 1e-9, [&] {
    const ChargeState s = build_state(Complex(std::sqrt(x), 0.0), q, f, Parity::full);
    const MeasureReport a = evaluate(s);
    const MeasureReport b = evaluate_via_fock(s);
    double worst = 0.0;
    for (const Measure m : all_measures()) {
      if (a[m].has_value() != b[m].has_value()) return std::numeric_limits<double>::infinity();
      if (a[m]) worst = std::max(worst, relative_gap(*a[m], *b[m]));
    }
    return worst;
  });
}

void reduction_checks(Suite& suite, int max_q) {
  const NonlinearityModel unit = model_unit();
  for (int q = 0; q <= max_q; ++q) {
    for (const double x : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      char name[96];
      std::snprintf(name, sizeof name, "N(x) = q! |xi|^-q I_q(2|xi|) f=1 q=%d x=%g", q, x);
      suite.guarded(name, 1e-10, [&] {
        const double r = std::sqrt(x);
        const double oracle = log_factorial(static_cast<std::size_t>(q)).to_real() * std::pow(r, -q) * bessel_i(q, 2.0 * r);
        return relative_gap(normalization(x, q, unit).value(), oracle);
      });
    }
  }
}

void model_checks(Suite& suite, const std::vector<NonlinearityModel>& models) {
  for (const auto& f : models) {
    suite.guarded("spectrum round trip " + f.label(), 1e-14, [&] {
      const NonlinearityModel g = model_from_spectrum([&f](int n) { return f.spectrum(n); }, "roundtrip");
      double worst = 0.0;
      for (int n = 1; n <= 100; ++n) worst = std::max(worst, std::abs(g.f(n) / f.f(n) - 1.0));
      return worst;
    });
  }
  auto dual = [&suite](const NonlinearityModel& a, const NonlinearityModel& b) {
    suite.guarded("dual pair f*f=1 " + a.label() + " " + b.label(), 1e-14, [&] {
      double worst = 0.0;
      for (int n = 1; n <= 100; ++n) worst = std::max(worst, std::abs(a.f(n) * b.f(n) - 1.0));
      return worst;
    });
  };
  dual(model_harmonious(), model_dual_harmonious());
  dual(model_barut_girardello(0.5), model_gilmore_perelomov(0.5));
  dual(model_barut_girardello(1.0), model_gilmore_perelomov(1.0));
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  Suite suite;
  const bool full = options.level == VerifyLevel::full;
  const int cutoff = full ? 24 : 20;

  std::vector<NonlinearityModel> models{model_unit()};
  if (full) {
    for (auto& m : catalog_models()) models.push_back(std::move(m));
  } else {
    models.push_back(model_poschl_teller(3.0));
  }
  const std::vector<int> charges = full ? std::vector<int>{0, 1, 2, -2} : std::vector<int>{0, 2};

  for (const auto& f : models) algebra_checks(suite, f, cutoff, options.k0_offset);
  for (const auto& f : models)
    for (const int q : charges) state_checks(suite, f, q);

  for (const auto& f : models) {
    const std::vector<double> xs = f.finite_radius() ? std::vector<double>{0.25, 0.5, 0.8} : std::vector<double>{0.25, 1.0, 4.0};
    const std::vector<int> qs = full ? std::vector<int>{0, 1, 2} : std::vector<int>{2};
    for (const int q : qs)
      for (const double x : xs) oracle_checks(suite, f, q, x);
  }

  suite.guarded("<q=1|q=2>=0 exactly", 0.0, [&] {
    const NonlinearityModel f = model_poschl_teller(3.0);
    return std::abs(overlap(build_state(0.5, 1, f, Parity::full), build_state(0.5, 2, f, Parity::full)).value);
  });
  reduction_checks(suite, full ? 5 : 2);
  model_checks(suite, models);
  return suite.take();
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

void write_report(std::ostream& out, const std::vector<CheckResult>& results) {
  std::size_t failed = 0;
  for (const auto& r : results) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  measured=%.3e  tol=%.1e", r.measured, r.tolerance);
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << buf << '\n';
    failed += r.passed ? 0 : 1;
  }
  out << results.size() - failed << '/' << results.size() << " checks passed\n";
}

}  // namespace nlcs
