// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "nlcs/fock.hpp"
#include "nlcs/nonclassicality.hpp"
#include "nlcs/numerics.hpp"
#include "nlcs/states.hpp"
#include "nlcs/sweep.hpp"
#include "oracle_values.hpp"

using namespace nlcs;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel_gap(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0}); }

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("criterion %d %s  %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& what) { std::printf("  info  %s\n", what.c_str()); }

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

std::vector<NonlinearityModel> acceptance_models() {
  std::vector<NonlinearityModel> models{model_unit()};
  for (auto& m : catalog_models()) models.push_back(std::move(m));
  return models;
}

const int kCharges[] = {0, 1, 2, -2};
const Complex kXis[] = {Complex(0.3, 0.0), Complex(0.3, 0.4)};

// Scales xi into the guarded disk for unit-radius models.
Complex within_radius(Complex xi, const NonlinearityModel& f) {
  if (!f.finite_radius()) return xi;
  const double limit = 0.9 * f.radius();
  return std::abs(xi) < limit ? xi : xi * (limit / std::abs(xi));
}

void criterion_1() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (const auto& f : acceptance_models())
    for (const int q : kCharges)
      for (const Complex xi : kXis)
        worst = std::max(worst, eigen_residual(build_state(within_radius(xi, f), q, f, Parity::full), false));
  const double t = seconds_since(t0);
  report(1, worst < 1e-10 && t < 5.0,
         fmt("eigenvalue property: max ||A1A2 psi - xi psi|| = %.3g (< 1e-10), %.2f s (< 5 s)", worst, t));
}

void criterion_2() {
  double squared = 0.0;
  double parity_overlap = 0.0;
  bool charge_exact = true;
  for (const auto& f : acceptance_models()) {
    for (const int q : kCharges) {
      for (const Complex xi : kXis) {
        const Complex z = within_radius(xi, f);
        const ChargeState even = build_state(z, q, f, Parity::even);
        const ChargeState odd = build_state(z, q, f, Parity::odd);
        squared = std::max({squared, eigen_residual(even, true), eigen_residual(odd, true)});
        parity_overlap = std::max(parity_overlap, std::abs(overlap(even, odd).value));
        for (const int q2 : kCharges)
          if (q2 != q) charge_exact &= overlap(build_state(z, q2, f, Parity::full), build_state(z, q, f, Parity::full)).value == Complex(0.0);
      }
    }
  }
  report(2, squared < 1e-10 && parity_overlap <= 1e-14 && charge_exact,
         fmt("squared eigenvalue max residual %.3g (< 1e-10); max |<even|odd>| = %.3g (<= 1e-14); ", squared,
             parity_overlap) +
             (charge_exact ? "q != q' overlaps exactly 0" : "q != q' overlap NOT exactly 0"));
}

void criterion_3() {
  const double xs[] = {0.5, 1.0, 2.0, 4.0, 8.0};
  const NonlinearityModel unit = model_unit();
  double literal = 0.0;
  double bracket = 0.0;
  int literal_fail = 0;
  for (int q = 0; q <= 5; ++q) {
    const double q_factorial = log_factorial(static_cast<std::size_t>(q)).to_real();
    for (int i = 0; i < 5; ++i) {
      const double n = normalization(xs[i], q, unit).value();
      const double bessel = oracle::kBesselRatio[q][i];  // |xi|^-q I_q(2|xi|)
      const double gap = rel_gap(q_factorial * n, bessel);
      literal = std::max(literal, gap);
      literal_fail += gap >= 1e-10 ? 1 : 0;
      bracket = std::max(bracket, rel_gap(n, q_factorial * bessel));
    }
  }
  report(3, literal < 1e-10,
         fmt("Bessel reduction q! N(x) = |xi|^-q I_q(2|xi|): max relative gap %.3g (< 1e-10), %.0f of 30 points fail",
             literal, literal_fail));
  info(fmt("with the bracket factorial, N(x) = q! |xi|^-q I_q(2|xi|) holds: max relative gap %.3g", bracket));
}

void criterion_4() {
  const int cutoff = 24;
  const int margin = 3;
  const Complex i(0.0, 1.0);
  double worst = 0.0;
  std::string worst_name;
  auto track = [&](const std::string& name, double r) {
    if (r > worst || worst_name.empty()) {
      worst = std::max(worst, r);
      worst_name = name;
    }
  };
  for (const auto& f : {model_unit(), model_poschl_teller(3.0), model_hydrogen(), model_barut_girardello(0.5)}) {
    const auto km = build_K_minus(f);
    const auto kp = build_K_plus(f);
    const auto k0 = build_K0(f);
    const auto g = build_g(f);
    const auto id = OperatorExpr::identity();
    auto step = [&f](int mode) {
      return OperatorExpr::diagonal([f, mode](int n1, int n2) -> Complex {
        const int n = mode == 1 ? n1 : n2;
        return f.spectrum(n + 1) - f.spectrum(n);
      });
    };
    const std::string tag = " " + f.label();
    track("[K-,K+]-2K0" + tag, commutator_residual(km, kp, Complex(2.0) * k0, cutoff, margin));
    track("[K0,K-]+K-g" + tag, commutator_residual(k0, km, Complex(-1.0) * (km * g), cutoff, margin));
    track("[K0,K+]-gK+" + tag, commutator_residual(k0, kp, g * kp, cutoff, margin));
    track("[y1,y2]" + tag, commutator_residual(quadrature_y(1), quadrature_y(2), (0.5 * i) * id, cutoff, margin));
    track("[z1,z2]" + tag, commutator_residual(quadrature_z(1), quadrature_z(2), (0.5 * i) * id, cutoff, margin));
    track("[Y1,Y2]" + tag, commutator_residual(quadrature_Y(f, 1), quadrature_Y(f, 2), (0.5 * i) * step(1), cutoff, margin));
    track("[Z1,Z2]" + tag, commutator_residual(quadrature_Z(f, 1), quadrature_Z(f, 2), (0.5 * i) * step(2), cutoff, margin));
    track("[w1,w2]" + tag, commutator_residual(quadrature_w(1), quadrature_w(2), (0.5 * i) * id, cutoff, margin));
    track("[W1,W2]" + tag,
          commutator_residual(quadrature_W(f, 1), quadrature_W(f, 2), (0.25 * i) * (step(1) + step(2)), cutoff, margin));
    track("[x1,x2]" + tag, commutator_residual(quadrature_x(1), quadrature_x(2), i * build_k0(), cutoff, margin));
    track("[X1,X2]" + tag, commutator_residual(quadrature_X(f, 1), quadrature_X(f, 2), i * k0, cutoff, margin));
  }
  report(4, worst < 1e-9,
         fmt("algebra and quadrature commutators on cutoff 24, margin 3: max residual %.3g (< 1e-9)", worst) +
             " at " + worst_name);
}

struct PresetRun {
  FigurePreset preset;
  std::vector<SweepResult> curves;
};

std::vector<PresetRun> run_presets(double& seconds) {
  const auto t0 = Clock::now();
  std::vector<PresetRun> runs;
  for (int id = 1; id <= 12; ++id) {
    PresetRun run{figure_preset(id), {}};
    for (const auto& c : run.preset.curves) run.curves.push_back(run_sweep(c.spec));
    runs.push_back(std::move(run));
  }
  seconds = seconds_since(t0);
  return runs;
}

void criterion_5() {
  double min_var = std::numeric_limits<double>::infinity();
  double min_s = std::numeric_limits<double>::infinity();
  std::string where;
  for (int id = 1; id <= 12; ++id) {
    for (Curve c : figure_preset(id).curves) {
      c.spec.measures = {Measure::var_y1, Measure::var_z1, Measure::S_w1, Measure::S_w2};
      for (const auto& row : run_sweep(c.spec).rows) {
        min_var = std::min({min_var, *row[Measure::var_y1], *row[Measure::var_z1]});
        const double s = std::min(*row[Measure::S_w1], *row[Measure::S_w2]);
        if (s < min_s) {
          min_s = s;
          char buf[128];
          std::snprintf(buf, sizeof buf, "fig %d %s x=%.4g", id, c.label.c_str(), row.x);
          where = buf;
        }
      }
    }
  }
  report(5, min_var >= 0.25 - 1e-12 && min_s >= -1e-12,
         fmt("no single-/two-mode squeezing: min var_y, var_z = %.6g (>= 1/4); min two-mode S = %.6g (>= 0)", min_var,
             min_s) +
             " at " + where);
}

const SweepResult& curve(const std::vector<PresetRun>& runs, int id, const std::string& label) {
  const PresetRun& r = runs[static_cast<std::size_t>(id - 1)];
  for (std::size_t k = 0; k < r.preset.curves.size(); ++k)
    if (r.preset.curves[k].label == label) return r.curves[k];
  throw std::logic_error("missing curve " + label);
}

std::vector<double> column(const SweepResult& r, Measure m) {
  std::vector<double> out;
  for (const auto& row : r.rows) out.push_back(row[m] ? *row[m] : std::nan(""));
  return out;
}

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

void criterion_6(const std::vector<PresetRun>& runs, double seconds) {
  std::vector<std::pair<bool, std::string>> claims;

  const auto pt1 = column(curve(runs, 1, "poschl_teller"), Measure::S_x1);
  const double unit1 = std::min(min_of(column(curve(runs, 1, "unit"), Measure::S_x1)),
                                min_of(column(curve(runs, 1, "unit"), Measure::S_x2)));
  claims.push_back({min_of(pt1) < 0.0 && unit1 >= -1e-10,
                    fmt("Fig 1: min S_x1(PT) = %.4g < 0, min S_x(f=1) = %.3g >= -1e-10", min_of(pt1), unit1)});

  const auto g4 = column(curve(runs, 4, "poschl_teller"), Measure::g);
  const double below = std::count_if(g4.begin(), g4.end(), [](double v) { return v < 1.0; }) / double(g4.size());
  const auto g4u = column(curve(runs, 4, "unit"), Measure::g);
  claims.push_back({below >= 0.95 && min_of(g4u) >= 0.9 && max_of(g4u) <= 1.1,
                    fmt("Fig 4: g(PT) < 1 on %.1f%% of points, g(f=1) in [%.6g, %.6g]", 100.0 * below, min_of(g4u),
                        max_of(g4u))});

  const auto q6 = column(curve(runs, 6, "poschl_teller"), Measure::Q_a1);
  claims.push_back({max_of(q6) < 0.0, fmt("Fig 6: max Q^a_1(PT) = %.4g < 0", max_of(q6))});

  const auto s7 = column(curve(runs, 7, "hydrogen"), Measure::S_x2);
  claims.push_back({min_of(s7) < 0.0, fmt("Fig 7: min S_x2(H) = %.4g < 0", min_of(s7))});

  {
    SweepSpec spec = figure_preset(7).curves[1].spec;
    spec.measures = {Measure::uncertainty_saturation_X};
    double worst = 0.0;
    for (const auto& row : run_sweep(spec).rows) worst = std::max(worst, std::abs(*row[Measure::uncertainty_saturation_X]));
    claims.push_back({worst < 1e-8, fmt("intelligent states: f_H full state saturation max relative gap %.3g < 1e-8", worst)});
  }

  const SweepResult& r9 = curve(runs, 9, "hydrogen");
  bool near_zero = true;
  double last_x = 0.0;
  for (std::size_t k = 0; k < 10; ++k) {
    near_zero &= r9.rows[k][Measure::g].value_or(2.0) < 1.0;
    last_x = r9.rows[k].x;
  }
  claims.push_back({near_zero, fmt("Fig 9: odd f_H g < 1 at every grid point with x <= %.4g", last_x)});

  const auto g11 = column(curve(runs, 11, "barut_girardello"), Measure::g);
  {
    SweepSpec spec = figure_preset(11).curves[1].spec;
    spec.measures = {Measure::G};
    const auto big_g = column(run_sweep(spec), Measure::G);
    double worst = 0.0;
    for (const double v : big_g) worst = std::max(worst, std::abs(v - 1.0));
    claims.push_back({worst < 0.1, fmt("BG(1/2) full state: max |G - 1| = %.3g < 0.1", worst)});
  }

  claims.push_back({seconds < 60.0, fmt("12-preset suite runtime %.2f s < 60 s", seconds)});

  bool ok = true;
  for (const auto& c : claims) ok &= c.first;
  report(6, ok, "figure-region claims");
  for (const auto& c : claims) info(std::string(c.first ? "ok    " : "FAIL  ") + c.second);

  const auto qa = column(curve(runs, 10, "hydrogen"), Measure::Q_A1);
  info(fmt("Fig 10 even f_H Q^A_1 range [%.6g, %.6g]", min_of(qa), max_of(qa)) +
       fmt("; Fig 11 g(BG) range [%.4g, %.4g]", min_of(g11), max_of(g11)));
  SweepSpec odd = figure_preset(9).curves[1].spec;
  odd.measures = {Measure::Q_A1};
  const auto qodd = column(run_sweep(odd), Measure::Q_A1);
  double worst = 0.0;
  for (const double v : qodd) worst = std::max(worst, std::abs(v + 1.0));
  info(fmt("odd f_H Q^A_1: max |Q^A_1 + 1| = %.3g (expected near -1, loose bound 0.1)", worst));
}

void criterion_7() {
  double worst = 0.0;
  std::string where;
  for (const auto& f : {model_unit(), model_poschl_teller(3.0), model_hydrogen()}) {
    const std::vector<double> xs = f.finite_radius() ? std::vector<double>{0.25, 0.5, 0.8} : std::vector<double>{0.25, 1.0, 4.0};
    for (const double x : xs) {
      for (const Parity p : {Parity::full, Parity::even, Parity::odd}) {
        for (const int q : {0, 1, 2}) {
          const ChargeState s = build_state(std::sqrt(x), q, f, p);
          const MeasureReport a = evaluate(s);
          const MeasureReport b = evaluate_via_fock(s);
          for (const Measure m : all_measures()) {
            double gap = 0.0;
            if (a[m].has_value() != b[m].has_value())
              gap = std::numeric_limits<double>::infinity();
            else if (a[m])
              gap = rel_gap(*a[m], *b[m]);
            if (gap > worst) {
              worst = gap;
              where = f.label() + " " + std::string(measure_name(m));
            }
          }
        }
      }
    }
  }
  report(7, worst < 1e-9,
         fmt("oracle equivalence (analytic vs Fock, 3 models x 3 x, all parities, q = 0..2): max relative gap %.3g (< 1e-9)",
             worst) +
             (where.empty() ? "" : " at " + where));
}

void criterion_8() {
  double worst_sum = 0.0;
  bool zeros = true;
  std::size_t states = 0;
  auto check = [&](const ChargeState& s) {
    ++states;
    worst_sum = std::max(worst_sum, std::abs(s.probabilities().sum() - 1.0));
    if (s.parity() == Parity::full) return;
    for (Eigen::Index n = (s.parity() == Parity::even ? 1 : 0); n < s.probabilities().size(); n += 2)
      zeros &= s.probabilities()[n] == 0.0 && s.coefficients()[n] == Complex(0.0);
  };
  for (const auto& f : acceptance_models())
    for (const int q : kCharges)
      for (const Complex xi : kXis)
        for (const Parity p : {Parity::full, Parity::even, Parity::odd}) check(build_state(within_radius(xi, f), q, f, p));
  for (int id = 1; id <= 12; ++id) {
    for (const Curve& c : figure_preset(id).curves) {
      const NonlinearityModel f = make_model(c.spec.model);
      for (const double x : c.spec.grid.points())
        for (const Parity p : {Parity::full, Parity::even, Parity::odd}) check(build_state(std::sqrt(x), c.spec.q, f, p));
    }
  }
  report(8, worst_sum <= 1e-12 && zeros,
         fmt("normalization and parity over %.0f states: max |sum P - 1| = %.3g (<= 1e-12); ", double(states), worst_sum) +
             (zeros ? "excluded parity entries exactly 0" : "nonzero excluded parity entry"));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  try {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    double preset_seconds = 0.0;
    const auto runs = run_presets(preset_seconds);
    criterion_6(runs, preset_seconds);
    criterion_7();
    criterion_8();
  } catch (const std::exception& e) {
    std::printf("acceptance aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 8 criteria failed (%.2f s)\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
