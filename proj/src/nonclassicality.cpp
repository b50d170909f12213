#include "nlcs/nonclassicality.hpp"

#include <cmath>
#include <string>

#include "nlcs/errors.hpp"
#include "nlcs/fock.hpp"

namespace nlcs {

namespace {

constexpr std::array<std::string_view, kMeasureCount> kMeasureNames = {
    "var_y1", "var_z1", "var_Y1", "var_Y2", "var_Z1", "var_Z2",
    "S_w1",   "S_w2",   "S_W1",   "S_W2",
    "S_x1",   "S_x2",   "S_X1",   "S_X2",
    "Q_a1",   "Q_a2",   "Q_A1",   "Q_A2",
    "g",      "G",
    "uncertainty_saturation_X",
};

constexpr std::array<Measure, kMeasureCount> kAllMeasures = {
    Measure::var_y1, Measure::var_z1, Measure::var_Y1, Measure::var_Y2, Measure::var_Z1, Measure::var_Z2,
    Measure::S_w1,   Measure::S_w2,   Measure::S_W1,   Measure::S_W2,
    Measure::S_x1,   Measure::S_x2,   Measure::S_X1,   Measure::S_X2,
    Measure::Q_a1,   Measure::Q_a2,   Measure::Q_A1,   Measure::Q_A2,
    Measure::g,      Measure::G,
    Measure::uncertainty_saturation_X,
};

// Squared pair-lowering weight for the step n -> n-1 of the ladder:
// n1 n2 (undeformed) or e(n1) e(n2) (deformed).
Eigen::VectorXd pair_weights(const ChargeState& state, bool deformed) {
  const auto size = state.coefficients().size();
  Eigen::VectorXd w(size);
  const auto& f = state.model();
  for (Eigen::Index n = 0; n < size; ++n) {
    const Occupation occ = state.occupation(static_cast<std::size_t>(n));
    w[n] = deformed ? f.spectrum(occ.n1) * f.spectrum(occ.n2) : static_cast<double>(occ.n1) * occ.n2;
  }
  return w;
}

double level(const NonlinearityModel& f, int n, bool deformed) {
  return deformed ? f.spectrum(n) : static_cast<double>(std::max(n, 0));
}

struct ModeQuadratureMoments {
  double second_y;  // <Y1^2> = <Y2^2> (or y)
  double second_z;
  double bracket_y;  // <e(n1+1) - e(n1)>
  double bracket_z;
};

ModeQuadratureMoments mode_moments(const ChargeState& state, bool deformed) {
  const auto& f = state.model();
  ModeQuadratureMoments m{};
  m.second_y = 0.25 * moments_diagonal(state, [&](int n1, int) {
    return level(f, n1 + 1, deformed) + level(f, n1, deformed);
  });
  m.second_z = 0.25 * moments_diagonal(state, [&](int, int n2) {
    return level(f, n2 + 1, deformed) + level(f, n2, deformed);
  });
  m.bracket_y = moments_diagonal(state, [&](int n1, int) {
    return level(f, n1 + 1, deformed) - level(f, n1, deformed);
  });
  m.bracket_z = moments_diagonal(state, [&](int, int n2) {
    return level(f, n2 + 1, deformed) - level(f, n2, deformed);
  });
  return m;
}

}  // namespace

LadderMoments ladder_moments(const ChargeState& state, bool deformed) {
  const Eigen::VectorXcd& c = state.coefficients();
  const Eigen::VectorXd w = pair_weights(state, deformed);
  const Eigen::VectorXd lambda = w.cwiseSqrt();
  const Eigen::Index size = c.size();

  LadderMoments m{0.0, 0.0, 0.0, 0.0};
  if (size > 1) {
    m.lower = c.head(size - 1).dot(lambda.tail(size - 1).cast<Complex>().cwiseProduct(c.tail(size - 1)));
  }
  if (size > 2) {
    const Eigen::VectorXd two_step = lambda.segment(1, size - 2).cwiseProduct(lambda.tail(size - 2));
    m.lower_squared = c.head(size - 2).dot(two_step.cast<Complex>().cwiseProduct(c.tail(size - 2)));
  }
  m.raise_lower = state.probabilities().dot(w);

  const auto& f = state.model();
  m.k0 = moments_diagonal(state, [&](int n1, int n2) {
    if (!deformed) return 0.5 * (n1 + n2 + 1.0);
    return 0.5 * (f.spectrum(n1 + 1) * f.spectrum(n2 + 1) - f.spectrum(n1) * f.spectrum(n2));
  });
  return m;
}

SingleModeVariances single_mode_variances(const ChargeState& state) {
  // <a_i> and <a_i^2> vanish: they change the charge.
  const double n1 = moments_diagonal(state, [](int a, int) { return static_cast<double>(a); });
  const double n2 = moments_diagonal(state, [](int, int b) { return static_cast<double>(b); });
  return {0.25 * (2.0 * n1 + 1.0), 0.25 * (2.0 * n2 + 1.0)};
}

GeneralizedVariances generalized_single_mode_variances(const ChargeState& state) {
  const ModeQuadratureMoments m = mode_moments(state, true);
  GeneralizedVariances v{};
  v.Y1 = v.Y2 = m.second_y;
  v.Z1 = v.Z2 = m.second_z;
  v.rhs_Y = 0.25 * m.bracket_y * m.bracket_y;
  v.rhs_Z = 0.25 * m.bracket_z * m.bracket_z;
  v.squeeze_Y = m.second_y - 0.25 * std::abs(m.bracket_y);
  v.squeeze_Z = m.second_z - 0.25 * std::abs(m.bracket_z);
  return v;
}

SqueezingPair two_mode_squeezing(const ChargeState& state, bool deformed) {
  const ModeQuadratureMoments m = mode_moments(state, deformed);
  // <y1 z1> = Re<k->/2 and <y2 z2> = -Re<k->/2; first moments vanish.
  const double cross = 0.5 * ladder_moments(state, deformed).lower.real();
  const double base = 0.5 * (m.second_y + m.second_z);
  const double bound = deformed ? 0.125 * std::abs(m.bracket_y + m.bracket_z) : 0.25;
  return {base + cross - bound, base - cross - bound};
}

namespace {

struct Su11Variances {
  double first, second, half_commutator;
};

Su11Variances su11_variances(const ChargeState& state, bool deformed) {
  const LadderMoments m = ladder_moments(state, deformed);
  // <k- k+> = <k+ k-> + 2 <k0>; |<[x1, x2]>| = <k0>.
  const double symmetric = m.raise_lower + m.k0;
  const double first = 0.5 * (m.lower_squared.real() + symmetric) - m.lower.real() * m.lower.real();
  const double second = 0.5 * (-m.lower_squared.real() + symmetric) - m.lower.imag() * m.lower.imag();
  return {first, second, 0.5 * std::abs(m.k0)};
}

}  // namespace

SqueezingPair su11_squeezing(const ChargeState& state, bool deformed) {
  const Su11Variances v = su11_variances(state, deformed);
  return {v.first - v.half_commutator, v.second - v.half_commutator};
}

double uncertainty_saturation_X(const ChargeState& state) {
  const Su11Variances v = su11_variances(state, true);
  return v.first * v.second / (v.half_commutator * v.half_commutator) - 1.0;
}

double mandel(const ChargeState& state, bool generalized, int mode) {
  if (mode != 1 && mode != 2) throw InvalidParameter("mode must be 1 or 2");
  const auto& f = state.model();
  auto value = [&](int n1, int n2) {
    const int n = mode == 1 ? n1 : n2;
    return generalized ? f.spectrum(n) : static_cast<double>(n);
  };
  const double mean = moments_diagonal(state, value);
  if (!(mean > 0.0))
    throw UndefinedMeasure("Mandel parameter of mode " + std::to_string(mode) + " is undefined: <n> = 0");
  const double second = moments_diagonal(state, [&](int n1, int n2) {
    const double v = value(n1, n2);
    return v * v;
  });
  return (second - mean * mean) / mean - 1.0;
}

double correlation(const ChargeState& state, bool generalized) {
  const auto& f = state.model();
  const double denominator = moments_diagonal(state, [&](int n1, int n2) {
    return level(f, n1, generalized) * level(f, n2, generalized);
  });
  if (!(denominator > 0.0)) throw UndefinedMeasure("correlation factor is undefined: <n1 n2> = 0");
  const double numerator = moments_diagonal(state, [&](int n1, int n2) {
    if (n1 == 0 || n2 == 0) return 0.0;
    return level(f, n1, generalized) * level(f, n2, generalized) * level(f, n1 - 1, generalized) *
           level(f, n2 - 1, generalized);
  });
  return numerator / (denominator * denominator);
}

std::string_view measure_name(Measure m) { return kMeasureNames[static_cast<std::size_t>(m)]; }

Measure parse_measure(std::string_view name) {
  for (std::size_t i = 0; i < kMeasureCount; ++i)
    if (kMeasureNames[i] == name) return kAllMeasures[i];
  throw UnknownMeasure("unknown measure '" + std::string(name) + "'");
}

std::span<const Measure> all_measures() { return kAllMeasures; }

namespace {

template <class Compute>
void fill(MeasureReport& report, Measure m, Compute&& compute) {
  try {
    report[m] = compute();
  } catch (const UndefinedMeasure&) {
    report[m].reset();
  }
}

}  // namespace

MeasureReport evaluate(const ChargeState& state, std::span<const Measure> measures) {
  MeasureReport report;
  report.x = state.x();
  for (const Measure m : measures) {
    fill(report, m, [&]() -> double {
      switch (m) {
        case Measure::var_y1: return single_mode_variances(state).y;
        case Measure::var_z1: return single_mode_variances(state).z;
        case Measure::var_Y1: return generalized_single_mode_variances(state).Y1;
        case Measure::var_Y2: return generalized_single_mode_variances(state).Y2;
        case Measure::var_Z1: return generalized_single_mode_variances(state).Z1;
        case Measure::var_Z2: return generalized_single_mode_variances(state).Z2;
        case Measure::S_w1: return two_mode_squeezing(state, false).first;
        case Measure::S_w2: return two_mode_squeezing(state, false).second;
        case Measure::S_W1: return two_mode_squeezing(state, true).first;
        case Measure::S_W2: return two_mode_squeezing(state, true).second;
        case Measure::S_x1: return su11_squeezing(state, false).first;
        case Measure::S_x2: return su11_squeezing(state, false).second;
        case Measure::S_X1: return su11_squeezing(state, true).first;
        case Measure::S_X2: return su11_squeezing(state, true).second;
        case Measure::Q_a1: return mandel(state, false, 1);
        case Measure::Q_a2: return mandel(state, false, 2);
        case Measure::Q_A1: return mandel(state, true, 1);
        case Measure::Q_A2: return mandel(state, true, 2);
        case Measure::g: return correlation(state, false);
        case Measure::G: return correlation(state, true);
        case Measure::uncertainty_saturation_X: return uncertainty_saturation_X(state);
      }
      throw UnknownMeasure("unhandled measure");
    });
  }
  return report;
}

namespace {

class FockExpectation {
 public:
  FockExpectation(const ChargeState& state, int extra_cutoff)
      : psi_(state.to_fock(state.max_occupation() + extra_cutoff)) {}

  Complex operator()(const OperatorExpr& op) const { return psi_.dot(op.apply(psi_).vector); }

  double variance(const OperatorExpr& op) const {
    const double mean = (*this)(op).real();
    return (*this)(op * op).real() - mean * mean;
  }

  double half_commutator(const OperatorExpr& a, const OperatorExpr& b) const {
    return 0.5 * std::abs((*this)(commutator(a, b)));
  }

 private:
  FockVector psi_;
};

double fock_mandel(const FockExpectation& expect, const OperatorExpr& number) {
  const double mean = expect(number).real();
  if (!(mean > 0.0)) throw UndefinedMeasure("Mandel parameter is undefined: <n> = 0");
  return (expect(number * number).real() - mean * mean) / mean - 1.0;
}

double fock_correlation(const FockExpectation& expect, const OperatorExpr& lower, const OperatorExpr& raise) {
  const double denominator = expect(raise * lower).real();
  if (!(denominator > 0.0)) throw UndefinedMeasure("correlation factor is undefined: <n1 n2> = 0");
  return expect(raise * raise * lower * lower).real() / (denominator * denominator);
}

}  // namespace

MeasureReport evaluate_via_fock(const ChargeState& state, std::span<const Measure> measures, int extra_cutoff) {
  const FockExpectation expect(state, extra_cutoff);
  const auto& f = state.model();
  MeasureReport report;
  report.x = state.x();
  for (const Measure m : measures) {
    fill(report, m, [&]() -> double {
      switch (m) {
        case Measure::var_y1: return expect.variance(quadrature_y(1));
        case Measure::var_z1: return expect.variance(quadrature_z(1));
        case Measure::var_Y1: return expect.variance(quadrature_Y(f, 1));
        case Measure::var_Y2: return expect.variance(quadrature_Y(f, 2));
        case Measure::var_Z1: return expect.variance(quadrature_Z(f, 1));
        case Measure::var_Z2: return expect.variance(quadrature_Z(f, 2));
        case Measure::S_w1: return expect.variance(quadrature_w(1)) - 0.25;
        case Measure::S_w2: return expect.variance(quadrature_w(2)) - 0.25;
        case Measure::S_W1:
          return expect.variance(quadrature_W(f, 1)) - expect.half_commutator(quadrature_W(f, 1), quadrature_W(f, 2));
        case Measure::S_W2:
          return expect.variance(quadrature_W(f, 2)) - expect.half_commutator(quadrature_W(f, 1), quadrature_W(f, 2));
        case Measure::S_x1:
          return expect.variance(quadrature_x(1)) - expect.half_commutator(quadrature_x(1), quadrature_x(2));
        case Measure::S_x2:
          return expect.variance(quadrature_x(2)) - expect.half_commutator(quadrature_x(1), quadrature_x(2));
        case Measure::S_X1:
          return expect.variance(quadrature_X(f, 1)) - expect.half_commutator(quadrature_X(f, 1), quadrature_X(f, 2));
        case Measure::S_X2:
          return expect.variance(quadrature_X(f, 2)) - expect.half_commutator(quadrature_X(f, 1), quadrature_X(f, 2));
        case Measure::Q_a1: return fock_mandel(expect, OperatorExpr::number(1));
        case Measure::Q_a2: return fock_mandel(expect, OperatorExpr::number(2));
        case Measure::Q_A1: return fock_mandel(expect, deformed_raise(f, 1) * deformed_lower(f, 1));
        case Measure::Q_A2: return fock_mandel(expect, deformed_raise(f, 2) * deformed_lower(f, 2));
        case Measure::g: return fock_correlation(expect, build_k_minus(), build_k_plus());
        case Measure::G: return fock_correlation(expect, build_K_minus(f), build_K_plus(f));
        case Measure::uncertainty_saturation_X: {
          const double h = expect.half_commutator(quadrature_X(f, 1), quadrature_X(f, 2));
          return expect.variance(quadrature_X(f, 1)) * expect.variance(quadrature_X(f, 2)) / (h * h) - 1.0;
        }
      }
      throw UnknownMeasure("unhandled measure");
    });
  }
  return report;
}

}  // namespace nlcs
