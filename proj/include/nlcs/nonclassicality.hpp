#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nlcs/states.hpp"

namespace nlcs {

/// sum_n P(n) h(n1(n), n2(n)) for any observable diagonal in the number basis.
template <class Fn>
double moments_diagonal(const ChargeState& state, Fn&& h) {
  double acc = 0.0;
  const auto& p = state.probabilities();
  for (Eigen::Index n = 0; n < p.size(); ++n) {
    if (p[n] == 0.0) continue;
    const Occupation occ = state.occupation(static_cast<std::size_t>(n));
    acc += p[n] * h(occ.n1, occ.n2);
  }
  return acc;
}

/// First and second moments of the pair operators on the ladder.
/// Undeformed: k- = a1 a2, k0 = (n1 + n2 + 1)/2. Deformed: K- = A1 A2 and K0.
struct LadderMoments {
  Complex lower;          // <k->
  Complex lower_squared;  // <k-^2>
  double raise_lower;     // <k+ k->
  double k0;              // <k0>
};

LadderMoments ladder_moments(const ChargeState& state, bool deformed);

struct SingleModeVariances {
  double y;  // <(dy1)^2> = <(dy2)^2>
  double z;  // <(dz1)^2> = <(dz2)^2>
};

SingleModeVariances single_mode_variances(const ChargeState& state);

/// Variances of the deformed single-mode quadratures Y_i = (A1^+ +- A1)/2 and
/// Z_i. `rhs_Y` / `rhs_Z` are (1/4)|<(n+1) f^2(n+1) - n f^2(n)>|^2 per mode;
/// `squeeze_Y` / `squeeze_Z` are var - (1/2)|<[Y1, Y2]>| (negative = squeezed).
struct GeneralizedVariances {
  double Y1, Y2, Z1, Z2;
  double rhs_Y, rhs_Z;
  double squeeze_Y, squeeze_Z;
};

GeneralizedVariances generalized_single_mode_variances(const ChargeState& state);

struct SqueezingPair {
  double first;
  double second;
};

/// Undeformed: <(dw_i)^2> - 1/4. Deformed: S_W_i = <(dW_i)^2> - (1/2)|<[W1, W2]>|.
SqueezingPair two_mode_squeezing(const ChargeState& state, bool deformed);

/// S_x_i (undeformed) or S_X_i (deformed) = <(dx_i)^2> - (1/2)|<[x1, x2]>|.
SqueezingPair su11_squeezing(const ChargeState& state, bool deformed);

/// <(dX1)^2><(dX2)^2> / ((1/4)|<[X1, X2]>|^2) - 1; zero for intelligent states.
double uncertainty_saturation_X(const ChargeState& state);

/// Q_i = (<m^2> - <m>^2)/<m> - 1 with m = n_i, or N_i = n_i f^2(n_i) when
/// generalized. Throws UndefinedMeasure when <m> = 0.
double mandel(const ChargeState& state, bool generalized, int mode);

/// Normally ordered two-mode correlation <k+^2 k-^2> / <k+ k->^2, i.e.
/// <n1(n1-1) n2(n2-1)> / <n1 n2>^2; generalized uses K+- (so N_i products).
/// Throws UndefinedMeasure when the denominator vanishes.
double correlation(const ChargeState& state, bool generalized);

enum class Measure {
  var_y1, var_z1, var_Y1, var_Y2, var_Z1, var_Z2,
  S_w1, S_w2, S_W1, S_W2,
  S_x1, S_x2, S_X1, S_X2,
  Q_a1, Q_a2, Q_A1, Q_A2,
  g, G,
  uncertainty_saturation_X,
};

inline constexpr std::size_t kMeasureCount = 21;

std::string_view measure_name(Measure m);
Measure parse_measure(std::string_view name);  // throws UnknownMeasure
std::span<const Measure> all_measures();

/// One grid point; unset entries are undefined on this state (or not requested).
struct MeasureReport {
  double x = 0.0;
  std::array<std::optional<double>, kMeasureCount> values{};

  std::optional<double> operator[](Measure m) const { return values[static_cast<std::size_t>(m)]; }
  std::optional<double>& operator[](Measure m) { return values[static_cast<std::size_t>(m)]; }
};

/// Analytic ladder-series evaluation.
MeasureReport evaluate(const ChargeState& state, std::span<const Measure> measures = all_measures());

/// Same measures from operator expressions applied to the state embedded in
/// a Fock box of cutoff max_occupation + extra_cutoff.
MeasureReport evaluate_via_fock(const ChargeState& state, std::span<const Measure> measures = all_measures(),
                                int extra_cutoff = 6);

}  // namespace nlcs
