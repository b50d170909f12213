#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>

#include "nlcs/errors.hpp"

namespace nlcs {

/// Signed real stored as sign and natural log of its magnitude.
///
/// Products of factorials and nonlinearity factorials overflow doubles long
/// before the series they feed stop contributing, so every coefficient is
/// carried in this form until the final normalization.
struct LogNumber {
  int sign = 0;  // -1, 0 or +1
  double log_magnitude = -std::numeric_limits<double>::infinity();

  static constexpr LogNumber zero() { return {}; }
  static constexpr LogNumber one() { return {1, 0.0}; }
  static LogNumber from_log(double log_magnitude, int sign = 1) {
    return sign == 0 ? zero() : LogNumber{sign > 0 ? 1 : -1, log_magnitude};
  }
  static LogNumber from_real(double value) {
    if (value == 0.0) return zero();
    return {value > 0.0 ? 1 : -1, std::log(std::abs(value))};
  }

  bool is_zero() const { return sign == 0; }
  double to_real() const { return sign == 0 ? 0.0 : sign * std::exp(log_magnitude); }

  LogNumber inverse() const;
  LogNumber sqrt() const;  // requires sign >= 0

  friend LogNumber operator*(LogNumber a, LogNumber b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.log_magnitude + b.log_magnitude};
  }
  friend LogNumber operator/(LogNumber a, LogNumber b) { return a * b.inverse(); }
};

struct TruncationPolicy {
  double rel_tail_tol = 1e-16;
  std::size_t max_terms = 10'000;
  // x = |xi|^2 is rejected above radius_guard * radius^2.
  double radius_guard = 0.999;

  void validate() const;
};

/// ln(n!) by cumulative summation of ln k (no Stirling).
LogNumber log_factorial(std::size_t n);

/// ln of (n+s)(n-1+s)...(1+s), i.e. ln((n+s)!/s!). Empty product for n = 0.
LogNumber log_shifted_factorial(std::size_t n, std::size_t s);

/// Modified Bessel function of the first kind I_q(x) from its ascending series.
/// Throws NumericOverflow when the result leaves the double range.
double bessel_i(int q, double x);

/// Running sum of LogNumber terms, scaled by the largest magnitude seen so far.
class LogAccumulator {
 public:
  void add(LogNumber term);
  LogNumber total() const;
  /// |term| / |total|; infinity while the total is zero.
  double relative(LogNumber term) const;

 private:
  double anchor_ = -std::numeric_limits<double>::infinity();
  double scaled_ = 0.0;
};

struct SeriesSum {
  LogNumber total;
  std::size_t terms_used = 0;

  double value() const { return total.to_real(); }
};

/// Sums term(0), term(1), ... until three consecutive terms fall below
/// policy.rel_tail_tol relative to the partial sum. Vanishing terms count as
/// below tolerance once the partial sum is nonzero.
template <class TermFn>
SeriesSum sum_log_series(TermFn&& term, const TruncationPolicy& policy) {
  policy.validate();
  LogAccumulator acc;
  int quiet = 0;
  double last_relative = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < policy.max_terms; ++n) {
    const LogNumber t = term(n);
    acc.add(t);
    last_relative = acc.relative(t);
    quiet = last_relative < policy.rel_tail_tol ? quiet + 1 : 0;
    if (quiet >= 3) return {acc.total(), n + 1};
  }
  if (!(last_relative < policy.rel_tail_tol)) {
    throw NonConvergence("series did not converge within " +
                         std::to_string(policy.max_terms) + " terms (last relative term " +
                         std::to_string(last_relative) + ")");
  }
  return {acc.total(), policy.max_terms};
}

/// Sum of a finite sequence of terms.
SeriesSum sum_log_series(std::span<const LogNumber> terms);

}  // namespace nlcs
