#include "nlcs/numerics.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace nlcs {

namespace {

constexpr std::size_t kFactorialTableSize = 10'001;

const std::vector<double>& log_factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialTableSize);
    t[0] = 0.0;
    for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
    return t;
  }();
  return table;
}

}  // namespace

LogNumber LogNumber::inverse() const {
  if (sign == 0) throw NumericOverflow("inverse of zero LogNumber");
  return {sign, -log_magnitude};
}

LogNumber LogNumber::sqrt() const {
  if (sign < 0) throw InvalidParameter("square root of negative LogNumber");
  if (sign == 0) return zero();
  return {1, 0.5 * log_magnitude};
}

void TruncationPolicy::validate() const {
  if (!(rel_tail_tol > 0.0)) throw InvalidParameter("rel_tail_tol must be positive");
  if (max_terms < 8) throw InvalidParameter("max_terms must be at least 8");
  if (!(radius_guard > 0.0 && radius_guard < 1.0))
    throw InvalidParameter("radius_guard must lie in (0, 1)");
}

LogNumber log_factorial(std::size_t n) {
  const auto& table = log_factorial_table();
  if (n < table.size()) return {1, table[n]};
  double acc = table.back();
  for (std::size_t k = table.size(); k <= n; ++k) acc += std::log(static_cast<double>(k));
  return {1, acc};
}

LogNumber log_shifted_factorial(std::size_t n, std::size_t s) {
  if (s == 0) return log_factorial(n);
  double acc = 0.0;
  for (std::size_t k = 1; k <= n; ++k) acc += std::log(static_cast<double>(k + s));
  return {1, acc};
}

double bessel_i(int q, double x) {
  if (q < 0) throw InvalidParameter("bessel_i: order must be nonnegative");
  if (!std::isfinite(x) || x < 0.0) throw InvalidParameter("bessel_i: argument must be finite and >= 0");
  if (x == 0.0) return q == 0 ? 1.0 : 0.0;

  const double half = 0.5 * x;
  const double quarter_sq = half * half;
  // Leading term (x/2)^q / q!, formed in the log domain.
  const double log_lead = q * std::log(half) - log_factorial(static_cast<std::size_t>(q)).log_magnitude;
  if (log_lead > std::log(std::numeric_limits<double>::max()))
    throw NumericOverflow("bessel_i: I_" + std::to_string(q) + "(" + std::to_string(x) + ") overflows");
  double term = std::exp(log_lead);
  double sum = term;
  for (int m = 1; m < 100'000; ++m) {
    term *= quarter_sq / (static_cast<double>(m) * static_cast<double>(m + q));
    sum += term;
    if (!std::isfinite(sum))
      throw NumericOverflow("bessel_i: I_" + std::to_string(q) + "(" + std::to_string(x) + ") overflows");
    if (term < 1e-17 * sum && m > half) break;
  }
  return sum;
}

void LogAccumulator::add(LogNumber term) {
  if (term.sign == 0) return;
  if (term.log_magnitude > anchor_) {
    scaled_ = scaled_ * std::exp(anchor_ - term.log_magnitude) + term.sign;
    anchor_ = term.log_magnitude;
  } else {
    scaled_ += term.sign * std::exp(term.log_magnitude - anchor_);
  }
}

LogNumber LogAccumulator::total() const {
  if (scaled_ == 0.0) return LogNumber::zero();
  return {scaled_ > 0.0 ? 1 : -1, anchor_ + std::log(std::abs(scaled_))};
}

double LogAccumulator::relative(LogNumber term) const {
  const LogNumber sum = total();
  if (sum.sign == 0) return std::numeric_limits<double>::infinity();
  if (term.sign == 0) return 0.0;
  return std::exp(term.log_magnitude - sum.log_magnitude);
}

SeriesSum sum_log_series(std::span<const LogNumber> terms) {
  LogAccumulator acc;
  for (const auto& t : terms) acc.add(t);
  return {acc.total(), terms.size()};
}

}  // namespace nlcs
