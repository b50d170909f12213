#include "nlcs/states.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "nlcs/errors.hpp"

namespace nlcs {

namespace {

std::size_t abs_charge(int q) { return static_cast<std::size_t>(std::abs(q)); }

void check_radius(double x, const NonlinearityModel& f, const TruncationPolicy& policy) {
  if (!std::isfinite(x) || x < 0.0) throw InvalidParameter("|xi|^2 must be finite and nonnegative");
  if (!f.finite_radius()) return;
  const double limit = policy.radius_guard * f.radius() * f.radius();
  if (x > limit)
    throw OutOfRadius("|xi|^2 = " + std::to_string(x) + " exceeds the guarded radius " + std::to_string(limit) +
                      " of model " + f.label());
}

// Step from log raw_coefficient(n - 1) to log raw_coefficient(n).
double coefficient_step(std::size_t n, std::size_t aq, const NonlinearityModel& f) {
  const double nd = static_cast<double>(n);
  return -0.5 * (std::log(nd) + std::log(nd + static_cast<double>(aq))) - f.log_f(static_cast<int>(n)) -
         f.log_f(static_cast<int>(n + aq));
}

bool kept(std::size_t n, Parity parity) {
  switch (parity) {
    case Parity::full: return true;
    case Parity::even: return n % 2 == 0;
    case Parity::odd: return n % 2 == 1;
  }
  return true;
}

// Sequential generator of x^n raw_coefficient(n)^2 (sign carries (-1)^n when
// alternating).
class SquaredTerms {
 public:
  SquaredTerms(double x, int q, const NonlinearityModel& f, bool alternating)
      : log_x_(std::log(x)), x_zero_(x == 0.0), aq_(abs_charge(q)), f_(f), alternating_(alternating) {}

  LogNumber operator()(std::size_t n) {
    if (n != next_) throw std::logic_error("SquaredTerms must be consumed in order");
    ++next_;
    if (n > 0) log_raw_ += coefficient_step(n, aq_, f_);
    if (n > 0 && x_zero_) return LogNumber::zero();
    const int sign = (alternating_ && n % 2 == 1) ? -1 : 1;
    return LogNumber::from_log(2.0 * log_raw_ + (n > 0 ? static_cast<double>(n) * log_x_ : 0.0), sign);
  }

 private:
  double log_x_;
  bool x_zero_;
  std::size_t aq_;
  const NonlinearityModel& f_;
  bool alternating_;
  double log_raw_ = 0.0;
  std::size_t next_ = 0;
};

}  // namespace

std::string_view to_string(Parity p) {
  switch (p) {
    case Parity::full: return "full";
    case Parity::even: return "even";
    case Parity::odd: return "odd";
  }
  return "full";
}

Parity parse_parity(std::string_view text) {
  if (text == "full") return Parity::full;
  if (text == "even") return Parity::even;
  if (text == "odd") return Parity::odd;
  throw InvalidParameter("parity must be one of full, even, odd (got '" + std::string(text) + "')");
}

Occupation ladder_occupation(std::size_t n, int q) {
  const int ni = static_cast<int>(n);
  return q >= 0 ? Occupation{ni + q, ni} : Occupation{ni, ni - q};
}

LogNumber raw_coefficient(std::size_t n, int q, const NonlinearityModel& f) {
  const std::size_t aq = abs_charge(q);
  double log_value = -0.5 * (log_factorial(n).log_magnitude + log_shifted_factorial(n, aq).log_magnitude);
  for (std::size_t k = 1; k <= n; ++k) {
    log_value -= f.log_f(static_cast<int>(k));
    log_value -= f.log_f(static_cast<int>(k + aq));
  }
  return LogNumber::from_log(log_value);
}

SeriesSum normalization(double x, int q, const NonlinearityModel& f, const TruncationPolicy& policy) {
  check_radius(x, f, policy);
  return sum_log_series(SquaredTerms(x, q, f, false), policy);
}

double parity_normalization_combination(double x, int q, const NonlinearityModel& f, Parity parity,
                                        const TruncationPolicy& policy) {
  if (parity == Parity::full) throw InvalidParameter("parity combination needs even or odd");
  const double full = normalization(x, q, f, policy).value();
  const double alternating = sum_log_series(SquaredTerms(x, q, f, true), policy).value();
  return parity == Parity::even ? 0.5 * (full + alternating) : 0.5 * (full - alternating);
}

int ChargeState::max_occupation() const {
  return static_cast<int>(n_used()) + std::abs(q_);
}

FockVector ChargeState::to_fock(int cutoff) const {
  if (cutoff < max_occupation())
    throw InvalidParameter("Fock cutoff " + std::to_string(cutoff) + " is below the state's occupation " +
                           std::to_string(max_occupation()));
  FockVector v(cutoff);
  v.amplitudes().reserve(coefficients_.size());
  for (Eigen::Index n = 0; n < coefficients_.size(); ++n) {
    if (coefficients_[n] == Complex(0.0)) continue;
    const Occupation occ = occupation(static_cast<std::size_t>(n));
    v.amplitudes().insertBack(v.index(occ.n1, occ.n2)) = coefficients_[n];
  }
  return v;
}

ChargeState build_state(Complex xi, int q, const NonlinearityModel& f, Parity parity,
                        const TruncationPolicy& policy) {
  policy.validate();
  const double x = std::norm(xi);
  check_radius(x, f, policy);
  ChargeState state(q, xi, parity, f);

  if (x == 0.0) {
    if (parity == Parity::odd) throw InvalidParameter("the odd state does not exist at xi = 0");
    state.norm_log_ = LogNumber::one();
    state.log_magnitudes_ = {LogNumber::one()};
    state.coefficients_ = Eigen::VectorXcd::Ones(1);
    state.probabilities_ = Eigen::VectorXd::Ones(1);
    return state;
  }

  // Extend the ladder until the amplitudes, not only the probabilities, are
  // negligible.
  const double ladder_tol = policy.rel_tail_tol * policy.rel_tail_tol;
  SquaredTerms terms(x, q, f, false);
  LogAccumulator acc;
  std::vector<double> log_squared;  // -inf where the parity excludes n
  int quiet = 0;
  std::size_t kept_count = 0;
  double last_relative = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0;; ++n) {
    const LogNumber t = terms(n);
    if (!kept(n, parity)) {
      log_squared.push_back(-std::numeric_limits<double>::infinity());
      continue;
    }
    log_squared.push_back(t.log_magnitude);
    acc.add(t);
    ++kept_count;
    last_relative = acc.relative(t);
    quiet = last_relative < ladder_tol ? quiet + 1 : 0;
    if (quiet >= 3) break;
    if (kept_count >= policy.max_terms) {
      if (!(last_relative < policy.rel_tail_tol))
        throw NonConvergence("state ladder did not converge within " + std::to_string(policy.max_terms) +
                             " terms at |xi|^2 = " + std::to_string(x) + " for " + f.label());
      break;
    }
  }

  const LogNumber norm = acc.total();
  const double half_log_norm = 0.5 * norm.log_magnitude;
  const double phase = std::arg(xi);
  const auto size = static_cast<Eigen::Index>(log_squared.size());
  state.norm_log_ = norm;
  state.log_magnitudes_.resize(log_squared.size());
  state.coefficients_ = Eigen::VectorXcd::Zero(size);
  state.probabilities_ = Eigen::VectorXd::Zero(size);
  for (Eigen::Index n = 0; n < size; ++n) {
    const double ls = log_squared[static_cast<std::size_t>(n)];
    if (ls == -std::numeric_limits<double>::infinity()) {
      state.log_magnitudes_[static_cast<std::size_t>(n)] = LogNumber::zero();
      continue;
    }
    const double log_amp = 0.5 * ls - half_log_norm;
    state.log_magnitudes_[static_cast<std::size_t>(n)] = LogNumber::from_log(log_amp);
    state.coefficients_[n] = std::polar(std::exp(log_amp), static_cast<double>(n) * phase);
    state.probabilities_[n] = std::exp(2.0 * log_amp);
  }
  return state;
}

double probability(const ChargeState& state, std::size_t n) {
  if (n > state.n_used()) return 0.0;
  return state.probabilities()[static_cast<Eigen::Index>(n)];
}

double eigen_residual(const ChargeState& state, bool squared) {
  if (!squared && state.parity() != Parity::full)
    throw ParityMismatch("even/odd states are eigenstates of (A1 A2)^2 only");
  const int cutoff = state.max_occupation() + 2;
  const FockVector psi = state.to_fock(cutoff);
  const OperatorExpr k_minus = build_K_minus(state.model());
  const OperatorExpr op = squared ? k_minus * k_minus : k_minus;
  const Complex lambda = squared ? state.xi() * state.xi() : state.xi();
  FockVector::Storage diff = op.apply(psi).vector.amplitudes() - lambda * psi.amplitudes();
  return diff.norm() / std::max(std::abs(lambda), 1.0);
}

Overlap overlap(const ChargeState& s1, const ChargeState& s2) {
  Overlap result{0.0, s1.model().label() != s2.model().label()};
  if (s1.q() != s2.q()) return result;
  if ((s1.parity() == Parity::even && s2.parity() == Parity::odd) ||
      (s1.parity() == Parity::odd && s2.parity() == Parity::even))
    return result;
  const Eigen::Index common = std::min(s1.coefficients().size(), s2.coefficients().size());
  result.value = s1.coefficients().head(common).dot(s2.coefficients().head(common));
  return result;
}

}  // namespace nlcs
