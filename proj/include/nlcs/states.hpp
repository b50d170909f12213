#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "nlcs/fock.hpp"
#include "nlcs/nonlinearity.hpp"
#include "nlcs/numerics.hpp"

namespace nlcs {

enum class Parity { full, even, odd };

std::string_view to_string(Parity p);
Parity parse_parity(std::string_view text);

/// Two-mode occupation carried by ladder index n:
/// (n + (q + |q|)/2, n - (q - |q|)/2).
struct Occupation {
  int n1;
  int n2;
};

Occupation ladder_occupation(std::size_t n, int q);

/// ln of 1 / ( sqrt(n! [n+|q|]!) [f(n)]! [f(n+|q|)]! ), the positive weight of
/// xi^n in the state expansion. The bracket factorials are
///   [n+|q|]!   = (n+|q|)(n-1+|q|)...(1+|q|)  = (n+|q|)! / |q|!
///   [f(n+|q|)]! = f(n+|q|) f(n-1+|q|)...f(1+|q|)
/// so the bracket form differs from the plain (n+|q|)! by the constant |q|!.
LogNumber raw_coefficient(std::size_t n, int q, const NonlinearityModel& f);

/// N(x) = sum_n x^n raw_coefficient(n)^2, x = |xi|^2.
/// Throws OutOfRadius above the guarded radius and NonConvergence.
SeriesSum normalization(double x, int q, const NonlinearityModel& f, const TruncationPolicy& policy = {});

/// (1/2) N(x) +- (1/2) sum_n (-x)^n raw_coefficient(n)^2 for even (+) or odd (-).
/// Kept as a cross-check against the direct parity sums.
double parity_normalization_combination(double x, int q, const NonlinearityModel& f, Parity parity,
                                        const TruncationPolicy& policy = {});

/// Normalized nonlinear charge coherent state on a single ladder.
///
/// Coefficients c_n for n = 0..n_used() are stored both as normalized complex
/// amplitudes and as log magnitudes. Ladder entries excluded by the parity are
/// exactly zero.
class ChargeState {
 public:
  int q() const { return q_; }
  Complex xi() const { return xi_; }
  double x() const { return std::norm(xi_); }
  Parity parity() const { return parity_; }
  const NonlinearityModel& model() const { return model_; }

  std::size_t n_used() const { return static_cast<std::size_t>(coefficients_.size()) - 1; }
  /// Normalization constant (N, N_e or N_o) in log form.
  LogNumber norm_log() const { return norm_log_; }

  const Eigen::VectorXcd& coefficients() const { return coefficients_; }
  std::span<const LogNumber> log_magnitudes() const { return log_magnitudes_; }
  const Eigen::VectorXd& probabilities() const { return probabilities_; }

  Occupation occupation(std::size_t n) const { return ladder_occupation(n, q_); }
  int max_occupation() const;

  /// Embeds the ladder into the two-mode box of the given cutoff.
  FockVector to_fock(int cutoff) const;

 private:
  friend ChargeState build_state(Complex, int, const NonlinearityModel&, Parity, const TruncationPolicy&);
  ChargeState(int q, Complex xi, Parity parity, NonlinearityModel model)
      : q_(q), xi_(xi), parity_(parity), model_(std::move(model)) {}

  int q_;
  Complex xi_;
  Parity parity_;
  NonlinearityModel model_;
  LogNumber norm_log_;
  std::vector<LogNumber> log_magnitudes_;
  Eigen::VectorXcd coefficients_;
  Eigen::VectorXd probabilities_;
};

/// Builds the normalized state. The ladder is extended until the squared
/// amplitudes fall below rel_tail_tol^2 relative to the running norm, so that
/// the amplitude tail (not just the probability tail) is negligible;
/// NonConvergence is raised only if even rel_tail_tol is not reached within
/// max_terms. The odd state at xi = 0 does not exist (InvalidParameter).
ChargeState build_state(Complex xi, int q, const NonlinearityModel& f, Parity parity,
                        const TruncationPolicy& policy = {});

/// |c_n|^2 (the photon-count probability of the occupation carried by n);
/// zero beyond n_used.
double probability(const ChargeState& state, std::size_t n);

/// ||Op psi - lambda psi|| / max(|lambda|, 1) on the Fock engine, with
/// Op = A1 A2, lambda = xi (full states) or Op = (A1 A2)^2, lambda = xi^2.
/// Throws ParityMismatch for squared == false on even/odd states.
double eigen_residual(const ChargeState& state, bool squared);

struct Overlap {
  Complex value;
  bool cross_model = false;  // states built from different nonlinearities
};

/// <s1|s2>. Exactly zero for different charges or for even against odd.
Overlap overlap(const ChargeState& s1, const ChargeState& s2);

}  // namespace nlcs
