#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace nlcs {

using SpectrumFunction = std::function<double(int)>;

struct Parameter {
  std::string name;
  double value;
};

/// A nonlinearity function f(n) on the nonnegative integers.
///
/// The model is immutable and carries the convergence radius (in |xi|) of the
/// charge states it generates. Every evaluation path goes through log f(n) so
/// that rapidly growing deformations never overflow. f(0) is stored but no
/// series ever consumes it: the ladder factorials start at f(1), and the
/// spectrum n f^2(n) is pinned to zero at n = 0.
class NonlinearityModel {
 public:
  using LogFunction = std::function<double(int)>;

  static constexpr double kInfiniteRadius = std::numeric_limits<double>::infinity();

  /// Validates f(n) > 0 for n in [1, validated_levels]; throws
  /// InvalidParameter otherwise. A closed-form spectrum, when given, replaces
  /// exp(log n + 2 log f(n)) so integer levels stay exact.
  NonlinearityModel(std::string name, std::vector<Parameter> params, LogFunction log_f,
                    double radius, int validated_levels = 200, SpectrumFunction closed_spectrum = {});

  const std::string& name() const { return name_; }
  const std::vector<Parameter>& params() const { return params_; }
  double param(std::string_view key) const;
  /// "name(key=value,...)", unique per model and parameter set.
  std::string label() const;

  double radius() const { return radius_; }
  bool finite_radius() const { return radius_ < kInfiniteRadius; }

  double log_f(int n) const { return log_f_(n); }
  double f(int n) const;
  /// e_n = n f^2(n), with e_0 = 0.
  double spectrum(int n) const;

 private:
  std::string name_;
  std::vector<Parameter> params_;
  LogFunction log_f_;
  SpectrumFunction spectrum_;
  double radius_;
};

NonlinearityModel model_unit();
NonlinearityModel model_poschl_teller(double nu);
NonlinearityModel model_hydrogen();
NonlinearityModel model_harmonious();
NonlinearityModel model_dual_harmonious();
NonlinearityModel model_barut_girardello(double kappa);
NonlinearityModel model_gilmore_perelomov(double kappa);
NonlinearityModel model_q_deformed(double qbar);

/// f(n) = sqrt(e_n / n). Throws InvalidSpectrum if some e_n <= 0 for n >= 1.
/// The radius is the ratio-test estimate over the first `probe_terms` levels.
NonlinearityModel model_from_spectrum(SpectrumFunction spectrum, std::string name,
                                      int probe_terms = 200);

/// Two-column text file of (n, e_n) rows; '#' starts a comment. Levels must
/// be contiguous from n = 1 (an n = 0 row is accepted and ignored).
NonlinearityModel load_spectrum_file(const std::string& path);

/// Convergence radius in |xi| estimated from the spectrum over levels up to
/// n_max: infinity when e_n keeps growing, else the extrapolated limit of e_n.
double estimate_radius(const SpectrumFunction& spectrum, int n_max = 200);

/// The seven nonlinear catalog entries with the parameters used throughout
/// the figure presets (PT nu=3, BG kappa=1/2, GP kappa=1, q-deformed qbar=1/2).
std::vector<NonlinearityModel> catalog_models();

}  // namespace nlcs
