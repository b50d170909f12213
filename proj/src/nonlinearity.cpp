#include "nlcs/nonlinearity.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "nlcs/errors.hpp"

namespace nlcs {

namespace {

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool is_positive_half_integer(double kappa) {
  const double twice = 2.0 * kappa;
  return kappa >= 0.5 && std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace

NonlinearityModel::NonlinearityModel(std::string name, std::vector<Parameter> params,
                                     LogFunction log_f, double radius, int validated_levels,
                                     SpectrumFunction closed_spectrum)
    : name_(std::move(name)),
      params_(std::move(params)),
      log_f_(std::move(log_f)),
      spectrum_(std::move(closed_spectrum)),
      radius_(radius) {
  if (!(radius_ > 0.0)) throw InvalidParameter(name_ + ": radius must be positive");
  for (int n = 1; n <= validated_levels; ++n) {
    const double lf = log_f_(n);
    if (!std::isfinite(lf))
      throw InvalidParameter(name_ + ": f(" + std::to_string(n) + ") is not a positive finite real");
  }
}

double NonlinearityModel::param(std::string_view key) const {
  for (const auto& p : params_)
    if (p.name == key) return p.value;
  throw InvalidParameter(name_ + " has no parameter '" + std::string(key) + "'");
}

std::string NonlinearityModel::label() const {
  std::string out = name_;
  if (params_.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (i) out += ',';
    out += params_[i].name + '=' + format_param(params_[i].value);
  }
  return out + ')';
}

double NonlinearityModel::f(int n) const { return std::exp(log_f_(n)); }

double NonlinearityModel::spectrum(int n) const {
  if (n <= 0) return 0.0;
  if (spectrum_) return spectrum_(n);
  return std::exp(std::log(static_cast<double>(n)) + 2.0 * log_f_(n));
}

NonlinearityModel model_unit() {
  return {"unit", {}, [](int) { return 0.0; }, NonlinearityModel::kInfiniteRadius, 200,
          [](int n) { return static_cast<double>(n); }};
}

NonlinearityModel model_poschl_teller(double nu) {
  if (!(nu >= 2.0)) throw InvalidParameter("poschl_teller: nu must be >= 2");
  return {"poschl_teller", {{"nu", nu}},
          [nu](int n) { return 0.5 * std::log(n + nu); }, NonlinearityModel::kInfiniteRadius, 200,
          [nu](int n) { return n * (n + nu); }};
}

NonlinearityModel model_hydrogen() {
  return {"hydrogen", {},
          [](int n) { return 0.5 * std::log(n + 2.0) - std::log(n + 1.0); }, 1.0, 200,
          [](int n) { return n * (n + 2.0) / ((n + 1.0) * (n + 1.0)); }};
}

NonlinearityModel model_harmonious() {
  // f(0) = +inf; never consumed.
  return {"harmonious", {}, [](int n) { return -0.5 * std::log(static_cast<double>(n)); }, 1.0, 200,
          [](int) { return 1.0; }};
}

NonlinearityModel model_dual_harmonious() {
  return {"dual_harmonious", {},
          [](int n) { return 0.5 * std::log(static_cast<double>(n)); }, NonlinearityModel::kInfiniteRadius,
          200, [](int n) { return static_cast<double>(n) * n; }};
}

NonlinearityModel model_barut_girardello(double kappa) {
  if (!is_positive_half_integer(kappa))
    throw InvalidParameter("barut_girardello: kappa must be one of 1/2, 1, 3/2, ...");
  return {"barut_girardello", {{"kappa", kappa}},
          [kappa](int n) { return 0.5 * std::log(n + 2.0 * kappa - 1.0); },
          NonlinearityModel::kInfiniteRadius, 200, [kappa](int n) { return n * (n + 2.0 * kappa - 1.0); }};
}

NonlinearityModel model_gilmore_perelomov(double kappa) {
  if (!is_positive_half_integer(kappa))
    throw InvalidParameter("gilmore_perelomov: kappa must be one of 1/2, 1, 3/2, ...");
  return {"gilmore_perelomov", {{"kappa", kappa}},
          [kappa](int n) { return -0.5 * std::log(n + 2.0 * kappa - 1.0); }, 1.0, 200,
          [kappa](int n) { return n / (n + 2.0 * kappa - 1.0); }};
}

NonlinearityModel model_q_deformed(double qbar) {
  if (!(qbar > 0.0 && qbar <= 1.0)) throw InvalidParameter("q_deformed: qbar must lie in (0, 1]");
  if (qbar == 1.0)
    return {"q_deformed", {{"qbar", qbar}}, [](int) { return 0.0; }, NonlinearityModel::kInfiniteRadius};
  // f^2 = (qbar^-m - qbar^m) / (m (qbar^-1 - qbar)), m = n + 1, written to
  // stay finite for large n.
  const double log_q = std::log(qbar);
  const double log_denominator = std::log(1.0 / qbar - qbar);
  return {"q_deformed", {{"qbar", qbar}},
          [log_q, log_denominator](int n) {
            const double m = n + 1.0;
            const double log_numerator = -m * log_q + std::log1p(-std::exp(2.0 * m * log_q));
            return 0.5 * (log_numerator - std::log(m) - log_denominator);
          },
          NonlinearityModel::kInfiniteRadius};
}

double estimate_radius(const SpectrumFunction& spectrum, int n_max) {
  if (n_max < 8) throw InvalidParameter("estimate_radius: need at least 8 levels");
  const double e_quarter = spectrum(n_max / 4);
  const double e_half = spectrum(n_max / 2);
  const double e_full = spectrum(n_max);
  const double d1 = e_half - e_quarter;
  const double d2 = e_full - e_half;
  if (std::abs(d1) <= 1e-14 * std::abs(e_full)) return e_full;  // flat tail
  const double ratio = d2 / d1;
  // A bounded spectrum approaches its limit at least like 1/n, which halves
  // successive differences on a doubling grid.
  if (ratio < 0.75 && ratio > -1.0) return e_full + d2 * ratio / (1.0 - ratio);
  return NonlinearityModel::kInfiniteRadius;
}

NonlinearityModel model_from_spectrum(SpectrumFunction spectrum, std::string name, int probe_terms) {
  for (int n = 1; n <= probe_terms; ++n) {
    const double e = spectrum(n);
    if (!(e > 0.0) || !std::isfinite(e))
      throw InvalidSpectrum(name + ": e_" + std::to_string(n) + " must be positive and finite");
  }
  const double radius = estimate_radius(spectrum, probe_terms);
  auto shared = std::make_shared<SpectrumFunction>(std::move(spectrum));
  auto log_f = [shared, name](int n) {
    if (n == 0) return 0.0;  // f(0) = 1, never consumed
    const double e = (*shared)(n);
    if (!(e > 0.0)) throw InvalidSpectrum(name + ": e_" + std::to_string(n) + " must be positive");
    return 0.5 * (std::log(e) - std::log(static_cast<double>(n)));
  };
  return {std::move(name), {}, std::move(log_f), radius, probe_terms,
          [shared](int n) { return (*shared)(n); }};
}

NonlinearityModel load_spectrum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpectrum("cannot open spectrum file '" + path + "'");
  std::map<long, double> levels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream row(line);
    double n = 0.0, e = 0.0;
    if (!(row >> n)) continue;
    if (!(row >> e) || n < 0 || n != std::floor(n))
      throw InvalidSpectrum(path + ":" + std::to_string(line_no) + ": expected 'n e_n'");
    levels[static_cast<long>(n)] = e;
  }
  std::vector<double> table;  // table[k] = e_{k+1}
  for (long n = 1;; ++n) {
    auto it = levels.find(n);
    if (it == levels.end()) break;
    table.push_back(it->second);
  }
  if (levels.size() != table.size() + (levels.count(0) ? 1 : 0))
    throw InvalidSpectrum(path + ": levels must be contiguous from n = 1");
  if (table.size() < 8) throw InvalidSpectrum(path + ": need at least 8 levels");
  const int probe = std::min<int>(200, static_cast<int>(table.size()));
  auto shared = std::make_shared<const std::vector<double>>(std::move(table));
  SpectrumFunction spectrum = [shared, path](int n) {
    if (n < 1 || static_cast<std::size_t>(n) > shared->size())
      throw InvalidSpectrum(path + ": level " + std::to_string(n) + " is outside the tabulated range");
    return (*shared)[static_cast<std::size_t>(n - 1)];
  };
  return model_from_spectrum(std::move(spectrum), "spectrum", probe);
}

std::vector<NonlinearityModel> catalog_models() {
  return {model_poschl_teller(3.0),   model_hydrogen(),
          model_harmonious(),         model_dual_harmonious(),
          model_barut_girardello(0.5), model_gilmore_perelomov(1.0),
          model_q_deformed(0.5)};
}

}  // namespace nlcs
