#include "nlcs/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "nlcs/errors.hpp"

namespace nlcs {

std::vector<double> GridSpec::points() const {
  if (count < 2) throw InvalidParameter("grid needs at least 2 points");
  if (!(std::isfinite(min) && std::isfinite(max)) || !(max > min) || min < 0.0)
    throw InvalidParameter("grid requires 0 <= x-min < x-max");
  if (log_spacing && !(min > 0.0)) throw InvalidParameter("log spacing requires x-min > 0");
  std::vector<double> xs(static_cast<std::size_t>(count));
  const double steps = count - 1;
  for (int i = 0; i < count; ++i) {
    const double t = i / steps;
    xs[i] = log_spacing ? std::exp(std::log(min) + t * (std::log(max) - std::log(min))) : min + t * (max - min);
  }
  xs.front() = min;
  xs.back() = max;
  return xs;
}

namespace {

double required(const ModelSpec& spec, std::string_view key) {
  for (const auto& p : spec.params)
    if (p.name == key) return p.value;
  throw InvalidParameter("model '" + spec.name + "' requires --param " + std::string(key) + "=<value>");
}

}  // namespace

NonlinearityModel make_model(const ModelSpec& spec) {
  const std::string& n = spec.name;
  if (n == "unit") return model_unit();
  if (n == "poschl_teller") return model_poschl_teller(required(spec, "nu"));
  if (n == "hydrogen") return model_hydrogen();
  if (n == "harmonious") return model_harmonious();
  if (n == "dual_harmonious") return model_dual_harmonious();
  if (n == "barut_girardello") return model_barut_girardello(required(spec, "kappa"));
  if (n == "gilmore_perelomov") return model_gilmore_perelomov(required(spec, "kappa"));
  if (n == "q_deformed") return model_q_deformed(required(spec, "qbar"));
  if (n == "spectrum") {
    if (spec.spectrum_file.empty()) throw InvalidParameter("model 'spectrum' requires --spectrum-file");
    return load_spectrum_file(spec.spectrum_file);
  }
  throw UnknownModel("unknown model '" + n +
                     "'; expected one of unit, poschl_teller, hydrogen, harmonious, dual_harmonious, "
                     "barut_girardello, gilmore_perelomov, q_deformed, spectrum");
}

SweepResult run_sweep(const SweepSpec& spec) { return run_sweep(spec, make_model(spec.model)); }

SweepResult run_sweep(const SweepSpec& spec, const NonlinearityModel& model) {
  spec.policy.validate();
  if (spec.measures.empty()) throw InvalidParameter("no measures requested");
  const std::vector<double> xs = spec.grid.points();
  if (model.finite_radius()) {
    const double limit = spec.policy.radius_guard * model.radius() * model.radius();
    if (xs.back() > limit) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "x-max = %.17g exceeds %.17g (radius guard %g times radius^2) for ",
                    xs.back(), limit, spec.policy.radius_guard);
      throw OutOfRadius(buf + model.label() + "; lower --x-max");
    }
  }

  SweepResult result;
  result.measures = spec.measures;
  result.rows.resize(xs.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      try {
        const ChargeState state = build_state(Complex(std::sqrt(xs[i]), 0.0), spec.q, model, spec.parity, spec.policy);
        result.rows[i] = evaluate(state, spec.measures);
        result.rows[i].x = xs[i];
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = xs.size();
      }
    }
  };

  unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, xs.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return result;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << 'x';
  for (const Measure m : result.measures) out << ',' << measure_name(m);
  out << '\n';
  for (const auto& row : result.rows) {
    out << format_double(row.x);
    for (const Measure m : result.measures) {
      const auto v = row[m];
      out << ',' << (v ? format_double(*v) : std::string("undefined"));
    }
    out << '\n';
  }
}

void write_state_csv(std::ostream& out, const ChargeState& state) {
  out << "# model," << state.model().label() << '\n';
  out << "# q," << state.q() << '\n';
  out << "# parity," << to_string(state.parity()) << '\n';
  out << "# xi," << format_double(state.xi().real()) << ',' << format_double(state.xi().imag()) << '\n';
  out << "# N_used," << state.n_used() << '\n';
  out << "# log_normalization," << format_double(state.norm_log().log_magnitude) << '\n';
  const bool squared = state.parity() != Parity::full;
  out << "# eigen_residual" << (squared ? "_squared," : ",") << format_double(eigen_residual(state, squared))
      << '\n';
  out << "n,n1,n2,re_c,im_c,P\n";
  const auto& c = state.coefficients();
  const auto& p = state.probabilities();
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    if (state.parity() == Parity::even && n % 2 == 1) continue;
    if (state.parity() == Parity::odd && n % 2 == 0) continue;
    const Occupation occ = state.occupation(static_cast<std::size_t>(n));
    out << n << ',' << occ.n1 << ',' << occ.n2 << ',' << format_double(c[n].real()) << ','
        << format_double(c[n].imag()) << ',' << format_double(p[n]) << '\n';
  }
}

namespace {

constexpr int kPresetPoints = 200;

GridSpec preset_grid(bool unit_disk) {
  const double max = unit_disk ? 0.99 : 20.0;
  return {max / kPresetPoints, max, kPresetPoints, false};
}

FigurePreset make_preset(int id, std::string title, ModelSpec model, Parity parity, std::vector<Measure> measures,
                         bool unit_disk) {
  FigurePreset preset{id, std::move(title), {}};
  SweepSpec base;
  base.q = 2;
  base.parity = parity;
  base.grid = preset_grid(unit_disk);
  base.measures = std::move(measures);

  Curve standard{"unit", "--", base};
  standard.spec.model = ModelSpec{"unit", {}, {}};
  Curve deformed{model.name, "-", base};
  deformed.spec.model = std::move(model);
  preset.curves = {std::move(standard), std::move(deformed)};
  return preset;
}

}  // namespace

FigurePreset figure_preset(int id) {
  using M = Measure;
  const ModelSpec pt{"poschl_teller", {{"nu", 3.0}}, {}};
  const ModelSpec h{"hydrogen", {}, {}};
  const ModelSpec bg{"barut_girardello", {{"kappa", 0.5}}, {}};
  switch (id) {
    case 1: return make_preset(1, "su(1,1) squeezing S_x1, S_x2; Poschl-Teller nu=3, q=2", pt, Parity::full, {M::S_x1, M::S_x2}, false);
    case 2: return make_preset(2, "su(1,1) squeezing S_x1, S_x2; even states, Poschl-Teller nu=3, q=2", pt, Parity::even, {M::S_x1, M::S_x2}, false);
    case 3: return make_preset(3, "su(1,1) squeezing S_X1, S_X2; even states, Poschl-Teller nu=3, q=2", pt, Parity::even, {M::S_X1, M::S_X2}, false);
    case 4: return make_preset(4, "g-factor; Poschl-Teller nu=3, q=2", pt, Parity::full, {M::g}, false);
    case 5: return make_preset(5, "G-factor; odd states, Poschl-Teller nu=3, q=2", pt, Parity::odd, {M::G}, false);
    case 6: return make_preset(6, "Mandel Q^a_1; Poschl-Teller nu=3, q=2", pt, Parity::full, {M::Q_a1}, false);
    case 7: return make_preset(7, "su(1,1) squeezing S_x1, S_x2; hydrogen-like, q=2", h, Parity::full, {M::S_x1, M::S_x2}, true);
    case 8: return make_preset(8, "su(1,1) squeezing S_X1, S_X2; even states, hydrogen-like, q=2", h, Parity::even, {M::S_X1, M::S_X2}, true);
    case 9: return make_preset(9, "g-factor; odd states, hydrogen-like, q=2", h, Parity::odd, {M::g}, true);
    case 10: return make_preset(10, "generalized Mandel Q^A_2, Q^A_1; even states, hydrogen-like, q=2", h, Parity::even, {M::Q_A2, M::Q_A1}, true);
    case 11: return make_preset(11, "g-factor; Barut-Girardello kappa=1/2, q=2", bg, Parity::full, {M::g}, false);
    case 12: return make_preset(12, "generalized Mandel Q^A_2; Barut-Girardello kappa=1/2, q=2", bg, Parity::full, {M::Q_A2}, false);
    default: throw InvalidParameter("figure id must be in 1..12, got " + std::to_string(id));
  }
}

std::string plot_script(const FigurePreset& preset) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "# Figure " << preset.id << ": " << preset.title << "\n"
    << "import csv\nimport os\nimport matplotlib.pyplot as plt\n\n"
    << "here = os.path.dirname(os.path.abspath(__file__))\n\n"
    << "def load(name):\n"
    << "    with open(os.path.join(here, name), newline='') as fh:\n"
    << "        rows = list(csv.DictReader(fh))\n"
    << "    return rows\n\n"
    << "fig, ax = plt.subplots()\n";
  for (const Curve& c : preset.curves) {
    s << "rows = load('fig" << preset.id << '_' << c.label << ".csv')\n"
      << "x = [float(r['x']) for r in rows]\n";
    for (const Measure m : c.spec.measures) {
      s << "y = [float(r['" << measure_name(m) << "']) if r['" << measure_name(m)
        << "'] != 'undefined' else float('nan') for r in rows]\n"
        << "ax.plot(x, y, '" << c.style << "', label='" << c.label << ": " << measure_name(m) << "')\n";
    }
  }
  s << "ax.axhline(0.0, color='grey', linewidth=0.5)\n"
    << "ax.set_xlabel('x = |xi|^2')\n"
    << "ax.set_title('" << preset.title << "')\n"
    << "ax.legend()\n"
    << "fig.savefig(os.path.join(here, 'fig" << preset.id << ".png'), dpi=150)\n";
  return s.str();
}

}  // namespace nlcs
