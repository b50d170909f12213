#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nlcs/nonclassicality.hpp"
#include "nlcs/nonlinearity.hpp"
#include "nlcs/numerics.hpp"
#include "nlcs/states.hpp"

namespace nlcs {

struct GridSpec {
  double min = 0.0;
  double max = 1.0;
  int count = 100;
  bool log_spacing = false;

  /// Ascending grid; both ends included. Throws InvalidParameter.
  std::vector<double> points() const;
};

/// Model selection by name. Names: unit, poschl_teller (nu), hydrogen,
/// harmonious, dual_harmonious, barut_girardello (kappa),
/// gilmore_perelomov (kappa), q_deformed (qbar), spectrum (spectrum_file).
struct ModelSpec {
  std::string name = "unit";
  std::vector<Parameter> params;
  std::string spectrum_file;
};

NonlinearityModel make_model(const ModelSpec& spec);  // throws UnknownModel, InvalidParameter

struct SweepSpec {
  ModelSpec model;
  int q = 0;
  Parity parity = Parity::full;
  GridSpec grid;
  std::vector<Measure> measures;
  TruncationPolicy policy;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SweepResult {
  std::vector<Measure> measures;
  std::vector<MeasureReport> rows;  // ascending x
};

/// Evaluates every grid point (in parallel); throws OutOfRadius before any
/// work if the grid leaves the model's guarded radius.
SweepResult run_sweep(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec, const NonlinearityModel& model);

/// Header "x,<measure>,..."; values as %.17g, "undefined" where unset.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Columns n,n1,n2,re_c,im_c,P preceded by '#' metadata lines
/// (model, q, parity, xi, N_used, log normalization, eigen residual).
void write_state_csv(std::ostream& out, const ChargeState& state);

std::string format_double(double v);  // %.17g

struct Curve {
  std::string label;  // file stem and legend entry
  std::string style;  // matplotlib line style
  SweepSpec spec;
};

struct FigurePreset {
  int id = 0;
  std::string title;
  std::vector<Curve> curves;
};

/// Presets 1..12: f = 1 baseline against the deformed model at q = 2.
FigurePreset figure_preset(int id);  // throws InvalidParameter

/// A matplotlib script that reads the per-curve CSV files
/// "fig<id>_<label>.csv" from its own directory.
std::string plot_script(const FigurePreset& preset);

}  // namespace nlcs
